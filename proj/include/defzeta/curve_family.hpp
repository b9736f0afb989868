#pragma once

// Normalization of Y^2 = X^3 + aX^2 + bX + c into a one-parameter family
// Y^2 = Q(X, Gamma), Q monic cubic in X and linear in Gamma.

#include <array>
#include <string>

#include "defzeta/finite_field.hpp"
#include "defzeta/rational.hpp"

namespace defzeta {

struct WeierstrassCurve {
  FqElem a, b, c;
  const FieldPtr& field() const { return a.field(); }
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, completed to a square.
WeierstrassCurve complete_square(const FqElem& a1, const FqElem& a2, const FqElem& a3, const FqElem& a4,
                                 const FqElem& a6);

enum class FamilyKind { Main, AOnly, COnly, P3 };  // X^3+GX+G, X^3+GX, X^3+G, X^3+X^2+G
const char* family_name(FamilyKind k);

struct FamilyInstance {
  FamilyKind kind;
  FqElem gamma_bar;      // parameter of the curve, already shifted by shift_alpha
  long shift_alpha = 0;  // the family is Q(X, Gamma + shift_alpha)
  bool twist = false;
  int m = 1;             // degree of the minimal polynomial of gamma_bar
  FpVec min_poly;        // that minimal polynomial
};

FamilyInstance normalize(const WeierstrassCurve& curve);
// Picks the first alpha in 0..p-1 with Q(X, alpha) squarefree.
FamilyInstance shift_parameter(const FamilyInstance& f);

// Q(X, Gamma) = X^3 + sum_{i<3} (u[i] + v[i] Gamma) X^i for the shifted family.
struct FamilyPolynomial {
  std::array<long, 3> u{}, v{};
};
FamilyPolynomial family_polynomial(FamilyKind kind, long shift_alpha);

// Q(X, g) over F_q for g in F_q.
WeierstrassCurve fibre(const FamilyPolynomial& fp, const FqElem& g);

// r(Gamma) = prod over roots theta of Q of dQ/dX(theta).
QPoly family_r(const FamilyPolynomial& fp);

}  // namespace defzeta
