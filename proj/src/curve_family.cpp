#include "defzeta/curve_family.hpp"

#include "defzeta/errors.hpp"

namespace defzeta {

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Main: return "main";
    case FamilyKind::AOnly: return "a_only";
    case FamilyKind::COnly: return "c_only";
    case FamilyKind::P3: return "p3";
  }
  return "?";
}

WeierstrassCurve complete_square(const FqElem& a1, const FqElem& a2, const FqElem& a3, const FqElem& a4,
                                 const FqElem& a6) {
  const auto& F = a1.field();
  FqElem half = FqElem::constant(F, 2).inverse();
  FqElem quarter = half * half;
  return {a2 + a1 * a1 * quarter, a4 + a1 * a3 * half, a6 + a3 * a3 * quarter};
}

namespace {

void check_nonsingular(const WeierstrassCurve& c) {
  if (cubic_discriminant(c.a, c.b, c.c).is_zero()) fail(ErrorKind::SingularCurve, "cubic has a repeated root");
}

FamilyInstance with_parameter(FamilyKind kind, const FqElem& g, bool twist) {
  FamilyInstance f{kind, g, 0, twist, 1, {}};
  f.min_poly = minimal_polynomial(g);
  f.m = fpoly::degree(f.min_poly);
  return f;
}

}  // namespace

FamilyInstance normalize(const WeierstrassCurve& curve) {
  check_nonsingular(curve);
  const auto& F = curve.field();
  const long p = F->p();
  const FqElem &a = curve.a, &b = curve.b, &c = curve.c;
  if (p == 3) {
    if (a.is_zero()) fail(ErrorKind::Supersingular, "p = 3 with vanishing X^2 term has j = 0");
    // X -> X - t removes the X term: t = b / (2a).
    FqElem t = b * (FqElem::constant(F, 2) * a).inverse();
    FqElem c1 = c - t * t * t + a * t * t - b * t;
    return with_parameter(FamilyKind::P3, c1 * (a * a * a).inverse(), !is_square(a));
  }
  // X -> X - a/3 removes the X^2 term.
  FqElem third = FqElem::constant(F, 3).inverse();
  FqElem s = a * third;
  FqElem b1 = b - a * s;
  FqElem c1 = c - s * b + FqElem::constant(F, 2) * s * s * s;
  if (c1.is_zero()) return with_parameter(FamilyKind::AOnly, b1, false);
  if (b1.is_zero()) return with_parameter(FamilyKind::COnly, c1, false);
  FqElem g = b1 * b1 * b1 * (c1 * c1).inverse();
  return with_parameter(FamilyKind::Main, g, !is_square(b1 * c1.inverse()));
}

FamilyPolynomial family_polynomial(FamilyKind kind, long shift_alpha) {
  FamilyPolynomial fp;
  switch (kind) {
    case FamilyKind::Main: fp.v = {1, 1, 0}; break;
    case FamilyKind::AOnly: fp.v = {0, 1, 0}; break;
    case FamilyKind::COnly: fp.v = {1, 0, 0}; break;
    case FamilyKind::P3:
      fp.v = {1, 0, 0};
      fp.u = {0, 0, 1};
      break;
  }
  for (int i = 0; i < 3; ++i) fp.u[static_cast<std::size_t>(i)] += fp.v[static_cast<std::size_t>(i)] * shift_alpha;
  return fp;
}

WeierstrassCurve fibre(const FamilyPolynomial& fp, const FqElem& g) {
  const auto& F = g.field();
  auto coef = [&](int i) {
    return FqElem::constant(F, fp.u[static_cast<std::size_t>(i)]) + FqElem::constant(F, fp.v[static_cast<std::size_t>(i)]) * g;
  };
  return {coef(2), coef(1), coef(0)};
}

FamilyInstance shift_parameter(const FamilyInstance& f) {
  const long p = f.gamma_bar.field()->p();
  for (long alpha = 0; alpha < p; ++alpha) {
    FamilyPolynomial fp = family_polynomial(f.kind, f.shift_alpha + alpha);
    FpVec q(4);
    for (int i = 0; i < 3; ++i) q[static_cast<std::size_t>(i)] = fpoly::norm_mod(fp.u[static_cast<std::size_t>(i)], p);
    q[3] = 1;
    FpVec g = fpoly::gcd(q, fpoly::derivative(q, p), p);
    if (fpoly::degree(g) == 0) {
      FamilyInstance r = f;
      r.shift_alpha = f.shift_alpha + alpha;
      r.gamma_bar = f.gamma_bar - FqElem::constant(f.gamma_bar.field(), alpha);
      // gamma - alpha has minimal polynomial phi(X + alpha)
      if (alpha != 0) r.min_poly = fpoly::taylor_shift(f.min_poly, alpha, p);
      return r;
    }
  }
  fail(ErrorKind::NoValidShift, "no alpha in F_p gives a squarefree fibre");
}

QPoly family_r(const FamilyPolynomial& fp) {
  std::vector<RatFunc> q(4), dq(3);
  for (std::size_t i = 0; i < 3; ++i) q[i] = RatFunc::poly(QPoly{mpq_class(fp.u[i]), mpq_class(fp.v[i])});
  q[3] = RatFunc(1);
  for (std::size_t i = 1; i < 4; ++i) dq[i - 1] = q[i] * RatFunc(mpq_class(static_cast<long>(i)));
  RatFunc r = resultant(dq, q);
  return r.num();
}

}  // namespace defzeta
