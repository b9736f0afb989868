#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's algorithms beyond plain field arithmetic.

#include <gmpxx.h>

#include <array>
#include <vector>

#include "defzeta/finite_field.hpp"
#include "defzeta/rational.hpp"
#include "defzeta/unramified.hpp"

namespace oracle {

using defzeta::FpVec;
using defzeta::ZVec;

// #E for Y^2 = X^3 + aX^2 + bX + c via a table of squares (with multiplicity).
mpz_class count_points(const defzeta::FqElem& a, const defzeta::FqElem& b, const defzeta::FqElem& c);

// Minimal polynomial of g over F_p from the first linear dependency among
// 1, g, g^2, ... found by Gaussian elimination.
FpVec min_poly_gauss(const defzeta::FqElem& g);

// True if f has no monic factor of degree 1..deg/2 (exhaustive trial division).
bool irreducible_by_search(const FpVec& f, long p);

// Exact integer determinant (Bareiss).
mpz_class det_bareiss(std::vector<std::vector<mpz_class>> a);

// Sylvester-matrix resultant over Z (coefficients low degree first).
mpz_class sylvester_resultant(const ZVec& f, const ZVec& g);

// Numerator of the zeta function over F_{q^k} as prod_i (1 - w_i^k T)
// obtained from Res_X(q X^2 - t X + 1, X^k - T) by interpolation at T = 0, 1, 2.
std::array<mpz_class, 3> extended_numerator(const mpz_class& q, const mpz_class& t, int k);

// (a * b) mod (phi, M) by schoolbook product and long division.
ZVec mulmod_schoolbook(const ZVec& a, const ZVec& b, const ZVec& phi, const mpz_class& M);

// prod_{i<m} sigma^i(mu), constant coefficient.
mpz_class conjugate_product(const defzeta::ExtScalar& mu);

// x^(p^m) == x in the extension, computed by m repeated p-th powers.
bool teichmuller_identity(const defzeta::ExtPtr& ext);

// Coefficients c_0..c_{K-1} of the power series y with
// y' = (a(Gamma) / b(Gamma)) y, y(0) = y0, b(0) != 0, by term-by-term integration over Q.
std::vector<mpq_class> integrate_scalar_ode(const defzeta::QPoly& a, const defzeta::QPoly& b, const mpq_class& y0,
                                            std::size_t K);

// p-adic valuation of a rational (kInfiniteValuation for zero).
int valuation_q(const mpq_class& x, long p);

}  // namespace oracle
