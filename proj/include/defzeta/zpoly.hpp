#pragma once

// Dense polynomials with big-integer coefficients, low degree first.
// All kernels taking a modulus M expect and return coefficients in [0, M).

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace defzeta {

using ZVec = std::vector<mpz_class>;

namespace zpoly {

void trim(ZVec& a);
void reduce_coeffs(ZVec& a, const mpz_class& M);

ZVec add(const ZVec& a, const ZVec& b, const mpz_class& M);
ZVec sub(const ZVec& a, const ZVec& b, const mpz_class& M);
ZVec scale(const ZVec& a, const mpz_class& c, const mpz_class& M);

// Full product; Kronecker substitution above a small size threshold.
ZVec mul(const ZVec& a, const ZVec& b, const mpz_class& M);
// Low n coefficients of the product.
ZVec mul_low(const ZVec& a, const ZVec& b, std::size_t n, const mpz_class& M);
// Exact integer product (no reduction); inputs must be non-negative.
ZVec mul_exact(const ZVec& a, const ZVec& b);

// Power-series inverse mod x^n; a[0] must be invertible mod M.
ZVec series_inverse(const ZVec& a, std::size_t n, const mpz_class& M);

// Horner evaluation at an integer point.
mpz_class eval(const ZVec& a, const mpz_class& x, const mpz_class& M);

}  // namespace zpoly
}  // namespace defzeta
