#pragma once

// Dense polynomials over F_p (p small), coefficients in [0, p), low degree first.
// The zero polynomial is the empty vector.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace defzeta {

using FpVec = std::vector<long>;

namespace fpoly {

long inv_mod(long a, long p);
long norm_mod(long a, long p);

void trim(FpVec& a);
int degree(const FpVec& a);  // -1 for zero
FpVec add(const FpVec& a, const FpVec& b, long p);
FpVec sub(const FpVec& a, const FpVec& b, long p);
FpVec scale(const FpVec& a, long c, long p);
FpVec mul(const FpVec& a, const FpVec& b, long p);
FpVec mul_low(const FpVec& a, const FpVec& b, std::size_t n, long p);
FpVec derivative(const FpVec& a, long p);
long eval(const FpVec& a, long x, long p);
void divrem(const FpVec& a, const FpVec& b, long p, FpVec& q, FpVec& r);
FpVec rem(const FpVec& a, const FpVec& b, long p);
FpVec monic(const FpVec& a, long p);
// a(X + c).
FpVec taylor_shift(const FpVec& a, long c, long p);
// prod over roots theta of the monic g of f(theta).
long resultant(const FpVec& f, const FpVec& g, long p);
FpVec gcd(const FpVec& a, const FpVec& b, long p);  // monic
// Inverse of a modulo f; a must be coprime to f.
FpVec inverse_mod(const FpVec& a, const FpVec& f, long p);
FpVec series_inverse(const FpVec& a, std::size_t n, long p);
bool is_irreducible(const FpVec& f, long p);
// Smallest monic irreducible of degree n, ordering candidates by the integer
// sum_{i<n} c_i p^i of their lower coefficients.
FpVec smallest_irreducible(int n, long p);

}  // namespace fpoly

// Reduction context for a fixed monic modulus over F_p.
class FpModulus {
 public:
  FpModulus(FpVec f, long p);
  const FpVec& poly() const { return f_; }
  long p() const { return p_; }
  int degree() const { return n_; }
  FpVec reduce(const FpVec& a) const;
  FpVec mulmod(const FpVec& a, const FpVec& b) const;
  FpVec powmod(const FpVec& a, const mpz_class& e) const;

 private:
  FpVec f_;
  long p_;
  int n_;
  FpVec rev_inv_;  // inverse of reversed f mod x^max(n-1,1)
};

}  // namespace defzeta
