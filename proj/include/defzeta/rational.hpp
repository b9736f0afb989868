#pragma once

// Polynomials and rational functions in one variable (Gamma) over Q.
// Only small degrees occur, so everything is schoolbook.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace defzeta {

using QPoly = std::vector<mpq_class>;  // low degree first, trimmed

namespace qpoly {

void trim(QPoly& a);
int degree(const QPoly& a);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& c);
QPoly derivative(const QPoly& a);
void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic, gcd(0,0) = 0
QPoly monic(const QPoly& a);
mpq_class eval(const QPoly& a, const mpq_class& x);
// a(Gamma + s)
QPoly shift(const QPoly& a, const mpq_class& s);
// a(Gamma^k)
QPoly inflate(const QPoly& a, int k);
std::string to_string(const QPoly& a);

}  // namespace qpoly

// num/den with gcd 1 and den monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_{mpq_class(1)} {}
  RatFunc(const mpq_class& c);  // NOLINT(implicit)
  RatFunc(QPoly num, QPoly den);
  static RatFunc poly(QPoly p) { return RatFunc(std::move(p), QPoly{1}); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  RatFunc derivative() const;
  std::string to_string() const;

 private:
  void normalize();
  QPoly num_, den_;
};

// prod over roots theta of the monic g of f(theta), coefficients in Q(Gamma).
RatFunc resultant(const std::vector<RatFunc>& f, const std::vector<RatFunc>& g);

}  // namespace defzeta
