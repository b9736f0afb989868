#pragma once

#include <gmpxx.h>

#include <climits>
#include <memory>
#include <string>
#include <vector>

#include "defzeta/errors.hpp"

namespace defzeta {

constexpr int kInfiniteValuation = INT_MAX;

bool is_prime(long n);
mpz_class ipow(long p, long k);
// p-adic order of an integer; kInfiniteValuation for zero.
int valuation(const mpz_class& a, long p);
// Signed representative in (-M/2, M/2].
mpz_class symmetric(const mpz_class& a, const mpz_class& M);

struct PadicContext {
  long p;
  int W;
  mpz_class modulus;  // p^W

  static std::shared_ptr<const PadicContext> make(long p, int W);
};
using ContextPtr = std::shared_ptr<const PadicContext>;

bool same_context(const ContextPtr& a, const ContextPtr& b);

class PadicScalar {
 public:
  PadicScalar(ContextPtr ctx, const mpz_class& v);
  PadicScalar(ContextPtr ctx, long v) : PadicScalar(std::move(ctx), mpz_class(v)) {}

  const mpz_class& value() const { return v_; }
  const ContextPtr& ctx() const { return ctx_; }

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator-() const;
  bool operator==(const PadicScalar& o) const;

  bool is_unit() const;
  PadicScalar inverse() const;
  PadicScalar pow(const mpz_class& e) const;
  int valuation() const;

  // Base-p digits, least significant first, exactly W of them.
  std::vector<long> digits() const;
  static PadicScalar from_digits(ContextPtr ctx, const std::vector<long>& d);
  std::string to_string() const;

 private:
  ContextPtr ctx_;
  mpz_class v_;
};

}  // namespace defzeta
