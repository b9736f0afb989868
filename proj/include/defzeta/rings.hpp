#pragma once

// Coefficient-ring policies shared by the cohomology reductions: Z/p^W,
// Z_q/p^W and Q(Gamma). Each exposes the same small vocabulary so that the
// reduction code is written once.

#include <gmpxx.h>

#include <string>

#include "defzeta/errors.hpp"
#include "defzeta/padic.hpp"
#include "defzeta/rational.hpp"
#include "defzeta/unramified.hpp"

namespace defzeta {

struct ZpRing {
  using T = mpz_class;
  long p;
  int W;
  mpz_class M;

  ZpRing(long p_, int W_) : p(p_), W(W_), M(ipow(p_, W_)) {}

  T zero() const { return 0; }
  T one() const { return 1; }
  T from_int(const mpz_class& c) const {
    T r;
    mpz_mod(r.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    return r;
  }
  T add(const T& a, const T& b) const {
    T r = a + b;
    if (r >= M) r -= M;
    return r;
  }
  T sub(const T& a, const T& b) const {
    T r = a - b;
    if (r < 0) r += M;
    return r;
  }
  T neg(const T& a) const { return a == 0 ? T(0) : T(M - a); }
  T mul(const T& a, const T& b) const {
    T r;
    mpz_mul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_tdiv_r(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
    return r;
  }
  T sigma(const T& a) const { return a; }
  bool is_zero(const T& a) const { return a == 0; }
  bool is_unit(const T& a) const { return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }
  T inv(const T& a) const {
    T r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t())) fail(ErrorKind::NotAUnit, "inverse of a non-unit");
    return r;
  }
  // Exact division by p^e of the representative.
  T div_p_power(const T& a, int e) const {
    if (e == 0) return a;
    mpz_class pe = ipow(p, e);
    if (!mpz_divisible_p(a.get_mpz_t(), pe.get_mpz_t()))
      fail(ErrorKind::PrecisionLoss, "division by p^" + std::to_string(e) + " is not exact");
    T r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), pe.get_mpz_t());
    return r;
  }
  T div_int(const T& a, long d) const {
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    return mul(div_p_power(a, e), inv(from_int(d)));
  }
};

struct ZqRing {
  using T = ZVec;
  const QuotientRing* R;

  explicit ZqRing(const QuotientRing& r) : R(&r) {}

  long p_() const { return R->p(); }
  T zero() const { return T(static_cast<std::size_t>(R->degree())); }
  T one() const { return R->one(); }
  T from_int(const mpz_class& c) const { return R->from_int(c); }
  T add(const T& a, const T& b) const { return R->add(a, b); }
  T sub(const T& a, const T& b) const { return R->sub(a, b); }
  T neg(const T& a) const { return R->sub(T{}, a); }
  T mul(const T& a, const T& b) const { return R->mul(a, b); }
  T sigma(const T& a) const { return R->frob(a); }
  bool is_zero(const T& a) const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }
  bool is_unit(const T& a) const { return !to_residue(a, R->p()).empty(); }
  T inv(const T& a) const {
    if (!is_unit(a)) fail(ErrorKind::NotAUnit, "inverse of a non-unit");
    return R->inverse(a);
  }
  T div_p_power(const T& a, int e) const { return divide_by_p_power(a, R->p(), e); }
  T div_int(const T& a, long d) const {
    long p = R->p();
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    mpz_class u, dz = d;
    mpz_invert(u.get_mpz_t(), dz.get_mpz_t(), R->modulus().get_mpz_t());
    return R->scale(div_p_power(a, e), u);
  }
};

struct RatRing {
  using T = RatFunc;

  T zero() const { return RatFunc(); }
  T one() const { return RatFunc(1); }
  T from_int(const mpz_class& c) const { return RatFunc(mpq_class(c)); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T neg(const T& a) const { return -a; }
  T mul(const T& a, const T& b) const { return a * b; }
  bool is_zero(const T& a) const { return a.is_zero(); }
  bool is_unit(const T& a) const { return !a.is_zero(); }
  T inv(const T& a) const { return RatFunc(1) / a; }
  T div_int(const T& a, long d) const {
    mpq_class q(1, d);
    q.canonicalize();
    return a * RatFunc(q);
  }
};

}  // namespace defzeta
