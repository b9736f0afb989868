#pragma once

// Unramified extensions Z_q = Z_p[x]/phi(x) truncated mod p^W.

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "defzeta/fp_poly.hpp"
#include "defzeta/padic.hpp"
#include "defzeta/zpoly.hpp"

namespace defzeta {

// Z/p^k[x]/phi(x) for a monic phi; frob() is a -> a(x^p) mod phi, which is
// the Frobenius substitution exactly when phi is a Teichmuller modulus.
class QuotientRing {
 public:
  QuotientRing(long p, int k, ZVec phi);

  long p() const { return p_; }
  int precision() const { return k_; }
  int degree() const { return m_; }
  const mpz_class& modulus() const { return M_; }
  const ZVec& phi() const { return phi_; }

  ZVec reduce(const ZVec& a) const;  // any degree, any integer coefficients
  ZVec add(const ZVec& a, const ZVec& b) const;
  ZVec sub(const ZVec& a, const ZVec& b) const;
  ZVec mul(const ZVec& a, const ZVec& b) const;
  ZVec scale(const ZVec& a, const mpz_class& c) const;
  ZVec frob(const ZVec& a) const;
  ZVec pow(const ZVec& a, const mpz_class& e) const;
  ZVec one() const;
  ZVec from_int(const mpz_class& c) const;
  // Newton inverse; the residue must be invertible in F_p[x]/phi_bar.
  ZVec inverse(const ZVec& a) const;
  QuotientRing lower(int k) const;

 private:
  long p_;
  int k_;
  int m_;
  mpz_class M_;
  ZVec phi_;
  ZVec rev_inv_;  // inverse of reversed phi, long enough to reduce a(x^p) in one step
};

// Residue-level helpers for F_p[x]/phi_bar.
class ResidueData {
 public:
  explicit ResidueData(FpModulus mod);
  const FpModulus& modulus() const { return mod_; }
  // sigma^{-1}(a) = a^(p^(m-1)) computed via x^(1/p).
  FpVec inverse_frobenius(const FpVec& a) const;

 private:
  FpModulus mod_;
  std::vector<FpVec> root_powers_;  // (x^(1/p))^j, j < p
};

FpVec to_residue(const ZVec& a, long p);
ZVec lift_residue(const FpVec& a);
// Exact division of every coefficient by p^e; throws PrecisionLoss if not divisible.
ZVec divide_by_p_power(const ZVec& a, long p, int e);

// Precision tower over one modulus, rings built lazily from the top one.
class RingTower {
 public:
  RingTower(const QuotientRing& top, const ResidueData& residue);
  const QuotientRing& at(int k);
  const ResidueData& residue() const { return residue_; }
  long p() const { return top_.p(); }

 private:
  const QuotientRing& top_;
  const ResidueData& residue_;
  std::vector<std::unique_ptr<QuotientRing>> rings_;
};

// Solves frob(X) + b X + c = 0 mod p^K where b = 0 mod p; recursive halving.
ZVec solve_semilinear(RingTower& tower, const ZVec& b, const ZVec& c, int K);

// Residue data depends only on phi mod p, so precision variants share it.
struct ResidueCache {
  std::once_flag once;
  std::unique_ptr<ResidueData> data;
};

class UnramifiedExtension : public std::enable_shared_from_this<UnramifiedExtension> {
 public:
  UnramifiedExtension(ContextPtr ctx, ZVec modulus, bool is_teichmuller);
  // Precision variant of a checked modulus: no irreducibility test.
  UnramifiedExtension(ContextPtr ctx, ZVec modulus, bool is_teichmuller, std::shared_ptr<ResidueCache> cache);
  static std::shared_ptr<const UnramifiedExtension> make(ContextPtr ctx, ZVec modulus, bool is_teichmuller);

  const ContextPtr& ctx() const { return ctx_; }
  long p() const { return ctx_->p; }
  int W() const { return ctx_->W; }
  int m() const { return ring_.degree(); }
  const ZVec& modulus() const { return ring_.phi(); }
  bool is_teichmuller() const { return teich_; }
  const QuotientRing& ring() const { return ring_; }
  const ResidueData& residue() const;
  FpVec modulus_bar() const { return to_residue(ring_.phi(), p()); }
  // Tr(x^i) for i < m.
  const ZVec& power_sums() const;
  std::shared_ptr<const UnramifiedExtension> with_precision(int W) const;

 private:
  ContextPtr ctx_;
  QuotientRing ring_;
  bool teich_;
  std::shared_ptr<ResidueCache> residue_;
  mutable std::once_flag sums_once_;
  mutable ZVec sums_;
};
using ExtPtr = std::shared_ptr<const UnramifiedExtension>;

class ExtScalar {
 public:
  ExtScalar(ExtPtr ext, ZVec coeffs);  // coefficients reduced mod (phi, p^W)
  static ExtScalar constant(ExtPtr ext, const mpz_class& c);
  static ExtScalar generator(ExtPtr ext);  // x

  const ExtPtr& ext() const { return ext_; }
  const ZVec& raw() const { return c_; }  // length m, entries in [0, p^W)
  std::vector<PadicScalar> coeffs() const;

  ExtScalar operator+(const ExtScalar& o) const;
  ExtScalar operator-(const ExtScalar& o) const;
  ExtScalar operator*(const ExtScalar& o) const;
  ExtScalar operator-() const;
  bool operator==(const ExtScalar& o) const;

  bool is_zero() const;
  bool is_unit() const;
  ExtScalar inverse() const;
  ExtScalar pow(const mpz_class& e) const;
  int valuation() const;

  // Coefficients separated by ';', each as comma-separated base-p digits.
  std::string to_string() const;
  static ExtScalar parse(ExtPtr ext, const std::string& s);

 private:
  ExtPtr ext_;
  ZVec c_;
};

ExtPtr teichmuller_modulus(const FpVec& phi_bar, ContextPtr ctx);
ExtScalar frobenius_substitution(const ExtScalar& a);

// Res(g, f) = prod over roots theta of the monic g of f(theta), over Z/p^W.
// Every remainder must keep a unit leading coefficient; otherwise NotAUnit.
mpz_class resultant(const ZVec& f, const ZVec& g, long p, const mpz_class& M);
// Resultant over F_p with the same convention (g monic).
long resultant_fp(const FpVec& f, const FpVec& g, long p);

struct NormResult {
  PadicScalar value;  // its context carries the precision actually achieved
  bool via_resultant;
};
NormResult norm_with_method(const ExtScalar& mu);
PadicScalar norm_to_base(const ExtScalar& mu);
// Product of the m conjugates sigma^i(mu); used as an oracle.
PadicScalar norm_by_conjugates(const ExtScalar& mu);
// log/exp route on a unit; result mod p^(W - loss).
PadicScalar norm_log_exp(const ExtScalar& mu);
PadicScalar trace_to_base(const ExtScalar& a);

}  // namespace defzeta
