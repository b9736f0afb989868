#include "defzeta/padic.hpp"

#include <sstream>

namespace defzeta {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::RequiresTeichmullerModulus: return "RequiresTeichmullerModulus";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::Supersingular: return "Supersingular";
    case ErrorKind::NoValidShift: return "NoValidShift";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::UnstableTruncation: return "UnstableTruncation";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::NoRepresentative: return "NoRepresentative";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class ipow(long p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

int valuation(const mpz_class& a, long p) {
  if (a == 0) return kInfiniteValuation;
  mpz_class t = a;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

mpz_class symmetric(const mpz_class& a, const mpz_class& M) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());
  if (2 * r > M) r -= M;
  return r;
}

std::shared_ptr<const PadicContext> PadicContext::make(long p, int W) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::PreconditionViolation, "p must be an odd prime");
  if (W < 1) fail(ErrorKind::PreconditionViolation, "precision W must be at least 1");
  return std::make_shared<const PadicContext>(PadicContext{p, W, ipow(p, W)});
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && a->p == b->p && a->W == b->W);
}

PadicScalar::PadicScalar(ContextPtr ctx, const mpz_class& v) : ctx_(std::move(ctx)) {
  mpz_mod(v_.get_mpz_t(), v.get_mpz_t(), ctx_->modulus.get_mpz_t());
}

static void check(const PadicScalar& a, const PadicScalar& b) {
  if (!same_context(a.ctx(), b.ctx())) fail(ErrorKind::ContextMismatch, "p-adic operands differ in p or W");
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  check(*this, o);
  return {ctx_, v_ + o.v_};
}
PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
  check(*this, o);
  return {ctx_, v_ - o.v_};
}
PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  check(*this, o);
  return {ctx_, v_ * o.v_};
}
PadicScalar PadicScalar::operator-() const { return {ctx_, -v_}; }
bool PadicScalar::operator==(const PadicScalar& o) const { return same_context(ctx_, o.ctx_) && v_ == o.v_; }

bool PadicScalar::is_unit() const { return !mpz_divisible_ui_p(v_.get_mpz_t(), static_cast<unsigned long>(ctx_->p)); }

PadicScalar PadicScalar::inverse() const {
  mpz_class r;
  if (!is_unit() || mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), ctx_->modulus.get_mpz_t()) == 0)
    fail(ErrorKind::NotAUnit, "inverse of a non-unit p-adic scalar");
  return {ctx_, r};
}

PadicScalar PadicScalar::pow(const mpz_class& e) const {
  mpz_class r;
  if (e < 0) return inverse().pow(-e);
  mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), ctx_->modulus.get_mpz_t());
  return {ctx_, r};
}

int PadicScalar::valuation() const { return defzeta::valuation(v_, ctx_->p); }

std::vector<long> PadicScalar::digits() const {
  std::vector<long> d(static_cast<std::size_t>(ctx_->W));
  mpz_class t = v_;
  for (auto& x : d) x = static_cast<long>(mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(ctx_->p)));
  return d;
}

PadicScalar PadicScalar::from_digits(ContextPtr ctx, const std::vector<long>& d) {
  mpz_class v = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] < 0 || d[i] >= ctx->p) fail(ErrorKind::ParseError, "digit out of range");
    v = v * ctx->p + d[i];
  }
  return {std::move(ctx), v};
}

std::string PadicScalar::to_string() const {
  std::ostringstream os;
  auto d = digits();
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  return os.str();
}

}  // namespace defzeta
