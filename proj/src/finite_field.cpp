#include "defzeta/finite_field.hpp"

#include <sstream>

#include "defzeta/errors.hpp"
#include "defzeta/padic.hpp"

namespace defzeta {

ResidueField::ResidueField(long p, FpVec modulus_bar) : mod_(fpoly::monic(modulus_bar, p), p) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::PreconditionViolation, "p must be an odd prime");
  fpoly::trim(modulus_bar);
  if (modulus_bar.empty() || modulus_bar.back() != 1)
    fail(ErrorKind::PreconditionViolation, "field polynomial must be monic");
  if (!fpoly::is_irreducible(mod_.poly(), p)) fail(ErrorKind::NotIrreducible, "field polynomial is reducible mod p");
}

std::shared_ptr<const ResidueField> ResidueField::make(long p, FpVec modulus_bar) {
  return std::make_shared<const ResidueField>(p, std::move(modulus_bar));
}

mpz_class ResidueField::order() const { return ipow(p(), n()); }

bool ResidueField::operator==(const ResidueField& o) const {
  return p() == o.p() && modulus_bar() == o.modulus_bar();
}

static void check(const FqElem& a, const FqElem& b) {
  if (a.field() != b.field() && !(*a.field() == *b.field()))
    fail(ErrorKind::ContextMismatch, "finite field operands differ");
}

FqElem::FqElem(FieldPtr field, FpVec coeffs) : field_(std::move(field)) {
  long p = field_->p();
  for (auto& x : coeffs) x = fpoly::norm_mod(x, p);
  c_ = field_->modulus().reduce(coeffs);
}

FqElem FqElem::constant(FieldPtr field, long c) { return FqElem(std::move(field), FpVec{c}); }

FqElem FqElem::from_index(FieldPtr field, std::uint64_t index) {
  FpVec c;
  auto p = static_cast<std::uint64_t>(field->p());
  while (index) {
    c.push_back(static_cast<long>(index % p));
    index /= p;
  }
  return FqElem(std::move(field), std::move(c));
}

FpVec FqElem::coeffs() const {
  FpVec r = c_;
  r.resize(static_cast<std::size_t>(field_->n()), 0);
  return r;
}

FqElem FqElem::operator+(const FqElem& o) const {
  check(*this, o);
  FqElem r = *this;
  r.c_ = fpoly::add(c_, o.c_, field_->p());
  return r;
}
FqElem FqElem::operator-(const FqElem& o) const {
  check(*this, o);
  FqElem r = *this;
  r.c_ = fpoly::sub(c_, o.c_, field_->p());
  return r;
}
FqElem FqElem::operator*(const FqElem& o) const {
  check(*this, o);
  FqElem r = *this;
  r.c_ = field_->modulus().mulmod(c_, o.c_);
  return r;
}
FqElem FqElem::operator-() const { return zero(field_) - *this; }
bool FqElem::operator==(const FqElem& o) const { return *field_ == *o.field_ && c_ == o.c_; }

FqElem FqElem::inverse() const {
  if (is_zero()) fail(ErrorKind::NotAUnit, "zero has no inverse in F_q");
  FqElem r = *this;
  r.c_ = fpoly::inverse_mod(c_, field_->modulus_bar(), field_->p());
  return r;
}

FqElem FqElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  FqElem r = *this;
  r.c_ = field_->modulus().powmod(c_, e);
  return r;
}

std::string FqElem::to_string() const {
  std::ostringstream os;
  auto c = coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

bool is_square(const FqElem& a) {
  if (a.is_zero()) fail(ErrorKind::ZeroInput, "is_square of zero");
  // a^((q-1)/2) = N(a)^((p-1)/2)
  const long p = a.field()->p();
  long nrm = fpoly::resultant(a.poly(), a.field()->modulus_bar(), p), r = 1;
  for (long e = (p - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) r = r * nrm % p;
    nrm = nrm * nrm % p;
  }
  return r == 1;
}

FpVec minimal_polynomial(const FqElem& gamma_bar) {
  // Berlekamp-Massey on s_i = coeff0(gamma^i). The minimal polynomial is
  // irreducible and s_0 = 1, so the recurrence found is exactly it.
  const long p = gamma_bar.field()->p();
  const int n = gamma_bar.field()->n();
  std::vector<long> s;
  s.reserve(static_cast<std::size_t>(2 * n));
  FqElem pw = FqElem::constant(gamma_bar.field(), 1);
  for (int i = 0; i < 2 * n; ++i) {
    s.push_back(pw.constant_term());
    pw = pw * gamma_bar;
  }
  FpVec C{1}, B{1};
  int L = 0, shift = 1;
  long b = 1;
  for (std::size_t k = 0; k < s.size(); ++k) {
    long d = s[k];
    for (int i = 1; i <= L; ++i)
      if (static_cast<std::size_t>(i) < C.size()) d = (d + C[static_cast<std::size_t>(i)] * s[k - static_cast<std::size_t>(i)]) % p;
    if (d == 0) {
      ++shift;
      continue;
    }
    long coef = d * fpoly::inv_mod(b, p) % p;
    FpVec T = C;
    FpVec Bs(static_cast<std::size_t>(shift), 0);
    Bs.insert(Bs.end(), B.begin(), B.end());
    C = fpoly::sub(C, fpoly::scale(Bs, coef, p), p);
    if (2 * L <= static_cast<int>(k)) {
      L = static_cast<int>(k) + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  // Connection polynomial C(z) = 1 + c1 z + ... + cL z^L; reverse to get the minimal polynomial.
  C.resize(static_cast<std::size_t>(L) + 1, 0);
  FpVec mp(C.rbegin(), C.rend());
  return fpoly::monic(mp, p);
}

FqElem cubic_discriminant(const FqElem& a, const FqElem& b, const FqElem& c) {
  auto F = a.field();
  auto k = [&](long v) { return FqElem::constant(F, v); };
  return a * a * b * b - k(4) * b * b * b - k(4) * a * a * a * c - k(27) * c * c + k(18) * a * b * c;
}

mpz_class naive_count(const FqElem& a, const FqElem& b, const FqElem& c) {
  if (cubic_discriminant(a, b, c).is_zero()) fail(ErrorKind::SingularCurve, "cubic has a repeated root");
  auto F = a.field();
  mpz_class q = F->order();
  if (!q.fits_ulong_p()) fail(ErrorKind::PreconditionViolation, "field too large for naive counting");
  const std::uint64_t Q = q.get_ui();
  mpz_class e = (q - 1) / 2;
  mpz_class count = 1;
  for (std::uint64_t i = 0; i < Q; ++i) {
    FqElem x = FqElem::from_index(F, i);
    FqElem f = ((x + a) * x + b) * x + c;
    if (f.is_zero())
      count += 1;
    else if (f.pow(e).poly() == FpVec{1})
      count += 2;
  }
  return count;
}

}  // namespace defzeta
