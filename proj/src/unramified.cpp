#include "defzeta/unramified.hpp"

#include <algorithm>
#include <sstream>

#include "defzeta/errors.hpp"

namespace defzeta {

namespace {

int degree_of(const ZVec& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

void mod_in_place(ZVec& a, const mpz_class& M) {
  for (auto& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
}

}  // namespace

// ---------------------------------------------------------------- QuotientRing

QuotientRing::QuotientRing(long p, int k, ZVec phi) : p_(p), k_(k), M_(ipow(p, k)), phi_(std::move(phi)) {
  mod_in_place(phi_, M_);
  zpoly::trim(phi_);
  m_ = static_cast<int>(phi_.size()) - 1;
  if (m_ < 1 || phi_.back() != 1) fail(ErrorKind::PreconditionViolation, "modulus must be monic of positive degree");
  std::size_t len = static_cast<std::size_t>(std::max<long>(1, (p_ - 1) * (m_ - 1)));
  ZVec rev(phi_.rbegin(), phi_.rend());
  rev_inv_ = zpoly::series_inverse(rev, len, M_);
}

QuotientRing QuotientRing::lower(int k) const {
  if (k > k_) fail(ErrorKind::PreconditionViolation, "cannot raise precision of a quotient ring");
  QuotientRing r = *this;
  r.k_ = k;
  r.M_ = ipow(p_, k);
  mod_in_place(r.phi_, r.M_);
  mod_in_place(r.rev_inv_, r.M_);
  return r;
}

ZVec QuotientRing::reduce(const ZVec& in) const {
  ZVec a = in;
  mod_in_place(a, M_);
  const int m = m_;
  const int L = static_cast<int>(rev_inv_.size());
  for (int d = degree_of(a); d >= m; d = degree_of(a)) {
    int top = std::min(d, m - 1 + L);
    int base = d - top;
    std::size_t qlen = static_cast<std::size_t>(top - m + 1);
    ZVec ra(qlen);
    for (std::size_t i = 0; i < qlen; ++i) ra[i] = a[static_cast<std::size_t>(d) - i];
    ZVec qr = zpoly::mul_low(ra, rev_inv_, qlen, M_);
    qr.resize(qlen);
    ZVec q(qr.rbegin(), qr.rend());
    ZVec low = zpoly::mul_low(q, phi_, static_cast<std::size_t>(m), M_);
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
      auto& x = a[static_cast<std::size_t>(base) + i];
      if (i < low.size()) {
        x -= low[i];
        if (x < 0) x += M_;
      }
    }
    a.resize(static_cast<std::size_t>(base + m));
  }
  a.resize(static_cast<std::size_t>(m));
  return a;
}

ZVec QuotientRing::add(const ZVec& a, const ZVec& b) const {
  ZVec r(static_cast<std::size_t>(m_));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] += b[i];
    mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M_.get_mpz_t());
  }
  return r;
}

ZVec QuotientRing::sub(const ZVec& a, const ZVec& b) const {
  ZVec r(static_cast<std::size_t>(m_));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] -= b[i];
    mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M_.get_mpz_t());
  }
  return r;
}

ZVec QuotientRing::mul(const ZVec& a, const ZVec& b) const { return reduce(zpoly::mul(a, b, M_)); }

ZVec QuotientRing::scale(const ZVec& a, const mpz_class& c) const {
  ZVec r(static_cast<std::size_t>(m_));
  for (std::size_t i = 0; i < r.size() && i < a.size(); ++i) {
    mpz_mul(r[i].get_mpz_t(), a[i].get_mpz_t(), c.get_mpz_t());
    mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M_.get_mpz_t());
  }
  return r;
}

ZVec QuotientRing::frob(const ZVec& a) const {
  std::size_t n = std::min<std::size_t>(a.size(), static_cast<std::size_t>(m_));
  if (n == 0) return ZVec(static_cast<std::size_t>(m_));
  ZVec t((n - 1) * static_cast<std::size_t>(p_) + 1);
  for (std::size_t i = 0; i < n; ++i) t[i * static_cast<std::size_t>(p_)] = a[i];
  return reduce(t);
}

ZVec QuotientRing::one() const { return from_int(1); }

ZVec QuotientRing::from_int(const mpz_class& c) const {
  ZVec r(static_cast<std::size_t>(m_));
  mpz_mod(r[0].get_mpz_t(), c.get_mpz_t(), M_.get_mpz_t());
  return r;
}

ZVec QuotientRing::pow(const ZVec& a, const mpz_class& e) const {
  ZVec r = one(), b = reduce(a);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, b);
  }
  return r;
}

ZVec QuotientRing::inverse(const ZVec& a) const {
  FpVec phib = to_residue(phi_, p_);
  FpVec ab = to_residue(a, p_);
  if (ab.empty()) fail(ErrorKind::NotAUnit, "element is not a unit");
  ZVec y = reduce(lift_residue(fpoly::inverse_mod(ab, phib, p_)));
  ZVec ar = reduce(a);
  for (int good = 1; good < k_; good *= 2) {
    ZVec t = mul(ar, y);
    for (auto& c : t) c = M_ - c;
    t[0] += 2;
    y = mul(y, t);
  }
  return y;
}

// ---------------------------------------------------------------- residue helpers

FpVec to_residue(const ZVec& a, long p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<long>(mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(p)));
  fpoly::trim(r);
  return r;
}

ZVec lift_residue(const FpVec& a) {
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  return r;
}

ZVec divide_by_p_power(const ZVec& a, long p, int e) {
  if (e == 0) return a;
  mpz_class pe = ipow(p, e);
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!mpz_divisible_p(a[i].get_mpz_t(), pe.get_mpz_t()))
      fail(ErrorKind::PrecisionLoss, "coefficient not divisible by p^" + std::to_string(e));
    mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), pe.get_mpz_t());
  }
  return r;
}

ResidueData::ResidueData(FpModulus mod) : mod_(std::move(mod)) {
  const long p = mod_.p();
  const int m = mod_.degree();
  FpVec root = mod_.reduce(FpVec{0, 1});
  mpz_class pp = p;
  for (int i = 0; i + 1 < m; ++i) root = mod_.powmod(root, pp);
  root_powers_.push_back(FpVec{1});
  for (long j = 1; j < p; ++j) root_powers_.push_back(mod_.mulmod(root_powers_.back(), root));
}

FpVec ResidueData::inverse_frobenius(const FpVec& a) const {
  const long p = mod_.p();
  FpVec acc;
  for (long j = 0; j < p; ++j) {
    FpVec part;
    for (std::size_t i = static_cast<std::size_t>(j), k = 0; i < a.size(); i += static_cast<std::size_t>(p), ++k) {
      part.resize(k + 1, 0);
      part[k] = a[i];
    }
    fpoly::trim(part);
    if (part.empty()) continue;
    acc = fpoly::add(acc, fpoly::mul(part, root_powers_[static_cast<std::size_t>(j)], p), p);
  }
  return mod_.reduce(acc);
}

// ---------------------------------------------------------------- semilinear solver

RingTower::RingTower(const QuotientRing& top, const ResidueData& residue) : top_(top), residue_(residue) {
  rings_.resize(static_cast<std::size_t>(top.precision()) + 1);
}

const QuotientRing& RingTower::at(int k) {
  if (k == top_.precision()) return top_;
  if (k < 1 || k > top_.precision()) fail(ErrorKind::PreconditionViolation, "precision outside tower");
  auto& slot = rings_[static_cast<std::size_t>(k)];
  if (!slot) slot = std::make_unique<QuotientRing>(top_.lower(k));
  return *slot;
}

ZVec solve_semilinear(RingTower& tower, const ZVec& b, const ZVec& c, int K) {
  const long p = tower.p();
  const QuotientRing& R = tower.at(K);
  const std::size_t m = static_cast<std::size_t>(R.degree());
  if (K == 1) {
    FpVec cb = to_residue(c, p);
    FpVec neg = fpoly::sub(FpVec{}, cb, p);
    ZVec x = lift_residue(tower.residue().inverse_frobenius(neg));
    x.resize(m);
    return x;
  }
  int K1 = (K + 1) / 2;
  ZVec bK = R.reduce(b), cK = R.reduce(c);
  ZVec x1 = solve_semilinear(tower, bK, cK, K1);
  ZVec v = R.add(R.add(R.frob(x1), R.mul(bK, x1)), cK);
  ZVec c2 = divide_by_p_power(v, p, K1);
  ZVec x2 = solve_semilinear(tower, bK, c2, K - K1);
  return R.add(x1, R.scale(x2, ipow(p, K1)));
}

// ---------------------------------------------------------------- UnramifiedExtension

UnramifiedExtension::UnramifiedExtension(ContextPtr ctx, ZVec modulus, bool is_teichmuller)
    : ctx_(std::move(ctx)),
      ring_(ctx_->p, ctx_->W, std::move(modulus)),
      teich_(is_teichmuller),
      residue_(std::make_shared<ResidueCache>()) {
  if (!fpoly::is_irreducible(to_residue(ring_.phi(), ctx_->p), ctx_->p))
    fail(ErrorKind::NotIrreducible, "modulus is reducible mod p");
}

UnramifiedExtension::UnramifiedExtension(ContextPtr ctx, ZVec modulus, bool is_teichmuller,
                                         std::shared_ptr<ResidueCache> cache)
    : ctx_(std::move(ctx)),
      ring_(ctx_->p, ctx_->W, std::move(modulus)),
      teich_(is_teichmuller),
      residue_(std::move(cache)) {}

ExtPtr UnramifiedExtension::make(ContextPtr ctx, ZVec modulus, bool is_teichmuller) {
  return std::make_shared<const UnramifiedExtension>(std::move(ctx), std::move(modulus), is_teichmuller);
}

const ResidueData& UnramifiedExtension::residue() const {
  std::call_once(residue_->once, [&] {
    residue_->data = std::make_unique<ResidueData>(FpModulus(to_residue(ring_.phi(), p()), p()));
  });
  return *residue_->data;
}

namespace {

// Tr(x^k), k < m, from -rev'(t)/rev(t).
ZVec power_sums_of(const ZVec& phi, const mpz_class& M) {
  const std::size_t m = phi.size() - 1;
  ZVec s(m);
  s[0] = static_cast<unsigned long>(m);
  if (m > 1) {
    ZVec rev(phi.rbegin(), phi.rend());
    ZVec drev(rev.size() - 1);
    for (std::size_t i = 1; i < rev.size(); ++i) drev[i - 1] = rev[i] * static_cast<unsigned long>(i);
    zpoly::reduce_coeffs(drev, M);
    std::size_t len = m - 1;
    ZVec q = zpoly::mul_low(drev, zpoly::series_inverse(rev, len, M), len, M);
    q.resize(len);
    for (std::size_t k = 1; k < m; ++k) {
      mpz_class v = -q[k - 1];
      mpz_mod(s[k].get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    }
  }
  zpoly::reduce_coeffs(s, M);
  return s;
}

}  // namespace

const ZVec& UnramifiedExtension::power_sums() const {
  std::call_once(sums_once_, [&] { sums_ = power_sums_of(ring_.phi(), ctx_->modulus); });
  return sums_;
}

ExtPtr UnramifiedExtension::with_precision(int W) const {
  if (W > this->W()) fail(ErrorKind::PreconditionViolation, "cannot raise extension precision");
  if (W == this->W()) return shared_from_this();
  return std::make_shared<const UnramifiedExtension>(PadicContext::make(p(), W), ring_.phi(), teich_, residue_);
}

// ---------------------------------------------------------------- ExtScalar

ExtScalar::ExtScalar(ExtPtr ext, ZVec coeffs) : ext_(std::move(ext)), c_(ext_->ring().reduce(coeffs)) {}

ExtScalar ExtScalar::constant(ExtPtr ext, const mpz_class& c) { return ExtScalar(std::move(ext), ZVec{c}); }

ExtScalar ExtScalar::generator(ExtPtr ext) { return ExtScalar(std::move(ext), ZVec{0, 1}); }

std::vector<PadicScalar> ExtScalar::coeffs() const {
  std::vector<PadicScalar> r;
  for (const auto& c : c_) r.emplace_back(ext_->ctx(), c);
  return r;
}

static void check(const ExtScalar& a, const ExtScalar& b) {
  if (a.ext() != b.ext() &&
      !(same_context(a.ext()->ctx(), b.ext()->ctx()) && a.ext()->modulus() == b.ext()->modulus()))
    fail(ErrorKind::ContextMismatch, "extension operands differ");
}

ExtScalar ExtScalar::operator+(const ExtScalar& o) const {
  check(*this, o);
  ExtScalar r = *this;
  r.c_ = ext_->ring().add(c_, o.c_);
  return r;
}
ExtScalar ExtScalar::operator-(const ExtScalar& o) const {
  check(*this, o);
  ExtScalar r = *this;
  r.c_ = ext_->ring().sub(c_, o.c_);
  return r;
}
ExtScalar ExtScalar::operator*(const ExtScalar& o) const {
  check(*this, o);
  ExtScalar r = *this;
  r.c_ = ext_->ring().mul(c_, o.c_);
  return r;
}
ExtScalar ExtScalar::operator-() const {
  ExtScalar r = *this;
  r.c_ = ext_->ring().sub(ZVec{}, c_);
  return r;
}
bool ExtScalar::operator==(const ExtScalar& o) const {
  check(*this, o);
  return c_ == o.c_;
}

bool ExtScalar::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

bool ExtScalar::is_unit() const { return !to_residue(c_, ext_->p()).empty(); }

ExtScalar ExtScalar::inverse() const {
  if (!is_unit()) fail(ErrorKind::NotAUnit, "inverse of a non-unit in Z_q");
  ExtScalar r = *this;
  r.c_ = ext_->ring().inverse(c_);
  return r;
}

ExtScalar ExtScalar::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  ExtScalar r = *this;
  r.c_ = ext_->ring().pow(c_, e);
  return r;
}

int ExtScalar::valuation() const {
  int v = kInfiniteValuation;
  for (const auto& c : c_) v = std::min(v, defzeta::valuation(c, ext_->p()));
  return v;
}

std::string ExtScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : coeffs()) {
    os << (first ? "" : ";") << c.to_string();
    first = false;
  }
  return os.str();
}

ExtScalar ExtScalar::parse(ExtPtr ext, const std::string& s) {
  ZVec coeffs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::vector<long> digits;
    std::stringstream ds(item);
    std::string d;
    while (std::getline(ds, d, ',')) {
      try {
        digits.push_back(std::stol(d));
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad digit '" + d + "'");
      }
    }
    coeffs.push_back(PadicScalar::from_digits(ext->ctx(), digits).value());
  }
  if (static_cast<int>(coeffs.size()) > ext->m()) fail(ErrorKind::ParseError, "too many coefficients");
  return ExtScalar(std::move(ext), std::move(coeffs));
}

// ---------------------------------------------------------------- Teichmuller modulus, sigma

ExtPtr teichmuller_modulus(const FpVec& phi_bar_in, ContextPtr ctx) {
  const long p = ctx->p;
  const int W = ctx->W;
  FpVec phi_bar = phi_bar_in;
  fpoly::trim(phi_bar);
  if (phi_bar.empty() || phi_bar.back() != 1) fail(ErrorKind::PreconditionViolation, "phi_bar must be monic");
  if (!fpoly::is_irreducible(phi_bar, p)) fail(ErrorKind::NotIrreducible, "phi_bar is reducible");
  const int m = fpoly::degree(phi_bar);
  ResidueData residue(FpModulus(phi_bar, p));
  ZVec phi = lift_residue(phi_bar);
  // Doubling: phi <- phi + p^k D where tau(D) + b D + e/p^k = 0 mod p^(k2-k),
  // tau(a) = a(x^p) mod phi and b = -p x^(p-1) tau(phi') / phi'.
  for (int k = 1; k < W;) {
    int k2 = std::min(2 * k, W), d = k2 - k;
    QuotientRing R(p, k2, phi);
    ZVec t(static_cast<std::size_t>(p * m) + 1);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(m); ++i) t[i * static_cast<std::size_t>(p)] = R.phi()[i];
    ZVec c = divide_by_p_power(R.reduce(t), p, k);
    QuotientRing Rd = R.lower(d);
    ZVec dphi(static_cast<std::size_t>(m));
    for (std::size_t i = 1; i <= static_cast<std::size_t>(m); ++i) dphi[i - 1] = Rd.phi()[i] * static_cast<long>(i);
    ZVec xp1(static_cast<std::size_t>(p));
    xp1[static_cast<std::size_t>(p - 1)] = p;
    ZVec b = Rd.mul(Rd.mul(Rd.frob(dphi), Rd.inverse(dphi)), xp1);
    b = Rd.sub(ZVec{}, b);
    RingTower tower(Rd, residue);
    ZVec D = solve_semilinear(tower, b, c, d);
    mpz_class pk = ipow(p, k);
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) phi[i] = R.phi()[i] + pk * D[i];
    phi[static_cast<std::size_t>(m)] = 1;
    mod_in_place(phi, R.modulus());
    k = k2;
  }
  // phi_bar was checked above
  return std::make_shared<const UnramifiedExtension>(std::move(ctx), std::move(phi), true,
                                                     std::make_shared<ResidueCache>());
}

ExtScalar frobenius_substitution(const ExtScalar& a) {
  if (!a.ext()->is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "sigma needs a Teichmuller modulus");
  return ExtScalar(a.ext(), a.ext()->ring().frob(a.raw()));
}

// ---------------------------------------------------------------- resultants and norms

mpz_class resultant(const ZVec& f, const ZVec& g, long p, const mpz_class& M) {
  ZVec A = g, B = f;
  mod_in_place(A, M);
  mod_in_place(B, M);
  int a = degree_of(A);
  if (a < 0 || A[static_cast<std::size_t>(a)] != 1) fail(ErrorKind::PreconditionViolation, "resultant needs a monic g");
  A.resize(static_cast<std::size_t>(a) + 1);
  auto is_unit = [&](const mpz_class& x) { return !mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)); };
  auto remainder = [&](ZVec U, const ZVec& V, int dv) {
    mpz_class li;
    mpz_invert(li.get_mpz_t(), V[static_cast<std::size_t>(dv)].get_mpz_t(), M.get_mpz_t());
    for (int i = degree_of(U); i >= dv; i = std::min(i - 1, degree_of(U))) {
      mpz_class c = U[static_cast<std::size_t>(i)] * li % M;
      if (c == 0) continue;
      for (int j = 0; j <= dv; ++j) {
        auto& x = U[static_cast<std::size_t>(i - dv + j)];
        x -= c * V[static_cast<std::size_t>(j)];
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
      }
    }
    U.resize(static_cast<std::size_t>(std::max(0, std::min(degree_of(U) + 1, dv))));
    return U;
  };
  // Res(g, f) = Res(g, f mod g) since g is monic.
  B = remainder(B, A, a);
  mpz_class result = 1;
  for (;;) {
    int b = degree_of(B);
    if (b < 0) return 0;
    if (b == 0) {
      mpz_class t;
      mpz_powm_ui(t.get_mpz_t(), B[0].get_mpz_t(), static_cast<unsigned long>(a), M.get_mpz_t());
      return result * t % M;
    }
    if (!is_unit(B[static_cast<std::size_t>(b)]))
      fail(ErrorKind::NotAUnit, "remainder sequence has a non-unit leading coefficient");
    ZVec Rm = remainder(A, B, b);
    int r = degree_of(Rm);
    if (r < 0) return 0;
    // Res(A,B) = (-1)^(ab) lc(B)^(a-r) Res(B,R)
    mpz_class t;
    mpz_powm_ui(t.get_mpz_t(), B[static_cast<std::size_t>(b)].get_mpz_t(), static_cast<unsigned long>(a - r), M.get_mpz_t());
    result = result * t % M;
    if ((static_cast<long>(a) * b) % 2 == 1) result = (M - result) % M;
    A = std::move(B);
    B = std::move(Rm);
    a = b;
  }
}

long resultant_fp(const FpVec& f, const FpVec& g, long p) {
  return fpoly::resultant(f, g, p);
}

PadicScalar trace_to_base(const ExtScalar& a) {
  const auto& s = a.ext()->power_sums();
  mpz_class t = 0;
  for (std::size_t i = 0; i < s.size(); ++i) t += a.raw()[i] * s[i];
  return PadicScalar(a.ext()->ctx(), t);
}

PadicScalar norm_by_conjugates(const ExtScalar& mu) {
  if (!mu.ext()->is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "norm needs a Teichmuller modulus");
  const auto& R = mu.ext()->ring();
  ZVec prod = mu.raw(), cur = mu.raw();
  for (int i = 1; i < mu.ext()->m(); ++i) {
    cur = R.frob(cur);
    prod = R.mul(prod, cur);
  }
  return PadicScalar(mu.ext()->ctx(), prod[0]);
}

namespace {

// exp(z) in Z_p for v(z) >= 1, result mod p^Wt.
mpz_class padic_exp(const mpz_class& z, long p, int Wt) {
  long K = 1;
  while (K - (K - 1) / (p - 1) < Wt + 1) ++K;
  int P = Wt + static_cast<int>(K / (p - 1)) + 2;
  mpz_class MP = ipow(p, P), Mt = ipow(p, Wt);
  mpz_class sum = 1, term = 1;
  for (long k = 1; k <= K; ++k) {
    term = term * z % MP;
    long kk = k;
    int e = 0;
    while (kk % p == 0) {
      kk /= p;
      ++e;
    }
    mpz_class pe = ipow(p, e);
    if (!mpz_divisible_p(term.get_mpz_t(), pe.get_mpz_t())) fail(ErrorKind::PrecisionLoss, "exp series lost precision");
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), pe.get_mpz_t());
    mpz_class inv, kkz = kk;
    mpz_invert(inv.get_mpz_t(), kkz.get_mpz_t(), MP.get_mpz_t());
    term = term * inv % MP;
    sum += term;
  }
  mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), Mt.get_mpz_t());
  return sum;
}

mpz_class teichmuller_scalar(long c, long p, int W) {
  mpz_class M = ipow(p, W), a = c, pp = p;
  for (int i = 0; i < W; ++i) mpz_powm(a.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t(), M.get_mpz_t());
  return a;
}

int ilog_p(long k, long p) {
  int e = 0;
  while (k >= p) {
    k /= p;
    ++e;
  }
  return e;
}

constexpr int kResultantMaxDegree = 64;

}  // namespace

PadicScalar norm_log_exp(const ExtScalar& mu) {
  const auto& ext = *mu.ext();
  if (!ext.is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "norm needs a Teichmuller modulus");
  if (!mu.is_unit()) fail(ErrorKind::NotAUnit, "log/exp norm needs a unit");
  const long p = ext.p();
  const int W = ext.W();
  long cbar = resultant_fp(to_residue(mu.raw(), p), ext.modulus_bar(), p);
  // v = mu^p / sigma(mu) = 1 mod p and N(v) = N(mu)^(p-1). Raising v to p^j
  // shortens the log series; the work precision absorbs the division by p^j
  // and by the p-parts of the series denominators.
  int pow_cost = static_cast<int>(mpz_sizeinbase(mpz_class(p).get_mpz_t(), 2)) + 1;
  int j = 0;
  long best = -1;
  for (int jj = 0; jj < W; ++jj) {
    long cost = static_cast<long>(jj) * pow_cost + W / (jj + 1);
    if (best < 0 || cost < best) {
      best = cost;
      j = jj;
    }
  }
  long K = 1;
  while ((K + 1) * (j + 1) - ilog_p(K + 1, p) < W + j) ++K;
  const int W2 = W + j + ilog_p(K, p) + 1;
  QuotientRing R(p, W2, ext.modulus());
  const mpz_class& M = R.modulus();
  ZVec v = R.mul(R.pow(mu.raw(), mpz_class(p)), R.inverse(R.frob(mu.raw())));
  for (int i = 0; i < j; ++i) v = R.pow(v, mpz_class(p));
  ZVec z = v;
  z[0] -= 1;
  if (z[0] < 0) z[0] += M;
  ZVec acc(static_cast<std::size_t>(ext.m())), zk = z;
  for (long k = 1; k <= K; ++k) {
    long kk = k;
    int e = 0;
    while (kk % p == 0) {
      kk /= p;
      ++e;
    }
    mpz_class inv, kkz = kk;
    mpz_invert(inv.get_mpz_t(), kkz.get_mpz_t(), M.get_mpz_t());
    ZVec term = R.scale(divide_by_p_power(zk, p, e), inv);
    acc = (k % 2 == 1) ? R.add(acc, term) : R.sub(acc, term);
    if (k < K) zk = R.mul(zk, z);
  }
  ZVec logv = divide_by_p_power(acc, p, j);
  ZVec s = power_sums_of(R.phi(), M);
  mpz_class Mt = ipow(p, W), T = 0;
  for (std::size_t i = 0; i < s.size(); ++i) T += logv[i] * s[i];
  mpz_mod(T.get_mpz_t(), T.get_mpz_t(), Mt.get_mpz_t());
  mpz_class inv;
  mpz_class pm1 = p - 1;
  mpz_invert(inv.get_mpz_t(), pm1.get_mpz_t(), Mt.get_mpz_t());
  T = T * inv % Mt;
  mpz_class u = padic_exp(T, p, W);
  return PadicScalar(ext.ctx(), teichmuller_scalar(cbar, p, W) * u);
}

NormResult norm_with_method(const ExtScalar& mu) {
  const auto& ext = *mu.ext();
  if (!ext.is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "norm needs a Teichmuller modulus");
  if (mu.is_zero()) fail(ErrorKind::ZeroInput, "norm of zero");
  const long p = ext.p();
  const int m = ext.m();
  int v = mu.valuation();
  if (v > 0) {
    // N(p^v u) = p^(mv) N(u), u known mod p^(W-v).
    if (v >= ext.W()) fail(ErrorKind::ZeroInput, "norm of zero");
    auto low = ext.with_precision(ext.W() - v);
    ExtScalar u(low, divide_by_p_power(mu.raw(), p, v));
    NormResult r = norm_with_method(u);
    int prec = std::min(ext.W(), r.value.ctx()->W + m * v);
    auto ctx = PadicContext::make(p, prec);
    return {PadicScalar(ctx, r.value.value() * ipow(p, static_cast<long>(m) * v)), r.via_resultant};
  }
  if (m == 1) return {PadicScalar(ext.ctx(), mu.raw()[0]), true};
  if (m <= kResultantMaxDegree) {
    try {
      const auto& R = ext.ring();
      const mpz_class& M = R.modulus();
      int d = fpoly::degree(to_residue(mu.raw(), p));
      int r = m - 1 - d;
      ZVec shifted(static_cast<std::size_t>(r), mpz_class(0));
      shifted.insert(shifted.end(), mu.raw().begin(), mu.raw().end());
      ZVec mu_r = R.reduce(shifted);
      mpz_class res = resultant(mu_r, R.phi(), p, M);
      // N(x) = (-1)^m phi(0).
      mpz_class nx = (m % 2 == 0) ? R.phi()[0] : mpz_class(M - R.phi()[0]);
      mpz_class nxr;
      mpz_powm_ui(nxr.get_mpz_t(), nx.get_mpz_t(), static_cast<unsigned long>(r), M.get_mpz_t());
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), nxr.get_mpz_t(), M.get_mpz_t()) == 0) fail(ErrorKind::NotAUnit, "N(x) not a unit");
      return {PadicScalar(ext.ctx(), res * inv), true};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotAUnit) throw;
    }
  }
  return {norm_log_exp(mu), false};
}

PadicScalar norm_to_base(const ExtScalar& mu) { return norm_with_method(mu).value; }

}  // namespace defzeta
