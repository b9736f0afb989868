#include "defzeta/fp_poly.hpp"

#include <algorithm>
#include <cstdint>

#include "defzeta/errors.hpp"

namespace defzeta {
namespace fpoly {

namespace {

constexpr std::size_t kKroneckerCutoff = 48;

FpVec kronecker(const FpVec& a, const FpVec& b, std::size_t count) {
  // 32-bit slots hold sums of up to 2^32 / (p-1)^2 products.
  std::vector<std::uint32_t> wa(a.begin(), a.end()), wb(b.begin(), b.end());
  mpz_class A, B, C;
  mpz_import(A.get_mpz_t(), wa.size(), -1, sizeof(std::uint32_t), 0, 0, wa.data());
  mpz_import(B.get_mpz_t(), wb.size(), -1, sizeof(std::uint32_t), 0, 0, wb.data());
  mpz_mul(C.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  std::size_t words = (mpz_sizeinbase(C.get_mpz_t(), 2) + 31) / 32;
  std::vector<std::uint32_t> wc(words + 1, 0);
  std::size_t got = 0;
  mpz_export(wc.data(), &got, -1, sizeof(std::uint32_t), 0, 0, C.get_mpz_t());
  FpVec out(count, 0);
  for (std::size_t i = 0; i < count && i < got; ++i) out[i] = static_cast<long>(wc[i]);
  return out;
}

}  // namespace

long norm_mod(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long inv_mod(long a, long p) {
  a = norm_mod(a, p);
  if (a == 0) fail(ErrorKind::NotAUnit, "zero has no inverse mod p");
  long r = 1, e = p - 2, b = a;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

void trim(FpVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpVec& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

FpVec add(const FpVec& a, const FpVec& b, long p) {
  FpVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = s >= p ? s - p : s;
  }
  trim(r);
  return r;
}

FpVec sub(const FpVec& a, const FpVec& b, long p) {
  FpVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = s < 0 ? s + p : s;
  }
  trim(r);
  return r;
}

FpVec scale(const FpVec& a, long c, long p) {
  c = norm_mod(c, p);
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c % p;
  trim(r);
  return r;
}

FpVec mul_low(const FpVec& a, const FpVec& b, std::size_t n, long p) {
  if (a.empty() || b.empty() || n == 0) return {};
  std::size_t full = a.size() + b.size() - 1;
  std::size_t count = std::min(n, full);
  FpVec out;
  if (std::min(a.size(), b.size()) >= kKroneckerCutoff) {
    FpVec at(a.begin(), a.begin() + std::min(a.size(), count));
    FpVec bt(b.begin(), b.begin() + std::min(b.size(), count));
    out = kronecker(at, bt, count);
    for (auto& c : out) c %= p;
  } else {
    std::vector<std::int64_t> acc(count, 0);
    for (std::size_t i = 0; i < a.size() && i < count; ++i) {
      if (!a[i]) continue;
      std::size_t lim = std::min(b.size(), count - i);
      for (std::size_t j = 0; j < lim; ++j) acc[i + j] += a[i] * b[j];
    }
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<long>(acc[i] % p);
  }
  trim(out);
  return out;
}

FpVec mul(const FpVec& a, const FpVec& b, long p) {
  if (a.empty() || b.empty()) return {};
  return mul_low(a, b, a.size() + b.size() - 1, p);
}

FpVec derivative(const FpVec& a, long p) {
  FpVec r(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = static_cast<long>(i % p) * a[i] % p;
  trim(r);
  return r;
}

long eval(const FpVec& a, long x, long p) {
  long r = 0;
  x = norm_mod(x, p);
  for (std::size_t i = a.size(); i-- > 0;) r = (r * x + a[i]) % p;
  return r;
}

void divrem(const FpVec& a, const FpVec& b, long p, FpVec& q, FpVec& r) {
  int db = degree(b);
  if (db < 0) fail(ErrorKind::ZeroInput, "polynomial division by zero");
  r = a;
  trim(r);
  int da = degree(r);
  if (da < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(da - db + 1), 0);
  long li = inv_mod(b[static_cast<std::size_t>(db)], p);
  for (int i = da; i >= db; --i) {
    long c = r[static_cast<std::size_t>(i)] * li % p;
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[static_cast<std::size_t>(i - db + j)];
      x = (x - c * b[static_cast<std::size_t>(j)]) % p;
      if (x < 0) x += p;
    }
  }
  trim(q);
  trim(r);
}

FpVec rem(const FpVec& a, const FpVec& b, long p) {
  FpVec q, r;
  divrem(a, b, p, q, r);
  return r;
}

FpVec monic(const FpVec& a, long p) {
  int d = degree(a);
  if (d < 0) return {};
  return scale(a, inv_mod(a[static_cast<std::size_t>(d)], p), p);
}

FpVec gcd(const FpVec& a, const FpVec& b, long p) {
  FpVec x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    FpVec r = rem(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, p);
}

FpVec inverse_mod(const FpVec& a, const FpVec& f, long p) {
  // Extended Euclid tracking only the coefficient of a.
  FpVec r0 = f, r1 = rem(a, f, p), s0, s1{1};
  while (degree(r1) > 0) {
    FpVec q, r;
    divrem(r0, r1, p, q, r);
    FpVec s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) fail(ErrorKind::NotAUnit, "polynomial is not invertible modulo f");
  return rem(scale(s1, inv_mod(r1[0], p), p), f, p);
}

FpVec series_inverse(const FpVec& a, std::size_t n, long p) {
  if (n == 0) return {};
  if (a.empty() || a[0] == 0) fail(ErrorKind::NotAUnit, "series constant term is zero");
  FpVec y{inv_mod(a[0], p)};
  std::size_t len = 1;
  while (len < n) {
    std::size_t next = std::min(2 * len, n);
    FpVec at(a.begin(), a.begin() + static_cast<long>(std::min(a.size(), next)));
    FpVec ay = mul_low(at, y, next, p);
    ay.resize(next, 0);
    for (auto& c : ay) c = c ? p - c : 0;
    ay[0] = (ay[0] + 2) % p;
    y = mul_low(y, ay, next, p);
    len = next;
  }
  y.resize(n, 0);
  return y;
}

FpVec taylor_shift(const FpVec& a, long c, long p) {
  c = norm_mod(c, p);
  FpVec r;
  for (std::size_t i = a.size(); i-- > 0;) {
    // r = r (X + c) + a_i
    r.insert(r.begin(), 0);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) r[k] = (r[k] + c * r[k + 1]) % p;
    r[0] = (r[0] + a[i]) % p;
  }
  trim(r);
  return r;
}

long resultant(const FpVec& f_in, const FpVec& g_in, long p) {
  FpVec f = f_in, g = monic(g_in, p);
  long acc = 1;
  for (;;) {
    const int dg = degree(g);
    f = rem(f, g, p);
    const int df = degree(f);
    if (df < 0) return 0;
    long lc = f[static_cast<std::size_t>(df)], pw = 1;
    for (int i = 0; i < dg; ++i) pw = pw * lc % p;
    acc = acc * pw % p;
    if (df == 0) return acc;
    // prod_{g(t)=0} f(t) = (-1)^(dg df) lc(f)^dg prod_{f(u)=0} g(u)
    if ((static_cast<long>(dg) * df) % 2 == 1) acc = (p - acc) % p;
    FpVec next = monic(f, p);
    f = std::move(g);
    g = std::move(next);
  }
}

bool is_irreducible(const FpVec& f_in, long p) {
  FpVec f = f_in;
  trim(f);
  int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  FpModulus mod(monic(f, p), p);
  const FpVec x{0, 1};
  // Rabin: x^(p^n) = x and gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
  std::vector<int> need;
  for (int r = 2, k = n; r <= k; ++r)
    if (k % r == 0) {
      need.push_back(n / r);
      while (k % r == 0) k /= r;
    }
  for (int i = 1; i <= std::min(n / 2, 16); ++i) need.push_back(i);  // early exits on small factors
  const mpz_class pp = p;
  FpVec xp = x;
  for (int i = 1; i <= n; ++i) {
    xp = mod.powmod(xp, pp);
    if (std::find(need.begin(), need.end(), i) != need.end()) {
      FpVec g = gcd(mod.poly(), sub(xp, x, p), p);
      if (degree(g) > 0) return false;
    }
  }
  return xp == x;
}

FpVec smallest_irreducible(int n, long p) {
  if (n < 1) fail(ErrorKind::PreconditionViolation, "degree must be positive");
  if (n == 1) return {0, 1};
  FpVec f(static_cast<std::size_t>(n) + 1, 0);
  f[static_cast<std::size_t>(n)] = 1;
  for (;;) {
    // Increment the lower coefficients as a base-p counter.
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(n)) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == static_cast<std::size_t>(n)) fail(ErrorKind::NotIrreducible, "no irreducible found");
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
}

}  // namespace fpoly

FpModulus::FpModulus(FpVec f, long p) : f_(std::move(f)), p_(p) {
  fpoly::trim(f_);
  n_ = fpoly::degree(f_);
  if (n_ < 1 || f_.back() != 1) fail(ErrorKind::PreconditionViolation, "modulus must be monic of positive degree");
  FpVec rev(f_.rbegin(), f_.rend());
  rev_inv_ = fpoly::series_inverse(rev, static_cast<std::size_t>(std::max(n_ - 1, 1)), p_);
}

FpVec FpModulus::reduce(const FpVec& a_in) const {
  FpVec a = a_in;
  fpoly::trim(a);
  const int n = n_;
  while (fpoly::degree(a) >= n) {
    int d = fpoly::degree(a);
    // Barrett step on the top block of at most n + |rev_inv| coefficients.
    int top = std::min(d, n - 1 + static_cast<int>(rev_inv_.size()));
    int base = d - top;  // block covers degrees [base, d]
    std::size_t qlen = static_cast<std::size_t>(top - n + 1);
    FpVec ra(qlen);
    for (std::size_t i = 0; i < qlen; ++i) ra[i] = a[static_cast<std::size_t>(d) - i];
    FpVec qr = fpoly::mul_low(ra, rev_inv_, qlen, p_);
    qr.resize(qlen, 0);
    FpVec q(qr.rbegin(), qr.rend());
    FpVec qf = fpoly::mul(q, f_, p_);
    for (std::size_t i = 0; i < qf.size(); ++i) {
      auto& x = a[static_cast<std::size_t>(base) + i];
      x -= qf[i];
      if (x < 0) x += p_;
    }
    fpoly::trim(a);
  }
  return a;
}

FpVec FpModulus::mulmod(const FpVec& a, const FpVec& b) const { return reduce(fpoly::mul(a, b, p_)); }

FpVec FpModulus::powmod(const FpVec& a, const mpz_class& e) const {
  FpVec r{1}, b = reduce(a);
  if (n_ == 0) return {};
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b);
  }
  if (e == 0) return reduce(FpVec{1});
  return r;
}

}  // namespace defzeta
