#include "oracles.hpp"

#include <algorithm>
#include <utility>

#include "defzeta/padic.hpp"

using namespace defzeta;

namespace oracle {

namespace {

std::uint64_t index_of(const FqElem& e) {
  std::uint64_t idx = 0, pw = 1;
  const auto c = e.coeffs();
  for (long d : c) {
    idx += static_cast<std::uint64_t>(d) * pw;
    pw *= static_cast<std::uint64_t>(e.field()->p());
  }
  return idx;
}

long modp(long a, long p) { return ((a % p) + p) % p; }

long inv_p(long a, long p) {
  for (long x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

}  // namespace

mpz_class count_points(const FqElem& a, const FqElem& b, const FqElem& c) {
  const auto F = a.field();
  const std::uint64_t q = F->order().get_ui();
  std::vector<int> roots(q, 0);  // number of y with y^2 = index
  for (std::uint64_t i = 0; i < q; ++i) {
    FqElem y = FqElem::from_index(F, i);
    ++roots[index_of(y * y)];
  }
  mpz_class n = 1;
  for (std::uint64_t i = 0; i < q; ++i) {
    FqElem x = FqElem::from_index(F, i);
    n += roots[index_of(x * x * x + a * x * x + b * x + c)];
  }
  return n;
}

FpVec min_poly_gauss(const FqElem& g) {
  const long p = g.field()->p();
  const int n = g.field()->n();
  std::vector<FpVec> pw{FqElem::constant(g.field(), 1).coeffs()};
  FqElem cur = FqElem::constant(g.field(), 1);
  for (int d = 1; d <= n; ++d) {
    cur = cur * g;
    pw.push_back(cur.coeffs());
    // solve sum_{i<d} c_i pw[i] = -pw[d]
    std::vector<FpVec> A(static_cast<std::size_t>(n), FpVec(static_cast<std::size_t>(d) + 1));
    for (int r = 0; r < n; ++r) {
      for (int i = 0; i < d; ++i) A[r][i] = pw[i][r];
      A[r][d] = modp(-pw[d][r], p);
    }
    std::vector<int> pivcol;
    int row = 0;
    for (int col = 0; col < d && row < n; ++col) {
      int piv = -1;
      for (int r = row; r < n; ++r)
        if (A[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(A[row], A[piv]);
      long iv = inv_p(A[row][col], p);
      for (auto& v : A[row]) v = v * iv % p;
      for (int r = 0; r < n; ++r) {
        if (r == row || A[r][col] == 0) continue;
        long f = A[r][col];
        for (int k = 0; k <= d; ++k) A[r][k] = modp(A[r][k] - f * A[row][k], p);
      }
      pivcol.push_back(col);
      ++row;
    }
    bool consistent = true;
    for (int r = row; r < n; ++r)
      if (A[r][d] != 0) consistent = false;
    if (!consistent) continue;
    FpVec mp(static_cast<std::size_t>(d) + 1, 0);
    for (std::size_t r = 0; r < pivcol.size(); ++r) mp[static_cast<std::size_t>(pivcol[r])] = A[r][d];
    mp[static_cast<std::size_t>(d)] = 1;
    return mp;
  }
  return {};
}

bool irreducible_by_search(const FpVec& f, long p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    long total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (long code = 0; code < total; ++code) {
      FpVec h(static_cast<std::size_t>(d) + 1);
      long c = code;
      for (int i = 0; i < d; ++i, c /= p) h[static_cast<std::size_t>(i)] = c % p;
      h[static_cast<std::size_t>(d)] = 1;
      FpVec r = f;
      for (int top = deg; top >= d; --top) {
        long lead = r[static_cast<std::size_t>(top)];
        if (lead == 0) continue;
        for (int i = 0; i <= d; ++i) {
          auto& x = r[static_cast<std::size_t>(top - d + i)];
          x = modp(x - lead * h[static_cast<std::size_t>(i)], p);
        }
      }
      if (std::all_of(r.begin(), r.end(), [](long x) { return x == 0; })) return false;
    }
  }
  return true;
}

mpz_class det_bareiss(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

mpz_class sylvester_resultant(const ZVec& f, const ZVec& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, s = m + n;
  std::vector<std::vector<mpz_class>> S(s, std::vector<mpz_class>(s, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) S[r][r + i] = f[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) S[n + r][r + i] = g[n - i];
  return det_bareiss(S);
}

std::array<mpz_class, 3> extended_numerator(const mpz_class& q, const mpz_class& t, int k) {
  ZVec z1{1, -t, q};
  mpz_class v[3];
  for (int T = 0; T < 3; ++T) {
    ZVec xk(static_cast<std::size_t>(k) + 1, 0);
    xk[0] = -T;
    xk[static_cast<std::size_t>(k)] = 1;
    v[T] = sylvester_resultant(z1, xk);
  }
  mpz_class c2 = (v[2] - 2 * v[1] + v[0]) / 2;
  return {v[0], v[1] - v[0] - c2, c2};
}

ZVec mulmod_schoolbook(const ZVec& a, const ZVec& b, const ZVec& phi, const mpz_class& M) {
  if (a.empty() || b.empty()) return ZVec(phi.size() - 1, 0);
  ZVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  const std::size_t m = phi.size() - 1;
  for (std::size_t top = r.size(); top-- > m;) {
    mpz_class lead = r[top];
    for (std::size_t i = 0; i <= m; ++i) r[top - m + i] -= lead * phi[i];
  }
  r.resize(m, 0);
  for (auto& c : r) {
    c %= M;
    if (c < 0) c += M;
  }
  return r;
}

mpz_class conjugate_product(const ExtScalar& mu) {
  ExtScalar prod = mu, c = mu;
  for (int i = 1; i < mu.ext()->m(); ++i) {
    c = frobenius_substitution(c);
    prod = prod * c;
  }
  return prod.raw()[0];
}

bool teichmuller_identity(const ExtPtr& ext) {
  ExtScalar x = ExtScalar::generator(ext), y = x;
  for (int i = 0; i < ext->m(); ++i) y = y.pow(ext->p());
  return x == y;
}

std::vector<mpq_class> integrate_scalar_ode(const QPoly& a, const QPoly& b, const mpq_class& y0, std::size_t K) {
  std::vector<mpq_class> y(K, 0);
  if (K == 0) return y;
  y[0] = y0;
  auto at = [](const QPoly& v, long j) { return j >= 0 && j < static_cast<long>(v.size()) ? v[j] : mpq_class(0); };
  // b y' = a y, coefficient of Gamma^i
  for (std::size_t i = 0; i + 1 < K; ++i) {
    mpq_class s = 0;
    for (long j = 0; j <= static_cast<long>(i); ++j) s += at(a, j) * y[i - j];
    for (long j = 1; j <= static_cast<long>(i); ++j) s -= at(b, j) * mpq_class(static_cast<long>(i) - j + 1) * y[i - j + 1];
    y[i + 1] = s / (at(b, 0) * mpq_class(static_cast<long>(i) + 1));
  }
  return y;
}

int valuation_q(const mpq_class& x, long p) {
  if (x == 0) return kInfiniteValuation;
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

}  // namespace oracle
