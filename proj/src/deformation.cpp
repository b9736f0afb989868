#include "defzeta/deformation.hpp"

#include <chrono>

#include "defzeta/errors.hpp"

namespace defzeta {

namespace {

ZVec to_zp(const QPoly& a, long p, const mpz_class& M) {
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class num = a[i].get_num(), den = a[i].get_den(), inv;
    if (mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
      fail(ErrorKind::PreconditionViolation, "coefficient is not p-integral");
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
    r[i] = num * inv;
    mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M.get_mpz_t());
  }
  return r;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PicardFuchsSolver::PicardFuchsSolver(long p, int W, int scale, const std::array<QPoly, 4>& Gn, const QPoly& g,
                                     const std::array<mpz_class, 4>& F0)
    : p_(p), W_(W), scale_(scale), M_(ipow(p, W)) {
  if (g.empty() || g[0] != 1) fail(ErrorKind::PreconditionViolation, "denominator must satisfy g(0) = 1");
  QPoly gs = qpoly::inflate(g, static_cast<int>(p));
  c_ = to_zp(qpoly::mul(g, gs), p, M_);
  QPoly shift(static_cast<std::size_t>(p), mpq_class(0));
  shift[static_cast<std::size_t>(p - 1)] = p;
  QPoly right_base = qpoly::mul(shift, g);
  for (std::size_t i = 0; i < 4; ++i) {
    left_[i] = to_zp(qpoly::mul(gs, Gn[i]), p, M_);
    right_[i] = to_zp(qpoly::mul(right_base, qpoly::inflate(Gn[i], static_cast<int>(p))), p, M_);
  }
  F_.p = p;
  F_.W = W;
  F_.scale = scale;
  mpz_class ps = ipow(p, scale);
  for (std::size_t i = 0; i < 4; ++i) {
    mpz_class v = F0[i] * ps;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), M_.get_mpz_t());
    F_.e[i] = {v};
  }
}

PicardFuchsSolver::PicardFuchsSolver(const ConnectionMatrix& G, long p, int W, int scale,
                                     const std::array<mpz_class, 4>& F0)
    : PicardFuchsSolver(p, W, scale, G.numerators(), G.denominator(), F0) {}

void PicardFuchsSolver::extend(std::size_t K) {
  for (auto& e : F_.e) e.reserve(K);
  mpz_class acc[4], tmp;
  for (std::size_t n = F_.K(); n < K; ++n) {
    // n (= i+1) F_n = -sum_k F_(i-k) left_k + sum_k right_k F_(i-k) - sum_(k>=1) c_k (n-k) F_(n-k)
    const std::size_t i = n - 1;
    for (auto& a : acc) a = 0;
    for (std::size_t k = 0; k < left_[0].size() || k < left_[1].size() || k < left_[2].size() || k < left_[3].size(); ++k) {
      if (k > i) break;
      const std::size_t idx = i - k;
      auto L = [&](std::size_t e) -> const mpz_class* { return k < left_[e].size() ? &left_[e][k] : nullptr; };
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          for (std::size_t j = 0; j < 2; ++j) {
            const mpz_class* l = L(2 * j + c);
            if (l) mpz_submul(acc[2 * r + c].get_mpz_t(), F_.e[2 * r + j][idx].get_mpz_t(), l->get_mpz_t());
          }
    }
    for (std::size_t k = 0; k <= i; ++k) {
      bool any = false;
      for (std::size_t e = 0; e < 4; ++e) any |= k < right_[e].size();
      if (!any) break;
      const std::size_t idx = i - k;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          for (std::size_t j = 0; j < 2; ++j) {
            if (k >= right_[2 * r + j].size()) continue;
            mpz_addmul(acc[2 * r + c].get_mpz_t(), right_[2 * r + j][k].get_mpz_t(), F_.e[2 * j + c][idx].get_mpz_t());
          }
    }
    for (std::size_t k = 1; k < c_.size() && k <= n; ++k) {
      tmp = c_[k] * static_cast<unsigned long>(n - k);
      for (std::size_t e = 0; e < 4; ++e) mpz_submul(acc[e].get_mpz_t(), tmp.get_mpz_t(), F_.e[e][n - k].get_mpz_t());
    }
    long u = static_cast<long>(n);
    int v = 0;
    while (u % p_ == 0) {
      u /= p_;
      ++v;
    }
    mpz_class uinv, uz = u;
    mpz_invert(uinv.get_mpz_t(), uz.get_mpz_t(), M_.get_mpz_t());
    mpz_class pv = ipow(p_, v);
    for (std::size_t e = 0; e < 4; ++e) {
      mpz_mod(acc[e].get_mpz_t(), acc[e].get_mpz_t(), M_.get_mpz_t());
      if (v > 0) {
        if (!mpz_divisible_p(acc[e].get_mpz_t(), pv.get_mpz_t()))
          fail(ErrorKind::PrecisionLoss, "series coefficient " + std::to_string(n) + " not divisible by p^" + std::to_string(v));
        mpz_divexact(acc[e].get_mpz_t(), acc[e].get_mpz_t(), pv.get_mpz_t());
      }
      acc[e] *= uinv;
      mpz_mod(acc[e].get_mpz_t(), acc[e].get_mpz_t(), M_.get_mpz_t());
      F_.e[e].push_back(acc[e]);
    }
  }
}

int PicardFuchsSolver::residual_valuation() const {
  const std::size_t K = F_.K();
  if (K < 2) return kInfiniteValuation;
  const std::size_t n = K - 1;
  std::array<ZVec, 4> dF;
  for (std::size_t e = 0; e < 4; ++e) {
    dF[e].resize(n);
    for (std::size_t i = 0; i < n; ++i) dF[e][i] = F_.e[e][i + 1] * static_cast<unsigned long>(i + 1) % M_;
  }
  int best = kInfiniteValuation;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      ZVec res = zpoly::mul_low(c_, dF[2 * r + c], n, M_);
      res.resize(n);
      for (std::size_t j = 0; j < 2; ++j) {
        ZVec a = zpoly::mul_low(F_.e[2 * r + j], left_[2 * j + c], n, M_);
        ZVec b = zpoly::mul_low(right_[2 * r + j], F_.e[2 * j + c], n, M_);
        a.resize(n);
        b.resize(n);
        for (std::size_t i = 0; i < n; ++i) res[i] += a[i] - b[i];
      }
      for (auto& x : res) {
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), M_.get_mpz_t());
        best = std::min(best, valuation(x, p_));
      }
    }
  return best == kInfiniteValuation ? best : best - scale_;
}

FrobeniusMatrix specialize_at_gamma(const SeriesMatrix& F, const QPoly& Rq, const ExtPtr& ext, int target,
                                    SpecializeCache* cache) {
  const long p = F.p;
  if (ext->W() < F.W) fail(ErrorKind::PreconditionViolation, "extension precision below series precision");
  if (!ext->is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "specialization needs a Teichmuller modulus");
  const mpz_class M = ipow(p, F.W);
  const std::size_t K = F.K();
  const int dR = qpoly::degree(Rq);
  long L = dR > 0 ? static_cast<long>(K) / (2 * dR) : 0;
  if (L < 0) L = 0;
  SpecializeCache local;
  SpecializeCache& C = cache ? *cache : local;
  if (C.ext != ext.get() || C.W != F.W || C.L > L || C.h > static_cast<long>(K / 2)) C = SpecializeCache{};
  QuotientRing QR = ext->ring().lower(F.W);
  const bool linear = QR.degree() == 1;
  auto at_gamma = [&](const ZVec& a) {
    if (linear) return ZVec{zpoly::eval(a, M - QR.phi()[0], M)};
    return QR.reduce(a);
  };
  // Moves val = b^have to b^e: one squaring and a few factors, or from scratch.
  auto advance = [](ZVec& val, long have, long e, const ZVec& one, const auto& sq, const auto& step) {
    if (have > 0 && 2 * have <= e && e - 2 * have <= 2) {
      val = sq(val);
      have *= 2;
    } else if (!(have > 0 && have <= e && e - have <= 2)) {
      val = one;
      for (int i = 62; i >= 0; --i) {
        if (val != one) val = sq(val);
        if ((e >> i) & 1) val = step(val);
      }
      return;
    }
    for (; have < e; ++have) val = step(val);
  };
  const ZVec R = to_zp(Rq, p, M);
  if (C.ext == nullptr) {
    C = SpecializeCache{};
    C.ext = ext.get();
    C.W = F.W;
    C.RL = ZVec{1};
    C.inv_RL = QR.one();
    C.inv_R = QR.inverse(at_gamma(R));
    C.gamma_h = QR.one();
  }
  // R^L exactly (deg R^L <= K / 2) and R(gamma)^(-L)
  {
    advance(C.RL, C.L, L, ZVec{1}, [&](const ZVec& a) { return zpoly::mul(a, a, M); },
            [&](const ZVec& a) { return zpoly::mul(a, R, M); });
    advance(C.inv_RL, C.L, L, QR.one(), [&](const ZVec& a) { return QR.mul(a, a); },
            [&](const ZVec& a) { return QR.mul(a, C.inv_R); });
    C.L = L;
  }
  // R^L F = R^L F_lo + Gamma^h R^L F_hi with F_lo of length h; only the second
  // product is cut at Gamma^K, so H(gamma) / R(gamma)^L = F_lo(gamma) + c low(gamma).
  const long h = static_cast<long>(K / 2);
  const long h0 = C.h;
  ZVec gamma_h0 = C.gamma_h;
  {
    const ZVec x = linear ? ZVec{M - QR.phi()[0]} : ZVec{0, 1};
    advance(C.gamma_h, C.h, h, QR.one(), [&](const ZVec& a) { return QR.mul(a, a); }, [&](const ZVec& a) { return QR.mul(a, x); });
    C.h = h;
  }
  const ZVec c = QR.mul(C.gamma_h, C.inv_RL);
  auto out = ext->with_precision(target);
  std::array<ExtScalar, 4> ent{ExtScalar::constant(out, 0), ExtScalar::constant(out, 0), ExtScalar::constant(out, 0),
                               ExtScalar::constant(out, 0)};
  for (std::size_t e = 0; e < 4; ++e) {
    const ZVec& f = F.e[e];
    auto at = [&](long i) { return f.begin() + std::min<std::ptrdiff_t>(i, static_cast<std::ptrdiff_t>(f.size())); };
    // F_lo(gamma) continues the previous prefix when the series agrees with it
    ZVec lo;
    if (h0 > 0 && std::equal(C.prefix[e].begin(), C.prefix[e].end(), f.begin(), at(h0))) {
      lo = QR.add(C.lo[e], QR.mul(gamma_h0, at_gamma(ZVec(at(h0), at(h)))));
    } else {
      lo = at_gamma(ZVec(f.begin(), at(h)));
    }
    C.prefix[e].assign(f.begin(), at(h));
    C.lo[e] = lo;
    ZVec v = lo;
    ZVec hi(at(h), f.end());
    if (!hi.empty()) v = QR.add(v, QR.mul(c, at_gamma(zpoly::mul_low(C.RL, hi, K - static_cast<std::size_t>(h), M))));
    try {
      v = divide_by_p_power(v, p, F.scale);
    } catch (const Error&) {
      fail(ErrorKind::NonIntegralResult, "specialized Frobenius entry is not integral");
    }
    ent[e] = ExtScalar(out, v);
  }
  return {ent[0], ent[1], ent[2], ent[3]};
}

DeformationPlan deformation_plan(long p, int N, int buffer) {
  DeformationPlan plan;
  plan.K0 = static_cast<std::size_t>(4 * p * N);
  plan.Kcap = static_cast<std::size_t>(64 * p * N);
  int lg = 0;
  for (mpz_class v = 1; v <= plan.Kcap; v *= p) ++lg;
  plan.scale = lg + 1;
  // divisions by n cost about 2 log_p K digits in the series, the scale one more block
  plan.W = N + buffer + 3 * plan.scale + 1;
  return plan;
}

DeformationReport frobenius_by_deformation(const FamilyLift& L, const ExtPtr& ext, int N, int buffer) {
  const long p = L.p;
  DeformationPlan plan = deformation_plan(p, N, buffer);
  if (ext->W() < plan.W) fail(ErrorKind::PreconditionViolation, "extension precision below deformation plan");
  std::map<std::string, double> timings;
  int rounds = 0;
  auto t0 = std::chrono::steady_clock::now();
  ConnectionMatrix G = connection_matrix(L);
  std::array<mpz_class, 3> q0{L.fp.u[0], L.fp.u[1], L.fp.u[2]};
  auto F0 = kedlaya_frobenius_zp(p, q0, plan.W);
  timings["frobenius_f0"] = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  PicardFuchsSolver solver(G, p, plan.W, plan.scale, F0);
  const int target = N + buffer;
  const mpz_class MN = ipow(p, N);
  auto same_mod_N = [&](const FrobeniusMatrix& a, const FrobeniusMatrix& b) {
    const ExtScalar* x[4] = {&a.f1, &a.f2, &a.f3, &a.f4};
    const ExtScalar* y[4] = {&b.f1, &b.f2, &b.f3, &b.f4};
    for (int e = 0; e < 4; ++e)
      for (std::size_t i = 0; i < x[e]->raw().size(); ++i)
        if (x[e]->raw()[i] % MN != y[e]->raw()[i] % MN) return false;
    return true;
  };
  double solve_ms = 0, spec_ms = 0;
  SpecializeCache cache;
  std::size_t K = plan.K0;
  auto run = [&](std::size_t k) {
    auto t = std::chrono::steady_clock::now();
    solver.extend(k);
    solve_ms += ms_since(t);
    t = std::chrono::steady_clock::now();
    auto r = specialize_at_gamma(solver.series(), L.R, ext, target, &cache);
    spec_ms += ms_since(t);
    ++rounds;
    return r;
  };
  FrobeniusMatrix prev = run(K);
  int stable = 0;
  for (;;) {
    K *= 2;
    if (K > plan.Kcap) fail(ErrorKind::UnstableTruncation, "Frobenius series did not stabilize below the cap");
    FrobeniusMatrix cur = run(K);
    stable = same_mod_N(prev, cur) ? stable + 1 : 0;
    prev = cur;
    if (stable == 2) break;
  }
  timings["ode_solve"] = solve_ms;
  timings["specialize"] = spec_ms;
  t0 = std::chrono::steady_clock::now();
  const int residual = solver.residual_valuation();
  timings["pf_residual"] = ms_since(t0);
  return DeformationReport{prev, K, plan.W, plan.scale, residual, rounds, timings};
}

}  // namespace defzeta
