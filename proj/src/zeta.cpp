#include "defzeta/zeta.hpp"

#include <chrono>

#include "defzeta/deformation.hpp"
#include "defzeta/errors.hpp"

namespace defzeta {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Trace of F^(sigma^(m-1)) ... F^sigma F.
ExtScalar product_trace(const FrobeniusMatrix& F) {
  const int m = F.f1.ext()->m();
  std::array<ExtScalar, 4> P{F.f1, F.f2, F.f3, F.f4}, C = P;
  for (int i = 1; i < m; ++i) {
    for (auto& c : C) c = frobenius_substitution(c);
    P = {C[0] * P[0] + C[1] * P[2], C[0] * P[1] + C[1] * P[3], C[2] * P[0] + C[3] * P[2], C[2] * P[1] + C[3] * P[3]};
  }
  return P[0] + P[3];
}

}  // namespace

int precision_bound(long p, int n) {
  const mpz_class bound = 16 * ipow(p, n);
  int N = 0;
  while (ipow(p, 2L * N) <= bound) ++N;
  return N;
}

mpz_class trace_from_norm(const PadicScalar& t1_mod, long p, int m, bool twist) {
  const auto& ctx = t1_mod.ctx();
  if (ctx->p != p) fail(ErrorKind::ContextMismatch, "trace residue is not p-adic for this p");
  mpz_class t = symmetric(t1_mod.value(), ctx->modulus);
  if (t * t >= 4 * ipow(p, m))
    fail(ErrorKind::NoRepresentative, "no integer of absolute value below 2 sqrt(q) matches the residue");
  return twist ? mpz_class(-t) : t;
}

ZetaFunction extend_zeta(const ZetaFunction& z, int k) {
  if (k < 1) fail(ErrorKind::PreconditionViolation, "extension degree must be positive");
  // t_k = pi^k + pibar^k with pi + pibar = t, pi pibar = q
  const mpz_class q = z.q();
  mpz_class prev = 2, cur = z.t;
  for (int i = 1; i < k; ++i) {
    mpz_class next = z.t * cur - q * prev;
    prev = cur;
    cur = next;
  }
  return {z.p, z.n * k, cur};
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::Deformation: return "deformation";
    case Mode::Kedlaya: return "kedlaya";
    case Mode::Naive: return "naive";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::Auto, Mode::Deformation, Mode::Kedlaya, Mode::Naive})
    if (s == mode_name(m)) return m;
  fail(ErrorKind::ParseError, "unknown mode '" + s + "'");
}

ZetaResult compute_zeta(const WeierstrassCurve& curve, const ZetaOptions& opt) {
  const auto t_all = Clock::now();
  const FieldPtr& field = curve.field();
  const long p = field->p();
  const int n = field->n();
  if (cubic_discriminant(curve.a, curve.b, curve.c).is_zero())
    fail(ErrorKind::SingularCurve, "cubic has a repeated root");

  ZetaResult res;
  auto t0 = Clock::now();
  FamilyInstance fi = shift_parameter(normalize(curve));
  res.timings_ms["normalize"] = ms_since(t0);
  const int m = fi.m;
  const int N = precision_bound(p, m);
  res.twist = fi.twist;
  res.detail.kind = fi.kind;
  res.detail.m = m;
  res.detail.N = N;

  Mode mode = opt.mode;
  if (mode == Mode::Auto) mode = (N > m || ipow(p, m) <= 1024) ? Mode::Naive : Mode::Deformation;
  res.mode_used = mode;

  if (opt.mode == Mode::Naive) {
    t0 = Clock::now();
    mpz_class cnt = naive_count(curve.a, curve.b, curve.c);
    res.timings_ms["naive"] = ms_since(t0);
    res.zeta = {p, n, field->order() + 1 - cnt};
    res.detail.subfield_trace = res.zeta.t;
    if (res.zeta.t % p == 0) fail(ErrorKind::Supersingular, "trace is divisible by p");
    res.timings_ms["total"] = ms_since(t_all);
    return res;
  }

  const FamilyPolynomial fp = family_polynomial(fi.kind, fi.shift_alpha);
  const int buffer = kDefaultBuffer + opt.buffer_extra;
  mpz_class tm;
  if (mode == Mode::Naive) {
    t0 = Clock::now();
    auto Fm = ResidueField::make(p, fi.min_poly);
    WeierstrassCurve fib = fibre(fp, FqElem(Fm, {0, 1}));
    tm = Fm->order() + 1 - naive_count(fib.a, fib.b, fib.c);
    res.timings_ms["naive"] = ms_since(t0);
  } else if (mode == Mode::Deformation) {
    FamilyLift L = lift_family(fp, p);
    DeformationPlan plan = deformation_plan(p, N, buffer);
    t0 = Clock::now();
    ExtPtr ext = teichmuller_modulus(fi.min_poly, PadicContext::make(p, plan.W));
    res.timings_ms["teichmuller"] = ms_since(t0);
    DeformationReport rep = frobenius_by_deformation(L, ext, N, buffer);
    for (const auto& [k, v] : rep.timings) res.timings_ms[k] = v;
    t0 = Clock::now();
    EigenPair e = eigen_pair(rep.F, N);
    res.timings_ms["eigen"] = ms_since(t0);
    t0 = Clock::now();
    PadicScalar lam = norm_to_base(e.mu);
    res.timings_ms["norm"] = ms_since(t0);
    // lambda + q / lambda; the second term vanishes mod p^N once N <= m
    PadicScalar t1 = lam + PadicScalar(lam.ctx(), ipow(p, m)) * lam.inverse();
    tm = trace_from_norm(t1, p, m, false);
    res.detail.ext = ext;
    res.detail.F = rep.F;
    res.detail.eigen = e;
    res.detail.K = rep.K;
    res.detail.W = rep.W;
    res.detail.pf_residual = rep.residual_valuation;
  } else {
    const int target = N + buffer;
    t0 = Clock::now();
    ExtPtr ext = teichmuller_modulus(fi.min_poly, PadicContext::make(p, kedlaya_plan(p, target).work));
    res.timings_ms["teichmuller"] = ms_since(t0);
    t0 = Clock::now();
    std::array<ZVec, 3> q;
    for (std::size_t i = 0; i < 3; ++i) q[i] = ZVec{fp.u[i], fp.v[i]};
    FrobeniusMatrix F = kedlaya_frobenius(ext, q, target);
    res.timings_ms["kedlaya"] = ms_since(t0);
    t0 = Clock::now();
    ExtScalar tr = product_trace(F);
    res.timings_ms["trace_product"] = ms_since(t0);
    for (std::size_t i = 1; i < tr.raw().size(); ++i)
      if (tr.raw()[i] % ipow(p, N) != 0) fail(ErrorKind::NonIntegralResult, "Frobenius trace is not in Z_p");
    // p | t includes the boundary case |t| = 2 sqrt(q), which has no strict representative
    if (tr.raw()[0] % p == 0) fail(ErrorKind::Supersingular, "trace is divisible by p");
    tm = trace_from_norm(PadicScalar(PadicContext::make(p, N), tr.raw()[0]), p, m, false);
    res.detail.ext = ext;
    res.detail.F = F;
    res.detail.W = target;
  }
  if (tm % p == 0) fail(ErrorKind::Supersingular, "trace is divisible by p");
  res.detail.subfield_trace = tm;
  ZetaFunction z = extend_zeta({p, m, tm}, n / m);
  if (fi.twist) z.t = -z.t;
  res.zeta = z;
  res.timings_ms["total"] = ms_since(t_all);
  return res;
}

}  // namespace defzeta
