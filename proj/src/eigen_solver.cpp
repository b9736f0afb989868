#include "defzeta/eigen_solver.hpp"

#include <algorithm>

#include "defzeta/errors.hpp"

namespace defzeta {

namespace {

struct Partials {
  ZVec value, dx, dy;
};

// psi and its partials at (a, b) in R; coefficients reduced into R.
Partials partials(const Bivariate& psi, const QuotientRing& R, const ZVec& a, const ZVec& b) {
  Partials out{R.from_int(0), R.from_int(0), R.from_int(0)};
  auto pw = [&](const ZVec& x, int e) { return e == 0 ? R.one() : R.pow(x, mpz_class(e)); };
  for (const auto& t : psi) {
    ZVec c = R.reduce(t.c.raw());
    ZVec ai = pw(a, t.i), bj = pw(b, t.j);
    out.value = R.add(out.value, R.mul(c, R.mul(ai, bj)));
    if (t.i > 0) out.dx = R.add(out.dx, R.scale(R.mul(c, R.mul(pw(a, t.i - 1), bj)), mpz_class(t.i)));
    if (t.j > 0) out.dy = R.add(out.dy, R.scale(R.mul(c, R.mul(ai, pw(b, t.j - 1))), mpz_class(t.j)));
  }
  return out;
}

bool zero_mod_p(const ZVec& a, long p) { return to_residue(a, p).empty(); }

}  // namespace

ExtScalar evaluate(const Bivariate& psi, const ExtScalar& a) {
  const QuotientRing& R = a.ext()->ring();
  return ExtScalar(a.ext(), partials(psi, R, a.raw(), R.frob(a.raw())).value);
}

ExtScalar artin_schreier_solve(const Bivariate& psi, const ExtScalar& x0, int N) {
  const ExtPtr& ext = x0.ext();
  if (!ext->is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "sigma needs a Teichmuller modulus");
  if (N < 1 || N > ext->W()) fail(ErrorKind::PreconditionViolation, "target precision outside 1..W");
  const long p = ext->p();
  auto out = ext->with_precision(N);
  RingTower tower(out->ring(), out->residue());
  const QuotientRing& R1 = tower.at(1);
  ZVec a = R1.reduce(x0.raw());
  {
    Partials d = partials(psi, R1, a, R1.frob(a));
    if (!zero_mod_p(d.value, p)) fail(ErrorKind::PreconditionViolation, "psi(x0, x0^sigma) != 0 mod p");
    if (!zero_mod_p(d.dx, p)) fail(ErrorKind::PreconditionViolation, "dpsi/dX(x0, x0^sigma) != 0 mod p");
    if (zero_mod_p(d.dy, p)) fail(ErrorKind::PreconditionViolation, "dpsi/dY(x0, x0^sigma) = 0 mod p");
  }
  for (int k = 1; k < N;) {
    const int kk = std::min(2 * k, N), d = kk - k;
    const QuotientRing& R = tower.at(kk);
    const QuotientRing& Rd = tower.at(d);
    a = R.reduce(a);
    ZVec v = partials(psi, R, a, R.frob(a)).value;
    ZVec ad = Rd.reduce(a);
    Partials low = partials(psi, Rd, ad, Rd.frob(ad));
    ZVec inv = Rd.inverse(low.dy);
    // (alpha + p^k e): e^sigma + (psi_X / psi_Y) e + psi / (p^k psi_Y) = 0 mod p^d
    ZVec b = Rd.mul(low.dx, inv);
    ZVec c = Rd.mul(Rd.reduce(divide_by_p_power(v, p, k)), inv);
    ZVec e = solve_semilinear(tower, b, c, d);
    a = R.add(a, R.scale(e, ipow(p, k)));
    k = kk;
  }
  return ExtScalar(out, a);
}

EigenPair eigen_pair(const FrobeniusMatrix& F, int N) {
  const ExtPtr& ext = F.f1.ext();
  if (N < 1 || N > ext->W()) fail(ErrorKind::PreconditionViolation, "target precision outside 1..W");
  const long p = ext->p();
  auto out = ext->with_precision(N);
  std::array<ExtScalar, 4> f{ExtScalar(out, F.f1.raw()), ExtScalar(out, F.f2.raw()), ExtScalar(out, F.f3.raw()),
                             ExtScalar(out, F.f4.raw())};
  if (N >= 2) {
    int dv = (f[0] * f[3] - f[1] * f[2]).valuation();
    if (dv != 1) fail(ErrorKind::PreconditionViolation, "ord(det F) = " + std::to_string(dv) + ", expected 1");
  }
  Orientation o = Orientation::Standard;
  if (!f[0].is_unit() && !f[1].is_unit()) {
    o = Orientation::Swapped;
    std::swap(f[0], f[3]);
    std::swap(f[1], f[2]);
  }
  // seed: x0^sigma = f4 / f2 or f3 / f1 mod p
  const QuotientRing R1(p, 1, out->modulus());
  auto res = [&](const ExtScalar& x) { return R1.reduce(x.raw()); };
  ZVec y0;
  if (f[1].is_unit()) {
    y0 = R1.mul(res(f[3]), R1.inverse(res(f[1])));
    if (f[0].is_unit() && R1.mul(res(f[2]), R1.inverse(res(f[0]))) != y0)
      fail(ErrorKind::PreconditionViolation, "seeds f4/f2 and f3/f1 disagree mod p");
  } else {
    y0 = R1.mul(res(f[2]), R1.inverse(res(f[0])));
  }
  FpVec x0bar = out->residue().inverse_frobenius(to_residue(y0, p));
  ExtScalar x0(out, lift_residue(x0bar));
  if ((x0 * f[1] + f[0]).valuation() > 0) fail(ErrorKind::Supersingular, "dpsi/dY vanishes mod p at the seed");
  Bivariate psi{{1, 1, f[1]}, {1, 0, -f[3]}, {0, 1, f[0]}, {0, 0, -f[2]}};
  ExtScalar alpha = artin_schreier_solve(psi, x0, N);
  ExtScalar mu = f[0] + alpha * f[1];
  if (!mu.is_unit()) fail(ErrorKind::Supersingular, "eigenvalue is not a unit");
  return {alpha, mu, o};
}

bool eigen_relation_holds(const FrobeniusMatrix& F, const EigenPair& e, int N) {
  auto out = e.mu.ext()->with_precision(N);
  auto at = [&](const ExtScalar& x) { return ExtScalar(out, x.raw()); };
  ExtScalar f1 = at(F.f1), f2 = at(F.f2), f3 = at(F.f3), f4 = at(F.f4);
  ExtScalar a = at(e.eigen_alpha), mu = at(e.mu), as = frobenius_substitution(a);
  if (e.orientation == Orientation::Standard) return f1 + a * f2 == mu && f3 + a * f4 == mu * as;
  return f1 * a + f2 == mu * as && f3 * a + f4 == mu;
}

}  // namespace defzeta
