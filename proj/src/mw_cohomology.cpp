#include "defzeta/mw_cohomology.hpp"

#include <cmath>

#include "defzeta/errors.hpp"

namespace defzeta {

// ------------------------------------------------------------ family lift

FamilyLift lift_family(const FamilyPolynomial& fp, long p) {
  FamilyLift L;
  L.fp = fp;
  L.p = p;
  L.s = basis_level_s(p);
  L.r = family_r(fp);
  L.rho_prime = -1;
  for (std::size_t i = 0; i < L.r.size(); ++i) {
    mpz_class num = L.r[i].get_num();
    if (L.r[i].get_den() != 1) fail(ErrorKind::PreconditionViolation, "r(Gamma) is not integral");
    if (mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p)) != 0) L.rho_prime = static_cast<int>(i);
  }
  if (L.rho_prime < 0) fail(ErrorKind::SingularCurve, "r(Gamma) vanishes mod p");
  L.R.assign(L.r.begin(), L.r.begin() + L.rho_prime + 1);
  return L;
}

FamilyLift lift_family(const FamilyInstance& f, long p) {
  return lift_family(family_polynomial(f.kind, f.shift_alpha), p);
}

namespace {

std::array<RatFunc, 3> family_coeffs(const FamilyPolynomial& fp) {
  std::array<RatFunc, 3> q;
  for (std::size_t i = 0; i < 3; ++i) q[i] = RatFunc::poly(QPoly{mpq_class(fp.u[i]), mpq_class(fp.v[i])});
  return q;
}

}  // namespace

std::array<RatFunc, 2> reduce_to_basis(const CohomologyElement& w, const FamilyLift& L) {
  RatRing R;
  Reducer<RatRing> red(R, family_coeffs(L.fp), L.s);
  std::map<int, RPoly<RatRing>> parts;
  for (const auto& [ij, c] : w) {
    auto& P = parts[ij.second];
    if (P.size() <= static_cast<std::size_t>(ij.first)) P.resize(static_cast<std::size_t>(ij.first) + 1);
    P[static_cast<std::size_t>(ij.first)] = P[static_cast<std::size_t>(ij.first)] + c;
  }
  return red.reduce(std::move(parts));
}

ConnectionMatrix connection_matrix(const FamilyLift& L) {
  RatRing R;
  Reducer<RatRing> red(R, family_coeffs(L.fp), L.s);
  // nabla(X^k dX/y^s) = -(s/2) X^k dQ/dGamma dX / y^(s+2)
  RPoly<RatRing> dq;
  for (std::size_t i = 0; i < 3; ++i) dq.push_back(RatFunc(mpq_class(L.fp.v[i])));
  const int t = (L.s - 1) / 2;
  ConnectionMatrix G;
  for (int k = 0; k < 2; ++k) {
    RPoly<RatRing> P(static_cast<std::size_t>(k), RatFunc());
    for (const auto& c : dq) P.push_back(c * RatFunc(mpq_class(-L.s, 2)));
    std::map<int, RPoly<RatRing>> parts{{t + 1, P}};
    auto row = red.reduce(parts);
    G.g[static_cast<std::size_t>(2 * k)] = row[0];
    G.g[static_cast<std::size_t>(2 * k + 1)] = row[1];
  }
  return G;
}

QPoly ConnectionMatrix::denominator() const {
  QPoly d{1};
  for (const auto& e : g) {
    QPoly gg = qpoly::gcd(d, e.den()), q, r;
    qpoly::divrem(qpoly::mul(d, e.den()), gg, q, r);
    d = q;
  }
  if (d[0] == 0) fail(ErrorKind::PreconditionViolation, "connection has a pole at Gamma = 0");
  return qpoly::scale(d, 1 / mpq_class(d[0]));
}

std::array<QPoly, 4> ConnectionMatrix::numerators() const {
  QPoly d = denominator();
  std::array<QPoly, 4> r;
  for (std::size_t i = 0; i < 4; ++i) {
    QPoly q, rem;
    qpoly::divrem(qpoly::mul(g[i].num(), d), g[i].den(), q, rem);
    r[i] = q;
  }
  return r;
}

// ------------------------------------------------------------ Kedlaya

namespace {

int floor_log(long p, double x) {
  int e = 0;
  double v = 1;
  while (v * static_cast<double>(p) <= x) {
    v *= static_cast<double>(p);
    ++e;
  }
  return e;
}

int term_loss(long p, int s, long l) {
  long j = (p * s - 1) / 2 + p * l;
  return floor_log(p, 6.0 * static_cast<double>(j) + 6.0) + 1;
}

template <class Ring>
Mat2<Ring> kedlaya_core(const Ring& R, const std::array<typename Ring::T, 3>& q, long p, int s, const KedlayaPlan& plan) {
  using T = typename Ring::T;
  Reducer<Ring> red(R, q, s);
  const int t = red.target_level();
  // E = Q^sigma(X^p) - Q(X)^p, divisible by p.
  RPoly<Ring> Q = red.cubic();
  RPoly<Ring> Qp{R.one()}, base = Q;
  for (long e = p; e > 0; e >>= 1) {
    if (e & 1) Qp = poly_mul(R, Qp, base);
    if (e > 1) base = poly_mul(R, base, base);
  }
  RPoly<Ring> Ep(static_cast<std::size_t>(3 * p) + 1, R.zero());
  for (std::size_t i = 0; i < 3; ++i) Ep[i * static_cast<std::size_t>(p)] = R.sigma(q[i]);
  Ep[static_cast<std::size_t>(3 * p)] = R.one();
  for (std::size_t i = 0; i < Qp.size(); ++i) Ep[i] = R.sub(Ep[i], Qp[i]);
  // Over Z_p the powers are kept as (E / p)^l mod p^(W - l), with small factors.
  constexpr bool relative = std::is_same_v<Ring, ZpRing>;
  RPoly<Ring> Eb = Ep;
  if constexpr (relative)
    for (auto& c : Eb) c = symmetric(c, R.M) / p;
  auto times_E = [&](const RPoly<Ring>& a, long l) {
    if constexpr (relative) {
      ZVec r = zpoly::mul(a, Eb, ipow(p, std::max<long>(1, R.W - l - 1)));
      r.resize(a.size() + Eb.size() - 1);
      return r;
    } else {
      return poly_mul(R, a, Ep);
    }
  };

  const long terms = plan.terms;
  // c_l = p^(scale+1) * binom(-s/2, l)
  auto coeff = [&](long l) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * l), static_cast<unsigned long>(l));
    if (s == 3) b *= 2 * l + 1;
    if (l % 2 == 1) b = -b;
    b *= ipow(p, plan.scale + 1);
    T c = R.from_int(b);
    T inv4 = R.inv(R.from_int(4));
    T f = R.one();
    for (long e = l, i = 0; e > 0; e >>= 1, ++i) {
      if (e & 1) f = R.mul(f, inv4);
      inv4 = R.mul(inv4, inv4);
    }
    return R.mul(c, f);
  };

  // Powers E^l are consumed top-down; keep checkpoints every B and rebuild blocks.
  const long B = std::max<long>(1, static_cast<long>(std::ceil(std::sqrt(static_cast<double>(terms)))));
  std::vector<RPoly<Ring>> checkpoints;
  {
    RPoly<Ring> cur{R.one()};
    for (long l = 0; l < terms; ++l) {
      if (l % B == 0) checkpoints.push_back(cur);
      if (l + 1 < terms) cur = times_E(cur, l);
    }
  }
  std::vector<RPoly<Ring>> block;
  long block_start = terms;
  auto power = [&](long l) -> const RPoly<Ring>& {
    if (l < block_start) {
      block_start = (l / B) * B;
      block.clear();
      block.push_back(checkpoints[static_cast<std::size_t>(l / B)]);
      for (long i = block_start + 1; i <= l; ++i) block.push_back(times_E(block.back(), i - 1));
    }
    return block[static_cast<std::size_t>(l - block_start)];
  };

  const long j0 = (p * s - 1) / 2;
  std::array<RPoly<Ring>, 2> cur;
  const long jtop = j0 + p * (terms - 1);
  for (long j = jtop; j > t; --j) {
    if ((j - j0) % p == 0) {
      long l = (j - j0) / p;
      const RPoly<Ring>& El = power(l);
      T c = coeff(l);
      if constexpr (relative) c = R.mul(c, R.from_int(ipow(p, l)));
      RPoly<Ring> scaled(El.size());
      for (std::size_t i = 0; i < El.size(); ++i) scaled[i] = R.mul(El[i], c);
      for (std::size_t k = 0; k < 2; ++k)
        poly_add_into(R, cur[k], scaled, static_cast<std::size_t>(p) * k + static_cast<std::size_t>(p) - 1);
      block.pop_back();
    }
    for (auto& P : cur) {
      RPoly<Ring> lower;
      red.step(P, static_cast<int>(j), lower);
      P = std::move(lower);
    }
  }
  Mat2<Ring> M;
  for (std::size_t k = 0; k < 2; ++k) {
    auto row = red.finish(cur[k]);
    for (std::size_t i = 0; i < 2; ++i) {
      try {
        M[2 * k + i] = R.div_p_power(row[i], plan.scale);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PrecisionLoss) throw;
        fail(ErrorKind::NonIntegralResult, "Frobenius matrix entry is not integral at this precision");
      }
    }
  }
  return M;
}

}  // namespace

KedlayaPlan kedlaya_plan(long p, int target) {
  const int s = basis_level_s(p);
  long l = 0;
  while (l + 1 - term_loss(p, s, l) < target) ++l;
  KedlayaPlan plan;
  plan.terms = static_cast<int>(std::max<long>(l, 1));
  plan.scale = term_loss(p, s, plan.terms - 1);
  plan.work = target + 2 * plan.scale + 1;
  return plan;
}

std::array<mpz_class, 4> kedlaya_frobenius_zp(long p, const std::array<mpz_class, 3>& q, int target) {
  KedlayaPlan plan = kedlaya_plan(p, target);
  ZpRing R(p, plan.work);
  std::array<mpz_class, 3> qr{R.from_int(q[0]), R.from_int(q[1]), R.from_int(q[2])};
  auto M = kedlaya_core(R, qr, p, basis_level_s(p), plan);
  mpz_class Mt = ipow(p, target);
  for (auto& x : M) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), Mt.get_mpz_t());
  return M;
}

FrobeniusMatrix kedlaya_frobenius(const ExtPtr& ext, const std::array<ZVec, 3>& q, int target) {
  const long p = ext->p();
  KedlayaPlan plan = kedlaya_plan(p, target);
  if (ext->W() < plan.work)
    fail(ErrorKind::PreconditionViolation, "extension precision " + std::to_string(ext->W()) + " below required " +
                                               std::to_string(plan.work));
  if (!ext->is_teichmuller()) fail(ErrorKind::RequiresTeichmullerModulus, "Kedlaya needs a Teichmuller modulus");
  QuotientRing QR = ext->ring().lower(plan.work);
  ZqRing R(QR);
  std::array<ZVec, 3> qr{QR.reduce(q[0]), QR.reduce(q[1]), QR.reduce(q[2])};
  auto M = kedlaya_core(R, qr, p, basis_level_s(p), plan);
  auto out = ext->with_precision(target);
  return {ExtScalar(out, M[0]), ExtScalar(out, M[1]), ExtScalar(out, M[2]), ExtScalar(out, M[3])};
}

}  // namespace defzeta
