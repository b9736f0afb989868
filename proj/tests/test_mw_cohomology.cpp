#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

#include "defzeta/mw_cohomology.hpp"
#include "defzeta/zeta.hpp"

using namespace defzeta;

namespace {

using Basis = std::array<RatFunc, 2>;

RatFunc rf(long num, long den = 1) {
  mpq_class q(num, den);
  q.canonicalize();
  return RatFunc(q);
}

// Q(X) coefficients (low first, monic cubic) of a family as rational functions.
std::array<RatFunc, 4> family_q(const FamilyPolynomial& fp) {
  std::array<RatFunc, 4> q;
  for (std::size_t i = 0; i < 3; ++i) q[i] = RatFunc::poly(QPoly{mpq_class(fp.u[i]), mpq_class(fp.v[i])});
  q[3] = rf(1);
  return q;
}

// d(X^k y^(1-2j)) written as P(X) dX / y^(2j+1).
CohomologyElement exact_form(const FamilyPolynomial& fp, int k, int j) {
  auto q = family_q(fp);
  CohomologyElement w;
  const RatFunc e = RatFunc(mpq_class(2 * j - 1, 2));
  for (int i = 0; i < 4; ++i) {
    if (k > 0) w[{k - 1 + i, j}] = w[{k - 1 + i, j}] + rf(k) * q[static_cast<std::size_t>(i)];
    if (i > 0) w[{k + i - 1, j}] = w[{k + i - 1, j}] - e * rf(i) * q[static_cast<std::size_t>(i)];
  }
  return w;
}

ExtScalar conj(const ExtScalar& a, int times) {
  ExtScalar r = a;
  for (int i = 0; i < times; ++i) r = frobenius_substitution(r);
  return r;
}

// Row convention: F^(sigma^(m-1)) ... F^sigma F.
FrobeniusMatrix q_power(const FrobeniusMatrix& F, int m) {
  FrobeniusMatrix P = F;
  for (int i = 1; i < m; ++i) {
    FrobeniusMatrix S{conj(F.f1, i), conj(F.f2, i), conj(F.f3, i), conj(F.f4, i)};
    P = {S.f1 * P.f1 + S.f2 * P.f3, S.f1 * P.f2 + S.f2 * P.f4, S.f3 * P.f1 + S.f4 * P.f3,
         S.f3 * P.f2 + S.f4 * P.f4};
  }
  return P;
}

}  // namespace

TEST_CASE("C_ONLY reductions") {
  FamilyLift L = lift_family(family_polynomial(FamilyKind::COnly, 0), 7);
  // d(sqrt Q) = (3/2) X^2 dX / y
  CHECK(reduce_to_basis({{{2, 0}, rf(3, 2)}}, L) == Basis{rf(0), rf(0)});
  CHECK(reduce_to_basis({{{2, 0}, rf(1)}}, L) == Basis{rf(0), rf(0)});
  CHECK(reduce_to_basis({{{3, 0}, rf(1)}}, L) == Basis{RatFunc::poly(QPoly{0, mpq_class(-2, 5)}), rf(0)});
  CHECK(reduce_to_basis({{{0, 0}, rf(1)}}, L) == Basis{rf(1), rf(0)});
  CHECK(reduce_to_basis({{{1, 0}, rf(1)}}, L) == Basis{rf(0), rf(1)});
}

TEST_CASE("exact forms reduce to zero") {
  struct Case {
    FamilyKind kind;
    long alpha, p;
  };
  for (Case c : {Case{FamilyKind::Main, 1, 5}, Case{FamilyKind::Main, 1, 7}, Case{FamilyKind::COnly, 1, 7},
                 Case{FamilyKind::AOnly, 1, 5}, Case{FamilyKind::P3, 1, 3}}) {
    auto fp = family_polynomial(c.kind, c.alpha);
    FamilyLift L = lift_family(fp, c.p);
    for (int k = 0; k <= 4; ++k)
      for (int j = 0; j <= 2; ++j) {
        CAPTURE(family_name(c.kind));
        CAPTURE(k);
        CAPTURE(j);
        CHECK(reduce_to_basis(exact_form(fp, k, j), L) == Basis{rf(0), rf(0)});
      }
  }
}

TEST_CASE("property: reduction is linear") {
  for (int it = 0; it < 15; ++it) {
    FamilyKind kind = it % 3 == 0 ? FamilyKind::Main : it % 3 == 1 ? FamilyKind::COnly : FamilyKind::AOnly;
    FamilyLift L = lift_family(family_polynomial(kind, 1), 7);
    auto random_w = [] {
      CohomologyElement w;
      for (int t = 0; t < 4; ++t) w[{static_cast<int>(gen::uniform(0, 5)), static_cast<int>(gen::uniform(0, 2))}] = rf(gen::uniform(-9, 9));
      return w;
    };
    CohomologyElement w1 = random_w(), w2 = random_w();
    RatFunc a = rf(gen::uniform(-5, 5), gen::uniform(1, 4)), b = RatFunc::poly(QPoly{mpq_class(gen::uniform(-5, 5)), 1});
    CohomologyElement s;
    for (const auto& [k, v] : w1) s[k] = s[k] + a * v;
    for (const auto& [k, v] : w2) s[k] = s[k] + b * v;
    Basis r1 = reduce_to_basis(w1, L), r2 = reduce_to_basis(w2, L), rs = reduce_to_basis(s, L);
    CHECK(rs[0] == a * r1[0] + b * r2[0]);
    CHECK(rs[1] == a * r1[1] + b * r2[1]);
  }
}

TEST_CASE("C_ONLY connection matrix is diagonal") {
  for (long alpha : {0L, 1L, 3L}) {
    FamilyLift L = lift_family(family_polynomial(FamilyKind::COnly, alpha), 7);
    ConnectionMatrix G = connection_matrix(L);
    RatFunc d = RatFunc(QPoly{1}, QPoly{mpq_class(6 * alpha), 6});  // 1 / (6 (Gamma + alpha))
    CHECK(G.g[0] == -d);
    CHECK(G.g[1].is_zero());
    CHECK(G.g[2].is_zero());
    CHECK(G.g[3] == d);
  }
}

TEST_CASE("property: connection is compatible with reduction") {
  for (int it = 0; it < 12; ++it) {
    long p = it % 2 ? 5 : 3;
    FamilyKind kind = p == 3 ? FamilyKind::P3 : FamilyKind::Main;
    FamilyLift L = lift_family(family_polynomial(kind, 1), p);
    ConnectionMatrix G = connection_matrix(L);
    const int t = (L.s - 1) / 2;
    std::array<RatFunc, 2> c{RatFunc::poly(QPoly{mpq_class(gen::uniform(-4, 4)), mpq_class(gen::uniform(-4, 4))}),
                             RatFunc::poly(QPoly{mpq_class(gen::uniform(-4, 4)), mpq_class(gen::uniform(-4, 4))})};
    // nabla(c0 e0 + c1 e1) with e_k = X^k dX / y^s and dQ/dGamma = sum v_i X^i
    CohomologyElement w;
    for (int k = 0; k < 2; ++k) {
      w[{k, t}] = w[{k, t}] + c[static_cast<std::size_t>(k)].derivative();
      for (int i = 0; i < 3; ++i) {
        RatFunc v = rf(L.fp.v[static_cast<std::size_t>(i)]) * RatFunc(mpq_class(-L.s, 2));
        w[{k + i, t + 1}] = w[{k + i, t + 1}] + c[static_cast<std::size_t>(k)] * v;
      }
    }
    Basis got = reduce_to_basis(w, L);
    CHECK(got[0] == c[0].derivative() + c[0] * G.g[0] + c[1] * G.g[2]);
    CHECK(got[1] == c[1].derivative() + c[0] * G.g[1] + c[1] * G.g[3]);
  }
}

TEST_CASE("Kedlaya matrix of Y^2 = X^3 + X + 1 over F_5") {
  auto F = kedlaya_frobenius_zp(5, {1, 1, 0}, 3);
  mpz_class tr = symmetric((F[0] + F[3]) % 125, 125);
  CHECK(tr == -3);
  mpz_class det = (F[0] * F[3] - F[1] * F[2]) % 125;
  if (det < 0) det += 125;
  CHECK(det == 5);
}

TEST_CASE("property: characteristic polynomial of the q-power Frobenius") {
  int done = 0;
  for (long p : {3L, 5L, 7L})
    for (int m = 1; m <= 3; ++m)
      for (int it = 0; it < 25; ++it) {
        FpVec phi = gen::random_irreducible(m, p);
        auto Fq = ResidueField::make(p, phi);
        std::array<FqElem, 3> c{FqElem::zero(Fq), FqElem::zero(Fq), FqElem::zero(Fq)};
        for (auto& e : c) {
          FpVec v(static_cast<std::size_t>(m));
          for (auto& x : v) x = gen::uniform(0, p - 1);
          e = FqElem(Fq, v);
        }
        if (cubic_discriminant(c[2], c[1], c[0]).is_zero()) continue;
        mpz_class t = Fq->order() + 1 - oracle::count_points(c[2], c[1], c[0]);
        const int target = precision_bound(p, m) + 1;
        auto ext = teichmuller_modulus(phi, PadicContext::make(p, kedlaya_plan(p, target).work));
        std::array<ZVec, 3> q;
        for (std::size_t i = 0; i < 3; ++i) q[i] = lift_residue(c[i].poly());
        FrobeniusMatrix F = kedlaya_frobenius(ext, q, target);
        CHECK(F.det().valuation() == 1);
        FrobeniusMatrix P = q_power(F, m);
        ExtScalar tr = P.f1 + P.f4, dt = P.det();
        CHECK(tr == ExtScalar::constant(tr.ext(), t));
        CHECK(dt == ExtScalar::constant(dt.ext(), Fq->order()));
        ++done;
      }
  CHECK(done >= 9 * 20);
}
