#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

#include "defzeta/errors.hpp"
#include "defzeta/zeta.hpp"

#include <cmath>

using namespace defzeta;

namespace {

WeierstrassCurve prime_curve(const FieldPtr& F, long a, long b, long c) {
  return {FqElem::constant(F, a), FqElem::constant(F, b), FqElem::constant(F, c)};
}

FqElem random_elem(const FieldPtr& F) {
  FpVec c(static_cast<std::size_t>(F->n()));
  for (auto& x : c) x = gen::uniform(0, F->p() - 1);
  return FqElem(F, c);
}

void check_output(const ZetaFunction& z) {
  CHECK(z.t * z.t < 4 * z.q());
  CHECK(z.t % z.p != 0);
}

}  // namespace

TEST_CASE("precision bound") {
  CHECK(precision_bound(3, 10) == 7);
  CHECK(precision_bound(5, 4) == 3);
  CHECK(precision_bound(3, 2) == 3);
  CHECK(precision_bound(7, 1) == 2);
}

TEST_CASE("trace recovery from a residue") {
  auto ctx = PadicContext::make(5, 3);
  CHECK(trace_from_norm(PadicScalar(ctx, 120), 5, 3, false) == -5);
  CHECK(trace_from_norm(PadicScalar(ctx, 120), 5, 3, true) == 5);
  CHECK(trace_from_norm(PadicScalar(ctx, 7), 5, 3, false) == 7);
}

TEST_CASE("extend zeta") {
  ZetaFunction z{5, 1, -3};
  CHECK(extend_zeta(z, 1).t == -3);
  ZetaFunction z2 = extend_zeta(z, 2);
  CHECK(z2.t == -1);
  CHECK(z2.n == 2);
  CHECK(z2.numerator() == std::vector<mpz_class>{1, 1, 25});
  CHECK(z2.count() == 27);
}

TEST_CASE("property: extend zeta equals the resultant with X^k - T") {
  for (int it = 0; it < 60; ++it) {
    long p = gen::odd_prime(13);
    int n = static_cast<int>(gen::uniform(1, 4)), k = static_cast<int>(gen::uniform(1, 9));
    mpz_class q = ipow(p, n), t;
    do t = gen::uniform(-2 * static_cast<long>(std::sqrt(q.get_d())), 2 * static_cast<long>(std::sqrt(q.get_d())));
    while (t * t >= 4 * q);
    ZetaFunction e = extend_zeta({p, n, t}, k);
    auto want = oracle::extended_numerator(q, t, k);
    CHECK(e.numerator() == std::vector<mpz_class>{want[0], want[1], want[2]});
    CHECK(e.n == n * k);
  }
}

TEST_CASE("worked example over F_5 in every mode") {
  auto F5 = ResidueField::make(5, FpVec{0, 1});
  auto E = prime_curve(F5, 0, 1, 1);
  for (Mode m : {Mode::Auto, Mode::Naive, Mode::Deformation, Mode::Kedlaya}) {
    ZetaResult r = compute_zeta(E, {m, 0});
    CHECK(r.zeta.t == -3);
    CHECK(r.zeta.count() == 9);
    CHECK(extend_zeta(r.zeta, 2).count() == 27);
  }
  auto F25 = ResidueField::make(5, FpVec{2, 0, 1});
  auto E25 = prime_curve(F25, 0, 1, 1);
  CHECK(oracle::count_points(E25.a, E25.b, E25.c) == 27);
  CHECK(compute_zeta(E25, {Mode::Deformation, 0}).zeta.count() == 27);
}

TEST_CASE("supersingular inputs") {
  auto F7 = ResidueField::make(7, FpVec{0, 1});
  for (Mode m : {Mode::Auto, Mode::Naive, Mode::Deformation, Mode::Kedlaya}) {
    try {
      compute_zeta(prime_curve(F7, 0, 1, 0), {m, 0});
      FAIL("expected Supersingular");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Supersingular);
    }
  }
  auto F = ResidueField::make(3, gen::random_irreducible(5, 3));
  for (int it = 0; it < 10; ++it) {
    WeierstrassCurve E{FqElem::zero(F), random_elem(F), random_elem(F)};
    if (cubic_discriminant(E.a, E.b, E.c).is_zero()) continue;
    for (Mode m : {Mode::Auto, Mode::Deformation, Mode::Kedlaya, Mode::Naive}) {
      try {
        compute_zeta(E, {m, 0});
        FAIL("expected Supersingular");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Supersingular);
      }
    }
  }
}

TEST_CASE("singular input is rejected") {
  auto F5 = ResidueField::make(5, FpVec{0, 1});
  try {
    compute_zeta(prime_curve(F5, 0, 0, 0));
    FAIL("expected SingularCurve");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularCurve);
  }
}

TEST_CASE("parameter in a proper subfield") {
  // gamma in F_5 inside F_{5^4}
  auto F = ResidueField::make(5, gen::random_irreducible(4, 5));
  auto E = prime_curve(F, 0, 2, 1);
  mpz_class want = F->order() + 1 - oracle::count_points(E.a, E.b, E.c);
  for (Mode m : {Mode::Auto, Mode::Deformation, Mode::Kedlaya}) {
    ZetaResult r = compute_zeta(E, {m, 0});
    CHECK(r.detail.m == 1);
    CHECK(r.zeta.t == want);
  }
}

TEST_CASE("property: all modes agree with the point-count oracle on small fields") {
  for (long p : {3L, 5L, 7L})
    for (int n : {1, 2, 3}) {
      auto F = ResidueField::make(p, gen::random_irreducible(n, p));
      for (int it = 0; it < 4; ++it) {
        WeierstrassCurve E{random_elem(F), random_elem(F), random_elem(F)};
        if (cubic_discriminant(E.a, E.b, E.c).is_zero()) continue;
        mpz_class t = F->order() + 1 - oracle::count_points(E.a, E.b, E.c);
        for (Mode m : {Mode::Auto, Mode::Naive, Mode::Deformation, Mode::Kedlaya}) {
          CAPTURE(mode_name(m));
          if (t % p == 0) {
            CHECK_THROWS_AS(compute_zeta(E, {m, 0}), Error);
            continue;
          }
          ZetaResult r = compute_zeta(E, {m, 0});
          CHECK(r.zeta.t == t);
          check_output(r.zeta);
        }
      }
    }
}

TEST_CASE("property: extended counts agree with counting over the extension") {
  struct Case {
    long p;
    int k;
  };
  for (Case c : {Case{3, 2}, Case{3, 4}, Case{3, 5}, Case{5, 2}, Case{5, 4}, Case{7, 2}, Case{7, 3}}) {
    auto Fp = ResidueField::make(c.p, FpVec{0, 1});
    auto Fk = ResidueField::make(c.p, fpoly::smallest_irreducible(c.k, c.p));
    for (int it = 0; it < 5; ++it) {
      long a = gen::uniform(0, c.p - 1), b = gen::uniform(0, c.p - 1), cc = gen::uniform(0, c.p - 1);
      auto E = prime_curve(Fp, a, b, cc);
      if (cubic_discriminant(E.a, E.b, E.c).is_zero()) continue;
      mpz_class t = Fp->order() + 1 - oracle::count_points(E.a, E.b, E.c);
      auto Ek = prime_curve(Fk, a, b, cc);
      CHECK(extend_zeta({c.p, 1, t}, c.k).count() == oracle::count_points(Ek.a, Ek.b, Ek.c));
    }
  }
}

TEST_CASE("mode names round trip") {
  for (Mode m : {Mode::Auto, Mode::Naive, Mode::Deformation, Mode::Kedlaya}) CHECK(parse_mode(mode_name(m)) == m);
  CHECK_THROWS_AS(parse_mode("fast"), Error);
}
