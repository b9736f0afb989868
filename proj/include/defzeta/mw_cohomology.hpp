#pragma once

// Genus one Monsky-Washnitzer reductions for y^2 = Q(X), Q a monic cubic.
// A differential at level j is P(X) dX / y^(2j+1). The basis lives at level
// t = (s-1)/2: {dX/y^s, X dX/y^s} with s = 1, or s = 3 when p = 3.

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <type_traits>
#include <vector>

#include "defzeta/curve_family.hpp"
#include "defzeta/rational.hpp"
#include "defzeta/rings.hpp"
#include "defzeta/unramified.hpp"

namespace defzeta {

inline int basis_level_s(long p) { return p == 3 ? 3 : 1; }

template <class Ring>
using RPoly = std::vector<typename Ring::T>;

template <class Ring>
using Mat2 = std::array<typename Ring::T, 4>;  // row-major

// ------------------------------------------------------------ generic helpers

template <class Ring>
void poly_add_into(const Ring& R, RPoly<Ring>& acc, const RPoly<Ring>& b, std::size_t shift = 0) {
  if (acc.size() < b.size() + shift) acc.resize(b.size() + shift, R.zero());
  for (std::size_t i = 0; i < b.size(); ++i) acc[i + shift] = R.add(acc[i + shift], b[i]);
}

template <class Ring>
RPoly<Ring> poly_mul_generic(const Ring& R, const RPoly<Ring>& a, const RPoly<Ring>& b) {
  if (a.empty() || b.empty()) return {};
  RPoly<Ring> r(a.size() + b.size() - 1, R.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (R.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
  }
  return r;
}

inline RPoly<ZpRing> poly_mul(const ZpRing& R, const RPoly<ZpRing>& a, const RPoly<ZpRing>& b) {
  if (a.empty() || b.empty()) return {};
  auto r = zpoly::mul(a, b, R.M);
  r.resize(a.size() + b.size() - 1);
  return r;
}
template <class Ring>
RPoly<Ring> poly_mul(const Ring& R, const RPoly<Ring>& a, const RPoly<Ring>& b) {
  return poly_mul_generic(R, a, b);
}

template <class Ring>
typename Ring::T mul_int(const Ring& R, const typename Ring::T& a, long n) {
  return R.mul(a, R.from_int(mpz_class(n)));
}

// Solves A Q + B Q' = 1 with deg A <= 1, deg B <= 2 by elimination on the
// 5x5 coefficient system; pivots are taken among units.
template <class Ring>
std::array<typename Ring::T, 5> bezout_cubic(const Ring& R, const std::array<typename Ring::T, 3>& q) {
  using T = typename Ring::T;
  const T z = R.zero(), one = R.one();
  T two_q2 = mul_int(R, q[2], 2), three = R.from_int(3);
  // unknowns a0 a1 b0 b1 b2; rows are coefficients of X^0..X^4
  std::array<std::array<T, 6>, 5> m = {{
      {q[0], z, q[1], z, z, one},
      {q[1], q[0], two_q2, q[1], z, z},
      {q[2], q[1], three, two_q2, q[1], z},
      {one, q[2], z, three, two_q2, z},
      {z, one, z, z, three, z},
  }};
  for (int c = 0; c < 5; ++c) {
    int piv = -1;
    for (int r = c; r < 5; ++r)
      if (R.is_unit(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)])) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorKind::NotAUnit, "Q and Q' are not coprime over the coefficient ring");
    std::swap(m[static_cast<std::size_t>(c)], m[static_cast<std::size_t>(piv)]);
    auto& row = m[static_cast<std::size_t>(c)];
    T inv = R.inv(row[static_cast<std::size_t>(c)]);
    for (auto& x : row) x = R.mul(x, inv);
    for (int r = 0; r < 5; ++r) {
      if (r == c) continue;
      auto& other = m[static_cast<std::size_t>(r)];
      T f = other[static_cast<std::size_t>(c)];
      if (R.is_zero(f)) continue;
      for (std::size_t k = 0; k < 6; ++k) other[k] = R.sub(other[k], R.mul(f, row[k]));
    }
  }
  return {m[0][5], m[1][5], m[2][5], m[3][5], m[4][5]};
}

// Reduction engine for one curve y^2 = X^3 + q2 X^2 + q1 X + q0.
template <class Ring>
class Reducer {
 public:
  using T = typename Ring::T;

  Reducer(const Ring& R, std::array<T, 3> q, int s) : R_(R), q_(std::move(q)), s_(s), t_((s - 1) / 2) {
    auto ab = bezout_cubic(R_, q_);
    A_ = {ab[0], ab[1]};
    B_ = {ab[2], ab[3], ab[4]};
    if constexpr (std::is_same_v<Ring, ZpRing>)
      for (std::size_t i = 0; i < 3; ++i) qs_[i] = symmetric(q_[i], R_.M);
  }

  int target_level() const { return t_; }
  const Ring& ring() const { return R_; }

  // Moves P dX/y^(2j+1) (j > target) to level j-1; adds the result into lower.
  void step(RPoly<Ring>& P, int j, RPoly<Ring>& lower) const {
    // P = S Q + T with deg T <= 2; S carries over unchanged.
    if constexpr (std::is_same_v<Ring, ZpRing>) {
      // each entry takes at most three products before it is reduced
      for (std::size_t i = P.size(); i-- > 3;) {
        mpz_ptr c = P[i].get_mpz_t();
        mpz_mod(c, c, R_.M.get_mpz_t());
        if (mpz_sgn(c) == 0) continue;
        for (std::size_t k = 1; k <= 3; ++k) mpz_submul(P[i - k].get_mpz_t(), c, qs_[3 - k].get_mpz_t());
      }
      for (std::size_t i = 0; i < 3 && i < P.size(); ++i) mpz_mod(P[i].get_mpz_t(), P[i].get_mpz_t(), R_.M.get_mpz_t());
    } else {
      for (std::size_t i = P.size(); i-- > 3;) {
        const T c = P[i];
        if (R_.is_zero(c)) continue;
        P[i - 1] = R_.sub(P[i - 1], R_.mul(c, q_[2]));
        P[i - 2] = R_.sub(P[i - 2], R_.mul(c, q_[1]));
        P[i - 3] = R_.sub(P[i - 3], R_.mul(c, q_[0]));
      }
    }
    P.resize(std::max<std::size_t>(P.size(), 3), R_.zero());
    RPoly<Ring> low(std::make_move_iterator(P.begin()), std::make_move_iterator(P.begin() + 3));
    P.erase(P.begin(), P.begin() + 3);
    if (lower.empty()) {
      lower.swap(P);
    } else {
      if (lower.size() < P.size()) lower.resize(P.size(), R_.zero());
      for (std::size_t i = 0; i < P.size(); ++i) lower[i] = R_.add(lower[i], P[i]);
    }
    P = std::move(low);
    // T = A T Q + B T Q' and B T Q' dX/y^(2j+1) == 2/(2j-1) (B T)' dX/y^(2j-1).
    RPoly<Ring> AT = poly_mul_generic(R_, RPoly<Ring>(A_.begin(), A_.end()), P);
    RPoly<Ring> BT = poly_mul_generic(R_, RPoly<Ring>(B_.begin(), B_.end()), P);
    poly_add_into(R_, lower, AT);
    RPoly<Ring> dBT;
    for (std::size_t i = 1; i < BT.size(); ++i) dBT.push_back(R_.div_int(mul_int(R_, BT[i], 2 * static_cast<long>(i)), 2L * j - 1));
    poly_add_into(R_, lower, dBT);
    P.clear();
  }

  // At the target level, lowers the degree to <= 1 with the exact forms
  // d(X^k / y^(s-2)) = (2k X^(k-1) Q - (s-2) X^k Q') dX / (2 y^s).
  std::array<T, 2> finish(RPoly<Ring> P) const {
    const long s2 = s_ - 2;
    for (std::size_t d = P.size(); d-- > 2;) {
      if (R_.is_zero(P[d])) continue;
      const long k = static_cast<long>(d) - 2;
      T c = R_.div_int(P[d], 2 * k - 3 * s2);
      P[d] = R_.zero();
      P[d - 1] = R_.sub(P[d - 1], R_.mul(c, mul_int(R_, q_[2], 2 * k - 2 * s2)));
      P[d - 2] = R_.sub(P[d - 2], R_.mul(c, mul_int(R_, q_[1], 2 * k - s2)));
      if (k >= 1) P[d - 3] = R_.sub(P[d - 3], R_.mul(c, mul_int(R_, q_[0], 2 * k)));
    }
    P.resize(2, R_.zero());
    return {P[0], P[1]};
  }

  // Reduces sum over levels of parts[j] dX/y^(2j+1) to basis coordinates.
  std::array<T, 2> reduce(std::map<int, RPoly<Ring>> parts) const {
    // Levels below the target are raised by multiplying with Q.
    for (auto it = parts.begin(); it != parts.end() && it->first < t_;) {
      RPoly<Ring> P = it->second;
      for (int j = it->first; j < t_; ++j) P = poly_mul_generic(R_, P, cubic());
      poly_add_into(R_, parts[t_], P);
      it = parts.erase(it);
    }
    if (parts.empty()) return {R_.zero(), R_.zero()};
    int top = parts.rbegin()->first;
    RPoly<Ring> cur;
    for (int j = top; j > t_; --j) {
      auto it = parts.find(j);
      if (it != parts.end()) poly_add_into(R_, cur, it->second);
      RPoly<Ring> lower;
      step(cur, j, lower);
      cur = std::move(lower);
    }
    auto it = parts.find(t_);
    if (it != parts.end()) poly_add_into(R_, cur, it->second);
    return finish(std::move(cur));
  }

  RPoly<Ring> cubic() const { return {q_[0], q_[1], q_[2], R_.one()}; }
  RPoly<Ring> cubic_derivative() const { return {q_[1], mul_int(R_, q_[2], 2), R_.from_int(3)}; }

 private:
  const Ring& R_;
  std::array<T, 3> q_;
  std::array<mpz_class, 3> qs_;  // symmetric residues, Z_p only
  int s_, t_;
  std::array<T, 2> A_;
  std::array<T, 3> B_;
};

// ------------------------------------------------------------ family data

struct FamilyLift {
  FamilyPolynomial fp;
  QPoly r;  // integer coefficients
  QPoly R;  // r truncated after its last unit coefficient
  int rho_prime = 0;
  int s = 1;
  long p = 0;
};
FamilyLift lift_family(const FamilyInstance& f, long p);
FamilyLift lift_family(const FamilyPolynomial& fp, long p);

// Sum over (i, j) of c X^i dX / y^(2j+1) with coefficients in Q(Gamma).
using CohomologyElement = std::map<std::pair<int, int>, RatFunc>;
std::array<RatFunc, 2> reduce_to_basis(const CohomologyElement& w, const FamilyLift& L);

// Row i holds the coordinates of nabla(e_i) (row convention).
struct ConnectionMatrix {
  std::array<RatFunc, 4> g;
  // G = Gn / den with den(0) = 1.
  std::array<QPoly, 4> numerators() const;
  QPoly denominator() const;
};
ConnectionMatrix connection_matrix(const FamilyLift& L);

// ------------------------------------------------------------ Frobenius

// Kedlaya's matrix of the p-power Frobenius on the basis at level (s-1)/2,
// row convention, accurate mod p^target.
std::array<mpz_class, 4> kedlaya_frobenius_zp(long p, const std::array<mpz_class, 3>& q, int target);

struct FrobeniusMatrix {
  ExtScalar f1, f2, f3, f4;
  ExtScalar det() const { return f1 * f4 - f2 * f3; }
};
// Same over Z_q; needs ext->W() >= kedlaya_plan(p, target).work.
FrobeniusMatrix kedlaya_frobenius(const ExtPtr& ext, const std::array<ZVec, 3>& q, int target);

// Work precision and truncation chosen for a given target.
struct KedlayaPlan {
  int terms;  // binomial terms l = 0..terms-1
  int scale;  // extra p-power carried through the reductions
  int work;   // working precision
};
KedlayaPlan kedlaya_plan(long p, int target);

}  // namespace defzeta
