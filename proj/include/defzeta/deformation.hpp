#pragma once

// Power-series solution of the Picard-Fuchs system
//   F' + F G = p Gamma^(p-1) G(Gamma^p) F,   F(0) = F0,
// and its specialization at the Teichmuller parameter gamma = x of Z_q.

#include <array>
#include <cstddef>
#include <map>
#include <string>

#include "defzeta/mw_cohomology.hpp"
#include "defzeta/unramified.hpp"

namespace defzeta {

// Four entries (row-major) as coefficient lists in Gamma, stored scaled by
// p^scale and reduced mod p^W.
struct SeriesMatrix {
  std::array<ZVec, 4> e;
  long p = 0;
  int W = 0;
  int scale = 0;
  std::size_t K() const { return e[0].size(); }
};

class PicardFuchsSolver {
 public:
  // G = Gn / g with g(0) = 1; Gn, g p-integral.
  PicardFuchsSolver(long p, int W, int scale, const std::array<QPoly, 4>& Gn, const QPoly& g,
                    const std::array<mpz_class, 4>& F0);
  PicardFuchsSolver(const ConnectionMatrix& G, long p, int W, int scale, const std::array<mpz_class, 4>& F0);

  // Computes coefficients up to degree K-1 (continues previous work).
  void extend(std::size_t K);
  const SeriesMatrix& series() const { return F_; }
  // p-adic valuation (after removing the scale) of the cleared residual
  // g g^sigma F' + g^sigma F Gn - p Gamma^(p-1) g Gn^sigma F over Gamma^i, i < K-1.
  int residual_valuation() const;

 private:
  long p_;
  int W_, scale_;
  mpz_class M_;
  ZVec c_;                     // g(Gamma) g(Gamma^p)
  std::array<ZVec, 4> left_;   // g(Gamma^p) Gn(Gamma), multiplied on the right of F
  std::array<ZVec, 4> right_;  // p Gamma^(p-1) g(Gamma) Gn(Gamma^p), multiplied on the left
  SeriesMatrix F_;
};

// Powers and the evaluated low half carried between calls with growing K.
struct SpecializeCache {
  const UnramifiedExtension* ext = nullptr;
  int W = 0;
  long L = 0;
  long h = 0;
  ZVec RL;          // R^L
  ZVec inv_R;       // R(gamma)^(-1)
  ZVec inv_RL;      // R(gamma)^(-L)
  ZVec gamma_h;     // gamma^h
  std::array<ZVec, 4> prefix;  // F entries below Gamma^h
  std::array<ZVec, 4> lo;      // their values at gamma
};

// Reduces R^L F mod (phi, Gamma^K) with L = floor(K / (2 deg R)), evaluates at
// gamma = x and divides by R(gamma)^L and p^scale. Needs ext->W() >= F.W.
FrobeniusMatrix specialize_at_gamma(const SeriesMatrix& F, const QPoly& R, const ExtPtr& ext, int target,
                                    SpecializeCache* cache = nullptr);

struct DeformationReport {
  FrobeniusMatrix F;
  std::size_t K = 0;
  int W = 0;
  int scale = 0;
  int residual_valuation = 0;
  int rounds = 0;
  std::map<std::string, double> timings;  // ms per stage
};

struct DeformationPlan {
  int W;      // working precision of the series
  int scale;  // p-power carried through the recurrence
  std::size_t K0, Kcap;
};
DeformationPlan deformation_plan(long p, int N, int buffer);

// Full adaptive driver: F0 by Kedlaya, series solve, specialization with
// K doubling until two consecutive results agree mod p^N. ext must be the
// Teichmuller extension of the shifted parameter with W >= plan.W.
DeformationReport frobenius_by_deformation(const FamilyLift& L, const ExtPtr& ext, int N, int buffer);

}  // namespace defzeta
