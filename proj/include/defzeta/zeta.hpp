#pragma once

// Precision policy, trace recovery and the end-to-end counting pipeline.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defzeta/curve_family.hpp"
#include "defzeta/eigen_solver.hpp"
#include "defzeta/padic.hpp"

namespace defzeta {

// Numerator q T^2 - t T + 1 over F_{p^n}.
struct ZetaFunction {
  long p = 0;
  int n = 0;
  mpz_class t;

  mpz_class q() const { return ipow(p, n); }
  mpz_class count() const { return q() + 1 - t; }
  std::vector<mpz_class> numerator() const { return {1, -t, q()}; }  // ascending in T
};

// Smallest N with p^N > 4 sqrt(p^n).
int precision_bound(long p, int n);

// The unique t1 = t1_mod mod p^N with |t1| < 2 sqrt(p^m), negated if twist.
mpz_class trace_from_norm(const PadicScalar& t1_mod, long p, int m, bool twist);

// Z over F_{p^(n k)}.
ZetaFunction extend_zeta(const ZetaFunction& z, int k);

enum class Mode { Auto, Deformation, Kedlaya, Naive };
const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct ZetaOptions {
  Mode mode = Mode::Auto;
  int buffer_extra = 0;
};

// Intermediate objects kept for invariant checks.
struct PipelineDetail {
  FamilyKind kind = FamilyKind::Main;
  int m = 0;
  int N = 0;
  ExtPtr ext;
  std::optional<FrobeniusMatrix> F;
  std::optional<EigenPair> eigen;
  std::size_t K = 0;
  int W = 0;
  int pf_residual = kInfiniteValuation;
  mpz_class subfield_trace;  // trace of the fibre over F_{p^m}, before twist
};

struct ZetaResult {
  ZetaFunction zeta;
  bool twist = false;
  Mode mode_used = Mode::Auto;
  std::map<std::string, double> timings_ms;
  PipelineDetail detail;
};

ZetaResult compute_zeta(const WeierstrassCurve& curve, const ZetaOptions& opt = {});

// Default working-digit cushion above N.
constexpr int kDefaultBuffer = 4;

}  // namespace defzeta
