#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <optional>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "defzeta/errors.hpp"
#include "defzeta/zeta.hpp"

namespace defzeta::cli {

namespace {

using nlohmann::json;

const char* kStages[] = {"normalize", "teichmuller", "frobenius_f0", "ode_solve", "specialize", "pf_residual",
                         "eigen", "norm", "kedlaya", "trace_product", "naive", "total"};

std::string dec(const mpz_class& v) { return v.get_str(); }

std::vector<long> parse_ints(const std::string& s, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) fail(ErrorKind::ParseError, what + ": '" + s + "' is not a comma-separated integer list");
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorKind::ParseError, what + " is empty");
  return out;
}

void check_p(long p) {
  if (p == 2) fail(ErrorKind::ParseError, "p = 2 is not supported (odd characteristic only)");
  if (p < 3 || !is_prime(p)) fail(ErrorKind::ParseError, "p = " + std::to_string(p) + " is not an odd prime");
}

FieldPtr make_field(long p, int n, const std::string& poly) {
  if (n < 1) fail(ErrorKind::ParseError, "n must be positive");
  if (poly.empty()) return ResidueField::make(p, fpoly::smallest_irreducible(n, p));
  std::vector<long> c = parse_ints(poly, "--field-poly");
  if (static_cast<int>(c.size()) != n + 1) fail(ErrorKind::ParseError, "--field-poly needs n+1 coefficients");
  if (c.back() != 1) fail(ErrorKind::ParseError, "--field-poly must be monic");
  for (long x : c)
    if (x < 0 || x >= p) fail(ErrorKind::ParseError, "--field-poly coefficients must lie in [0, p)");
  if (!fpoly::is_irreducible(c, p)) fail(ErrorKind::ParseError, "--field-poly is reducible mod p");
  return ResidueField::make(p, c);
}

FqElem parse_elem(const FieldPtr& F, const std::string& s) {
  std::vector<long> c = parse_ints(s, "--curve element");
  if (static_cast<int>(c.size()) > F->n()) fail(ErrorKind::ParseError, "--curve element '" + s + "' has more than n coefficients");
  for (long x : c)
    if (x < 0 || x >= F->p()) fail(ErrorKind::ParseError, "--curve coefficients must lie in [0, p)");
  return FqElem(F, c);
}

// Three elements a b c, or five a1 a2 a3 a4 a6 of the long form.
WeierstrassCurve parse_curve(const FieldPtr& F, const std::vector<std::string>& v) {
  std::vector<FqElem> e;
  for (const auto& s : v) e.push_back(parse_elem(F, s));
  if (e.size() == 3) return {e[0], e[1], e[2]};
  if (e.size() == 5) return complete_square(e[0], e[1], e[2], e[3], e[4]);
  fail(ErrorKind::ParseError, "--curve takes 3 elements (a b c) or 5 (a1 a2 a3 a4 a6)");
}

std::string poly_string(const FpVec& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Supersingular: return kSupersingular;
    case ErrorKind::SingularCurve: return kSingular;
    case ErrorKind::ParseError:
    case ErrorKind::NotIrreducible: return kParseError;
    default: return kOtherError;
  }
}

int report_error(const Error& e, std::ostream& err) {
  std::string msg = e.what();
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  const int code = exit_code(e.kind());
  err << "error=" << kind_name(e.kind()) << " exit=" << code << " reason=\"" << msg << "\"\n";
  return code;
}

json timings_json(const std::map<std::string, double>& t) {
  json j = json::object();
  for (const auto& [k, v] : t) j[k] = std::round(v * 1000.0) / 1000.0;
  return j;
}

struct CountArgs {
  long p = 0;
  int n = 0;
  std::string field_poly;
  std::vector<std::string> curve;
  std::string mode = "auto";
  std::vector<int> ext;
  bool json = false;
};

int run_count(const CountArgs& a, std::ostream& out) {
  check_p(a.p);
  Mode mode = parse_mode(a.mode);
  FieldPtr F = make_field(a.p, a.n, a.field_poly);
  WeierstrassCurve C = parse_curve(F, a.curve);
  std::vector<int> ks{1};
  for (int k : a.ext) {
    if (k < 1) fail(ErrorKind::ParseError, "--ext values must be positive");
    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  ZetaResult r = compute_zeta(C, {mode, 0});
  const ZetaFunction& z = r.zeta;
  if (a.json) {
    json j;
    j["p"] = a.p;
    j["n"] = a.n;
    j["q"] = dec(z.q());
    j["trace"] = dec(z.t);
    j["numerator"] = json::array();
    for (const auto& c : z.numerator()) j["numerator"].push_back(dec(c));
    j["twist"] = r.twist;
    j["mode"] = mode_name(r.mode_used);
    j["requested_mode"] = mode_name(mode);
    j["field_poly"] = poly_string(F->modulus_bar());
    j["m"] = r.detail.m;
    j["N"] = r.detail.N;
    j["counts"] = json::object();
    for (int k : ks) j["counts"][std::to_string(k)] = dec(extend_zeta(z, k).count());
    j["timings_ms"] = timings_json(r.timings_ms);
    out << j.dump() << "\n";
    return kOk;
  }
  out << "field    F_" << a.p << "^" << a.n << " = F_" << a.p << "[x]/(" << poly_string(F->modulus_bar())
      << ")  (coefficients low to high)\n";
  out << "curve    Y^2 = X^3 + (" << C.a.to_string() << ") X^2 + (" << C.b.to_string() << ") X + (" << C.c.to_string()
      << ")\n";
  out << "mode     " << mode_name(r.mode_used) << " (requested " << mode_name(mode) << ")\n";
  out << "subfield m = " << r.detail.m << ", N = " << r.detail.N << ", twist = " << (r.twist ? "yes" : "no") << "\n";
  out << "q        " << z.q() << "\n";
  out << "trace    " << z.t << "\n";
  out << "zeta     numerator 1 + (" << -z.t << ") T + (" << z.q() << ") T^2\n";
  for (int k : ks) out << "#E(F_q^" << k << ") " << extend_zeta(z, k).count() << "\n";
  out << "timings_ms";
  for (const auto& [k, v] : r.timings_ms) out << " " << k << "=" << std::fixed << std::setprecision(1) << v;
  out << "\n";
  return kOk;
}

struct BenchArgs {
  long p = 3;
  std::string n_list;
  std::string field_poly;
  std::string mode = "deformation";
  unsigned long long seed = 1;
  int threads = 1;
  bool json = false;
};

struct BenchRow {
  int n = 0;
  std::string field_poly;
  std::vector<std::string> curve;
  int draws = 0;
  ZetaResult result;
  std::string error;
};

// Draws a random nonsingular, nonsupersingular curve over F_{p^n} from (seed, n).
BenchRow bench_one(long p, int n, const std::string& poly, Mode mode, unsigned long long seed) {
  BenchRow row;
  row.n = n;
  FieldPtr F = make_field(p, n, poly);
  row.field_poly = poly_string(F->modulus_bar());
  std::seed_seq ss{static_cast<unsigned>(seed & 0xffffffffu), static_cast<unsigned>(seed >> 32),
                   static_cast<unsigned>(n)};
  std::mt19937_64 rng(ss);
  auto draw = [&] {
    FpVec c(static_cast<std::size_t>(n));
    for (auto& x : c) x = static_cast<long>(rng() % static_cast<unsigned long long>(p));
    return FqElem(F, c);
  };
  for (row.draws = 1; row.draws <= 64; ++row.draws) {
    WeierstrassCurve C{draw(), draw(), draw()};
    try {
      row.result = compute_zeta(C, {mode, 0});
      row.curve = {C.a.to_string(), C.b.to_string(), C.c.to_string()};
      return row;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Supersingular && e.kind() != ErrorKind::SingularCurve) {
        row.error = e.what();
        return row;
      }
    }
  }
  row.error = "no usable curve in 64 draws";
  return row;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
  check_p(a.p);
  Mode mode = parse_mode(a.mode);
  std::vector<long> ns = parse_ints(a.n_list, "--n");
  for (long n : ns)
    if (n < 1) fail(ErrorKind::ParseError, "--n values must be positive");
  if (!a.field_poly.empty() && ns.size() != 1) fail(ErrorKind::ParseError, "--field-poly needs a single --n");
  if (a.threads < 1) fail(ErrorKind::ParseError, "--threads must be positive");
  if (!a.field_poly.empty()) make_field(a.p, static_cast<int>(ns[0]), a.field_poly);

  std::vector<BenchRow> rows(ns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < ns.size();)
      rows[i] = bench_one(a.p, static_cast<int>(ns[i]), a.field_poly, mode, a.seed);
  };
  std::vector<std::thread> pool;
  const int nt = std::min<int>(a.threads, static_cast<int>(ns.size()));
  for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // exponent between consecutive rows: log(T_i / T_{i-1}) / log(n_i / n_{i-1})
  std::vector<std::optional<double>> expo(rows.size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto &r0 = rows[i - 1], &r1 = rows[i];
    if (!r0.error.empty() || !r1.error.empty() || r0.n == r1.n) continue;
    double t0 = r0.result.timings_ms.at("total"), t1 = r1.result.timings_ms.at("total");
    expo[i] = std::log(t1 / t0) / std::log(static_cast<double>(r1.n) / r0.n);
  }
  auto share = [](const ZetaResult& r) {
    double s = 0;
    for (const char* k : {"teichmuller", "eigen", "norm"})
      if (r.timings_ms.count(k)) s += r.timings_ms.at(k);
    return s / r.timings_ms.at("total");
  };

  bool failed = false;
  if (a.json) {
    json j;
    j["p"] = a.p;
    j["seed"] = a.seed;
    j["mode"] = mode_name(mode);
    j["threads"] = a.threads;
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      json row;
      row["n"] = r.n;
      row["field_poly"] = r.field_poly;
      if (!r.error.empty()) {
        row["error"] = r.error;
        failed = true;
      } else {
        row["curve"] = r.curve;
        row["draws"] = r.draws;
        row["trace"] = dec(r.result.zeta.t);
        row["mode"] = mode_name(r.result.mode_used);
        row["seconds"] = r.result.timings_ms.at("total") / 1000.0;
        row["timings_ms"] = timings_json(r.result.timings_ms);
        row["teich_eigen_norm_share"] = share(r.result);
      }
      row["exponent"] = expo[i] ? json(*expo[i]) : json(nullptr);
      j["rows"].push_back(row);
    }
    out << j.dump() << "\n";
    return failed ? kOtherError : kOk;
  }
  out << "p=" << a.p << " seed=" << a.seed << " mode=" << mode_name(mode) << " threads=" << a.threads << "\n";
  out << std::left << std::setw(7) << "n" << std::setw(11) << "seconds" << std::setw(10) << "exponent" << std::setw(8)
      << "share";
  // stage columns that occur in some row
  std::vector<std::string> cols;
  for (const char* s : kStages) {
    if (std::string(s) == "total") continue;
    for (const auto& r : rows)
      if (r.error.empty() && r.result.timings_ms.count(s)) {
        cols.push_back(s);
        break;
      }
  }
  for (const auto& s : cols) out << std::setw(14) << s;
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << std::left << std::setw(7) << r.n;
    if (!r.error.empty()) {
      out << "error: " << r.error << "\n";
      failed = true;
      continue;
    }
    std::ostringstream sec, ex, sh;
    sec << std::fixed << std::setprecision(3) << r.result.timings_ms.at("total") / 1000.0;
    if (expo[i]) ex << std::fixed << std::setprecision(2) << *expo[i];
    sh << std::fixed << std::setprecision(2) << share(r.result);
    out << std::setw(11) << sec.str() << std::setw(10) << (expo[i] ? ex.str() : "-") << std::setw(8) << sh.str();
    for (const auto& s : cols) {
      auto it = r.result.timings_ms.find(s);
      std::ostringstream v;
      if (it != r.result.timings_ms.end()) v << std::fixed << std::setprecision(1) << it->second;
      out << std::setw(14) << (it != r.result.timings_ms.end() ? v.str() : "-");
    }
    out << "\n";
  }
  out << "stage columns in ms; share = (teichmuller + eigen + norm) / total\n";
  return failed ? kOtherError : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta functions of ordinary elliptic curves over F_{p^n} by deformation", "defzeta"};
  app.require_subcommand(1);
  CountArgs ca;
  auto* count = app.add_subcommand("count", "count points of one curve");
  count->add_option("--p", ca.p, "odd prime")->required();
  count->add_option("--n", ca.n, "extension degree")->required();
  count->add_option("--field-poly", ca.field_poly, "monic irreducible modulus, n+1 coefficients low to high");
  count->add_option("--curve", ca.curve, "a b c (or a1 a2 a3 a4 a6), each n coefficients low to high")->required();
  count->add_option("--mode", ca.mode, "auto | deformation | kedlaya | naive");
  count->add_option("--ext", ca.ext, "extension degrees k for #E(F_q^k)")->delimiter(',');
  count->add_flag("--json", ca.json, "machine-readable output");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time random curves for a list of n");
  bench->add_option("--p", ba.p, "odd prime");
  bench->add_option("--n", ba.n_list, "comma-separated list of n")->required();
  bench->add_option("--field-poly", ba.field_poly, "modulus (single n only)");
  bench->add_option("--mode", ba.mode, "auto | deformation | kedlaya | naive");
  bench->add_option("--seed", ba.seed, "random curve seed");
  bench->add_option("--threads", ba.threads, "worker threads");
  bench->add_flag("--json", ba.json, "machine-readable output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error=ParseError exit=" << kParseError << " reason=\"" << msg << "\"\n";
    return kParseError;
  }
  try {
    if (count->parsed()) return run_count(ca, out);
    return run_bench(ba, out);
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error=Internal exit=" << kOtherError << " reason=\"" << e.what() << "\"\n";
    return kOtherError;
  }
}

}  // namespace defzeta::cli
