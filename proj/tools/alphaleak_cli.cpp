// Copyright 2026 The alphaleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphaleak/capacity.hpp"
#include "alphaleak/experiments.hpp"
#include "alphaleak/io.hpp"
#include "alphaleak/measures.hpp"

namespace {

using namespace alphaleak;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitZeroEvent = 3;
constexpr int kExitNoConverge = 4;

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// Fixed-precision, locale-independent number rendering so identical inputs
// produce byte-identical output.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* base_name(LogBase b) {
  return b == LogBase::Bits ? "bits" : "nats";
}

LogBase parse_base(const std::string& s) {
  if (s == "bits") return LogBase::Bits;
  if (s == "nats") return LogBase::Nats;
  throw CliError(kExitUsage, "unknown base '" + s + "' (bits|nats)");
}

std::vector<AlphaOrder> parse_alphas(const std::string& spec) {
  std::vector<AlphaOrder> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "inf") {
      out.push_back(AlphaOrder::infinity());
      continue;
    }
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(AlphaOrder::of(v));
    } catch (const ProbError& e) {
      throw CliError(kExitUsage, e.what());
    } catch (const std::exception&) {
      throw CliError(kExitUsage, "cannot parse alpha token '" + tok + "'");
    }
  }
  if (out.empty()) throw CliError(kExitUsage, "empty --alpha specification");
  return out;
}

// One output row; optional cells render as empty CSV fields / "-" in tables
// and are omitted from JSON.
struct Row {
  std::string alpha;
  double value;
  std::string base;
  std::string method;
  std::optional<double> gap;
  std::optional<std::size_t> iterations;
  std::optional<std::string> argmax_z;
  std::optional<double> oracle_value;
};

struct OutputSink {
  std::string format = "table";
  std::string out_path;

  void write(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw CliError(kExitUsage, "cannot write '" + out_path + "'");
    f << text;
  }
};

std::string render_rows(const std::vector<Row>& rows, const std::string& format,
                        bool conditional, bool with_oracle) {
  std::ostringstream os;
  if (format == "csv") {
    os << "alpha,value,base,method,gap,iterations";
    if (conditional) os << ",argmax_z";
    if (with_oracle) os << ",oracle_value";
    os << "\n";
    for (const auto& r : rows) {
      os << r.alpha << ',' << fmt(r.value) << ',' << r.base << ',' << r.method
         << ',' << (r.gap ? fmt(*r.gap) : "") << ','
         << (r.iterations ? std::to_string(*r.iterations) : "");
      if (conditional) os << ',' << (r.argmax_z ? *r.argmax_z : "");
      if (with_oracle) os << ',' << (r.oracle_value ? fmt(*r.oracle_value) : "");
      os << "\n";
    }
  } else if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json o{{"alpha", r.alpha},
             {"value", r.value},
             {"base", r.base},
             {"method", r.method}};
      if (r.gap) o["gap"] = *r.gap;
      if (r.iterations) o["iterations"] = *r.iterations;
      if (r.argmax_z) o["argmax_z"] = *r.argmax_z;
      if (r.oracle_value) o["oracle_value"] = *r.oracle_value;
      arr.push_back(std::move(o));
    }
    os << arr.dump(2) << "\n";
  } else if (format == "table") {
    os << "alpha      value            base  method";
    if (conditional) os << "       argmax_z";
    os << "\n";
    for (const auto& r : rows) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-10s %-16s %-5s %-12s", r.alpha.c_str(),
                    fmt(r.value).c_str(), r.base.c_str(), r.method.c_str());
      os << line;
      if (conditional && r.argmax_z) os << ' ' << *r.argmax_z;
      if (r.gap) os << "  (gap " << fmt(*r.gap) << ", "
                    << (r.iterations ? *r.iterations : 0) << " it)";
      if (r.oracle_value) os << "  oracle " << fmt(*r.oracle_value);
      os << "\n";
    }
  } else {
    throw CliError(kExitUsage,
                   "unknown format '" + format + "' (table|csv|json)");
  }
  return os.str();
}

int run_measure(const std::string& name, const std::string& file,
                const std::string& alpha_spec, LogBase base,
                const std::string& z_label, const OutputSink& sink) {
  const DistInput d = load_distribution_file(file);
  std::vector<Row> rows;
  for (const AlphaOrder& alpha : parse_alphas(alpha_spec)) {
    MeasureValue mv{0.0, alpha, base};
    if (name == "renyi-entropy") {
      mv = renyi_entropy(as_pair(d).first, alpha, base);
    } else if (name == "arimoto-cond-entropy") {
      const auto [px, ch] = as_pair(d);
      mv = arimoto_cond_entropy(px, ch, alpha, base);
    } else if (name == "sibson-mi") {
      const auto [px, ch] = as_pair(d);
      mv = sibson_mi(px, ch, alpha, base);
    } else if (name == "arimoto-mi") {
      const auto [px, ch] = as_pair(d);
      mv = arimoto_mi(px, ch, alpha, base);
    } else if (name == "cond-arimoto-mi") {
      mv = conditional_arimoto_mi(d.joint, alpha, base);
    } else if (name == "event-sibson-mi") {
      if (z_label.empty()) {
        throw CliError(kExitUsage, "event-sibson-mi requires --z");
      }
      mv = event_conditional_sibson_mi(d.joint, z_label, alpha, base);
    } else {
      throw CliError(kExitUsage, "unknown measure '" + name + "'");
    }
    rows.push_back({alpha.str(), mv.value, base_name(base), "formula",
                    std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  }
  sink.write(render_rows(rows, sink.format, false, false));
  return kExitOk;
}

int run_leakage(const std::string& variant, const std::string& file,
                const std::string& alpha_spec, LogBase base, double tol,
                bool with_oracle, std::size_t resolution,
                const OutputSink& sink) {
  const DistInput d = load_distribution_file(file);
  std::vector<Row> rows;
  const bool conditional = variant == "cond-max";
  for (const AlphaOrder& alpha : parse_alphas(alpha_spec)) {
    Row row;
    row.alpha = alpha.str();
    row.base = base_name(base);
    if (conditional) {
      const CondCapacityResult r =
          conditional_maximal_alpha_leakage(d.joint, alpha, base, tol);
      row.value = r.value.value;
      row.argmax_z = r.argmax_z;
      if (r.argmax_z) {
        const CapacityResult& best = r.per_z.at(*r.argmax_z);
        row.method = capacity_method_name(best.method);
        if (best.method == CapacityMethod::Solver) {
          row.gap = best.certificate_gap;
          row.iterations = best.iterations;
        }
      } else {
        row.method = "closed_form";
      }
    } else if (variant == "max") {
      const auto [px, ch] = as_pair(d);
      const CapacityResult r = maximal_alpha_leakage(px, ch, alpha, base, tol);
      row.value = r.value.value;
      row.method = capacity_method_name(r.method);
      if (r.method == CapacityMethod::Solver) {
        row.gap = r.certificate_gap;
        row.iterations = r.iterations;
      }
      if (with_oracle) {
        const auto [opx, och] = as_pair(d);
        row.oracle_value =
            grid_oracle_capacity(opx.support(), och, alpha, base, resolution)
                .value.value;
      }
    } else {
      throw CliError(kExitUsage, "unknown leakage variant '" + variant + "'");
    }
    rows.push_back(std::move(row));
  }
  sink.write(render_rows(rows, sink.format, conditional, with_oracle));
  return kExitOk;
}

int run_sweep(const std::string& file, double amin, double amax,
              std::size_t points, bool include_inf, LogBase base, double tol,
              const OutputSink& sink) {
  if (!(amin >= 1.0) || !(amax > amin) || points < 2) {
    throw CliError(kExitUsage,
                   "sweep needs 1 <= min < max and at least 2 points");
  }
  std::vector<AlphaOrder> grid;
  const double l0 = std::log(amin), l1 = std::log(amax);
  for (std::size_t i = 0; i < points; ++i) {
    const double a =
        std::exp(l0 + (l1 - l0) * static_cast<double>(i) /
                          static_cast<double>(points - 1));
    grid.push_back(a == 1.0 ? AlphaOrder::one() : AlphaOrder::finite(a));
  }
  if (include_inf) grid.push_back(AlphaOrder::infinity());

  const DistInput d = load_distribution_file(file);
  const auto [px, ch] = as_pair(d);
  std::vector<Row> rows;
  for (const AlphaOrder& alpha : grid) {
    const CapacityResult r = maximal_alpha_leakage(px, ch, alpha, base, tol);
    Row row;
    row.alpha = alpha.str();
    row.value = r.value.value;
    row.base = base_name(base);
    row.method = capacity_method_name(r.method);
    if (r.method == CapacityMethod::Solver) {
      row.gap = r.certificate_gap;
      row.iterations = r.iterations;
    }
    rows.push_back(std::move(row));
  }
  // A sweep is a curve artifact: always CSV regardless of --format.
  sink.write(render_rows(rows, "csv", false, false));
  return kExitOk;
}

std::string render_report(const TrialReport& r, const std::string& format) {
  if (format == "json") {
    json per = json::array();
    for (const auto& t : r.per_trial) {
      per.push_back({{"trial", t.trial},
                     {"alpha", t.alpha},
                     {"lhs", t.lhs},
                     {"rhs", t.rhs}});
    }
    const json o{{"suite", r.suite},
                 {"trials", r.trials},
                 {"alphas", r.alphas},
                 {"violations", r.violations},
                 {"max_violation", r.max_violation},
                 {"seed", r.seed},
                 {"tolerance", r.tolerance},
                 {"solver_failures", r.solver_failures},
                 {"per_trial", per}};
    return o.dump(2) + "\n";
  }
  std::ostringstream os;
  if (format == "csv") {
    os << "suite,trials,violations,max_violation,seed,tolerance,"
          "solver_failures\n"
       << r.suite << ',' << r.trials << ',' << r.violations << ','
       << fmt(r.max_violation) << ',' << r.seed << ',' << fmt(r.tolerance)
       << ',' << r.solver_failures << "\n";
    return os.str();
  }
  os << "suite:           " << r.suite << "\n"
     << "trials:          " << r.trials << "\n"
     << "alphas:          ";
  for (std::size_t i = 0; i < r.alphas.size(); ++i) {
    os << (i ? ", " : "") << r.alphas[i];
  }
  os << "\n"
     << "violations:      " << r.violations << "\n"
     << "max_violation:   " << fmt(r.max_violation) << "\n"
     << "seed:            " << r.seed << "\n"
     << "tolerance:       " << fmt(r.tolerance) << "\n"
     << "solver_failures: " << r.solver_failures << "\n";
  for (const auto& t : r.per_trial) {
    os << "  trial " << t.trial << " alpha " << t.alpha << " lhs "
       << fmt(t.lhs) << " rhs " << fmt(t.rhs) << "\n";
  }
  return os.str();
}

// Theorem 1 cross-check: the definitional estimator route must agree with
// the conditional Arimoto form on random joints.
TrialReport run_thm1(std::size_t trials, std::uint64_t seed, double tol) {
  TrialReport r{"thm1", trials, {}, 0, 0.0, seed, tol, 0, {}};
  const std::vector<AlphaOrder> alphas = {
      AlphaOrder::one(), AlphaOrder::finite(1.5), AlphaOrder::finite(2.0),
      AlphaOrder::finite(5.0), AlphaOrder::infinity()};
  for (const auto& a : alphas) r.alphas.push_back(a.str());
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = (t % 2) ? 3 : 2;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    const Joint3 j(labels, labels, labels,
                   sample_simplex(n * n * n, seed + 1000003 * t));
    for (const auto& alpha : alphas) {
      const double lhs =
          conditional_alpha_leakage_by_definition(j, alpha, LogBase::Bits)
              .value;
      const double rhs = conditional_arimoto_mi(j, alpha, LogBase::Bits).value;
      const double excess = std::abs(lhs - rhs);
      if (excess > r.max_violation) r.max_violation = excess;
      if (excess > tol) {
        ++r.violations;
        r.per_trial.push_back({t, alpha.str(), lhs, rhs});
      }
    }
  }
  return r;
}

// Witness suite: the constructed-U bound must stay below the conditional
// leakage and improve as the bulk block grows.
TrialReport run_witness(double p, double q, double a, double tol) {
  TrialReport r{"witness", 3, {AlphaOrder::finite(a).str()}, 0, 0.0, 0, tol,
                0, {}};
  const std::vector<std::string> bits = {"0", "1"};
  const Pmf px(bits, {0.5, 0.5});
  const Channel ch_yx(bits, bits, {{1.0 - p, p}, {p, 1.0 - p}});
  const Channel ch_zx(bits, bits, {{1.0 - q, q}, {q, 1.0 - q}});
  const Joint3 j = make_markov_joint(px, ch_yx, ch_zx);
  const AlphaOrder alpha = AlphaOrder::finite(a);
  const double exact =
      conditional_maximal_alpha_leakage(j, alpha, LogBase::Bits).value.value;
  double prev = -1.0;
  std::size_t trial = 0;
  for (std::size_t u0 : {100ul, 10000ul, 1000000ul}) {
    const WitnessConfig w =
        make_witness_config(j, alpha, px, u0, /*granularity=*/100);
    const double bound =
        appendix_witness_lower_bound(j, alpha, w, LogBase::Bits).value;
    const double excess = std::max(bound - (exact + tol), prev - bound);
    if (excess > r.max_violation) r.max_violation = excess;
    if (excess > 0.0) {
      ++r.violations;
      r.per_trial.push_back({trial, alpha.str(), bound, exact});
    }
    prev = bound;
    ++trial;
  }
  return r;
}

TrialReport run_bsc(double p, double q, double tol) {
  const std::vector<AlphaOrder> grid = {
      AlphaOrder::one(),       AlphaOrder::finite(1.5),
      AlphaOrder::finite(2.0), AlphaOrder::finite(5.0),
      AlphaOrder::finite(20.0), AlphaOrder::infinity()};
  TrialReport r{"bsc", grid.size(), {}, 0, 0.0, 0, tol, 0, {}};
  for (const auto& a : grid) r.alphas.push_back(a.str());
  const auto rows = bsc_closed_forms(p, q, grid);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = std::max(
        std::abs(rows[i].unconditional_closed - rows[i].unconditional_solver),
        std::abs(rows[i].conditional_closed - rows[i].conditional_solver));
    if (d > r.max_violation) r.max_violation = d;
    if (d > tol) {
      ++r.violations;
      r.per_trial.push_back({i, rows[i].alpha.str(),
                             rows[i].unconditional_closed,
                             rows[i].unconditional_solver});
    }
  }
  return r;
}

int run_verify(const std::string& suite, std::size_t trials,
               std::uint64_t seed, double tol, double p, double q,
               double alpha, const OutputSink& sink) {
  TrialReport report;
  bool gate = true;  // exit nonzero on violations
  if (suite == "robustness") {
    TrialConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.tolerance = tol > 0 ? tol : 1e-7;
    report = verify_robustness_theorem(cfg);
  } else if (suite == "dpi") {
    TrialConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.tolerance = tol > 0 ? tol : 1e-9;
    report = verify_sibson_dpi(cfg);
  } else if (suite == "composition") {
    TrialConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.tolerance = tol > 0 ? tol : 1e-7;
    report = verify_composition_conjecture(cfg);
    gate = false;  // findings only: a conjecture has no pass/fail truth
  } else if (suite == "thm1") {
    report = run_thm1(trials, seed, tol > 0 ? tol : 1e-9);
  } else if (suite == "witness") {
    report = run_witness(p, q, alpha, tol > 0 ? tol : kDefaultSolverTol);
  } else if (suite == "bsc") {
    report = run_bsc(p, q, tol > 0 ? tol : 1e-6);
  } else {
    throw CliError(kExitUsage, "unknown verify suite '" + suite + "'");
  }
  sink.write(render_report(report, sink.format));
  if (gate && (report.violations > 0 || report.solver_failures > 0)) {
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-alphabet information-leakage toolkit"};
  app.require_subcommand(1);

  std::string alpha_spec = "1";
  std::string base_str = "bits";
  std::string format = "table";
  std::string out_path;
  double tol = kDefaultSolverTol;
  std::uint64_t seed = 7;
  std::size_t trials = 1000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha_spec,
                    "comma-separated orders; '1' and 'inf' are exact");
    cmd->add_option("--base", base_str, "bits|nats");
    cmd->add_option("--format", format, "table|csv|json");
    cmd->add_option("--out", out_path, "write output to a file");
    cmd->add_option("--tol", tol, "solver certificate tolerance");
  };

  std::string measure_name, measure_file, measure_z;
  CLI::App* measure = app.add_subcommand("measure", "compute one measure");
  measure->add_option("name", measure_name, "measure name")->required();
  measure->add_option("file", measure_file, "distribution JSON")->required();
  measure->add_option("--z", measure_z, "event label for event-sibson-mi");
  add_common(measure);

  std::string leak_variant, leak_file;
  bool with_oracle = false;
  std::size_t resolution = 400;
  CLI::App* leakage = app.add_subcommand("leakage", "maximal alpha-leakage");
  leakage->add_option("variant", leak_variant, "max|cond-max")->required();
  leakage->add_option("file", leak_file, "distribution JSON")->required();
  leakage->add_flag("--oracle", with_oracle, "add a grid-oracle column");
  leakage->add_option("--resolution", resolution, "grid oracle resolution");
  add_common(leakage);

  std::string suite;
  double p = 0.25, q = 0.25, walpha = 2.0;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify
      ->add_option("suite", suite,
                   "robustness|dpi|composition|witness|bsc|thm1")
      ->required();
  verify->add_option("--trials", trials, "number of random trials");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--p", p, "release channel crossover");
  verify->add_option("--q", q, "side channel crossover");
  double verify_tol = 0.0;  // 0 means suite default
  verify->add_option("--tol", verify_tol, "violation tolerance");
  verify->add_option("--alpha", walpha, "order for the witness suite");
  verify->add_option("--format", format, "table|csv|json");
  verify->add_option("--out", out_path, "write output to a file");

  std::string sweep_file;
  double amin = 1.0, amax = 32.0;
  std::size_t points = 16;
  bool include_inf = true;
  CLI::App* sweep = app.add_subcommand("sweep", "leakage curve over alpha");
  sweep->add_option("file", sweep_file, "distribution JSON")->required();
  sweep->add_option("--min", amin, "smallest alpha (>= 1)");
  sweep->add_option("--max", amax, "largest finite alpha");
  sweep->add_option("--points", points, "grid size");
  sweep->add_flag("!--no-inf", include_inf, "drop the alpha=inf endpoint");
  sweep->add_option("--base", base_str, "bits|nats");
  sweep->add_option("--tol", tol, "solver certificate tolerance");
  sweep->add_option("--out", out_path, "write output to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    const LogBase base = parse_base(base_str);
    const OutputSink sink{format, out_path};
    if (measure->parsed()) {
      return run_measure(measure_name, measure_file, alpha_spec, base,
                         measure_z, sink);
    }
    if (leakage->parsed()) {
      return run_leakage(leak_variant, leak_file, alpha_spec, base, tol,
                         with_oracle, resolution, sink);
    }
    if (verify->parsed()) {
      return run_verify(suite, trials, seed, verify_tol, p, q, walpha, sink);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_file, amin, amax, points, include_inf, base, tol,
                       sink);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConverge;
  } catch (const ProbError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::string(e.what()).find("zero-probability") != std::string::npos
               ? kExitZeroEvent
               : kExitSchema;
  }
  return kExitUsage;
}
