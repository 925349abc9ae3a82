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

#include "alphaleak/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace alphaleak {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (seed, trial, salt) so trial order never matters.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial,
                         std::uint64_t salt) {
  return splitmix64(splitmix64(seed ^ salt) + trial);
}

double log_sum_exp(const std::vector<double>& logs) {
  double m = kNegInf;
  for (double l : logs) m = std::max(m, l);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - m);
  return m + std::log(s);
}

std::vector<std::string> make_labels(const char* prefix, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(prefix + std::to_string(i));
  }
  return labels;
}

Channel sample_channel(std::size_t nin, std::size_t nout, const char* in_pfx,
                       const char* out_pfx, std::uint64_t seed) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < nin; ++i) {
    rows.push_back(sample_simplex(nout, splitmix64(seed + i)));
  }
  return Channel(make_labels(in_pfx, nin), make_labels(out_pfx, nout),
                 std::move(rows));
}

std::vector<std::string> alpha_names(const std::vector<AlphaOrder>& alphas) {
  std::vector<std::string> names;
  for (const auto& a : alphas) names.push_back(a.str());
  return names;
}

void record_check(TrialReport& report, std::size_t trial,
                  const AlphaOrder& alpha, double lhs, double rhs,
                  double tol) {
  const double excess = lhs - rhs;
  if (excess > report.max_violation) report.max_violation = excess;
  if (excess > tol) {
    ++report.violations;
    report.per_trial.push_back({trial, alpha.str(), lhs, rhs});
  }
}

// Capacity of X -> Y from a 2-axis joint (singleton Z axis).
CapacityResult pair_leakage(const Joint3& pair_joint, AlphaOrder alpha,
                            LogBase base, double tol) {
  const std::string& z = pair_joint.z_labels().front();
  const Channel ch = pair_joint.channel_y_given_x_z(z);
  const Pmf px = pair_joint.conditional_x_given_z(z);
  std::vector<double> probs;
  for (const auto& l : ch.input_labels()) {
    probs.push_back(px.prob(px.index_of(l)));
  }
  return maximal_alpha_leakage(Pmf(ch.input_labels(), std::move(probs)), ch,
                               alpha, base, tol);
}

double shannon_nats(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

Joint3 example2_joint(double p) {
  // X uniform, Z ~ Ber(p) independent of X, Y = X xor Z.
  const std::vector<std::string> bits = {"0", "1"};
  std::vector<double> t(8, 0.0);
  const double pz[2] = {1.0 - p, p};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t z = 0; z < 2; ++z) {
      const std::size_t y = x ^ z;
      t[(x * 2 + y) * 2 + z] = 0.5 * pz[z];
    }
  }
  return Joint3(bits, bits, bits, std::move(t));
}

}  // namespace

std::vector<double> sample_simplex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    // Exponential(1) from raw mantissa bits; avoids distribution objects
    // whose output is implementation-defined.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    x = -std::log(u);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

Joint3 make_markov_joint(const Pmf& px, const Channel& ch_yx,
                         const Channel& ch_zx) {
  return Joint3::from_markov(px, ch_yx, ch_zx);
}

TrialReport verify_robustness_theorem(const TrialConfig& cfg) {
  TrialReport report{"robustness", cfg.trials, alpha_names(cfg.alphas),
                     0,           0.0,        cfg.seed,
                     cfg.tolerance, 0,        {}};
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Pmf px(make_labels("x", cfg.nx),
                 sample_simplex(cfg.nx, trial_seed(cfg.seed, t, 0x11)));
    const Channel ch_yx =
        sample_channel(cfg.nx, cfg.ny, "x", "y", trial_seed(cfg.seed, t, 0x22));
    const Channel ch_zx =
        sample_channel(cfg.nx, cfg.nz, "x", "z", trial_seed(cfg.seed, t, 0x33));
    const Joint3 j = make_markov_joint(px, ch_yx, ch_zx);
    for (const auto& alpha : cfg.alphas) {
      try {
        const double lhs =
            conditional_maximal_alpha_leakage(j, alpha, cfg.base).value.value;
        const double rhs =
            maximal_alpha_leakage(px, ch_yx, alpha, cfg.base).value.value;
        record_check(report, t, alpha, lhs, rhs, cfg.tolerance);
      } catch (const SolverError&) {
        ++report.solver_failures;
      }
    }
  }
  return report;
}

TrialReport verify_counterexample_nonmarkov() {
  const std::vector<AlphaOrder> alphas = {
      AlphaOrder::one(), AlphaOrder::finite(1.5), AlphaOrder::finite(2.0),
      AlphaOrder::finite(5.0), AlphaOrder::infinity()};
  std::vector<double> ps;
  for (double p = 0.05; p < 0.5; p += 0.05) ps.push_back(p);
  TrialReport report{"counterexample", ps.size(), alpha_names(alphas),
                     0,               0.0,        0,
                     0.0,             0,          {}};
  for (std::size_t t = 0; t < ps.size(); ++t) {
    const Joint3 j = example2_joint(ps[t]);
    for (const auto& alpha : alphas) {
      const double cond =
          conditional_maximal_alpha_leakage(j, alpha, LogBase::Bits)
              .value.value;
      const double uncond =
          pair_leakage(j.drop_z(), alpha, LogBase::Bits, kDefaultSolverTol)
              .value.value;
      // Violation means the conditional value failed to strictly exceed
      // the unconditional one.
      record_check(report, t, alpha, uncond, cond, 0.0);
    }
  }
  return report;
}

TrialReport verify_composition_conjecture(const TrialConfig& cfg) {
  TrialReport report{"composition", cfg.trials, alpha_names(cfg.alphas),
                     0,            0.0,        cfg.seed,
                     cfg.tolerance, 0,         {}};
  const auto xl = make_labels("x", cfg.nx);
  const auto yl = make_labels("y", cfg.ny);
  const auto zl = make_labels("z", cfg.nz);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Joint3 j(xl, yl, zl,
                   sample_simplex(cfg.nx * cfg.ny * cfg.nz,
                                  trial_seed(cfg.seed, t, 0x44)));
    for (const auto& alpha : cfg.alphas) {
      try {
        const double lhs =
            pair_leakage(j.fuse_yz(), alpha, cfg.base, kDefaultSolverTol)
                .value.value;
        const double to_y =
            pair_leakage(j.drop_z(), alpha, cfg.base, kDefaultSolverTol)
                .value.value;
        // Leakage X -> Z given Y: the side-information axis is Y.
        const double z_given_y =
            conditional_maximal_alpha_leakage(j.swap_yz(), alpha, cfg.base)
                .value.value;
        record_check(report, t, alpha, lhs, to_y + z_given_y, cfg.tolerance);
      } catch (const SolverError&) {
        ++report.solver_failures;
      }
    }
  }
  return report;
}

TrialReport verify_sibson_dpi(const TrialConfig& cfg) {
  TrialReport report{"dpi", cfg.trials, alpha_names(cfg.alphas),
                     0,     0.0,        cfg.seed,
                     cfg.tolerance, 0,  {}};
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Pmf px(make_labels("x", cfg.nx),
                 sample_simplex(cfg.nx, trial_seed(cfg.seed, t, 0x55)));
    const Channel ch_yx =
        sample_channel(cfg.nx, cfg.ny, "x", "y", trial_seed(cfg.seed, t, 0x66));
    const Channel ch_wy =
        sample_channel(cfg.ny, cfg.nz, "y", "w", trial_seed(cfg.seed, t, 0x77));
    // Composed post-processing channel X -> W.
    std::vector<std::vector<double>> composed(
        cfg.nx, std::vector<double>(cfg.nz, 0.0));
    for (std::size_t x = 0; x < cfg.nx; ++x) {
      for (std::size_t y = 0; y < cfg.ny; ++y) {
        for (std::size_t w = 0; w < cfg.nz; ++w) {
          composed[x][w] += ch_yx.at(x, y) * ch_wy.at(y, w);
        }
      }
    }
    const Channel ch_wx(ch_yx.input_labels(), ch_wy.output_labels(),
                        std::move(composed));
    for (const auto& alpha : cfg.alphas) {
      const double lhs = sibson_mi(px, ch_wx, alpha, cfg.base).value;
      const double rhs = sibson_mi(px, ch_yx, alpha, cfg.base).value;
      record_check(report, t, alpha, lhs, rhs, cfg.tolerance);
    }
  }
  return report;
}

std::string witness_argmax_z(const Joint3& j, AlphaOrder alpha, LogBase base,
                             double tol) {
  if (alpha.is_one()) {
    throw ProbError("witness construction requires alpha > 1");
  }
  const auto r = conditional_maximal_alpha_leakage(j, alpha, base, tol);
  return *r.argmax_z;
}

namespace {

// Shared closed-form pieces of the witness bound, all in nats.
struct WitnessTerms {
  double off_event;  // (1 - P_Z(z*)) / |U0|^(1 - 1/alpha)
  std::string z_star;
  std::size_t z_index;
  double log_num_sum;  // log sum_y (sum_x |Ux|^(1-a) P(x,y,z*)^a)^(1/a)
  double log_den_sum;  // log (sum_x |Ux|^(1-a) P(x,z*)^a)^(1/a)
};

WitnessTerms witness_terms(const Joint3& j, double a, const WitnessConfig& w) {
  WitnessTerms t;
  t.z_star = witness_argmax_z(j, AlphaOrder::finite(a), LogBase::Bits);
  const Pmf pz = j.marginal(Axis::Z);
  t.z_index = pz.index_of(t.z_star);
  const double pz_star = pz.prob(t.z_index);
  t.off_event = (1.0 - pz_star) *
                std::exp((1.0 / a - 1.0) *
                         std::log(static_cast<double>(w.u0_size)));

  const Pmf px_given_z = j.conditional_x_given_z(t.z_star);
  const auto supp = px_given_z.support();
  for (const auto& x : supp) {
    if (!w.per_x_sizes.count(x)) {
      throw ProbError("witness: per_x_sizes missing symbol '" + x + "'");
    }
  }
  if (w.per_x_sizes.size() != supp.size()) {
    throw ProbError("witness: per_x_sizes keys must equal supp(P(X|Z=z*))");
  }

  std::vector<double> num_terms, den_terms, inner;
  for (std::size_t y = 0; y < j.ny(); ++y) {
    inner.clear();
    for (const auto& [x_label, size] : w.per_x_sizes) {
      const std::size_t x = px_given_z.index_of(x_label);
      const double pxyz = j.at(x, y, t.z_index);
      if (pxyz <= 0.0) continue;
      inner.push_back((1.0 - a) * std::log(static_cast<double>(size)) +
                      a * std::log(pxyz));
    }
    if (inner.empty()) continue;
    num_terms.push_back(log_sum_exp(inner) / a);
  }
  t.log_num_sum = log_sum_exp(num_terms);

  inner.clear();
  for (const auto& [x_label, size] : w.per_x_sizes) {
    const std::size_t x = px_given_z.index_of(x_label);
    double pxz = 0.0;
    for (std::size_t y = 0; y < j.ny(); ++y) pxz += j.at(x, y, t.z_index);
    if (pxz <= 0.0) continue;
    inner.push_back((1.0 - a) * std::log(static_cast<double>(size)) +
                    a * std::log(pxz));
  }
  t.log_den_sum = log_sum_exp(inner) / a;
  return t;
}

}  // namespace

MeasureValue appendix_witness_lower_bound(const Joint3& j, AlphaOrder alpha,
                                          const WitnessConfig& w,
                                          LogBase base) {
  if (!alpha.is_finite() || alpha.value() <= 1.0) {
    throw ProbError("witness bound is defined for finite alpha > 1");
  }
  if (w.u0_size < 1) throw ProbError("witness: |U0| must be >= 1");
  const double a = alpha.value();
  const WitnessTerms t = witness_terms(j, a, w);
  const double num = t.off_event + std::exp(t.log_num_sum);
  const double den = t.off_event + std::exp(t.log_den_sum);
  const double nats = a / (a - 1.0) * std::log(num / den);
  return {from_nats(nats, base), alpha, base};
}

MeasureValue appendix_witness_direct(const Joint3& j, AlphaOrder alpha,
                                     const WitnessConfig& w, LogBase base) {
  if (!alpha.is_finite() || alpha.value() <= 1.0) {
    throw ProbError("witness bound is defined for finite alpha > 1");
  }
  std::size_t total = w.u0_size;
  for (const auto& [x, s] : w.per_x_sizes) total += s;
  if (total > 10000) {
    throw ProbError("witness direct evaluation: constructed alphabet too big");
  }
  const std::string z_star = witness_argmax_z(j, alpha, base);
  const Pmf pz = j.marginal(Axis::Z);
  const std::size_t zi = pz.index_of(z_star);

  std::vector<std::string> u_labels;
  for (std::size_t k = 0; k < w.u0_size; ++k) {
    u_labels.push_back("u0_" + std::to_string(k));
  }
  struct Block {
    std::size_t x;
    std::size_t begin, size;
  };
  std::vector<Block> blocks;
  const Pmf px_full = j.marginal(Axis::X);
  for (const auto& [x_label, size] : w.per_x_sizes) {
    blocks.push_back({px_full.index_of(x_label), u_labels.size(), size});
    for (std::size_t k = 0; k < size; ++k) {
      u_labels.push_back("u_" + x_label + "_" + std::to_string(k));
    }
  }

  // P(u,y,z) = sum_x P(u|x,z) P(x,y,z) under U - (X,Z) - Y.
  const std::size_t nu = u_labels.size();
  std::vector<double> t(nu * j.ny() * j.nz(), 0.0);
  auto idx = [&](std::size_t u, std::size_t y, std::size_t z) {
    return (u * j.ny() + y) * j.nz() + z;
  };
  for (std::size_t y = 0; y < j.ny(); ++y) {
    for (std::size_t z = 0; z < j.nz(); ++z) {
      if (z == zi) {
        for (const auto& b : blocks) {
          const double mass = j.at(b.x, y, z) / static_cast<double>(b.size);
          for (std::size_t k = 0; k < b.size; ++k) {
            t[idx(b.begin + k, y, z)] = mass;
          }
        }
      } else {
        double pyz = 0.0;
        for (std::size_t x = 0; x < j.nx(); ++x) pyz += j.at(x, y, z);
        const double mass = pyz / static_cast<double>(w.u0_size);
        for (std::size_t k = 0; k < w.u0_size; ++k) {
          t[idx(k, y, z)] = mass;
        }
      }
    }
  }
  const Joint3 uyz(u_labels, j.y_labels(), j.z_labels(), std::move(t));
  return conditional_arimoto_mi(uyz, alpha, base);
}

WitnessConfig make_witness_config(const Joint3& j, AlphaOrder alpha,
                                  const Pmf& target_input,
                                  std::size_t u0_size,
                                  std::size_t granularity) {
  if (!alpha.is_finite() || alpha.value() <= 1.0) {
    throw ProbError("witness config requires finite alpha > 1");
  }
  const double a = alpha.value();
  const std::string z_star = witness_argmax_z(j, alpha, LogBase::Bits);
  const Pmf pz = j.marginal(Axis::Z);
  const std::size_t zi = pz.index_of(z_star);
  const Pmf px_given_z = j.conditional_x_given_z(z_star);

  // |U_x| proportional to (P_{X,Z}(x,z*)^a / target(x))^(1/(a-1)); this
  // makes the induced input distribution proportional to target.
  std::map<std::string, double> raw;
  double min_raw = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < j.nx(); ++x) {
    if (px_given_z.prob(x) <= 0.0) continue;
    const std::string& label = px_given_z.labels()[x];
    const double tgt = target_input.prob(target_input.index_of(label));
    if (tgt <= 0.0) {
      throw ProbError("witness config: target must be positive on supp");
    }
    double pxz = 0.0;
    for (std::size_t y = 0; y < j.ny(); ++y) pxz += j.at(x, y, zi);
    const double r = std::pow(std::pow(pxz, a) / tgt, 1.0 / (a - 1.0));
    raw[label] = r;
    min_raw = std::min(min_raw, r);
  }
  const double scale =
      std::max(1.0, static_cast<double>(granularity) / min_raw);
  WitnessConfig cfg{u0_size, {}, target_input};
  for (const auto& [label, r] : raw) {
    cfg.per_x_sizes[label] =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                     scale * r)));
  }
  return cfg;
}

double bsc_leakage_closed_form(double p, AlphaOrder alpha, LogBase base) {
  const double ln2 = std::numbers::ln2;
  double nats;
  if (alpha.is_one()) {
    nats = ln2 - shannon_nats(p);
  } else if (alpha.is_infinity()) {
    nats = std::log(2.0 * (1.0 - p));
  } else {
    const double a = alpha.value();
    nats = ln2 + std::log(std::pow(p, a) + std::pow(1.0 - p, a)) / (a - 1.0);
  }
  return from_nats(nats, base);
}

std::vector<BscRow> bsc_closed_forms(double p, double q,
                                     const std::vector<AlphaOrder>& alpha_grid,
                                     LogBase base, double tol) {
  if (!(p > 0.0 && p < 0.5)) {
    throw ProbError("bsc_closed_forms: p must lie in (0, 0.5)");
  }
  if (!(q >= 0.0 && q <= 0.5)) {
    throw ProbError("bsc_closed_forms: q must lie in [0, 0.5]");
  }
  const std::vector<std::string> bits = {"0", "1"};
  const Pmf px(bits, {0.5, 0.5});
  const Channel ch_yx(bits, bits, {{1.0 - p, p}, {p, 1.0 - p}});
  const Channel ch_zx(bits, bits, {{1.0 - q, q}, {q, 1.0 - q}});
  const Joint3 j = make_markov_joint(px, ch_yx, ch_zx);

  std::vector<BscRow> rows;
  for (const auto& alpha : alpha_grid) {
    BscRow row{alpha, 0, 0, 0, 0};
    row.unconditional_closed = bsc_leakage_closed_form(p, alpha, base);
    row.unconditional_solver =
        maximal_alpha_leakage(px, ch_yx, alpha, base, tol).value.value;
    if (q == 0.0) {
      row.conditional_closed = 0.0;
    } else if (alpha.is_one()) {
      row.conditional_closed =
          from_nats(shannon_nats(p + q - 2.0 * p * q) - shannon_nats(p), base);
    } else {
      row.conditional_closed = row.unconditional_closed;
    }
    row.conditional_solver =
        conditional_maximal_alpha_leakage(j, alpha, base, tol).value.value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace alphaleak
