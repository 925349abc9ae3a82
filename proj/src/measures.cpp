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

#include "alphaleak/measures.hpp"

#include <algorithm>
#include <limits>

namespace alphaleak {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Max-extraction log-sum-exp; empty input means an empty sum (log 0).
double log_sum_exp(const std::vector<double>& logs) {
  double m = kNegInf;
  for (double l : logs) m = std::max(m, l);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - m);
  return m + std::log(s);
}

void check_aligned(const Pmf& px, const Channel& ch) {
  if (ch.input_labels() != px.labels()) {
    throw ProbError("channel input labels do not match the input pmf");
  }
}

void require_leakage_alpha(AlphaOrder alpha) {
  if (alpha.is_finite() && alpha.value() < 1.0) {
    throw ProbError("leakage quantities require alpha >= 1");
  }
}

double shannon_entropy_nats(const Pmf& p) {
  double h = 0.0;
  for (double q : p.probs()) {
    if (q > 0.0) h -= q * std::log(q);
  }
  return h;
}

double shannon_mi_nats(const Pmf& px, const Channel& ch) {
  const Pmf py = ch.push_forward(px);
  double mi = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    const double p = px.prob(x);
    if (p <= 0.0) continue;
    for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
      const double w = ch.at(x, y);
      if (w <= 0.0) continue;
      mi += p * w * std::log(w / py.prob(y));
    }
  }
  return mi;
}

// log sum_y (sum_x exp(row_log(x,y)))^(1/a), all in nats, with both sums
// max-extracted. row_log returns -inf for skipped terms.
template <typename RowLog>
double log_outer_sum(std::size_t nx, std::size_t ny, double a,
                     RowLog&& row_log) {
  std::vector<double> outer;
  outer.reserve(ny);
  std::vector<double> inner;
  inner.reserve(nx);
  for (std::size_t y = 0; y < ny; ++y) {
    inner.clear();
    for (std::size_t x = 0; x < nx; ++x) {
      const double l = row_log(x, y);
      if (l != kNegInf) inner.push_back(l);
    }
    if (inner.empty()) continue;
    outer.push_back(log_sum_exp(inner) / a);
  }
  return log_sum_exp(outer);
}

}  // namespace

MeasureValue renyi_entropy(const Pmf& p, AlphaOrder alpha, LogBase base) {
  double nats;
  if (alpha.is_one()) {
    nats = shannon_entropy_nats(p);
  } else if (alpha.is_infinity()) {
    nats = -std::log(*std::max_element(p.probs().begin(), p.probs().end()));
  } else {
    const double a = alpha.value();
    std::vector<double> logs;
    for (double q : p.probs()) {
      if (q > 0.0) logs.push_back(a * std::log(q));
    }
    nats = log_sum_exp(logs) / (1.0 - a);
  }
  return {from_nats(nats, base), alpha, base};
}

double arimoto_cond_entropy_joint(const std::vector<std::vector<double>>& pxv,
                                  AlphaOrder alpha, LogBase base) {
  const std::size_t nx = pxv.size();
  const std::size_t nv = pxv.empty() ? 0 : pxv[0].size();
  double nats;
  if (alpha.is_one()) {
    // Shannon H(X|V).
    std::vector<double> pv(nv, 0.0);
    for (const auto& row : pxv) {
      for (std::size_t v = 0; v < nv; ++v) pv[v] += row[v];
    }
    nats = 0.0;
    for (const auto& row : pxv) {
      for (std::size_t v = 0; v < nv; ++v) {
        if (row[v] > 0.0) nats -= row[v] * std::log(row[v] / pv[v]);
      }
    }
  } else if (alpha.is_infinity()) {
    double s = 0.0;
    for (std::size_t v = 0; v < nv; ++v) {
      double m = 0.0;
      for (std::size_t x = 0; x < nx; ++x) m = std::max(m, pxv[x][v]);
      s += m;
    }
    nats = -std::log(s);
  } else {
    const double a = alpha.value();
    const double outer = log_outer_sum(nx, nv, a, [&](std::size_t x,
                                                      std::size_t v) {
      return pxv[x][v] > 0.0 ? a * std::log(pxv[x][v]) : kNegInf;
    });
    nats = a / (1.0 - a) * outer;
  }
  return from_nats(nats, base);
}

MeasureValue arimoto_cond_entropy(const Pmf& px, const Channel& ch,
                                  AlphaOrder alpha, LogBase base) {
  check_aligned(px, ch);
  std::vector<std::vector<double>> joint(px.size(),
                                         std::vector<double>(ch.num_outputs()));
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
      joint[x][y] = px.prob(x) * ch.at(x, y);
    }
  }
  return {arimoto_cond_entropy_joint(joint, alpha, base), alpha, base};
}

MeasureValue sibson_mi(const Pmf& px, const Channel& ch, AlphaOrder alpha,
                       LogBase base) {
  check_aligned(px, ch);
  double nats;
  if (alpha.is_one()) {
    nats = shannon_mi_nats(px, ch);
  } else if (alpha.is_infinity()) {
    // Maximum ranges over supp(px) only.
    double s = 0.0;
    for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
      double m = 0.0;
      for (std::size_t x : px.support_indices()) m = std::max(m, ch.at(x, y));
      s += m;
    }
    nats = std::log(s);
  } else {
    const double a = alpha.value();
    const double outer = log_outer_sum(
        px.size(), ch.num_outputs(), a, [&](std::size_t x, std::size_t y) {
          const double p = px.prob(x);
          const double w = ch.at(x, y);
          return (p > 0.0 && w > 0.0) ? std::log(p) + a * std::log(w) : kNegInf;
        });
    nats = a / (a - 1.0) * outer;
  }
  return {from_nats(nats, base), alpha, base};
}

MeasureValue arimoto_mi(const Pmf& px, const Channel& ch, AlphaOrder alpha,
                        LogBase base) {
  const double hx = renyi_entropy(px, alpha, base).value;
  const double hxy = arimoto_cond_entropy(px, ch, alpha, base).value;
  return {hx - hxy, alpha, base};
}

MeasureValue event_conditional_sibson_mi(const Joint3& j, const std::string& z,
                                         AlphaOrder alpha, LogBase base) {
  const Pmf pxz = j.conditional_x_given_z(z);
  const Channel ch = j.channel_y_given_x_z(z);
  // The channel carries rows only for supp(P(x|z)); align the pmf to it.
  std::vector<double> probs;
  probs.reserve(ch.num_inputs());
  for (const auto& label : ch.input_labels()) {
    probs.push_back(pxz.prob(pxz.index_of(label)));
  }
  return sibson_mi(Pmf(ch.input_labels(), std::move(probs)), ch, alpha, base);
}

MeasureValue conditional_arimoto_mi(const Joint3& j, AlphaOrder alpha,
                                    LogBase base) {
  const auto pxz = j.marginal_pair(Axis::X, Axis::Z);
  // P(x, (y,z)) with the pair flattened into one conditioning coordinate.
  std::vector<std::vector<double>> pxyz(j.nx(),
                                        std::vector<double>(j.ny() * j.nz()));
  for (std::size_t x = 0; x < j.nx(); ++x) {
    for (std::size_t y = 0; y < j.ny(); ++y) {
      for (std::size_t z = 0; z < j.nz(); ++z) {
        pxyz[x][y * j.nz() + z] = j.at(x, y, z);
      }
    }
  }
  const double h_x_z = arimoto_cond_entropy_joint(pxz, alpha, base);
  const double h_x_yz = arimoto_cond_entropy_joint(pxyz, alpha, base);
  return {h_x_z - h_x_yz, alpha, base};
}

double alpha_loss(double prob, AlphaOrder alpha) {
  require_leakage_alpha(alpha);
  if (prob < 0.0 || prob > 1.0) {
    throw ProbError("alpha_loss: prob outside [0, 1]");
  }
  if (alpha.is_one()) {
    if (prob == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(prob);
  }
  if (alpha.is_infinity()) return 1.0 - prob;
  const double a = alpha.value();
  return a / (a - 1.0) * (1.0 - std::pow(prob, (a - 1.0) / a));
}

MeasureValue conditional_alpha_leakage_by_definition(const Joint3& j,
                                                     AlphaOrder alpha,
                                                     LogBase base) {
  require_leakage_alpha(alpha);
  const auto pxz = j.marginal_pair(Axis::X, Axis::Z);
  std::vector<double> pz(j.nz(), 0.0);
  std::vector<double> pyz(j.ny() * j.nz(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x) {
    for (std::size_t y = 0; y < j.ny(); ++y) {
      for (std::size_t z = 0; z < j.nz(); ++z) {
        pyz[y * j.nz() + z] += j.at(x, y, z);
        pz[z] += j.at(x, y, z);
      }
    }
  }

  double nats;
  if (alpha.is_one()) {
    // Log-loss: the optimal belief is the posterior itself.
    double e_post = 0.0, e_prior = 0.0;
    for (std::size_t x = 0; x < j.nx(); ++x) {
      for (std::size_t y = 0; y < j.ny(); ++y) {
        for (std::size_t z = 0; z < j.nz(); ++z) {
          const double p = j.at(x, y, z);
          if (p <= 0.0) continue;
          e_post += p * std::log(p / pyz[y * j.nz() + z]);
          e_prior += p * std::log(pxz[x][z] / pz[z]);
        }
      }
    }
    nats = e_post - e_prior;
  } else if (alpha.is_infinity()) {
    // Ratio of maximum-a-posteriori correct-guessing probabilities.
    double num = 0.0;
    for (std::size_t y = 0; y < j.ny(); ++y) {
      for (std::size_t z = 0; z < j.nz(); ++z) {
        double m = 0.0;
        for (std::size_t x = 0; x < j.nx(); ++x) {
          m = std::max(m, j.at(x, y, z));
        }
        num += m;
      }
    }
    double den = 0.0;
    for (std::size_t z = 0; z < j.nz(); ++z) {
      double m = 0.0;
      for (std::size_t x = 0; x < j.nx(); ++x) m = std::max(m, pxz[x][z]);
      den += m;
    }
    nats = std::log(num / den);
  } else {
    // Tilted-estimator optimum: P*(x|c) proportional to P(x|c)^a gives
    // E[P*(X|c)^((a-1)/a)] = sum_c P(c) (sum_x P(x|c)^a)^(1/a).
    const double a = alpha.value();
    auto tilted_expectation = [a](const std::vector<double>& cond_mass,
                                  double ctx_prob) {
      // cond_mass holds P(x, c) over x for a fixed context c.
      double s = 0.0;
      for (double p : cond_mass) {
        if (p > 0.0) s += std::pow(p / ctx_prob, a);
      }
      return ctx_prob * std::pow(s, 1.0 / a);
    };
    double num = 0.0;
    std::vector<double> col(j.nx());
    for (std::size_t y = 0; y < j.ny(); ++y) {
      for (std::size_t z = 0; z < j.nz(); ++z) {
        const double q = pyz[y * j.nz() + z];
        if (q <= 0.0) continue;
        for (std::size_t x = 0; x < j.nx(); ++x) col[x] = j.at(x, y, z);
        num += tilted_expectation(col, q);
      }
    }
    double den = 0.0;
    for (std::size_t z = 0; z < j.nz(); ++z) {
      if (pz[z] <= 0.0) continue;
      for (std::size_t x = 0; x < j.nx(); ++x) col[x] = pxz[x][z];
      den += tilted_expectation(col, pz[z]);
    }
    nats = a / (a - 1.0) * std::log(num / den);
  }
  return {from_nats(nats, base), alpha, base};
}

}  // namespace alphaleak
