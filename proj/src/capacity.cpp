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

#include "alphaleak/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace alphaleak {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& logs) {
  double m = kNegInf;
  for (double l : logs) m = std::max(m, l);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - m);
  return m + std::log(s);
}

// Sibson objective and gradient over a reduced support, all channel rows
// and the weight vector indexed 0..n-1. Precomputes log W(y|x) once.
class SibsonObjective {
 public:
  SibsonObjective(const Channel& ch, const std::vector<std::size_t>& rows,
                  double alpha, LogBase base)
      : alpha_(alpha),
        base_(base),
        n_(rows.size()),
        ny_(ch.num_outputs()),
        a_log_w_(rows.size() * ch.num_outputs(), kNegInf) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t y = 0; y < ny_; ++y) {
        const double w = ch.at(rows[i], y);
        if (w > 0.0) a_log_w_[i * ny_ + y] = alpha * std::log(w);
      }
    }
  }

  std::size_t dim() const { return n_; }

  // Objective value in `base_` units.
  double value(const std::vector<double>& p) const {
    std::vector<double> outer;
    outer.reserve(ny_);
    std::vector<double> inner;
    inner.reserve(n_);
    for (std::size_t y = 0; y < ny_; ++y) {
      inner.clear();
      for (std::size_t i = 0; i < n_; ++i) {
        const double lw = a_log_w_[i * ny_ + y];
        if (p[i] > 0.0 && lw != kNegInf) {
          inner.push_back(std::log(p[i]) + lw);
        }
      }
      if (inner.empty()) continue;
      outer.push_back(log_sum_exp(inner) / alpha_);
    }
    return from_nats(alpha_ / (alpha_ - 1.0) * log_sum_exp(outer), base_);
  }

  // Analytic gradient in `base_` units:
  //   df/dp_i = 1/(a-1) * sum_y W(y|i)^a A_y^{(1-a)/a} / sum_y A_y^{1/a}
  // with A_y = sum_i p_i W(y|i)^a. Columns with A_y = 0 are skipped.
  std::vector<double> gradient(const std::vector<double>& p) const {
    std::vector<double> log_a(ny_, kNegInf);
    std::vector<double> inner;
    inner.reserve(n_);
    for (std::size_t y = 0; y < ny_; ++y) {
      inner.clear();
      for (std::size_t i = 0; i < n_; ++i) {
        const double lw = a_log_w_[i * ny_ + y];
        if (p[i] > 0.0 && lw != kNegInf) {
          inner.push_back(std::log(p[i]) + lw);
        }
      }
      if (!inner.empty()) log_a[y] = log_sum_exp(inner);
    }
    std::vector<double> outer;
    outer.reserve(ny_);
    for (double la : log_a) {
      if (la != kNegInf) outer.push_back(la / alpha_);
    }
    const double log_t = log_sum_exp(outer);

    std::vector<double> grad(n_, 0.0);
    std::vector<double> terms;
    terms.reserve(ny_);
    for (std::size_t i = 0; i < n_; ++i) {
      terms.clear();
      for (std::size_t y = 0; y < ny_; ++y) {
        const double lw = a_log_w_[i * ny_ + y];
        if (lw == kNegInf || log_a[y] == kNegInf) continue;
        terms.push_back(lw - (1.0 - 1.0 / alpha_) * log_a[y]);
      }
      if (terms.empty()) continue;
      const double g_nats =
          std::exp(log_sum_exp(terms) - log_t) / (alpha_ - 1.0);
      grad[i] = from_nats(g_nats, base_);
    }
    return grad;
  }

 private:
  double alpha_;
  LogBase base_;
  std::size_t n_;
  std::size_t ny_;
  std::vector<double> a_log_w_;  // alpha * log W(y|x), row-major
};

// Exact line search on the 1-D concave restriction t -> f(p + t d).
double line_search(const SibsonObjective& obj, const std::vector<double>& p,
                   const std::vector<double>& d, double t_max) {
  auto eval = [&](double t) {
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] = std::max(0.0, p[i] + t * d[i]);
    }
    return obj.value(q);
  };
  double lo = 0.0, hi = t_max;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (eval(m1) < eval(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double t = 0.5 * (lo + hi);
  // Prefer the full drop step when it is at least as good; leaving a dust
  // atom behind stalls subsequent away steps.
  return eval(t_max) >= eval(t) ? t_max : t;
}

Pmf expand_to_labels(const std::vector<std::string>& labels,
                     const std::vector<std::string>& support_labels,
                     const std::vector<double>& q) {
  std::vector<double> probs(labels.size(), 0.0);
  for (std::size_t i = 0; i < support_labels.size(); ++i) {
    const auto it =
        std::find(labels.begin(), labels.end(), support_labels[i]);
    probs[static_cast<std::size_t>(it - labels.begin())] = q[i];
  }
  return Pmf(labels, std::move(probs));
}

Pmf uniform_over(const std::vector<std::string>& labels,
                 const std::set<std::string>& support) {
  std::vector<double> probs(labels.size(), 0.0);
  const double w = 1.0 / static_cast<double>(support.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (support.count(labels[i])) probs[i] = w;
  }
  return Pmf(labels, std::move(probs));
}

// Enumerates compositions of `resolution` into n parts, invoking fn on the
// lattice point k / resolution.
template <typename Fn>
void for_each_lattice_point(std::size_t n, std::size_t resolution, Fn&& fn) {
  std::vector<std::size_t> k(n, 0);
  std::vector<double> p(n, 0.0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t remaining) -> void {
    if (i + 1 == n) {
      k[i] = remaining;
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = static_cast<double>(k[j]) / static_cast<double>(resolution);
      }
      fn(p);
      return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
      k[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, resolution);
}

// Restriction of a channel to the rows named in `support`, preserving
// label order; errors if a named row is absent.
std::vector<std::size_t> support_rows(const Channel& ch,
                                      const std::set<std::string>& support) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < ch.num_inputs(); ++i) {
    if (support.count(ch.input_labels()[i])) rows.push_back(i);
  }
  if (rows.size() != support.size()) {
    throw ProbError("support names an input the channel does not have");
  }
  return rows;
}

double shannon_mi_fast(const std::vector<double>& p,
                       const std::vector<std::vector<double>>& w,
                       LogBase base) {
  const std::size_t ny = w[0].size();
  std::vector<double> py(ny, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t y = 0; y < ny; ++y) py[y] += p[i] * w[i][y];
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    for (std::size_t y = 0; y < ny; ++y) {
      if (w[i][y] > 0.0) mi += p[i] * w[i][y] * std::log(w[i][y] / py[y]);
    }
  }
  return from_nats(mi, base);
}

}  // namespace

std::vector<double> sibson_gradient(const std::vector<double>& p,
                                    const Channel& ch, double alpha,
                                    LogBase base) {
  std::vector<std::size_t> rows(ch.num_inputs());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return SibsonObjective(ch, rows, alpha, base).gradient(p);
}

CapacityResult maximal_alpha_leakage(const Pmf& px, const Channel& ch,
                                     AlphaOrder alpha, LogBase base,
                                     double tol) {
  if (ch.input_labels() != px.labels()) {
    throw ProbError("channel input labels do not match the input pmf");
  }
  if (alpha.is_finite() && alpha.value() < 1.0) {
    throw ProbError("maximal alpha-leakage requires alpha >= 1");
  }
  if (!(tol > 0.0)) throw ProbError("tol must be positive");

  if (alpha.is_one()) {
    // The alpha = 1 case is Shannon MI at the given input, not capacity.
    return {sibson_mi(px, ch, alpha, base), px, 0.0, 0,
            CapacityMethod::ClosedForm};
  }
  const std::set<std::string> support = px.support();
  if (alpha.is_infinity()) {
    const MeasureValue v = sibson_mi(px, ch, alpha, base);
    return {v, uniform_over(px.labels(), support), 0.0, 0,
            CapacityMethod::ClosedForm};
  }

  const auto rows = support_rows(ch, support);
  const std::size_t n = rows.size();
  SibsonObjective obj(ch, rows, alpha.value(), base);

  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  double gap = 0.0;
  std::size_t it = 0;
  for (; it < kSolverIterationCap; ++it) {
    const auto g = obj.gradient(p);
    const double gp = std::inner_product(g.begin(), g.end(), p.begin(), 0.0);
    std::size_t fw = 0, away = 0;
    bool have_away = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] > g[fw]) fw = i;
      if (p[i] > 0.0 && (!have_away || g[i] < g[away])) {
        away = i;
        have_away = true;
      }
    }
    gap = g[fw] - gp;
    if (gap <= tol) break;

    // Vertex step toward fw, or away from the worst active vertex;
    // away steps avoid zigzag when the optimum sits on a face.
    std::vector<double> d(n);
    double t_max;
    const double slope_away = gp - g[away];
    if (gap >= slope_away || !have_away || p[away] >= 1.0) {
      for (std::size_t i = 0; i < n; ++i) d[i] = (i == fw ? 1.0 : 0.0) - p[i];
      t_max = 1.0;
    } else {
      for (std::size_t i = 0; i < n; ++i) d[i] = p[i] - (i == away ? 1.0 : 0.0);
      t_max = p[away] / (1.0 - p[away]);
    }
    const double t = line_search(obj, p, d, t_max);
    if (t <= 0.0) break;  // line search found no ascent; gap re-checked below
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = std::max(0.0, p[i] + t * d[i]);
      mass += p[i];
    }
    for (double& v : p) v /= mass;
  }
  if (gap > tol) {
    std::ostringstream os;
    os << "capacity solver did not certify: gap " << gap << " > tol " << tol
       << " after " << it << " iterations (alpha " << alpha.str() << ", "
       << n << " inputs)";
    throw SolverError(os.str());
  }
  return {MeasureValue{obj.value(p), alpha, base},
          expand_to_labels(px.labels(),
                           [&] {
                             std::vector<std::string> ls;
                             for (auto r : rows) ls.push_back(ch.input_labels()[r]);
                             return ls;
                           }(),
                           p),
          gap, it, CapacityMethod::Solver};
}

CondCapacityResult conditional_maximal_alpha_leakage(const Joint3& j,
                                                     AlphaOrder alpha,
                                                     LogBase base, double tol) {
  if (alpha.is_finite() && alpha.value() < 1.0) {
    throw ProbError("conditional maximal alpha-leakage requires alpha >= 1");
  }
  if (alpha.is_one()) {
    return {conditional_arimoto_mi(j, alpha, base), std::nullopt, {}};
  }
  const Pmf pz = j.marginal(Axis::Z);
  CondCapacityResult result{MeasureValue{0.0, alpha, base}, std::nullopt, {}};
  bool first = true;
  for (std::size_t zi = 0; zi < pz.size(); ++zi) {
    if (pz.prob(zi) <= 0.0) continue;
    const std::string& z = pz.labels()[zi];
    const Channel ch = j.channel_y_given_x_z(z);
    const Pmf pxz = j.conditional_x_given_z(z);
    std::vector<double> probs;
    for (const auto& l : ch.input_labels()) {
      probs.push_back(pxz.prob(pxz.index_of(l)));
    }
    CapacityResult r = maximal_alpha_leakage(
        Pmf(ch.input_labels(), std::move(probs)), ch, alpha, base, tol);
    if (first || r.value.value > result.value.value) {
      result.value = r.value;
      result.argmax_z = z;
      first = false;
    }
    result.per_z.emplace(z, std::move(r));
  }
  return result;
}

CapacityResult grid_oracle_capacity(const std::set<std::string>& px_support,
                                    const Channel& ch, AlphaOrder alpha,
                                    LogBase base, std::size_t resolution) {
  if (px_support.size() > 4) {
    throw ProbError("grid oracle: support too large for exhaustive search");
  }
  if (resolution < 50) throw ProbError("grid oracle: resolution must be >= 50");
  const auto rows = support_rows(ch, px_support);
  const std::size_t n = rows.size();
  const std::size_t ny = ch.num_outputs();

  std::vector<std::vector<double>> w(n, std::vector<double>(ny));
  std::vector<std::vector<double>> wa(n, std::vector<double>(ny));
  const double a = alpha.is_finite() ? alpha.value() : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t y = 0; y < ny; ++y) {
      w[i][y] = ch.at(rows[i], y);
      if (alpha.is_finite()) wa[i][y] = std::pow(w[i][y], a);
    }
  }
  auto objective = [&](const std::vector<double>& p) {
    if (alpha.is_one()) return shannon_mi_fast(p, w, base);
    if (alpha.is_infinity()) {
      double s = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (p[i] > 0.0) m = std::max(m, w[i][y]);
        }
        s += m;
      }
      return from_nats(std::log(s), base);
    }
    double s = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double ay = 0.0;
      for (std::size_t i = 0; i < n; ++i) ay += p[i] * wa[i][y];
      if (ay > 0.0) s += std::pow(ay, 1.0 / a);
    }
    return from_nats(a / (a - 1.0) * std::log(s), base);
  };

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_p(n, 0.0);
  for_each_lattice_point(n, resolution, [&](const std::vector<double>& p) {
    const double v = objective(p);
    if (v > best) {
      best = v;
      best_p = p;
    }
  });
  std::vector<std::string> support_labels;
  for (auto r : rows) support_labels.push_back(ch.input_labels()[r]);
  return {MeasureValue{best, alpha, base},
          expand_to_labels(ch.input_labels(), support_labels, best_p),
          0.0, 0, CapacityMethod::GridOracle};
}

SupEqualityReport sup_equality_check(const std::set<std::string>& px_support,
                                     const Channel& ch, AlphaOrder alpha,
                                     LogBase base, std::size_t resolution) {
  if (px_support.size() > 4) {
    throw ProbError("sup equality check: support too large");
  }
  if (resolution < 50) {
    throw ProbError("sup equality check: resolution must be >= 50");
  }
  const auto rows = support_rows(ch, px_support);
  const std::size_t n = rows.size();
  const std::size_t ny = ch.num_outputs();
  std::vector<std::vector<double>> w(n, std::vector<double>(ny));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t y = 0; y < ny; ++y) w[i][y] = ch.at(rows[i], y);
  }
  const double a = alpha.is_finite() ? alpha.value() : 0.0;
  std::vector<std::vector<double>> wa(n, std::vector<double>(ny));
  if (alpha.is_finite()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t y = 0; y < ny; ++y) wa[i][y] = std::pow(w[i][y], a);
    }
  }

  auto sibson_obj = [&](const std::vector<double>& p) {
    if (alpha.is_one()) return shannon_mi_fast(p, w, base);
    if (alpha.is_infinity()) {
      double s = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (p[i] > 0.0) m = std::max(m, w[i][y]);
        }
        s += m;
      }
      return from_nats(std::log(s), base);
    }
    double s = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double ay = 0.0;
      for (std::size_t i = 0; i < n; ++i) ay += p[i] * wa[i][y];
      if (ay > 0.0) s += std::pow(ay, 1.0 / a);
    }
    return from_nats(a / (a - 1.0) * std::log(s), base);
  };
  auto arimoto_obj = [&](const std::vector<double>& p) {
    if (alpha.is_one()) return shannon_mi_fast(p, w, base);
    if (alpha.is_infinity()) {
      double s = 0.0, pm = 0.0;
      for (std::size_t i = 0; i < n; ++i) pm = std::max(pm, p[i]);
      for (std::size_t y = 0; y < ny; ++y) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, p[i] * w[i][y]);
        s += m;
      }
      return from_nats(std::log(s / pm), base);
    }
    double pa = 0.0;
    for (std::size_t i = 0; i < n; ++i) pa += std::pow(p[i], a);
    double s = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double ay = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) ay += std::pow(p[i], a) * wa[i][y];
      }
      if (ay > 0.0) s += std::pow(ay / pa, 1.0 / a);
    }
    return from_nats(a / (a - 1.0) * std::log(s), base);
  };

  double sup_s = -std::numeric_limits<double>::infinity();
  double sup_a = -std::numeric_limits<double>::infinity();
  for_each_lattice_point(n, resolution, [&](const std::vector<double>& p) {
    sup_s = std::max(sup_s, sibson_obj(p));
    sup_a = std::max(sup_a, arimoto_obj(p));
  });
  return {sup_s, sup_a, sup_s - sup_a, alpha, base, resolution};
}

}  // namespace alphaleak
