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

#include <doctest.h>

#include <cmath>

#include "alphaleak/capacity.hpp"
#include "alphaleak/experiments.hpp"

using namespace alphaleak;

namespace {

const std::vector<std::string> kBits = {"0", "1"};

Channel bsc(double p) {
  return Channel(kBits, kBits, {{1.0 - p, p}, {p, 1.0 - p}});
}

Pmf uniform2() { return Pmf(kBits, {0.5, 0.5}); }

Channel random_channel(std::size_t nin, std::size_t nout, std::uint64_t seed) {
  std::vector<std::string> in, out;
  for (std::size_t i = 0; i < nin; ++i) in.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < nout; ++i) out.push_back("y" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < nin; ++i) {
    rows.push_back(sample_simplex(nout, seed * 977 + i));
  }
  return Channel(in, out, rows);
}

Pmf uniform_on(const Channel& ch) {
  const std::size_t n = ch.num_inputs();
  return Pmf(ch.input_labels(),
             std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// Blahut-Arimoto Shannon capacity, the independent alpha = 1 oracle.
double blahut_arimoto_capacity_bits(const Channel& ch, double tol = 1e-12) {
  const std::size_t nx = ch.num_inputs(), ny = ch.num_outputs();
  std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> py(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) py[y] += p[x] * ch.at(x, y);
    }
    std::vector<double> d(nx, 0.0);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        if (ch.at(x, y) > 0.0) {
          d[x] += ch.at(x, y) * std::log(ch.at(x, y) / py[y]);
        }
      }
      lo = std::min(lo, d[x]);
      hi = std::max(hi, d[x]);
    }
    if (hi - lo < tol) break;
    double sum = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      p[x] *= std::exp(d[x] - hi);
      sum += p[x];
    }
    for (double& v : p) v /= sum;
  }
  std::vector<double> py(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) py[y] += p[x] * ch.at(x, y);
  }
  double mi = 0.0;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (p[x] > 0.0 && ch.at(x, y) > 0.0) {
        mi += p[x] * ch.at(x, y) * std::log2(ch.at(x, y) / py[y]);
      }
    }
  }
  return mi;
}

}  // namespace

TEST_CASE("uninformative channel has zero capacity") {
  Channel flat(kBits, kBits, {{0.7, 0.3}, {0.7, 0.3}});
  for (double a : {1.0, 2.0, 50.0}) {
    auto r = maximal_alpha_leakage(uniform2(), flat, AlphaOrder::of(a),
                                   LogBase::Bits);
    CHECK(std::abs(r.value.value) < 1e-8);
  }
  CHECK(maximal_alpha_leakage(uniform2(), flat, AlphaOrder::infinity(),
                              LogBase::Bits)
            .value.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bsc closed form against the solver") {
  // 1 + log2(p^2 + (1-p)^2) at alpha = 2.
  auto r = maximal_alpha_leakage(uniform2(), bsc(0.25), AlphaOrder::finite(2.0),
                                 LogBase::Bits);
  CHECK(r.value.value ==
        doctest::Approx(1.0 + std::log2(0.0625 + 0.5625)).epsilon(1e-9));
  CHECK(r.certificate_gap <= kDefaultSolverTol);
  // alpha = inf closed form.
  auto rinf = maximal_alpha_leakage(uniform2(), bsc(0.25),
                                    AlphaOrder::infinity(), LogBase::Bits);
  CHECK(rinf.value.value == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(rinf.method == CapacityMethod::ClosedForm);
  // alpha = 1 is Shannon MI at the *given* input, not capacity.
  Pmf skew(kBits, {0.9, 0.1});
  auto r1 = maximal_alpha_leakage(skew, bsc(0.25), AlphaOrder::one(),
                                  LogBase::Bits);
  CHECK(r1.value.value ==
        doctest::Approx(
            sibson_mi(skew, bsc(0.25), AlphaOrder::one(), LogBase::Bits).value)
            .epsilon(1e-12));
}

TEST_CASE("solver rejects bad arguments") {
  CHECK_THROWS_AS(maximal_alpha_leakage(uniform2(), bsc(0.25),
                                        AlphaOrder::finite(0.5), LogBase::Bits),
                  ProbError);
  CHECK_THROWS_AS(maximal_alpha_leakage(uniform2(), bsc(0.25),
                                        AlphaOrder::finite(2.0), LogBase::Bits,
                                        -1.0),
                  ProbError);
}

TEST_CASE("solver respects the support constraint") {
  Pmf px({"x0", "x1", "x2"}, {0.5, 0.5, 0.0});
  Channel ch({"x0", "x1", "x2"}, kBits,
             {{0.9, 0.1}, {0.2, 0.8}, {1.0, 0.0}});
  auto r = maximal_alpha_leakage(px, ch, AlphaOrder::finite(3.0),
                                 LogBase::Bits);
  CHECK(r.argmax_input.prob(2) == 0.0);
  // The restricted capacity cannot use the excluded (helpful) row.
  Pmf full({"x0", "x1", "x2"}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  auto rf = maximal_alpha_leakage(full, ch, AlphaOrder::finite(3.0),
                                  LogBase::Bits);
  CHECK(rf.value.value >= r.value.value - 1e-9);
}

TEST_CASE("analytic gradient matches finite differences") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = 2 + seed % 3;
    Channel ch = random_channel(n, 3, seed);
    std::vector<double> p = sample_simplex(n, seed + 4000);
    for (double& v : p) v = 0.8 * v + 0.2 / static_cast<double>(n);
    const double a = 1.2 + static_cast<double>(seed % 5);

    const auto grad = sibson_gradient(p, ch, a, LogBase::Bits);
    // Central differences on the raw (unnormalized) coordinates; the
    // objective extends smoothly off the simplex.
    const double h = 1e-6;
    for (std::size_t i = 0; i < n; ++i) {
      auto lift = [&](double delta) {
        // Perturbs one coordinate; evaluates the objective directly from
        // the Sibson formula without the simplex constraint.
        std::vector<double> q = p;
        q[i] += delta;
        double s = 0.0;
        for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
          double ay = 0.0;
          for (std::size_t x = 0; x < n; ++x) {
            ay += q[x] * std::pow(ch.at(x, y), a);
          }
          s += std::pow(ay, 1.0 / a);
        }
        return a / (a - 1.0) * std::log2(s);
      };
      const double fd = (lift(h) - lift(-h)) / (2.0 * h);
      const double scale = std::max(1.0, std::abs(fd));
      CHECK(std::abs(grad[i] - fd) / scale < 1e-5);
    }
  }
}

TEST_CASE("solver agrees with the grid oracle") {
  const std::vector<double> alphas = {1.2, 2.0, 5.0, 20.0};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (std::size_t n : {2u, 3u}) {
      Channel ch = random_channel(n, n, seed + 100 * n);
      Pmf px = uniform_on(ch);
      for (double a : alphas) {
        auto solver = maximal_alpha_leakage(px, ch, AlphaOrder::finite(a),
                                            LogBase::Bits);
        auto oracle = grid_oracle_capacity(px.support(), ch,
                                           AlphaOrder::finite(a),
                                           LogBase::Bits, 400);
        CHECK(std::abs(solver.value.value - oracle.value.value) <= 5e-3);
        CHECK(solver.value.value >= oracle.value.value - 1e-9);
      }
    }
  }
}

TEST_CASE("grid oracle closed cases") {
  // Deterministic channel: capacity log2 |X| at uniform input.
  Channel ident({"a", "b"}, kBits, {{1.0, 0.0}, {0.0, 1.0}});
  auto r = grid_oracle_capacity({"a", "b"}, ident, AlphaOrder::finite(2.0),
                                LogBase::Bits, 200);
  CHECK(r.value.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.method == CapacityMethod::GridOracle);
  // Single-letter support.
  auto r1 = grid_oracle_capacity({"a"}, ident, AlphaOrder::finite(2.0),
                                 LogBase::Bits, 100);
  CHECK(r1.value.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(grid_oracle_capacity({"a", "b"}, ident,
                                       AlphaOrder::finite(2.0), LogBase::Bits,
                                       10),
                  ProbError);
}

TEST_CASE("monotone in alpha") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Channel ch = random_channel(3, 3, seed + 7000);
    Pmf px = uniform_on(ch);
    double prev = -1e9;
    for (double a : {1.0 + 1e-6, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0}) {
      const double v = maximal_alpha_leakage(px, ch, AlphaOrder::finite(a),
                                             LogBase::Bits)
                           .value.value;
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
    const double vinf = maximal_alpha_leakage(px, ch, AlphaOrder::infinity(),
                                              LogBase::Bits)
                            .value.value;
    CHECK(vinf >= prev - 1e-9);
  }
}

TEST_CASE("endpoint consistency") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Channel ch = random_channel(3, 3, seed + 8000);
    Pmf px = uniform_on(ch);
    const double near_inf =
        maximal_alpha_leakage(px, ch, AlphaOrder::finite(1e4), LogBase::Bits)
            .value.value;
    const double at_inf =
        maximal_alpha_leakage(px, ch, AlphaOrder::infinity(), LogBase::Bits)
            .value.value;
    CHECK(std::abs(near_inf - at_inf) < 1e-3);

    const double near_one = maximal_alpha_leakage(
                                px, ch, AlphaOrder::finite(1.0 + 1e-4),
                                LogBase::Bits)
                                .value.value;
    CHECK(std::abs(near_one - blahut_arimoto_capacity_bits(ch)) < 1e-3);
  }
}

TEST_CASE("sibson and arimoto grid suprema agree") {
  auto r = sup_equality_check({"0", "1"}, bsc(0.25), AlphaOrder::finite(2.0),
                              LogBase::Bits, 200);
  CHECK(std::abs(r.difference) < 1e-3);
  auto r1 = sup_equality_check({"0", "1"}, bsc(0.25), AlphaOrder::one(),
                               LogBase::Bits, 200);
  CHECK(r1.difference == 0.0);
  Channel ch3 = random_channel(3, 3, 4242);
  auto r3 = sup_equality_check({"x0", "x1", "x2"}, ch3, AlphaOrder::finite(5.0),
                               LogBase::Bits, 200);
  CHECK(std::abs(r3.difference) < 1e-3);
}

TEST_CASE("conditional capacity") {
  // Constant Z reduces to the plain capacity.
  {
    Channel const_z(kBits, {"z"}, {{1.0}, {1.0}});
    Joint3 j = Joint3::from_markov(uniform2(), bsc(0.25), const_z);
    for (double a : {1.5, 2.0, 5.0}) {
      auto c = conditional_maximal_alpha_leakage(j, AlphaOrder::finite(a),
                                                 LogBase::Bits);
      auto u = maximal_alpha_leakage(uniform2(), bsc(0.25),
                                     AlphaOrder::finite(a), LogBase::Bits);
      CHECK(c.value.value == doctest::Approx(u.value.value).epsilon(1e-9));
      CHECK(*c.argmax_z == "z");
    }
  }
  // alpha = 1 returns I(X;Y|Z) with no per-z decomposition.
  {
    Joint3 j = Joint3::from_markov(uniform2(), bsc(0.25), bsc(0.25));
    auto c = conditional_maximal_alpha_leakage(j, AlphaOrder::one(),
                                               LogBase::Bits);
    CHECK(c.value.value == doctest::Approx(0.1431558784658321).epsilon(1e-9));
    CHECK_FALSE(c.argmax_z.has_value());
    CHECK(c.per_z.empty());
  }
  // Example 1, q = 0.25, alpha = 2: equals the unconditional value.
  {
    Joint3 j = Joint3::from_markov(uniform2(), bsc(0.25), bsc(0.25));
    auto c = conditional_maximal_alpha_leakage(j, AlphaOrder::finite(2.0),
                                               LogBase::Bits);
    CHECK(c.value.value ==
          doctest::Approx(1.0 + std::log2(0.625)).epsilon(1e-8));
    // Every per-z value is dominated and the max is attained exactly.
    double best = -1.0;
    for (const auto& [z, r] : c.per_z) {
      CHECK(r.value.value <= c.value.value + 1e-15);
      best = std::max(best, r.value.value);
    }
    CHECK(best == c.value.value);
  }
}
