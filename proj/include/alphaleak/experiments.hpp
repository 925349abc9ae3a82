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

#ifndef ALPHALEAK_EXPERIMENTS_HPP
#define ALPHALEAK_EXPERIMENTS_HPP

#include <cstdint>
#include <map>

#include "alphaleak/capacity.hpp"

namespace alphaleak {

struct TrialConfig {
  std::size_t nx = 2;
  std::size_t ny = 2;
  std::size_t nz = 2;
  std::vector<AlphaOrder> alphas = {
      AlphaOrder::one(), AlphaOrder::finite(1.5), AlphaOrder::finite(2.0),
      AlphaOrder::finite(5.0), AlphaOrder::infinity()};
  std::size_t trials = 1000;
  std::uint64_t seed = 7;
  double tolerance = 1e-7;
  LogBase base = LogBase::Bits;
};

struct TrialRecord {
  std::size_t trial;
  std::string alpha;
  double lhs;
  double rhs;
};

struct TrialReport {
  std::string suite;
  std::size_t trials;
  std::vector<std::string> alphas;
  std::size_t violations;
  double max_violation;  // largest positive lhs - rhs excess, 0 if none
  std::uint64_t seed;
  double tolerance;
  std::size_t solver_failures;
  std::vector<TrialRecord> per_trial;
};

// Cardinality plan for the constructed side variable: a bulk block used
// off the selected event plus one block per surviving input symbol.
struct WitnessConfig {
  std::size_t u0_size;
  std::map<std::string, std::size_t> per_x_sizes;
  Pmf target_input;
};

// P(x,y,z) = P(x) P(y|x) P(z|x); Z-X-Y holds by construction.
Joint3 make_markov_joint(const Pmf& px, const Channel& ch_yx,
                         const Channel& ch_zx);

// Random Markov instances; checks that side information generated from X
// alone never increases maximal alpha-leakage.
TrialReport verify_robustness_theorem(const TrialConfig& cfg);

// The non-Markov construction where Z selects between Y = X and its flip:
// conditional leakage is a full bit and strictly exceeds the unconditional
// value for every crossover p in the grid.
TrialReport verify_counterexample_nonmarkov();

// Random unconstrained joints; compares leakage of the pair release
// (Y, Z) against the chained single-release bound. Findings only: an
// excess is reported, not asserted.
TrialReport verify_composition_conjecture(const TrialConfig& cfg);

// Random post-processing chains X -> Y -> W; Sibson MI must not grow.
TrialReport verify_sibson_dpi(const TrialConfig& cfg);

// Lower bound on conditional maximal alpha-leakage from the explicit
// constructed side variable, via its closed-form numerator/denominator.
// Finite alpha > 1 only.
MeasureValue appendix_witness_lower_bound(const Joint3& j, AlphaOrder alpha,
                                          const WitnessConfig& w,
                                          LogBase base);

// Same quantity evaluated directly on the explicit (U, Y, Z) joint.
// Only usable when the total constructed alphabet is small.
MeasureValue appendix_witness_direct(const Joint3& j, AlphaOrder alpha,
                                     const WitnessConfig& w, LogBase base);

// Picks per-symbol cardinalities approximating `target_input` on the
// selected event, scaled so the smallest block has about `granularity`
// elements (and never fewer than 1).
WitnessConfig make_witness_config(const Joint3& j, AlphaOrder alpha,
                                  const Pmf& target_input,
                                  std::size_t u0_size,
                                  std::size_t granularity = 10000);

// The maximizing side-information value used by the witness construction.
std::string witness_argmax_z(const Joint3& j, AlphaOrder alpha, LogBase base,
                             double tol = kDefaultSolverTol);

struct BscRow {
  AlphaOrder alpha;
  double unconditional_closed;
  double unconditional_solver;
  double conditional_closed;
  double conditional_solver;
};

// Closed forms for the binary symmetric instance (crossover p for the
// release, q for the side information) next to solver output.
std::vector<BscRow> bsc_closed_forms(double p, double q,
                                     const std::vector<AlphaOrder>& alpha_grid,
                                     LogBase base = LogBase::Bits,
                                     double tol = kDefaultSolverTol);

// Closed-form unconditional leakage of the binary symmetric channel with
// uniform input.
double bsc_leakage_closed_form(double p, AlphaOrder alpha, LogBase base);

// Dirichlet(1,...,1) row sampling for reproducible random instances.
std::vector<double> sample_simplex(std::size_t n, std::uint64_t seed);

}  // namespace alphaleak

#endif  // ALPHALEAK_EXPERIMENTS_HPP
