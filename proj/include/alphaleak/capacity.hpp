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

#ifndef ALPHALEAK_CAPACITY_HPP
#define ALPHALEAK_CAPACITY_HPP

#include <map>
#include <optional>

#include "alphaleak/measures.hpp"
#include "alphaleak/prob.hpp"

namespace alphaleak {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CapacityMethod { Solver, ClosedForm, GridOracle };

inline const char* capacity_method_name(CapacityMethod m) {
  switch (m) {
    case CapacityMethod::Solver: return "solver";
    case CapacityMethod::ClosedForm: return "closed_form";
    case CapacityMethod::GridOracle: return "grid_oracle";
  }
  return "?";
}

struct CapacityResult {
  MeasureValue value;
  Pmf argmax_input;
  double certificate_gap;  // first-order optimality gap, same units as value
  std::size_t iterations;
  CapacityMethod method;
};

struct CondCapacityResult {
  MeasureValue value;
  std::optional<std::string> argmax_z;  // absent for the alpha = 1 case
  std::map<std::string, CapacityResult> per_z;
};

struct SupEqualityReport {
  double sup_sibson;
  double sup_arimoto;
  double difference;  // sup_sibson - sup_arimoto
  AlphaOrder alpha;
  LogBase base;
  std::size_t resolution;
};

inline constexpr std::size_t kSolverIterationCap = 100000;
inline constexpr double kDefaultSolverTol = 1e-8;

// Largest information leakage to an adversary guessing any function of the
// input: alpha = 1 gives Shannon MI at the given input; alpha = inf gives
// log sum_y max_{x in supp} P(y|x); finite alpha > 1 is the Sibson-MI
// capacity over input distributions supported in supp(px), solved by
// Frank-Wolfe ascent with a linearization-gap certificate <= tol.
CapacityResult maximal_alpha_leakage(const Pmf& px, const Channel& ch,
                                     AlphaOrder alpha, LogBase base,
                                     double tol = kDefaultSolverTol);

// Side-information variant: alpha = 1 gives I(X;Y|Z) (no per-z split);
// alpha > 1 maximizes the per-event capacity over z in supp(Z). Ties among
// z resolve to the first maximizing label in axis order.
CondCapacityResult conditional_maximal_alpha_leakage(
    const Joint3& j, AlphaOrder alpha, LogBase base,
    double tol = kDefaultSolverTol);

// Exhaustive lattice search over the simplex on `px_support` with step
// 1/resolution. Independent of the iterative solver.
CapacityResult grid_oracle_capacity(const std::set<std::string>& px_support,
                                    const Channel& ch, AlphaOrder alpha,
                                    LogBase base, std::size_t resolution);

// Grid-maximizes the Sibson and Arimoto objectives separately over the same
// support and reports both suprema and their difference.
SupEqualityReport sup_equality_check(const std::set<std::string>& px_support,
                                     const Channel& ch, AlphaOrder alpha,
                                     LogBase base, std::size_t resolution);

// Analytic gradient of the Sibson objective at an interior point, in `base`
// units per unit mass. Exposed for finite-difference validation.
std::vector<double> sibson_gradient(const std::vector<double>& p,
                                    const Channel& ch, double alpha,
                                    LogBase base);

}  // namespace alphaleak

#endif  // ALPHALEAK_CAPACITY_HPP
