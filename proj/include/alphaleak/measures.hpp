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

#ifndef ALPHALEAK_MEASURES_HPP
#define ALPHALEAK_MEASURES_HPP

#include "alphaleak/prob.hpp"

namespace alphaleak {

struct MeasureValue {
  double value;  // in `base` units
  AlphaOrder alpha;
  LogBase base;
};

// Renyi entropy H_a(p): (1/(1-a)) log sum p^a.
// Shannon entropy at a=1, min-entropy -log max p at a=inf.
MeasureValue renyi_entropy(const Pmf& p, AlphaOrder alpha, LogBase base);

// Arimoto conditional entropy H_a(X|Y):
// (a/(1-a)) log sum_y (sum_x P(x)^a P(y|x)^a)^(1/a).
MeasureValue arimoto_cond_entropy(const Pmf& px, const Channel& ch,
                                  AlphaOrder alpha, LogBase base);

// Same quantity evaluated directly on a joint matrix P(x,v), x-major.
// H_a(X|V) = (a/(1-a)) log sum_v (sum_x P(x,v)^a)^(1/a).
double arimoto_cond_entropy_joint(const std::vector<std::vector<double>>& pxv,
                                  AlphaOrder alpha, LogBase base);

// Sibson mutual information of order a:
// (a/(a-1)) log sum_y (sum_x P(x) P(y|x)^a)^(1/a).
// Shannon MI at a=1; log sum_y max_{x in supp} P(y|x) at a=inf.
MeasureValue sibson_mi(const Pmf& px, const Channel& ch, AlphaOrder alpha,
                       LogBase base);

// Arimoto mutual information: H_a(X) - H_a(X|Y).
MeasureValue arimoto_mi(const Pmf& px, const Channel& ch, AlphaOrder alpha,
                        LogBase base);

// Sibson MI of the conditional joint P_{X,Y|Z=z}.
MeasureValue event_conditional_sibson_mi(const Joint3& j, const std::string& z,
                                         AlphaOrder alpha, LogBase base);

// Conditional Arimoto MI: H_a(X|Z) - H_a(X|Y,Z), the second term
// conditioning on the (Y,Z) pair over the product alphabet.
MeasureValue conditional_arimoto_mi(const Joint3& j, AlphaOrder alpha,
                                    LogBase base);

// Tunable loss of a reported belief `prob` in the true outcome:
// (a/(a-1))(1 - prob^((a-1)/a)) for finite a>1, -log prob (nats) at a=1,
// 1 - prob at a=inf. Requires a >= 1.
double alpha_loss(double prob, AlphaOrder alpha);

// Leakage from X to Y given Z evaluated from its defining estimator
// ratio, with both inner maximizations solved by the tilted posterior
// P(x|y,z)^a / sum_x' P(x'|y,z)^a. Agrees with conditional_arimoto_mi.
// Requires a >= 1.
MeasureValue conditional_alpha_leakage_by_definition(const Joint3& j,
                                                     AlphaOrder alpha,
                                                     LogBase base);

}  // namespace alphaleak

#endif  // ALPHALEAK_MEASURES_HPP
