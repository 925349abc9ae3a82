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

#ifndef ALPHALEAK_PROB_HPP
#define ALPHALEAK_PROB_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace alphaleak {

// Validation thresholds shared by all probability constructors.
// Mass deviating from 1 by more than kMassRejectTol is an input error;
// smaller deviations are renormalized away. Entries below kZeroClamp
// after validation are snapped to exact 0 so support() is exact.
inline constexpr double kMassRejectTol = 1e-9;
inline constexpr double kNegativeNoiseTol = 1e-12;
inline constexpr double kZeroClamp = 1e-13;

class ProbError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Order parameter with exact tags for the two limit cases.
class AlphaOrder {
 public:
  static AlphaOrder one() { return AlphaOrder(Kind::One, 1.0); }
  static AlphaOrder infinity() { return AlphaOrder(Kind::Infinity, 0.0); }
  static AlphaOrder finite(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ProbError("alpha must be a finite positive real");
    }
    if (a == 1.0) return one();
    return AlphaOrder(Kind::Finite, a);
  }
  // Routes exact 1 and non-finite values to the tagged cases.
  static AlphaOrder of(double a) {
    if (std::isinf(a) && a > 0) return infinity();
    return finite(a);
  }

  bool is_one() const { return kind_ == Kind::One; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  // Finite numeric value; only valid for the FINITE tag.
  double value() const { return value_; }

  bool operator==(const AlphaOrder&) const = default;

  std::string str() const {
    if (is_one()) return "1";
    if (is_infinity()) return "inf";
    return format_double(value_);
  }

 private:
  enum class Kind { One, Finite, Infinity };
  AlphaOrder(Kind k, double v) : kind_(k), value_(v) {}
  static std::string format_double(double v);

  Kind kind_;
  double value_;
};

enum class LogBase { Bits, Nats };

inline const char* log_base_name(LogBase b) {
  return b == LogBase::Bits ? "bits" : "nats";
}

// Converts a value in nats to the requested base.
inline double from_nats(double nats, LogBase b) {
  return b == LogBase::Bits ? nats / std::numbers::ln2 : nats;
}

// A labeled probability vector over a finite alphabet.
class Pmf {
 public:
  Pmf(std::vector<std::string> labels, std::vector<double> probs);

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t i) const { return probs_[i]; }

  // Index of a label; throws if absent.
  std::size_t index_of(const std::string& label) const;

  // Labels with strictly positive probability.
  std::set<std::string> support() const;
  std::vector<std::size_t> support_indices() const;

  // Zeroes labels outside `allowed` and renormalizes.
  Pmf restrict_support(const std::set<std::string>& allowed) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

// Row-stochastic conditional distribution P(output|input).
class Channel {
 public:
  Channel(std::vector<std::string> input_labels,
          std::vector<std::string> output_labels,
          std::vector<std::vector<double>> matrix);

  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const {
    return output_labels_;
  }
  std::size_t num_inputs() const { return matrix_.size(); }
  std::size_t num_outputs() const { return output_labels_.size(); }
  double at(std::size_t in, std::size_t out) const { return matrix_[in][out]; }
  Pmf row(std::size_t in) const;

  // Output distribution induced by pushing `px` through the channel.
  // Label alignment is by name, not position.
  Pmf push_forward(const Pmf& px) const;

 private:
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
  std::vector<std::vector<double>> matrix_;
};

enum class Axis { X, Y, Z };

// Joint distribution tensor over (X, Y, Z).
class Joint3 {
 public:
  Joint3(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
         std::vector<std::string> z_labels,
         std::vector<double> tensor /* X-major, then Y, then Z */);

  // P(x,y,z) = P(x) P(y|x) P(z|x); the Z-X-Y Markov construction.
  static Joint3 from_markov(const Pmf& px, const Channel& ch_yx,
                            const Channel& ch_zx);
  // P(x,y,z) = P(x) P(y|x) P(z|x,y) with ch_zxy rows indexed by (x,y) pairs
  // in X-major order.
  static Joint3 from_factors(const Pmf& px, const Channel& ch_yx,
                             const Channel& ch_zxy);

  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  const std::vector<std::string>& z_labels() const { return z_labels_; }
  std::size_t nx() const { return x_labels_.size(); }
  std::size_t ny() const { return y_labels_.size(); }
  std::size_t nz() const { return z_labels_.size(); }
  double at(std::size_t x, std::size_t y, std::size_t z) const {
    return tensor_[(x * ny() + y) * nz() + z];
  }

  Pmf marginal(Axis axis) const;
  // Pairwise marginal as a joint matrix over (a, b), a-major.
  std::vector<std::vector<double>> marginal_pair(Axis a, Axis b) const;

  // P_{X,Y|Z=z} as a 2-axis joint (Z axis collapsed to a singleton).
  // Throws on a zero-probability event.
  Joint3 condition_on_z(const std::string& z_label) const;

  // Conditional input distribution P_{X|Z=z}.
  Pmf conditional_x_given_z(const std::string& z_label) const;
  // Channel P_{Y|X,Z=z}, rows only for x in supp(P_{X|Z=z}).
  Channel channel_y_given_x_z(const std::string& z_label) const;

  // Marginal joint over (X, Y) with Z summed out, as a Joint3 with a
  // singleton Z axis.
  Joint3 drop_z() const;

  // Joint over (X, composite (Y,Z)) with product output labels "y|z".
  // Used when a pair of releases is treated as one.
  Joint3 fuse_yz() const;

  // Swaps the Y and Z axes.
  Joint3 swap_yz() const;

 private:
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
  std::vector<std::string> z_labels_;
  std::vector<double> tensor_;
};

}  // namespace alphaleak

#endif  // ALPHALEAK_PROB_HPP
