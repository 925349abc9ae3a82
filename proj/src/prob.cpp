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

#include "alphaleak/prob.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace alphaleak {

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw ProbError(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

// Validates a raw probability vector in place: rejects genuinely negative
// entries and mass far from `target_mass`, clamps sub-threshold entries to
// exact 0, and renormalizes to `target_mass`.
void validate_and_normalize(std::vector<double>& v, double target_mass,
                            const char* what) {
  if (v.empty()) {
    throw ProbError(std::string(what) + ": empty probability vector");
  }
  double sum = 0.0;
  for (double& p : v) {
    if (!std::isfinite(p)) {
      throw ProbError(std::string(what) + ": non-finite entry");
    }
    if (p < -kNegativeNoiseTol) {
      throw ProbError(std::string(what) + ": negative probability");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - target_mass) > kMassRejectTol) {
    std::ostringstream os;
    os << what << ": mass " << sum << " deviates from " << target_mass
       << " by more than " << kMassRejectTol;
    throw ProbError(os.str());
  }
  if (sum <= 0.0) {
    throw ProbError(std::string(what) + ": zero total mass");
  }
  for (double& p : v) p *= target_mass / sum;
  // Clamp, then renormalize once more so the clamped vector is exact.
  double clamped_sum = 0.0;
  for (double& p : v) {
    if (p < kZeroClamp) p = 0.0;
    clamped_sum += p;
  }
  if (clamped_sum <= 0.0) {
    throw ProbError(std::string(what) + ": all entries below zero clamp");
  }
  for (double& p : v) p *= target_mass / clamped_sum;
}

}  // namespace

std::string AlphaOrder::format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Pmf::Pmf(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) {
    throw ProbError("Pmf: labels/probs length mismatch");
  }
  check_unique(labels_, "Pmf");
  validate_and_normalize(probs_, 1.0, "Pmf");
}

std::size_t Pmf::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw ProbError("Pmf: unknown label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

std::set<std::string> Pmf::support() const {
  std::set<std::string> s;
  for (std::size_t i = 0; i < size(); ++i) {
    if (probs_[i] > 0.0) s.insert(labels_[i]);
  }
  return s;
}

std::vector<std::size_t> Pmf::support_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < size(); ++i) {
    if (probs_[i] > 0.0) idx.push_back(i);
  }
  return idx;
}

Pmf Pmf::restrict_support(const std::set<std::string>& allowed) const {
  std::vector<double> probs(size(), 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (allowed.count(labels_[i]) && probs_[i] > 0.0) {
      probs[i] = probs_[i];
      mass += probs_[i];
    }
  }
  if (mass <= 0.0) {
    throw ProbError("restrict_support: allowed set misses the support");
  }
  for (double& p : probs) p /= mass;
  return Pmf(labels_, std::move(probs));
}

Channel::Channel(std::vector<std::string> input_labels,
                 std::vector<std::string> output_labels,
                 std::vector<std::vector<double>> matrix)
    : input_labels_(std::move(input_labels)),
      output_labels_(std::move(output_labels)),
      matrix_(std::move(matrix)) {
  check_unique(input_labels_, "Channel inputs");
  check_unique(output_labels_, "Channel outputs");
  if (matrix_.size() != input_labels_.size()) {
    throw ProbError("Channel: row count != input label count");
  }
  for (auto& row : matrix_) {
    if (row.size() != output_labels_.size()) {
      throw ProbError("Channel: row length != output label count");
    }
    validate_and_normalize(row, 1.0, "Channel row");
  }
  if (input_labels_.empty()) {
    throw ProbError("Channel: no inputs");
  }
}

Pmf Channel::row(std::size_t in) const {
  return Pmf(output_labels_, matrix_.at(in));
}

Pmf Channel::push_forward(const Pmf& px) const {
  std::vector<double> py(num_outputs(), 0.0);
  for (std::size_t i = 0; i < input_labels_.size(); ++i) {
    const double p = px.prob(px.index_of(input_labels_[i]));
    for (std::size_t j = 0; j < num_outputs(); ++j) {
      py[j] += p * matrix_[i][j];
    }
  }
  return Pmf(output_labels_, std::move(py));
}

Joint3::Joint3(std::vector<std::string> x_labels,
               std::vector<std::string> y_labels,
               std::vector<std::string> z_labels, std::vector<double> tensor)
    : x_labels_(std::move(x_labels)),
      y_labels_(std::move(y_labels)),
      z_labels_(std::move(z_labels)),
      tensor_(std::move(tensor)) {
  check_unique(x_labels_, "Joint3 X");
  check_unique(y_labels_, "Joint3 Y");
  check_unique(z_labels_, "Joint3 Z");
  if (x_labels_.empty() || y_labels_.empty() || z_labels_.empty()) {
    throw ProbError("Joint3: empty axis");
  }
  if (tensor_.size() != nx() * ny() * nz()) {
    throw ProbError("Joint3: tensor size != |X| * |Y| * |Z|");
  }
  validate_and_normalize(tensor_, 1.0, "Joint3");
}

Joint3 Joint3::from_markov(const Pmf& px, const Channel& ch_yx,
                           const Channel& ch_zx) {
  if (ch_yx.input_labels() != px.labels() ||
      ch_zx.input_labels() != px.labels()) {
    throw ProbError("from_markov: channel input labels do not match px");
  }
  const std::size_t nx = px.size();
  const std::size_t ny = ch_yx.num_outputs();
  const std::size_t nz = ch_zx.num_outputs();
  std::vector<double> t(nx * ny * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t z = 0; z < nz; ++z) {
        t[(x * ny + y) * nz + z] = px.prob(x) * ch_yx.at(x, y) * ch_zx.at(x, z);
      }
    }
  }
  return Joint3(px.labels(), ch_yx.output_labels(), ch_zx.output_labels(),
                std::move(t));
}

Joint3 Joint3::from_factors(const Pmf& px, const Channel& ch_yx,
                            const Channel& ch_zxy) {
  if (ch_yx.input_labels() != px.labels()) {
    throw ProbError("from_factors: ch_yx input labels do not match px");
  }
  const std::size_t nx = px.size();
  const std::size_t ny = ch_yx.num_outputs();
  const std::size_t nz = ch_zxy.num_outputs();
  if (ch_zxy.num_inputs() != nx * ny) {
    throw ProbError("from_factors: ch_zxy must have one row per (x,y) pair");
  }
  std::vector<double> t(nx * ny * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t z = 0; z < nz; ++z) {
        t[(x * ny + y) * nz + z] =
            px.prob(x) * ch_yx.at(x, y) * ch_zxy.at(x * ny + y, z);
      }
    }
  }
  return Joint3(px.labels(), ch_yx.output_labels(), ch_zxy.output_labels(),
                std::move(t));
}

Pmf Joint3::marginal(Axis axis) const {
  const std::vector<std::string>* labels = nullptr;
  std::size_t n = 0;
  switch (axis) {
    case Axis::X: labels = &x_labels_; n = nx(); break;
    case Axis::Y: labels = &y_labels_; n = ny(); break;
    case Axis::Z: labels = &z_labels_; n = nz(); break;
  }
  std::vector<double> m(n, 0.0);
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) {
      for (std::size_t z = 0; z < nz(); ++z) {
        std::size_t i = axis == Axis::X ? x : axis == Axis::Y ? y : z;
        m[i] += at(x, y, z);
      }
    }
  }
  return Pmf(*labels, std::move(m));
}

std::vector<std::vector<double>> Joint3::marginal_pair(Axis a, Axis b) const {
  if (a == b) throw ProbError("marginal_pair: axes must differ");
  auto axis_size = [this](Axis ax) {
    return ax == Axis::X ? nx() : ax == Axis::Y ? ny() : nz();
  };
  std::vector<std::vector<double>> m(axis_size(a),
                                     std::vector<double>(axis_size(b), 0.0));
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) {
      for (std::size_t z = 0; z < nz(); ++z) {
        auto pick = [&](Axis ax) { return ax == Axis::X ? x
                                        : ax == Axis::Y ? y : z; };
        m[pick(a)][pick(b)] += at(x, y, z);
      }
    }
  }
  return m;
}

Joint3 Joint3::condition_on_z(const std::string& z_label) const {
  const auto it = std::find(z_labels_.begin(), z_labels_.end(), z_label);
  if (it == z_labels_.end()) {
    throw ProbError("condition_on_z: unknown z label '" + z_label + "'");
  }
  const std::size_t z = static_cast<std::size_t>(it - z_labels_.begin());
  double pz = 0.0;
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) pz += at(x, y, z);
  }
  if (pz <= 0.0) {
    throw ProbError("condition_on_z: zero-probability event Z=" + z_label);
  }
  std::vector<double> t(nx() * ny());
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) {
      t[x * ny() + y] = at(x, y, z) / pz;
    }
  }
  return Joint3(x_labels_, y_labels_, {z_label}, std::move(t));
}

Pmf Joint3::conditional_x_given_z(const std::string& z_label) const {
  return condition_on_z(z_label).marginal(Axis::X);
}

Channel Joint3::channel_y_given_x_z(const std::string& z_label) const {
  Joint3 cond = condition_on_z(z_label);
  // Rows only for x with P(x|z) > 0.
  std::vector<std::string> in_labels;
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < nx(); ++x) {
    double px = 0.0;
    for (std::size_t y = 0; y < ny(); ++y) px += cond.at(x, y, 0);
    if (px <= 0.0) continue;
    std::vector<double> row(ny());
    for (std::size_t y = 0; y < ny(); ++y) row[y] = cond.at(x, y, 0) / px;
    in_labels.push_back(x_labels_[x]);
    rows.push_back(std::move(row));
  }
  return Channel(std::move(in_labels), y_labels_, std::move(rows));
}

Joint3 Joint3::drop_z() const {
  std::vector<double> t(nx() * ny(), 0.0);
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) {
      for (std::size_t z = 0; z < nz(); ++z) t[x * ny() + y] += at(x, y, z);
    }
  }
  return Joint3(x_labels_, y_labels_, {"*"}, std::move(t));
}

Joint3 Joint3::fuse_yz() const {
  std::vector<std::string> yz_labels;
  yz_labels.reserve(ny() * nz());
  for (std::size_t y = 0; y < ny(); ++y) {
    for (std::size_t z = 0; z < nz(); ++z) {
      yz_labels.push_back(y_labels_[y] + "|" + z_labels_[z]);
    }
  }
  std::vector<double> t(nx() * ny() * nz());
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) {
      for (std::size_t z = 0; z < nz(); ++z) {
        t[x * (ny() * nz()) + (y * nz() + z)] = at(x, y, z);
      }
    }
  }
  return Joint3(x_labels_, std::move(yz_labels), {"*"}, std::move(t));
}

Joint3 Joint3::swap_yz() const {
  std::vector<double> t(nx() * ny() * nz());
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) {
      for (std::size_t z = 0; z < nz(); ++z) {
        t[(x * nz() + z) * ny() + y] = at(x, y, z);
      }
    }
  }
  return Joint3(x_labels_, z_labels_, y_labels_, std::move(t));
}

}  // namespace alphaleak
