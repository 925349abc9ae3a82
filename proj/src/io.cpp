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

#include "alphaleak/io.hpp"

#include <fstream>

#include <json.hpp>

namespace alphaleak {

namespace {

using nlohmann::json;

std::vector<std::string> read_labels(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw SchemaError(std::string("missing field '") + field + "'");
  }
  const auto& arr = j.at(field);
  if (!arr.is_array() || arr.empty()) {
    throw SchemaError(std::string("field '") + field +
                      "' must be a non-empty array of labels");
  }
  std::vector<std::string> labels;
  for (const auto& l : arr) {
    if (!l.is_string()) {
      throw SchemaError(std::string("field '") + field +
                        "' must contain strings");
    }
    labels.push_back(l.get<std::string>());
  }
  return labels;
}

std::vector<double> read_numbers(const json& arr, const char* field) {
  if (!arr.is_array()) {
    throw SchemaError(std::string("field '") + field + "' must be an array");
  }
  std::vector<double> v;
  for (const auto& x : arr) {
    if (!x.is_number()) {
      throw SchemaError(std::string("field '") + field +
                        "' must contain numbers");
    }
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<std::vector<double>> read_matrix(const json& j, const char* field,
                                             std::size_t rows,
                                             std::size_t cols) {
  if (!j.contains(field)) {
    throw SchemaError(std::string("missing field '") + field + "'");
  }
  const auto& arr = j.at(field);
  if (!arr.is_array() || arr.size() != rows) {
    throw SchemaError(std::string("field '") + field + "' must have " +
                      std::to_string(rows) + " rows");
  }
  std::vector<std::vector<double>> m;
  for (const auto& row : arr) {
    auto r = read_numbers(row, field);
    if (r.size() != cols) {
      throw SchemaError(std::string("field '") + field + "' rows must have " +
                        std::to_string(cols) + " entries");
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

DistInput load_distribution(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("top level must be an object");

  const auto x_labels = read_labels(j, "x_labels");
  const auto y_labels = read_labels(j, "y_labels");
  const bool has_z_labels = j.contains("z_labels");
  std::vector<std::string> z_labels =
      has_z_labels ? read_labels(j, "z_labels") : std::vector<std::string>{};

  const bool has_joint = j.contains("joint");
  const bool has_px = j.contains("px");
  const bool has_ch_yx = j.contains("channel_yx");
  const bool has_ch_zx = j.contains("channel_zx");
  if (has_joint == (has_px || has_ch_yx)) {
    throw SchemaError(
        "exactly one of 'joint' or 'px'+'channel_yx' must be given");
  }

  try {
    if (has_joint) {
      const auto& arr = j.at("joint");
      if (!arr.is_array() || arr.size() != x_labels.size()) {
        throw SchemaError("field 'joint' must have one row per x label");
      }
      std::vector<double> tensor;
      if (has_z_labels) {
        for (const auto& xs : arr) {
          auto mat = read_matrix(json{{"m", xs}}, "m", y_labels.size(),
                                 z_labels.size());
          for (auto& row : mat) {
            tensor.insert(tensor.end(), row.begin(), row.end());
          }
        }
        Joint3 joint(x_labels, y_labels, z_labels, std::move(tensor));
        return {std::move(joint), std::nullopt, std::nullopt, true};
      }
      for (const auto& xs : arr) {
        auto row = read_numbers(xs, "joint");
        if (row.size() != y_labels.size()) {
          throw SchemaError("field 'joint' rows must have one entry per y");
        }
        tensor.insert(tensor.end(), row.begin(), row.end());
      }
      Joint3 joint(x_labels, y_labels, {"*"}, std::move(tensor));
      return {std::move(joint), std::nullopt, std::nullopt, false};
    }

    if (!has_px || !has_ch_yx) {
      throw SchemaError("'px' and 'channel_yx' must be given together");
    }
    if (!j.at("px").is_array() || j.at("px").size() != x_labels.size()) {
      throw SchemaError("field 'px' must have one entry per x label");
    }
    Pmf px(x_labels, read_numbers(j.at("px"), "px"));
    Channel ch_yx(x_labels, y_labels,
                  read_matrix(j, "channel_yx", x_labels.size(),
                              y_labels.size()));
    if (has_ch_zx) {
      if (!has_z_labels) {
        throw SchemaError("'channel_zx' requires 'z_labels'");
      }
      Channel ch_zx(x_labels, z_labels,
                    read_matrix(j, "channel_zx", x_labels.size(),
                                z_labels.size()));
      Joint3 joint = Joint3::from_markov(px, ch_yx, ch_zx);
      return {std::move(joint), std::move(px), std::move(ch_yx), true};
    }
    const Channel constant_z(x_labels, {"*"},
                             std::vector<std::vector<double>>(
                                 x_labels.size(), {1.0}));
    Joint3 joint = Joint3::from_markov(px, ch_yx, constant_z);
    return {std::move(joint), std::move(px), std::move(ch_yx), false};
  } catch (const ProbError& e) {
    throw SchemaError(e.what());
  }
}

DistInput load_distribution_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SchemaError("cannot open file '" + path + "'");
  return load_distribution(f);
}

std::pair<Pmf, Channel> as_pair(const DistInput& d) {
  if (d.px && d.ch_yx) return {*d.px, *d.ch_yx};
  const Joint3 margin = d.has_z ? d.joint.drop_z() : d.joint;
  const std::string& z = margin.z_labels().front();
  const Channel ch = margin.channel_y_given_x_z(z);
  const Pmf px_full = margin.conditional_x_given_z(z);
  std::vector<double> probs;
  for (const auto& l : ch.input_labels()) {
    probs.push_back(px_full.prob(px_full.index_of(l)));
  }
  return {Pmf(ch.input_labels(), std::move(probs)), ch};
}

}  // namespace alphaleak
