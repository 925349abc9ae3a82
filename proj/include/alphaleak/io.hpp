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

#ifndef ALPHALEAK_IO_HPP
#define ALPHALEAK_IO_HPP

#include <istream>

#include "alphaleak/prob.hpp"

namespace alphaleak {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parsed distribution file. The file carries "x_labels", "y_labels",
// optional "z_labels", and exactly one of:
//   - "joint": nested array, X-major then Y (then Z when z_labels exist)
//   - "px" + "channel_yx": input pmf and row-major channel
//   - "px" + "channel_yx" + "channel_zx": the Z-X-Y Markov construction
// `joint` always holds the full distribution; files without a Z axis get a
// singleton "*" Z label. `px`/`ch_yx` are present when the file gave the
// factored form, preserving zero-mass input rows exactly as written.
struct DistInput {
  Joint3 joint;
  std::optional<Pmf> px;
  std::optional<Channel> ch_yx;
  bool has_z;
};

DistInput load_distribution(std::istream& in);
DistInput load_distribution_file(const std::string& path);

// Input pmf and channel X -> Y for measures that consume the pair form.
// Falls back to conditionals of the (X, Y) margin when the file gave a
// joint tensor; channel rows then cover only supp(P_X).
std::pair<Pmf, Channel> as_pair(const DistInput& d);

}  // namespace alphaleak

#endif  // ALPHALEAK_IO_HPP
