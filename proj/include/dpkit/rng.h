//
// Copyright 2026 The dpkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Deterministic, hierarchically derived random streams.
//
// A stream is identified by a 64-bit root seed and a path of labels. Its
// bits are the ChaCha20 keystream under a key obtained by hashing the seed
// and the encoded path with BLAKE2b, so the same (seed, path) always yields
// the same bits on every platform, and distinct paths yield unrelated
// streams. Deriving a child never consumes bits from the parent.

#ifndef DPKIT_RNG_H_
#define DPKIT_RNG_H_

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/strings/string_view.h"
#include "dpkit/rational.h"

namespace dpkit {

class RngStream {
 public:
  using Label = std::variant<std::string, uint64_t>;

  explicit RngStream(uint64_t seed);

  // Fresh stream at path() + {label}.
  RngStream Derive(absl::string_view label) const;
  RngStream Derive(uint64_t index) const;

  uint64_t seed() const { return seed_; }
  const std::vector<Label>& path() const { return path_; }
  // "seed/label/3/..." for diagnostics.
  std::string ToString() const;

  uint64_t NextU64();
  // Uniform on [0, bound). Requires bound > 0.
  uint64_t UniformBelow(uint64_t bound);
  BigInt UniformBelow(const BigInt& bound);

 private:
  RngStream(uint64_t seed, std::vector<Label> path);
  void Refill();

  uint64_t seed_;
  std::vector<Label> path_;
  std::array<unsigned char, 32> key_;
  uint64_t block_ = 0;
  std::array<unsigned char, 512> buffer_;
  size_t position_;
};

}  // namespace dpkit

#endif  // DPKIT_RNG_H_
