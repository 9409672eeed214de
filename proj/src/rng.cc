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

#include "dpkit/rng.h"

#include <sodium.h>

#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>

#include "absl/strings/str_cat.h"

namespace dpkit {
namespace {

constexpr absl::string_view kDomainTag = "dpkit.rng.v1";

void EnsureSodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) std::abort();
  });
}

void AppendU64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

// Tagged, length-prefixed encoding, so no two distinct paths collide.
std::string EncodePath(uint64_t seed, const std::vector<RngStream::Label>& path) {
  std::string out(kDomainTag);
  AppendU64(out, seed);
  for (const RngStream::Label& label : path) {
    if (const auto* text = std::get_if<std::string>(&label)) {
      out.push_back('s');
      AppendU64(out, text->size());
      out += *text;
    } else {
      out.push_back('i');
      AppendU64(out, std::get<uint64_t>(label));
    }
  }
  return out;
}

}  // namespace

RngStream::RngStream(uint64_t seed) : RngStream(seed, {}) {}

RngStream::RngStream(uint64_t seed, std::vector<Label> path)
    : seed_(seed), path_(std::move(path)), position_(buffer_.size()) {
  EnsureSodium();
  std::string encoded = EncodePath(seed_, path_);
  crypto_generichash(key_.data(), key_.size(),
                     reinterpret_cast<const unsigned char*>(encoded.data()),
                     encoded.size(), nullptr, 0);
}

RngStream RngStream::Derive(absl::string_view label) const {
  std::vector<Label> path = path_;
  path.emplace_back(std::string(label));
  return RngStream(seed_, std::move(path));
}

RngStream RngStream::Derive(uint64_t index) const {
  std::vector<Label> path = path_;
  path.emplace_back(index);
  return RngStream(seed_, std::move(path));
}

std::string RngStream::ToString() const {
  std::string out = absl::StrCat(seed_);
  for (const Label& label : path_) {
    if (const auto* text = std::get_if<std::string>(&label)) {
      absl::StrAppend(&out, "/", *text);
    } else {
      absl::StrAppend(&out, "/", std::get<uint64_t>(label));
    }
  }
  return out;
}

void RngStream::Refill() {
  static constexpr unsigned char kNonce[crypto_stream_chacha20_NONCEBYTES] = {};
  std::memset(buffer_.data(), 0, buffer_.size());
  crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(),
                                kNonce, block_, key_.data());
  block_ += buffer_.size() / 64;
  position_ = 0;
}

uint64_t RngStream::NextU64() {
  if (position_ + 8 > buffer_.size()) Refill();
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<uint64_t>(buffer_[position_ + i]) << (8 * i);
  }
  position_ += 8;
  return v;
}

uint64_t RngStream::UniformBelow(uint64_t bound) {
  // Rejects the top partial copy of [0, bound) in [0, 2^64).
  uint64_t limit = -bound % bound;
  while (true) {
    uint64_t v = NextU64();
    if (v >= limit) return v % bound;
  }
}

BigInt RngStream::UniformBelow(const BigInt& bound) {
  if (bound <= std::numeric_limits<uint64_t>::max()) {
    return BigInt(UniformBelow(static_cast<uint64_t>(bound)));
  }
  BigInt max = bound - 1;
  size_t bits = boost::multiprecision::msb(max) + 1;
  size_t words = (bits + 63) / 64;
  BigInt mask = (BigInt(1) << bits) - 1;
  while (true) {
    BigInt v = 0;
    for (size_t i = 0; i < words; ++i) v = (v << 64) | NextU64();
    v &= mask;
    if (v < bound) return v;
  }
}

}  // namespace dpkit
