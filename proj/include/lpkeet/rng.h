/*
 * Copyright 2026 The lpkeet Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LPKEET_RNG_H_
#define LPKEET_RNG_H_

#include <array>
#include <cstdint>
#include <span>
#include <utility>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "lpkeet/shake.h"

namespace lpkeet {

// Deterministic random stream: SHAKE-256 absorbing a 32-byte seed, squeezed
// forever. Two instances built from the same seed produce identical streams.
// Not thread-safe; give each thread its own instance.
class Rng {
 public:
  static constexpr size_t kSeedBytes = 32;
  using Seed = std::array<uint8_t, kSeedBytes>;

  explicit Rng(const Seed& seed);
  // Streams from an XOF that has already absorbed its input.
  explicit Rng(Shake256 absorbed) : xof_(std::move(absorbed)) {}

  // Seeds from the operating system entropy source.
  static Rng FromEntropy();

  // Parses a 64-character hex seed.
  static absl::StatusOr<Rng> FromHexSeed(absl::string_view hex);

  uint64_t Next64() { return xof_.SqueezeWord(); }

  // Uniform integer in [0, bound), bound >= 1, by masked rejection.
  uint64_t UniformBelow(uint64_t bound);

  // Uniform double in (0, 1] with 53 random bits.
  double UniformUnit();

  // One uniformly random bit.
  int Bit();

  // Standard normal variate (Box-Muller on two UniformUnit draws), kept
  // in-house so streams stay reproducible across standard libraries.
  double StandardNormal();

  void Fill(std::span<uint8_t> out) { xof_.Squeeze(out); }

  // Draws a fresh 32-byte seed, e.g. to fork an independent child stream.
  Seed NextSeed();

 private:
  Shake256 xof_;
  uint64_t bit_pool_ = 0;
  int bits_left_ = 0;
};

}  // namespace lpkeet

#endif  // LPKEET_RNG_H_
