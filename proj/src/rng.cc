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

#include "lpkeet/rng.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "absl/strings/escaping.h"
#include "lpkeet/status.h"

namespace lpkeet {

Rng::Rng(const Seed& seed) { xof_.Absorb(seed); }

Rng Rng::FromEntropy() {
  std::random_device device;
  Seed seed;
  for (size_t i = 0; i < kSeedBytes; i += 4) {
    const uint32_t word = device();
    for (size_t j = 0; j < 4; ++j) seed[i + j] = (word >> (8 * j)) & 0xff;
  }
  return Rng(seed);
}

absl::StatusOr<Rng> Rng::FromHexSeed(absl::string_view hex) {
  const bool all_hex = std::all_of(hex.begin(), hex.end(), [](char c) {
    return std::isxdigit(static_cast<unsigned char>(c)) != 0;
  });
  if (hex.size() != 2 * kSeedBytes || !all_hex) {
    return MakeError(ErrorKind::kMalformed,
                     "seed must be exactly 64 hex characters");
  }
  const std::string bytes = absl::HexStringToBytes(hex);
  Seed seed;
  for (size_t i = 0; i < kSeedBytes; ++i) {
    seed[i] = static_cast<uint8_t>(bytes[i]);
  }
  return Rng(seed);
}

uint64_t Rng::UniformBelow(uint64_t bound) {
  if (bound <= 1) return 0;
  const int bits = std::bit_width(bound - 1);
  const uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
  while (true) {
    const uint64_t x = Next64() & mask;
    if (x < bound) return x;
  }
}

double Rng::UniformUnit() {
  return static_cast<double>((Next64() >> 11) + 1) * 0x1.0p-53;
}

int Rng::Bit() {
  if (bits_left_ == 0) {
    bit_pool_ = Next64();
    bits_left_ = 64;
  }
  const int b = static_cast<int>(bit_pool_ & 1);
  bit_pool_ >>= 1;
  --bits_left_;
  return b;
}

double Rng::StandardNormal() {
  const double u1 = UniformUnit();
  const double u2 = UniformUnit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Rng::Seed Rng::NextSeed() {
  Seed seed;
  Fill(seed);
  return seed;
}

}  // namespace lpkeet
