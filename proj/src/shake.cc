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

#include "lpkeet/shake.h"

#include <bit>

namespace lpkeet {

namespace {

constexpr std::array<uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rotation offset of lane x + 5y.
constexpr std::array<int, 25> kRhoOffsets = {
    0,  1,  62, 28, 27,  //
    36, 44, 6,  55, 20,  //
    3,  10, 43, 25, 39,  //
    41, 45, 15, 21, 8,   //
    18, 2,  61, 56, 14,
};

// Destination of lane (x, y) under pi: (y, 2x + 3y).
constexpr std::array<int, 25> MakePiDestinations() {
  std::array<int, 25> dst{};
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) dst[x + 5 * y] = y + 5 * ((2 * x + 3 * y) % 5);
  }
  return dst;
}
constexpr std::array<int, 25> kPiDestinations = MakePiDestinations();

inline void XorByte(std::array<uint64_t, 25>& state, size_t i, uint8_t b) {
  state[i / 8] ^= static_cast<uint64_t>(b) << (8 * (i % 8));
}

inline uint8_t GetByte(const std::array<uint64_t, 25>& state, size_t i) {
  return static_cast<uint8_t>(state[i / 8] >> (8 * (i % 8)));
}

}  // namespace

void KeccakF1600(std::array<uint64_t, 25>& state) {
  uint64_t a[25];
  for (int i = 0; i < 25; ++i) a[i] = state[i];
  for (int round = 0; round < 24; ++round) {
    uint64_t c[5], d[5], b[25];
#pragma GCC unroll 5
    for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
#pragma GCC unroll 5
    for (int x = 0; x < 5; ++x) d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
    // theta, rho and pi in one pass
#pragma GCC unroll 25
    for (int i = 0; i < 25; ++i) b[kPiDestinations[i]] = std::rotl(a[i] ^ d[i % 5], kRhoOffsets[i]);
    // chi
#pragma GCC unroll 25
    for (int i = 0; i < 25; ++i) {
      const int row = i - i % 5;
      a[i] = b[i] ^ (~b[row + (i + 1) % 5] & b[row + (i + 2) % 5]);
    }
    a[0] ^= kRoundConstants[round];
  }
  for (int i = 0; i < 25; ++i) state[i] = a[i];
}

void Shake256::Absorb(std::span<const uint8_t> data) {
  for (uint8_t b : data) {
    XorByte(state_, pos_, b);
    if (++pos_ == kRateBytes) {
      KeccakF1600(state_);
      pos_ = 0;
    }
  }
}

void Shake256::Finalize() {
  XorByte(state_, pos_, 0x1f);
  XorByte(state_, kRateBytes - 1, 0x80);
  KeccakF1600(state_);
  pos_ = 0;
  squeezing_ = true;
}

void Shake256::Squeeze(std::span<uint8_t> out) {
  if (!squeezing_) Finalize();
  for (uint8_t& b : out) {
    if (pos_ == kRateBytes) {
      KeccakF1600(state_);
      pos_ = 0;
    }
    b = GetByte(state_, pos_++);
  }
}

uint64_t Shake256::SqueezeWord() {
  if (!squeezing_) Finalize();
  if (pos_ % 8 == 0 && pos_ + 8 <= kRateBytes) {
    const uint64_t w = state_[pos_ / 8];
    pos_ += 8;
    return w;
  }
  uint8_t buf[8];
  Squeeze(buf);
  uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | buf[i];
  return w;
}

std::vector<uint8_t> Shake256Digest(std::span<const uint8_t> input,
                                    size_t out_len) {
  Shake256 xof;
  xof.Absorb(input);
  std::vector<uint8_t> out(out_len);
  xof.Squeeze(out);
  return out;
}

}  // namespace lpkeet
