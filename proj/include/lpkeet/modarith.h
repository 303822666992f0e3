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

// Word-sized modular arithmetic for moduli below 2^62.

#ifndef LPKEET_MODARITH_H_
#define LPKEET_MODARITH_H_

#include <cstdint>

namespace lpkeet {

using uint128_t = unsigned __int128;
using int128_t = __int128;

inline uint64_t AddMod(uint64_t a, uint64_t b, uint64_t q) {
  const uint64_t s = a + b;
  return s >= q ? s - q : s;
}

inline uint64_t SubMod(uint64_t a, uint64_t b, uint64_t q) {
  return a >= b ? a - b : a + q - b;
}

inline uint64_t NegMod(uint64_t a, uint64_t q) { return a == 0 ? 0 : q - a; }

inline uint64_t MulMod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>(static_cast<uint128_t>(a) * b % q);
}

inline uint64_t PowMod(uint64_t base, uint64_t exp, uint64_t q) {
  uint64_t result = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, q);
    base = MulMod(base, base, q);
    exp >>= 1;
  }
  return result;
}

// Inverse modulo a prime q via Fermat; returns 0 for a == 0.
inline uint64_t InvModPrime(uint64_t a, uint64_t q) {
  return PowMod(a, q - 2, q);
}

// Maps a signed integer to its residue in [0, q).
inline uint64_t ReduceSigned(int64_t x, uint64_t q) {
  const int64_t r = x % static_cast<int64_t>(q);
  return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(q) : r);
}

inline uint64_t ReduceSigned128(int128_t x, uint64_t q) {
  const int128_t r = x % static_cast<int128_t>(q);
  return static_cast<uint64_t>(r < 0 ? r + q : r);
}

// Centered representative in (-q/2, q/2].
inline int64_t CenteredLift(uint64_t a, uint64_t q) {
  return a > q / 2 ? static_cast<int64_t>(a) - static_cast<int64_t>(q)
                   : static_cast<int64_t>(a);
}

// 1 when a is closer to floor(q/2) than to 0 on the cycle Z_q, else 0.
inline uint8_t DecodeHalf(uint64_t a, uint64_t q) {
  const uint64_t lo = (q + 3) / 4;
  const uint64_t hi = static_cast<uint64_t>(3 * static_cast<uint128_t>(q) / 4);
  return (a >= lo && a < hi) ? 1 : 0;
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool IsPrime(uint64_t n);

// Smallest prime >= n. Returns 0 if none below 2^63.
uint64_t NextPrime(uint64_t n);

// Shoup precomputation: floor(w * 2^64 / q) for fast multiplication by a
// fixed constant w < q.
inline uint64_t ShoupPrecompute(uint64_t w, uint64_t q) {
  return static_cast<uint64_t>((static_cast<uint128_t>(w) << 64) / q);
}

inline uint64_t MulModShoup(uint64_t a, uint64_t w, uint64_t w_shoup,
                            uint64_t q) {
  const uint64_t hi =
      static_cast<uint64_t>((static_cast<uint128_t>(a) * w_shoup) >> 64);
  const uint64_t r = a * w - hi * q;
  return r >= q ? r - q : r;
}

}  // namespace lpkeet

#endif  // LPKEET_MODARITH_H_
