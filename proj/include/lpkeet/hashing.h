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

// Hash encodings used by both schemes. Every function here is a pure
// function of (params digest, domain tag, input) built on SHAKE-256 with the
// framing
//
//   tag (1 byte) || params digest (8 bytes, little endian) || payload
//
// Bit strings are packed least-significant bit first.

#ifndef LPKEET_HASHING_H_
#define LPKEET_HASHING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/ring.h"
#include "lpkeet/rng.h"

namespace lpkeet {

enum class HashTag : uint8_t {
  kH = 0x01,   // message digest
  kH1 = 0x02,  // invertible ring tag
  kH2 = 0x03,  // sparse ring message for the OTS
  kHb = 0x04,  // {-1, 1}^l selector
  kHd = 0x05,  // fixed-weight binary OTS message
};

inline constexpr int kHashToInvertibleMaxTries = 1000;
// Public padding string prefixed to integer-scheme messages before hashing.
inline constexpr size_t kIntMessagePadBytes = 32;

// Framed XOF stream for (tag, digest, payload).
Rng HashStream(HashTag tag, uint64_t params_digest,
               std::span<const uint8_t> payload);

std::vector<uint8_t> PackBits(std::span<const uint8_t> bits);
std::vector<uint8_t> UnpackBits(std::span<const uint8_t> bytes, size_t nbits);

// H: R_2 element from the first n XOF bits.
RingElement HashMessageRing(const RingPtr& ctx, std::span<const uint8_t> input);

// H over the integer message space: t_msg bits of H(m' || m) where m' is
// kIntMessagePadBytes zero bytes and m is the packed message.
std::vector<uint8_t> HashMessageInt(uint64_t params_digest,
                                    std::span<const uint8_t> msg_bits,
                                    uint32_t t_msg);

// H1: rejection over counter || input until the candidate is a unit.
// `tries`, when non-null, receives the number of candidates drawn.
absl::StatusOr<RingElement> HashToInvertible(const RingPtr& ctx,
                                             std::span<const uint8_t> input,
                                             int* tries = nullptr);

// H2: exactly delta coefficients in {-1, +1}, positions from a partial
// Fisher-Yates shuffle.
absl::StatusOr<RingElement> HashToSparse(const RingPtr& ctx,
                                         std::span<const uint8_t> input,
                                         uint32_t delta);

// Hb: l entries in {-1, +1}.
std::vector<int8_t> HashPmOne(uint64_t params_digest,
                              std::span<const uint8_t> input, uint32_t l);

// Hd: k_sig entries in {0, 1} with exactly w_sig ones (selection sampling).
absl::StatusOr<std::vector<uint8_t>> HashWeighted(
    uint64_t params_digest, std::span<const uint8_t> input, uint32_t k_sig,
    uint32_t w_sig);

}  // namespace lpkeet

#endif  // LPKEET_HASHING_H_
