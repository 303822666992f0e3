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

// Framed binary encoding of keys, tokens and ciphertexts.
//
//   "LPKT" | version (1) | scheme (1 ring, 2 int) | kind | params digest (8)
//   | payload length (8) | payload
//
// All integers are little endian. Every payload opens with the canonical
// parameter text (u32 length + bytes) so a file is self-describing; the
// frame digest must match it. Decoders accept only canonical encodings, so
// decode followed by encode reproduces the input byte for byte.

#ifndef LPKEET_SERIALIZE_H_
#define LPKEET_SERIALIZE_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/params.h"
#include "lpkeet/pkeet_int.h"
#include "lpkeet/pkeet_ring.h"

namespace lpkeet {

inline constexpr uint8_t kFrameVersion = 1;
inline constexpr size_t kFrameHeaderBytes = 4 + 1 + 1 + 1 + 8 + 8;

enum class Scheme : uint8_t { kRing = 1, kInt = 2 };
enum class ObjectKind : uint8_t {
  kPublicKey = 1,
  kSecretKey = 2,
  kCiphertext = 3,
  kToken = 4,
  kParams = 5,
};

absl::string_view SchemeName(Scheme s);
absl::string_view KindName(ObjectKind k);

struct FrameInfo {
  Scheme scheme;
  ObjectKind kind;
  uint64_t digest;
  std::variant<ParamsRing, ParamsInt> params;
};

// Header and embedded parameters of a framed file. Malformed on any framing
// error, unknown tag, length mismatch or digest mismatch.
absl::StatusOr<FrameInfo> InspectFrame(std::span<const uint8_t> bytes);

std::vector<uint8_t> EncodeParams(const ParamsRing& p);
std::vector<uint8_t> EncodeParams(const ParamsInt& p);

std::vector<uint8_t> EncodeRingPk(const ParamsRing& p, const PkRing& pk);
std::vector<uint8_t> EncodeRingSk(const ParamsRing& p, const SkRing& sk);
std::vector<uint8_t> EncodeRingCt(const ParamsRing& p, const CtRing& ct);
std::vector<uint8_t> EncodeRingToken(const ParamsRing& p, const TokenRing& td);

// Decoders check the frame kind and that the embedded parameters equal the
// scheme's (ParamsMismatch otherwise). Secret keys and tokens come back with
// their samplers attached.
absl::StatusOr<PkRing> DecodeRingPk(const RingPkeet& scheme, std::span<const uint8_t> bytes);
absl::StatusOr<SkRing> DecodeRingSk(const RingPkeet& scheme, std::span<const uint8_t> bytes);
absl::StatusOr<CtRing> DecodeRingCt(const RingPkeet& scheme, std::span<const uint8_t> bytes);
absl::StatusOr<TokenRing> DecodeRingToken(const RingPkeet& scheme,
                                          std::span<const uint8_t> bytes);

std::vector<uint8_t> EncodeIntPk(const ParamsInt& p, const PkInt& pk);
std::vector<uint8_t> EncodeIntSk(const ParamsInt& p, const SkInt& sk);
std::vector<uint8_t> EncodeIntCt(const ParamsInt& p, const CtInt& ct);
std::vector<uint8_t> EncodeIntToken(const ParamsInt& p, const TokenInt& td);

absl::StatusOr<PkInt> DecodeIntPk(const IntPkeet& scheme, std::span<const uint8_t> bytes);
// The trapdoor bases are rebuilt against `pk`.
absl::StatusOr<SkInt> DecodeIntSk(const IntPkeet& scheme, const PkInt& pk,
                                  std::span<const uint8_t> bytes);
absl::StatusOr<CtInt> DecodeIntCt(const IntPkeet& scheme, std::span<const uint8_t> bytes);
absl::StatusOr<TokenInt> DecodeIntToken(const IntPkeet& scheme, std::span<const uint8_t> bytes);

}  // namespace lpkeet

#endif  // LPKEET_SERIALIZE_H_
