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

// Parameter records for both schemes, their derivation and validation.
//
// Both records are plain immutable values. Their canonical text form
// (sorted key=value lines) is what gets hashed into the 8-byte digest that
// binds hashes and file frames to one parameter set.

#ifndef LPKEET_PARAMS_H_
#define LPKEET_PARAMS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace lpkeet {

// kToy shrinks dimensions for fast runs and is NOT secure.
enum class Profile { kStrict, kToy };

absl::string_view ProfileName(Profile p);
absl::StatusOr<Profile> ParseProfile(absl::string_view name);

// Derivation constants shared by both schemes.
inline constexpr double kTailCut = 12.0;
inline constexpr int kEpsilonLog2 = -80;
inline constexpr uint64_t kDefaultQBound = 1024;
inline constexpr int kIntToyMultiplier = 2;
inline constexpr int kIntStrictMultiplier = 6;
inline constexpr uint64_t kModulusLimit = 1ULL << 62;

struct ParamsRing {
  Profile profile = Profile::kToy;
  uint32_t lambda_sec = 0;
  uint32_t n = 0;
  uint64_t q = 0;
  uint32_t k = 0;
  uint32_t m = 0;
  uint32_t base_len = 2;
  double sigma_trap = 0;
  double alpha_g = 0;
  double zeta = 0;
  double tau = 0;
  double mu = 0;
  double gamma = 0;
  double t_tail = kTailCut;
  double t_prime = 0;
  uint32_t delta_w = 0;
  uint64_t b_ots = 0;

  bool operator==(const ParamsRing&) const = default;
};

struct ParamsInt {
  Profile profile = Profile::kToy;
  uint32_t lambda_sec = 0;
  uint32_t n = 0;
  uint64_t q = 0;
  uint32_t k = 0;  // gadget length, ceil(log2 q)
  uint32_t m = 0;
  uint32_t m_multiplier = 0;
  uint32_t l = 0;
  uint32_t t_msg = 0;
  double sigma = 0;
  double alpha = 0;
  double delta_exp = 0;
  uint32_t k_sig = 0;
  uint32_t w_sig = 0;
  uint32_t b_sig = 1;
  uint64_t q_bound = kDefaultQBound;
  double t_tail = kTailCut;

  bool operator==(const ParamsInt&) const = default;
};

absl::StatusOr<ParamsRing> DeriveRingParams(uint32_t lambda_sec, uint32_t n,
                                            Profile profile);

absl::StatusOr<ParamsInt> DeriveIntParams(uint32_t lambda_sec, uint32_t n,
                                          Profile profile,
                                          uint64_t q_bound = kDefaultQBound);

// Names of violated invariants; empty means valid.
std::vector<std::string> Validate(const ParamsRing& p);
std::vector<std::string> Validate(const ParamsInt& p);

// Lower bound on zeta: sqrt(5) * C * sigma^2 * (sqrt(kn) + sqrt(2n) + t').
double RingZetaLowerBound(const ParamsRing& p);

// Exact rational evaluation of
//   t*tau*sqrt(n) + 2 t^2 tau zeta n + t^2 gamma zeta k n < floor(q/4)
// with the stored doubles read as the dyadic rationals they are.
bool RingCorrectnessHolds(const ParamsRing& p);

std::string CanonicalText(const ParamsRing& p);
std::string CanonicalText(const ParamsInt& p);

// Inverse of CanonicalText. Rejects unknown, missing or duplicate keys and
// any text that would not re-serialize byte-identically.
absl::StatusOr<ParamsRing> ParseRingParams(absl::string_view text);
absl::StatusOr<ParamsInt> ParseIntParams(absl::string_view text);

// First 8 bytes (little endian) of SHAKE-256 over the canonical text.
uint64_t ParamsDigest(const ParamsRing& p);
uint64_t ParamsDigest(const ParamsInt& p);

}  // namespace lpkeet

#endif  // LPKEET_PARAMS_H_
