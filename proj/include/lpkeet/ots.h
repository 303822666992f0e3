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

// Linear one-time signatures: s = K [msg, 1]^T over R_q (ring variant) and
// s = K msg over Z (SIS variant). Verification is a norm check plus the
// linear identity H s = K^ [msg, 1]^T (resp. H s = K' msg).

#ifndef LPKEET_OTS_H_
#define LPKEET_OTS_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/matlattice.h"
#include "lpkeet/params.h"
#include "lpkeet/ring.h"
#include "lpkeet/rng.h"

namespace lpkeet {

// Ring variant. The public row H has base_len entries; k[0] = k1 with
// coefficients in [-b, b], k[1] = k2 with coefficients in [-delta b, delta b].
struct OtsRingSecret {
  std::array<std::vector<RingElement>, 2> k;
};

// K^ = H K, one ring element per secret column.
struct OtsRingPublic {
  std::array<RingElement, 2> v;

  bool operator==(const OtsRingPublic& o) const = default;
};

struct OtsRingKeys {
  OtsRingSecret secret;
  OtsRingPublic pub;
};

OtsRingKeys OtsRingKeyGen(std::span<const RingElement> h, const ParamsRing& params,
                          Rng& rng);

// Messages have coefficients in {-1, 0, 1} and at most delta_w nonzero.
bool InRingMessageSpace(const RingElement& msg, uint32_t delta);

// s = k1 msg + k2. InvalidMessage outside the message space.
absl::StatusOr<std::vector<RingElement>> OtsRingSign(const OtsRingSecret& key,
                                                     const RingElement& msg,
                                                     const ParamsRing& params);

// Accepts iff the message is in the space, ||s||_inf <= 2 delta b and
// H s = v1 msg + v2.
bool OtsRingVerify(std::span<const RingElement> h, const OtsRingPublic& pub,
                   const RingElement& msg, std::span<const RingElement> sig,
                   const ParamsRing& params);

// SIS variant. K in [-b, b]^{m x k_sig} row-major; K' = H K mod q.
struct OtsSisKeys {
  std::vector<int8_t> k;
  IntMatrix pub;
};

OtsSisKeys OtsSisKeyGen(const IntMatrix& h, const ParamsInt& params, Rng& rng);

// s = K msg for msg in {0,1}^{k_sig} of weight exactly w_sig, else
// InvalidMessage.
absl::StatusOr<std::vector<int64_t>> OtsSisSign(const OtsSisKeys& keys,
                                                std::span<const uint8_t> msg,
                                                const ParamsInt& params);

// Accepts iff msg is binary of weight at most w_sig, ||s||_inf <= w_sig b_sig
// and H s = K' msg (mod q).
bool OtsSisVerify(const IntMatrix& h, const IntMatrix& pub, std::span<const uint8_t> msg,
                  std::span<const int64_t> sig, const ParamsInt& params);

}  // namespace lpkeet

#endif  // LPKEET_OTS_H_
