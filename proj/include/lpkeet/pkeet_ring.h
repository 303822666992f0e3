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

// Public key encryption with equality test over R_q.
//
// A key holds two tag-0 trapdoor vectors a, b and a uniform u. The message
// travels in ct1 = u s1 + e1 + M floor(q/2) and its hash in
// ct2 = u s2 + e2 + H(M) floor(q/2); ct3, ct4 carry the matching LWE samples
// under a_h, b_h for the per-ciphertext tag h = H1(v). A one-time signature
// with public key v binds (ct1, ct2, ct3, ct4). A tester holding T_b can
// recover H(M) but not M.

#ifndef LPKEET_PKEET_RING_H_
#define LPKEET_PKEET_RING_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/ots.h"
#include "lpkeet/params.h"
#include "lpkeet/ring.h"
#include "lpkeet/rng.h"
#include "lpkeet/trapdoor_ring.h"

namespace lpkeet {

struct PkRing {
  std::vector<RingElement> a;
  std::vector<RingElement> b;
  RingElement u;

  bool operator==(const PkRing& o) const = default;
};

struct SkRing {
  RingTrapdoor ta;
  RingTrapdoor tb;
  std::shared_ptr<const RingPreimageSampler> sampler_a;
  std::shared_ptr<const RingPreimageSampler> sampler_b;
};

struct CtRing {
  std::vector<RingElement> sig;  // base_len elements
  OtsRingPublic v;
  RingElement ct1;
  RingElement ct2;
  std::vector<RingElement> ct3;  // m elements
  std::vector<RingElement> ct4;

  bool operator==(const CtRing& o) const = default;
};

// What a tester receives: T_b and the public b and u it needs to rebuild
// b_h. Never contains T_a.
struct TokenRing {
  RingTrapdoor tb;
  std::vector<RingElement> b;
  RingElement u;
  std::shared_ptr<const RingPreimageSampler> sampler_b;
};

class RingPkeet {
 public:
  // InvalidParams if `params` fails validation.
  static absl::StatusOr<RingPkeet> Create(const ParamsRing& params);

  const ParamsRing& params() const { return params_; }
  const RingPtr& ring() const { return ctx_; }

  absl::StatusOr<std::pair<PkRing, SkRing>> Setup(Rng& rng) const;

  // InvalidMessage unless msg has 0/1 coefficients.
  absl::StatusOr<CtRing> Encrypt(const PkRing& pk, const RingElement& msg, Rng& rng) const;

  // RejectSignature if the one-time signature fails, RejectHash if the
  // recovered hash does not match H(M).
  absl::StatusOr<RingElement> Decrypt(const PkRing& pk, const SkRing& sk, const CtRing& ct,
                                      Rng& rng) const;

  TokenRing Trapdoor(const PkRing& pk, const SkRing& sk) const;

  // True iff both ciphertexts decode to the same H(M).
  absl::StatusOr<bool> Test(const TokenRing& td_i, const CtRing& ct_i, const TokenRing& td_j,
                            const CtRing& ct_j, Rng& rng) const;

  // Rebuilds the sampler caches after deserialization.
  absl::Status AttachSamplers(SkRing& sk) const;
  absl::Status AttachSampler(TokenRing& td) const;

  // H(M) for a binary message, over its packed bits.
  RingElement MessageHash(const RingElement& msg) const;
  // The bytes H2 signs: ct1 || ct2 || ct3 || ct4.
  std::vector<uint8_t> SignedBody(const CtRing& ct) const;

 private:
  RingPkeet(ParamsRing params, RingPtr ctx) : params_(std::move(params)), ctx_(std::move(ctx)) {}

  absl::Status CheckShape(const CtRing& ct) const;
  absl::StatusOr<RingElement> Tag(const OtsRingPublic& v) const;
  // Decodes the H(M) slot with T_b.
  absl::StatusOr<std::vector<uint8_t>> RecoverHash(const std::vector<RingElement>& b,
                                                   const RingElement& u,
                                                   const RingPreimageSampler& sampler_b,
                                                   const CtRing& ct, Rng& rng) const;

  ParamsRing params_;
  RingPtr ctx_;
};

}  // namespace lpkeet

#endif  // LPKEET_PKEET_RING_H_
