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

#include "lpkeet/ots.h"

#include "lpkeet/modarith.h"
#include "lpkeet/status.h"
#include "lpkeet/trapdoor_ring.h"

namespace lpkeet {

namespace {

RingElement UniformBounded(const RingPtr& ctx, uint64_t bound, Rng& rng) {
  RingElement r(ctx);
  for (uint32_t i = 0; i < ctx->n(); ++i) {
    const int64_t v = static_cast<int64_t>(rng.UniformBelow(2 * bound + 1)) -
                      static_cast<int64_t>(bound);
    r.mutable_coeff(i) = ReduceSigned(v, ctx->q());
  }
  return r;
}

uint64_t RingSigBound(const ParamsRing& p) { return 2ULL * p.delta_w * p.b_ots; }

}  // namespace

OtsRingKeys OtsRingKeyGen(std::span<const RingElement> h, const ParamsRing& params,
                          Rng& rng) {
  const RingPtr& ctx = h[0].context();
  const uint64_t bounds[2] = {params.b_ots, uint64_t{params.delta_w} * params.b_ots};
  OtsRingKeys keys;
  for (int col = 0; col < 2; ++col) {
    for (size_t i = 0; i < h.size(); ++i) {
      keys.secret.k[col].push_back(UniformBounded(ctx, bounds[col], rng));
    }
    keys.pub.v[col] = InnerProduct({h.begin(), h.end()}, keys.secret.k[col]);
  }
  return keys;
}

bool InRingMessageSpace(const RingElement& msg, uint32_t delta) {
  const uint64_t q = msg.context()->q();
  uint32_t weight = 0;
  for (uint64_t c : msg.coeffs()) {
    if (c == 0) continue;
    if (c != 1 && c != q - 1) return false;
    ++weight;
  }
  return weight <= delta;
}

absl::StatusOr<std::vector<RingElement>> OtsRingSign(const OtsRingSecret& key,
                                                     const RingElement& msg,
                                                     const ParamsRing& params) {
  if (!msg.initialized() || !InRingMessageSpace(msg, params.delta_w)) {
    return MakeError(ErrorKind::kInvalidMessage, "OTS message outside the sparse ternary space");
  }
  std::vector<RingElement> sig;
  for (size_t i = 0; i < key.k[0].size(); ++i) sig.push_back(key.k[0][i] * msg + key.k[1][i]);
  return sig;
}

bool OtsRingVerify(std::span<const RingElement> h, const OtsRingPublic& pub,
                   const RingElement& msg, std::span<const RingElement> sig,
                   const ParamsRing& params) {
  if (sig.size() != h.size() || !msg.initialized() || !InRingMessageSpace(msg, params.delta_w)) {
    return false;
  }
  for (const RingElement& s : sig) {
    if (!s.SameContext(msg) || s.InfNorm() > RingSigBound(params)) return false;
  }
  if (!pub.v[0].SameContext(msg) || !pub.v[1].SameContext(msg)) return false;
  return InnerProduct({h.begin(), h.end()}, {sig.begin(), sig.end()}) == pub.v[0] * msg + pub.v[1];
}

OtsSisKeys OtsSisKeyGen(const IntMatrix& h, const ParamsInt& params, Rng& rng) {
  const size_t m = h.cols();
  const size_t ks = params.k_sig;
  const int64_t b = params.b_sig;
  OtsSisKeys keys;
  keys.k.resize(m * ks);
  for (int8_t& v : keys.k) {
    v = static_cast<int8_t>(static_cast<int64_t>(rng.UniformBelow(2 * b + 1)) - b);
  }
  keys.pub = IntMatrix(h.rows(), ks, h.q());
  std::vector<int64_t> col(m);
  for (size_t j = 0; j < ks; ++j) {
    for (size_t i = 0; i < m; ++i) col[i] = keys.k[i * ks + j];
    const std::vector<uint64_t> hc = h.MulSigned(col);
    for (size_t r = 0; r < h.rows(); ++r) keys.pub.at(r, j) = hc[r];
  }
  return keys;
}

absl::StatusOr<std::vector<int64_t>> OtsSisSign(const OtsSisKeys& keys,
                                                std::span<const uint8_t> msg,
                                                const ParamsInt& params) {
  const size_t ks = params.k_sig;
  uint32_t weight = 0;
  for (uint8_t bit : msg) {
    if (bit > 1) return MakeError(ErrorKind::kInvalidMessage, "OTS message is not binary");
    weight += bit;
  }
  if (msg.size() != ks || weight != params.w_sig) {
    return MakeError(ErrorKind::kInvalidMessage, "OTS message must have length k_sig and weight w_sig");
  }
  const size_t m = keys.k.size() / ks;
  std::vector<int64_t> s(m, 0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < ks; ++j) {
      if (msg[j]) s[i] += keys.k[i * ks + j];
    }
  }
  return s;
}

bool OtsSisVerify(const IntMatrix& h, const IntMatrix& pub, std::span<const uint8_t> msg,
                  std::span<const int64_t> sig, const ParamsInt& params) {
  if (msg.size() != params.k_sig || sig.size() != h.cols() || pub.rows() != h.rows() ||
      pub.cols() != params.k_sig) {
    return false;
  }
  uint32_t weight = 0;
  for (uint8_t bit : msg) {
    if (bit > 1) return false;
    weight += bit;
  }
  if (weight > params.w_sig) return false;
  const int64_t bound = static_cast<int64_t>(params.w_sig) * params.b_sig;
  for (int64_t v : sig) {
    if (v > bound || v < -bound) return false;
  }
  std::vector<uint64_t> rhs(pub.rows(), 0);
  for (size_t j = 0; j < msg.size(); ++j) {
    if (!msg[j]) continue;
    for (size_t r = 0; r < pub.rows(); ++r) rhs[r] = AddMod(rhs[r], pub.at(r, j), pub.q());
  }
  return h.MulSigned(sig) == rhs;
}

}  // namespace lpkeet
