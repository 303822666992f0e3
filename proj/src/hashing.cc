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

#include "lpkeet/hashing.h"

#include <numeric>

#include "absl/strings/str_cat.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

void AbsorbHeader(Shake256& xof, HashTag tag, uint64_t digest) {
  uint8_t header[9];
  header[0] = static_cast<uint8_t>(tag);
  for (int i = 0; i < 8; ++i) header[1 + i] = static_cast<uint8_t>(digest >> (8 * i));
  xof.Absorb(header);
}

std::vector<uint8_t> StreamBits(Rng& stream, size_t nbits) {
  std::vector<uint8_t> bytes((nbits + 7) / 8);
  stream.Fill(bytes);
  return UnpackBits(bytes, nbits);
}

}  // namespace

Rng HashStream(HashTag tag, uint64_t params_digest,
               std::span<const uint8_t> payload) {
  Shake256 xof;
  AbsorbHeader(xof, tag, params_digest);
  xof.Absorb(payload);
  return Rng(std::move(xof));
}

std::vector<uint8_t> PackBits(std::span<const uint8_t> bits) {
  std::vector<uint8_t> out((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i) {
    out[i / 8] |= static_cast<uint8_t>((bits[i] & 1) << (i % 8));
  }
  return out;
}

std::vector<uint8_t> UnpackBits(std::span<const uint8_t> bytes, size_t nbits) {
  std::vector<uint8_t> bits(nbits);
  for (size_t i = 0; i < nbits; ++i) bits[i] = (bytes[i / 8] >> (i % 8)) & 1;
  return bits;
}

RingElement HashMessageRing(const RingPtr& ctx, std::span<const uint8_t> input) {
  Rng stream = HashStream(HashTag::kH, ctx->params_id(), input);
  const std::vector<uint8_t> bits = StreamBits(stream, ctx->n());
  RingElement r(ctx);
  for (uint32_t i = 0; i < ctx->n(); ++i) r.mutable_coeff(i) = bits[i];
  return r;
}

std::vector<uint8_t> HashMessageInt(uint64_t params_digest,
                                    std::span<const uint8_t> msg_bits,
                                    uint32_t t_msg) {
  std::vector<uint8_t> payload(kIntMessagePadBytes, 0);
  const std::vector<uint8_t> packed = PackBits(msg_bits);
  payload.insert(payload.end(), packed.begin(), packed.end());
  Rng stream = HashStream(HashTag::kH, params_digest, payload);
  return StreamBits(stream, t_msg);
}

absl::StatusOr<RingElement> HashToInvertible(const RingPtr& ctx,
                                             std::span<const uint8_t> input,
                                             int* tries) {
  for (uint32_t counter = 0; counter < kHashToInvertibleMaxTries; ++counter) {
    Shake256 xof;
    AbsorbHeader(xof, HashTag::kH1, ctx->params_id());
    uint8_t ctr[4];
    for (int i = 0; i < 4; ++i) ctr[i] = static_cast<uint8_t>(counter >> (8 * i));
    xof.Absorb(ctr);
    xof.Absorb(input);
    Rng stream(std::move(xof));
    RingElement candidate = SampleUniform(ctx, stream);
    if (IsInvertible(candidate)) {
      if (tries != nullptr) *tries = static_cast<int>(counter) + 1;
      return candidate;
    }
  }
  return MakeError(ErrorKind::kInternal, "hash_to_invertible exceeded its retry cap");
}

absl::StatusOr<RingElement> HashToSparse(const RingPtr& ctx,
                                         std::span<const uint8_t> input,
                                         uint32_t delta) {
  const uint32_t n = ctx->n();
  if (delta > n) {
    return MakeError(ErrorKind::kInvalidParams,
                     absl::StrCat("sparse weight ", delta, " exceeds degree ", n));
  }
  Rng stream = HashStream(HashTag::kH2, ctx->params_id(), input);
  std::vector<uint32_t> pos(n);
  std::iota(pos.begin(), pos.end(), 0u);
  RingElement r(ctx);
  for (uint32_t i = 0; i < delta; ++i) {
    const uint32_t j = i + static_cast<uint32_t>(stream.UniformBelow(n - i));
    std::swap(pos[i], pos[j]);
    r.mutable_coeff(pos[i]) = stream.Bit() ? 1 : ctx->q() - 1;
  }
  return r;
}

std::vector<int8_t> HashPmOne(uint64_t params_digest,
                              std::span<const uint8_t> input, uint32_t l) {
  Rng stream = HashStream(HashTag::kHb, params_digest, input);
  const std::vector<uint8_t> bits = StreamBits(stream, l);
  std::vector<int8_t> out(l);
  for (uint32_t i = 0; i < l; ++i) out[i] = bits[i] ? 1 : -1;
  return out;
}

absl::StatusOr<std::vector<uint8_t>> HashWeighted(
    uint64_t params_digest, std::span<const uint8_t> input, uint32_t k_sig,
    uint32_t w_sig) {
  if (w_sig > k_sig) {
    return MakeError(ErrorKind::kInvalidParams,
                     absl::StrCat("weight ", w_sig, " exceeds length ", k_sig));
  }
  Rng stream = HashStream(HashTag::kHd, params_digest, input);
  std::vector<uint8_t> out(k_sig, 0);
  uint32_t chosen = 0;
  for (uint32_t i = 0; i < k_sig && chosen < w_sig; ++i) {
    // Select i with probability (still needed) / (still available).
    if (stream.UniformBelow(k_sig - i) < w_sig - chosen) {
      out[i] = 1;
      ++chosen;
    }
  }
  return out;
}

}  // namespace lpkeet
