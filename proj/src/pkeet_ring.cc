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

#include "lpkeet/pkeet_ring.h"

#include "absl/strings/str_join.h"
#include "lpkeet/hashing.h"
#include "lpkeet/sampling.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

std::span<const RingElement> Base(const std::vector<RingElement>& a, uint32_t base_len) {
  return std::span<const RingElement>(a).first(base_len);
}

}  // namespace

absl::StatusOr<RingPkeet> RingPkeet::Create(const ParamsRing& params) {
  const std::vector<std::string> violations = Validate(params);
  if (!violations.empty()) {
    return MakeError(ErrorKind::kInvalidParams,
                     "ring parameters violate: " + absl::StrJoin(violations, ", "));
  }
  LPKEET_ASSIGN_OR_RETURN(RingPtr ctx,
                          RingContext::Create(params.n, params.q, ParamsDigest(params)));
  return RingPkeet(params, std::move(ctx));
}

absl::StatusOr<std::pair<PkRing, SkRing>> RingPkeet::Setup(Rng& rng) const {
  const RingElement zero(ctx_);
  LPKEET_ASSIGN_OR_RETURN(RingTrapGenResult ga, TrapGen(params_, ctx_, zero, rng));
  LPKEET_ASSIGN_OR_RETURN(RingTrapGenResult gb, TrapGen(params_, ctx_, zero, rng));
  PkRing pk{std::move(ga.a), std::move(gb.a), SampleUniform(ctx_, rng)};
  SkRing sk{std::move(ga.trapdoor), std::move(gb.trapdoor), std::move(ga.sampler),
            std::move(gb.sampler)};
  return std::make_pair(std::move(pk), std::move(sk));
}

RingElement RingPkeet::MessageHash(const RingElement& msg) const {
  std::vector<uint8_t> bits(msg.coeffs().begin(), msg.coeffs().end());
  return HashMessageRing(ctx_, PackBits(bits));
}

std::vector<uint8_t> RingPkeet::SignedBody(const CtRing& ct) const {
  std::vector<uint8_t> out;
  AppendBytes(ct.ct1, out);
  AppendBytes(ct.ct2, out);
  for (const RingElement& e : ct.ct3) AppendBytes(e, out);
  for (const RingElement& e : ct.ct4) AppendBytes(e, out);
  return out;
}

absl::StatusOr<RingElement> RingPkeet::Tag(const OtsRingPublic& v) const {
  std::vector<uint8_t> bytes;
  AppendBytes(v.v[0], bytes);
  AppendBytes(v.v[1], bytes);
  return HashToInvertible(ctx_, bytes, nullptr);
}

absl::StatusOr<CtRing> RingPkeet::Encrypt(const PkRing& pk, const RingElement& msg,
                                          Rng& rng) const {
  if (!msg.initialized() || !msg.context()->SameRing(*ctx_) || !IsBinary(msg)) {
    return MakeError(ErrorKind::kInvalidMessage, "message must be a 0/1 polynomial of this ring");
  }
  const double tau = params_.tau;
  CtRing ct;
  const RingElement s1 = SampleUniform(ctx_, rng);
  const RingElement s2 = SampleUniform(ctx_, rng);
  ct.ct1 = pk.u * s1 + SampleRing(ctx_, tau, rng, params_.t_tail) + ScaleHalfQ(msg);
  ct.ct2 = pk.u * s2 + SampleRing(ctx_, tau, rng, params_.t_tail) + ScaleHalfQ(MessageHash(msg));

  const OtsRingKeys ots = OtsRingKeyGen(Base(pk.a, params_.base_len), params_, rng);
  ct.v = ots.pub;
  LPKEET_ASSIGN_OR_RETURN(const RingElement h, Tag(ct.v));
  const std::vector<RingElement> a_h = ApplyTagShift(pk.a, h);
  const std::vector<RingElement> b_h = ApplyTagShift(pk.b, h);

  const NttForm s1_ntt = ToNtt(s1);
  const NttForm s2_ntt = ToNtt(s2);
  for (uint32_t i = 0; i < params_.m; ++i) {
    const double width = i < params_.base_len ? tau : params_.gamma;
    NttForm p = ToNtt(a_h[i]);
    p *= s1_ntt;
    ct.ct3.push_back(FromNtt(p) + SampleRing(ctx_, width, rng, params_.t_tail));
  }
  for (uint32_t i = 0; i < params_.m; ++i) {
    const double width = i < params_.base_len ? tau : params_.gamma;
    NttForm p = ToNtt(b_h[i]);
    p *= s2_ntt;
    ct.ct4.push_back(FromNtt(p) + SampleRing(ctx_, width, rng, params_.t_tail));
  }

  LPKEET_ASSIGN_OR_RETURN(const RingElement digest,
                          HashToSparse(ctx_, SignedBody(ct), params_.delta_w));
  LPKEET_ASSIGN_OR_RETURN(ct.sig, OtsRingSign(ots.secret, digest, params_));
  return ct;
}

absl::Status RingPkeet::CheckShape(const CtRing& ct) const {
  auto ok = [&](const RingElement& e) {
    return e.initialized() && e.context()->SameRing(*ctx_);
  };
  bool good = ct.sig.size() == params_.base_len && ct.ct3.size() == params_.m &&
              ct.ct4.size() == params_.m && ok(ct.ct1) && ok(ct.ct2) && ok(ct.v.v[0]) &&
              ok(ct.v.v[1]);
  for (const auto* vec : {&ct.sig, &ct.ct3, &ct.ct4}) {
    for (const RingElement& e : *vec) good = good && ok(e);
  }
  if (!good) return MakeError(ErrorKind::kParamsMismatch, "ciphertext does not match parameters");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<uint8_t>> RingPkeet::RecoverHash(
    const std::vector<RingElement>& b, const RingElement& u,
    const RingPreimageSampler& sampler_b, const CtRing& ct, Rng& rng) const {
  LPKEET_ASSIGN_OR_RETURN(const RingElement h, Tag(ct.v));
  const std::vector<RingElement> b_h = ApplyTagShift(b, h);
  LPKEET_ASSIGN_OR_RETURN(const std::vector<RingElement> x, sampler_b.Sample(b_h, h, u, rng));
  return DecodeBits(ct.ct2 - InnerProduct(ct.ct4, x));
}

absl::StatusOr<RingElement> RingPkeet::Decrypt(const PkRing& pk, const SkRing& sk,
                                               const CtRing& ct, Rng& rng) const {
  LPKEET_RETURN_IF_ERROR(CheckShape(ct));
  if (sk.sampler_a == nullptr || sk.sampler_b == nullptr) {
    return MakeError(ErrorKind::kNotInitialized, "secret key samplers are not attached");
  }
  LPKEET_ASSIGN_OR_RETURN(const RingElement digest,
                          HashToSparse(ctx_, SignedBody(ct), params_.delta_w));
  if (!OtsRingVerify(Base(pk.a, params_.base_len), ct.v, digest, ct.sig, params_)) {
    return MakeError(ErrorKind::kRejectSignature, "one-time signature check failed");
  }
  LPKEET_ASSIGN_OR_RETURN(const RingElement h, Tag(ct.v));
  const std::vector<RingElement> a_h = ApplyTagShift(pk.a, h);
  LPKEET_ASSIGN_OR_RETURN(const std::vector<RingElement> x,
                          sk.sampler_a->Sample(a_h, h, pk.u, rng));
  const std::vector<uint8_t> bits = DecodeBits(ct.ct1 - InnerProduct(ct.ct3, x));
  LPKEET_ASSIGN_OR_RETURN(const RingElement msg, EncodeMessage(ctx_, bits));
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> hash_bits,
                          RecoverHash(pk.b, pk.u, *sk.sampler_b, ct, rng));
  const RingElement expected = MessageHash(msg);
  for (uint32_t i = 0; i < params_.n; ++i) {
    if (hash_bits[i] != expected[i]) {
      return MakeError(ErrorKind::kRejectHash, "recovered hash does not match the message");
    }
  }
  return msg;
}

TokenRing RingPkeet::Trapdoor(const PkRing& pk, const SkRing& sk) const {
  return TokenRing{sk.tb, pk.b, pk.u, sk.sampler_b};
}

absl::StatusOr<bool> RingPkeet::Test(const TokenRing& td_i, const CtRing& ct_i,
                                     const TokenRing& td_j, const CtRing& ct_j,
                                     Rng& rng) const {
  LPKEET_RETURN_IF_ERROR(CheckShape(ct_i));
  LPKEET_RETURN_IF_ERROR(CheckShape(ct_j));
  if (td_i.sampler_b == nullptr || td_j.sampler_b == nullptr) {
    return MakeError(ErrorKind::kNotInitialized, "token sampler is not attached");
  }
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> h_i,
                          RecoverHash(td_i.b, td_i.u, *td_i.sampler_b, ct_i, rng));
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> h_j,
                          RecoverHash(td_j.b, td_j.u, *td_j.sampler_b, ct_j, rng));
  return h_i == h_j;
}

absl::Status RingPkeet::AttachSamplers(SkRing& sk) const {
  LPKEET_ASSIGN_OR_RETURN(sk.sampler_a, RingPreimageSampler::Create(params_, sk.ta.t));
  LPKEET_ASSIGN_OR_RETURN(sk.sampler_b, RingPreimageSampler::Create(params_, sk.tb.t));
  return absl::OkStatus();
}

absl::Status RingPkeet::AttachSampler(TokenRing& td) const {
  LPKEET_ASSIGN_OR_RETURN(td.sampler_b, RingPreimageSampler::Create(params_, td.tb.t));
  return absl::OkStatus();
}

}  // namespace lpkeet
