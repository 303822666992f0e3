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

#include <gtest/gtest.h>

#include "lpkeet/hashing.h"
#include "lpkeet/modarith.h"
#include "lpkeet/status.h"
#include "lpkeet/trapdoor_ring.h"

namespace lpkeet {
namespace {

Rng TestRng(uint8_t b) {
  Rng::Seed s{};
  s.fill(b);
  return Rng(s);
}

struct RingSetup {
  ParamsRing params;
  RingPtr ctx;
  std::vector<RingElement> h;
};

RingSetup MakeRing(uint32_t n, Rng& rng) {
  RingSetup s{*DeriveRingParams(128, n, Profile::kToy), nullptr, {}};
  s.ctx = *RingContext::Create(s.params.n, s.params.q, ParamsDigest(s.params));
  for (uint32_t i = 0; i < s.params.base_len; ++i) s.h.push_back(SampleUniform(s.ctx, rng));
  return s;
}

std::vector<uint8_t> Bytes(int i) { return {static_cast<uint8_t>(i), static_cast<uint8_t>(i >> 8)}; }

TEST(OtsRingTest, KeyBoundsAndPublicKey) {
  Rng rng = TestRng(1);
  RingSetup s = MakeRing(16, rng);
  const uint64_t b = s.params.b_ots;
  for (int trial = 0; trial < 1000; ++trial) {
    const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
    for (const RingElement& e : keys.secret.k[0]) ASSERT_LE(e.InfNorm(), b);
    for (const RingElement& e : keys.secret.k[1]) ASSERT_LE(e.InfNorm(), s.params.delta_w * b);
    ASSERT_EQ(keys.pub.v[0], s.h[0] * keys.secret.k[0][0] + s.h[1] * keys.secret.k[0][1]);
    ASSERT_EQ(keys.pub.v[1], s.h[0] * keys.secret.k[1][0] + s.h[1] * keys.secret.k[1][1]);
    ASSERT_FALSE(keys.pub.v[0].IsZero() && keys.pub.v[1].IsZero());
  }
}

TEST(OtsRingTest, ZeroMessageSelectsSecondColumn) {
  Rng rng = TestRng(2);
  RingSetup s = MakeRing(16, rng);
  const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
  auto sig = OtsRingSign(keys.secret, RingElement(s.ctx), s.params);
  ASSERT_TRUE(sig.ok());
  EXPECT_EQ(*sig, keys.secret.k[1]);
  EXPECT_TRUE(OtsRingVerify(s.h, keys.pub, RingElement(s.ctx), *sig, s.params));
}

TEST(OtsRingTest, CompletenessOnHashedMessages) {
  Rng rng = TestRng(3);
  RingSetup s = MakeRing(256, rng);
  for (int trial = 0; trial < 1000; ++trial) {
    const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
    const RingElement msg = *HashToSparse(s.ctx, Bytes(trial), s.params.delta_w);
    auto sig = OtsRingSign(keys.secret, msg, s.params);
    ASSERT_TRUE(sig.ok());
    for (const RingElement& e : *sig) ASSERT_LE(e.InfNorm(), 2 * s.params.delta_w * s.params.b_ots);
    ASSERT_TRUE(OtsRingVerify(s.h, keys.pub, msg, *sig, s.params)) << "trial " << trial;
  }
}

// Every ternary message of weight <= 2 at n = 4 against random keys.
TEST(OtsRingTest, ExhaustiveNormBoundAtDegreeFour) {
  ParamsRing p = *DeriveRingParams(128, 16, Profile::kToy);
  p.n = 4;
  p.q = 97;
  p.delta_w = 2;
  p.b_ots = 1;
  RingPtr ctx = *RingContext::Create(4, 97);
  Rng rng = TestRng(4);
  const std::vector<RingElement> h = {SampleUniform(ctx, rng), SampleUniform(ctx, rng)};
  int messages = 0;
  for (int code = 0; code < 81; ++code) {
    std::vector<int64_t> coeffs(4);
    int weight = 0;
    for (int i = 0, c = code; i < 4; ++i, c /= 3) {
      coeffs[i] = c % 3 - 1;
      weight += coeffs[i] != 0;
    }
    const RingElement msg = RingElement::FromSigned(ctx, coeffs);
    if (weight > 2) {
      EXPECT_TRUE(HasErrorKind(OtsRingSign(OtsRingKeyGen(h, p, rng).secret, msg, p).status(),
                               ErrorKind::kInvalidMessage));
      continue;
    }
    ++messages;
    for (int trial = 0; trial < 50; ++trial) {
      const OtsRingKeys keys = OtsRingKeyGen(h, p, rng);
      auto sig = *OtsRingSign(keys.secret, msg, p);
      for (const RingElement& e : sig) ASSERT_LE(e.InfNorm(), 4u);
      ASSERT_TRUE(OtsRingVerify(h, keys.pub, msg, sig, p));
    }
  }
  EXPECT_EQ(messages, 33);
}

TEST(OtsRingTest, TamperedSignaturesReject) {
  Rng rng = TestRng(5);
  RingSetup s = MakeRing(64, rng);
  for (int trial = 0; trial < 100; ++trial) {
    const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
    const RingElement msg = *HashToSparse(s.ctx, Bytes(trial), s.params.delta_w);
    std::vector<RingElement> sig = *OtsRingSign(keys.secret, msg, s.params);
    const size_t slot = rng.UniformBelow(sig.size());
    const size_t coeff = rng.UniformBelow(s.params.n);
    sig[slot].mutable_coeff(coeff) = AddMod(sig[slot][coeff], 1, s.params.q);
    ASSERT_FALSE(OtsRingVerify(s.h, keys.pub, msg, sig, s.params));
  }
  const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
  const std::vector<RingElement> zero(2, RingElement(s.ctx));
  EXPECT_FALSE(OtsRingVerify(s.h, keys.pub, RingElement(s.ctx), zero, s.params));
}

// s + (h2, -h1) still satisfies the identity but is long.
TEST(OtsRingTest, NormViolationRejectsDespiteIdentity) {
  Rng rng = TestRng(6);
  RingSetup s = MakeRing(16, rng);
  const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
  const RingElement msg = *HashToSparse(s.ctx, Bytes(1), s.params.delta_w);
  std::vector<RingElement> sig = *OtsRingSign(keys.secret, msg, s.params);
  sig[0] += s.h[1];
  sig[1] -= s.h[0];
  EXPECT_EQ(InnerProduct(s.h, sig), keys.pub.v[0] * msg + keys.pub.v[1]);
  EXPECT_FALSE(OtsRingVerify(s.h, keys.pub, msg, sig, s.params));
}

TEST(OtsRingTest, MessageOutsideSpace) {
  Rng rng = TestRng(7);
  RingSetup s = MakeRing(16, rng);
  const OtsRingKeys keys = OtsRingKeyGen(s.h, s.params, rng);
  EXPECT_TRUE(HasErrorKind(OtsRingSign(keys.secret, RingElement::Constant(s.ctx, 2), s.params).status(),
                           ErrorKind::kInvalidMessage));
  std::vector<int64_t> dense(s.params.n, 1);
  EXPECT_TRUE(HasErrorKind(
      OtsRingSign(keys.secret, RingElement::FromSigned(s.ctx, dense), s.params).status(),
      ErrorKind::kInvalidMessage));
}

struct SisSetup {
  ParamsInt params;
  IntMatrix h;
};

SisSetup MakeSis(Rng& rng) {
  SisSetup s{*DeriveIntParams(128, 16, Profile::kToy), {}};
  s.h = IntMatrix::Uniform(s.params.n, s.params.m, s.params.q, rng);
  return s;
}

TEST(OtsSisTest, CompletenessAndKeyShape) {
  Rng rng = TestRng(8);
  SisSetup s = MakeSis(rng);
  for (int trial = 0; trial < 1000; ++trial) {
    const OtsSisKeys keys = OtsSisKeyGen(s.h, s.params, rng);
    ASSERT_EQ(keys.k.size(), size_t{s.params.m} * s.params.k_sig);
    for (int8_t v : keys.k) ASSERT_LE(std::abs(v), 1);
    const auto msg = *HashWeighted(0, Bytes(trial), s.params.k_sig, s.params.w_sig);
    auto sig = OtsSisSign(keys, msg, s.params);
    ASSERT_TRUE(sig.ok());
    ASSERT_TRUE(OtsSisVerify(s.h, keys.pub, msg, *sig, s.params)) << "trial " << trial;
  }
}

TEST(OtsSisTest, SwappedMessageRejects) {
  Rng rng = TestRng(9);
  SisSetup s = MakeSis(rng);
  int rejected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const OtsSisKeys keys = OtsSisKeyGen(s.h, s.params, rng);
    auto msg = *HashWeighted(0, Bytes(trial), s.params.k_sig, s.params.w_sig);
    const auto sig = *OtsSisSign(keys, msg, s.params);
    size_t one = 0, zero = 0;
    while (!msg[one]) ++one;
    while (msg[zero]) ++zero;
    std::swap(msg[one], msg[zero]);
    rejected += !OtsSisVerify(s.h, keys.pub, msg, sig, s.params);
  }
  EXPECT_EQ(rejected, 1000);
}

TEST(OtsSisTest, WrongWeightAndNormViolation) {
  Rng rng = TestRng(10);
  SisSetup s = MakeSis(rng);
  const OtsSisKeys keys = OtsSisKeyGen(s.h, s.params, rng);
  std::vector<uint8_t> zero(s.params.k_sig, 0);
  EXPECT_TRUE(HasErrorKind(OtsSisSign(keys, zero, s.params).status(), ErrorKind::kInvalidMessage));
  const auto msg = *HashWeighted(0, Bytes(1), s.params.k_sig, s.params.w_sig);
  std::vector<int64_t> sig = *OtsSisSign(keys, msg, s.params);
  sig[0] += static_cast<int64_t>(s.params.q);  // same residue, too long
  EXPECT_FALSE(OtsSisVerify(s.h, keys.pub, msg, sig, s.params));
  sig[0] -= static_cast<int64_t>(s.params.q);
  EXPECT_TRUE(OtsSisVerify(s.h, keys.pub, msg, sig, s.params));
  sig[3] += 1;
  EXPECT_FALSE(OtsSisVerify(s.h, keys.pub, msg, sig, s.params));
}

}  // namespace
}  // namespace lpkeet
