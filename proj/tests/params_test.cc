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

#include "lpkeet/params.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "lpkeet/status.h"

namespace lpkeet {
namespace {

bool Names(const std::vector<std::string>& v, const std::string& name) {
  return std::find(v.begin(), v.end(), name) != v.end();
}

TEST(RingParamsTest, ToyN256Shape) {
  auto p = DeriveRingParams(80, 256, Profile::kToy);
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_EQ(p->base_len, 2u);
  EXPECT_EQ(p->m, p->k + 2);
}

// Frozen values from tests/oracles/ring_params_oracle.py (mpmath, 60 digits).
struct RingVector {
  uint32_t n;
  uint64_t q;
  uint32_t k;
  double zeta;
};

TEST(RingParamsTest, FrozenToyModuli) {
  const RingVector vectors[] = {
      {16, 422497919329ULL, 39, 650},      {32, 1837393684289ULL, 41, 942},
      {64, 8047838603137ULL, 43, 1372},    {256, 155974524236801ULL, 48, 2911},
      {512, 670606342377473ULL, 50, 4210}, {1024, 2903895549171713ULL, 52, 6115},
  };
  for (const auto& v : vectors) {
    auto p = DeriveRingParams(80, v.n, Profile::kToy);
    ASSERT_TRUE(p.ok()) << p.status();
    EXPECT_EQ(p->q, v.q) << "n=" << v.n;
    EXPECT_EQ(p->k, v.k) << "n=" << v.n;
    EXPECT_EQ(p->zeta, v.zeta) << "n=" << v.n;
    EXPECT_TRUE(Validate(*p).empty()) << "n=" << v.n;
  }
}

TEST(RingParamsTest, StrictN256) {
  auto p = DeriveRingParams(80, 256, Profile::kStrict);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->q, 155974524236801ULL);
  EXPECT_GT(p->b_ots, 1u);
  EXPECT_TRUE(Validate(*p).empty());
}

TEST(RingParamsTest, RejectsBadDegree) {
  EXPECT_TRUE(HasErrorKind(DeriveRingParams(80, 100, Profile::kToy).status(),
                           ErrorKind::kInvalidDegree));
  EXPECT_TRUE(HasErrorKind(DeriveRingParams(80, 8, Profile::kToy).status(),
                           ErrorKind::kInvalidDegree));
}

TEST(RingParamsTest, ValidateNamesViolations) {
  const ParamsRing p = *DeriveRingParams(80, 256, Profile::kToy);
  ParamsRing even = p;
  even.q += 1;
  EXPECT_TRUE(Names(Validate(even), "q_prime"));

  ParamsRing half = p;
  half.zeta = p.zeta / 2;
  const auto bad = Validate(half);
  EXPECT_TRUE(Names(bad, "zeta_lower_bound"));
  // Independent recomputation of the bound the validator uses.
  const double c = 1.0 / std::sqrt(2.0 * M_PI);
  const double bound = std::sqrt(5.0) * c * p.sigma_trap * p.sigma_trap *
                       (std::sqrt(double(p.k) * p.n) + std::sqrt(2.0 * p.n) + p.t_prime);
  EXPECT_LT(half.zeta, bound);
  EXPECT_GT(p.zeta, bound);

  ParamsRing small_q = p;
  small_q.q = 12289;  // prime, 1 mod 512, far below the correctness bound
  EXPECT_TRUE(Names(Validate(small_q), "correctness_inequality"));
}

TEST(RingParamsTest, DerivationIsDeterministic) {
  for (uint32_t n : {16u, 64u, 256u}) {
    for (Profile prof : {Profile::kToy, Profile::kStrict}) {
      auto a = DeriveRingParams(80, n, prof);
      auto b = DeriveRingParams(80, n, prof);
      ASSERT_TRUE(a.ok() && b.ok());
      EXPECT_EQ(CanonicalText(*a), CanonicalText(*b));
      EXPECT_EQ(ParamsDigest(*a), ParamsDigest(*b));
      EXPECT_TRUE(Validate(*a).empty()) << n;
    }
  }
}

TEST(RingParamsTest, CanonicalTextRoundTrip) {
  const ParamsRing p = *DeriveRingParams(80, 256, Profile::kToy);
  const std::string text = CanonicalText(p);
  auto back = ParseRingParams(text);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, p);
  EXPECT_TRUE(HasErrorKind(ParseRingParams(text + "extra=1\n").status(),
                           ErrorKind::kMalformed));
  EXPECT_FALSE(ParseIntParams(text).ok());
}

TEST(IntParamsTest, FrozenToyN32) {
  // Frozen from tests/oracles/int_params_oracle.py.
  auto p = DeriveIntParams(80, 32, Profile::kToy);
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_EQ(p->m, 1984u);
  EXPECT_EQ(p->q, 784095883ULL);
  EXPECT_EQ(p->k, 30u);
  EXPECT_EQ(p->m_multiplier, 2u);
  EXPECT_TRUE(Validate(*p).empty());
}

TEST(IntParamsTest, FrozenToyN16) {
  auto p = DeriveIntParams(80, 16, Profile::kToy);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->m, 896u);
  EXPECT_EQ(p->q, 96123623ULL);
}

TEST(IntParamsTest, StrictN32MeetsTrapGenWidth) {
  auto p = DeriveIntParams(80, 32, Profile::kStrict);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->m, 6720u);
  EXPECT_EQ(p->q, 16555342907ULL);
  EXPECT_GE(p->m, 6u * 32u * p->k);
  EXPECT_TRUE(Validate(*p).empty());
}

TEST(IntParamsTest, DegenerateDimension) {
  EXPECT_FALSE(DeriveIntParams(80, 0, Profile::kStrict).ok());
}

TEST(IntParamsTest, ValidateCatchesSmallSigma) {
  ParamsInt p = *DeriveIntParams(80, 32, Profile::kToy);
  p.sigma = 10;
  EXPECT_TRUE(Names(Validate(p), "sigma_lower_bound"));
}

TEST(IntParamsTest, CanonicalTextRoundTrip) {
  const ParamsInt p = *DeriveIntParams(80, 32, Profile::kToy);
  auto back = ParseIntParams(CanonicalText(p));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, p);
  EXPECT_NE(ParamsDigest(p), ParamsDigest(*DeriveIntParams(80, 32, Profile::kStrict)));
}

}  // namespace
}  // namespace lpkeet
