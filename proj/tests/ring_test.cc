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

#include "lpkeet/ring.h"

#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "lpkeet/modarith.h"
#include "lpkeet/status.h"

namespace lpkeet {
namespace {

constexpr uint64_t kQ256 = 155974524236801ULL;

Rng::Seed SeedOf(uint8_t b) {
  Rng::Seed s{};
  s[0] = b;
  return s;
}

RingPtr Ctx(uint32_t n, uint64_t q) { return *RingContext::Create(n, q); }

TEST(RingTest, ContextRejectsBadInputs) {
  EXPECT_TRUE(HasErrorKind(RingContext::Create(6, 97).status(), ErrorKind::kInvalidDegree));
  EXPECT_TRUE(HasErrorKind(RingContext::Create(4, 91).status(), ErrorKind::kInvalidParams));
  EXPECT_TRUE(HasErrorKind(RingContext::Create(64, 97).status(), ErrorKind::kInvalidParams));
}

TEST(RingTest, ConstantOneTransformsToAllOnes) {
  auto ctx = Ctx(256, kQ256);
  auto f = NttForward(RingElement::Constant(ctx, 1));
  ASSERT_TRUE(f.ok());
  for (uint64_t e : f->evals()) EXPECT_EQ(e, 1u);
}

TEST(RingTest, MissingTablesNotInitialized) {
  EXPECT_TRUE(HasErrorKind(NttForward(RingElement()).status(), ErrorKind::kNotInitialized));
  EXPECT_TRUE(HasErrorKind(NttInverse(NttForm()).status(), ErrorKind::kNotInitialized));
}

TEST(RingTest, RoundTrip) {
  auto ctx = Ctx(256, kQ256);
  Rng rng(SeedOf(1));
  for (int i = 0; i < 1000; ++i) {
    const RingElement x = SampleUniform(ctx, rng);
    ASSERT_EQ(*NttInverse(*NttForward(x)), x);
  }
}

TEST(RingTest, NttMatchesSchoolbook) {
  for (auto [n, q] : {std::pair<uint32_t, uint64_t>{4, 97}, {256, kQ256}}) {
    auto ctx = Ctx(n, q);
    Rng rng(SeedOf(2));
    for (int i = 0; i < 1000; ++i) {
      const RingElement a = SampleUniform(ctx, rng);
      const RingElement b = SampleUniform(ctx, rng);
      ASSERT_EQ(a * b, MulSchoolbook(a, b)) << "n=" << n;
    }
  }
}

TEST(RingTest, SmallProducts) {
  auto ctx = Ctx(4, 97);
  const RingElement a(ctx, {1, 1, 0, 0});
  const RingElement b(ctx, {96, 1, 0, 0});
  EXPECT_EQ((a * b).coeffs(), (std::vector<uint64_t>{96, 0, 1, 0}));
  const RingElement x2 = RingElement::Monomial(ctx, 2);
  EXPECT_EQ((x2 * x2).coeffs(), (std::vector<uint64_t>{96, 0, 0, 0}));
}

TEST(RingTest, RingAxioms) {
  auto ctx = Ctx(256, kQ256);
  Rng rng(SeedOf(3));
  for (int i = 0; i < 50; ++i) {
    const RingElement a = SampleUniform(ctx, rng);
    const RingElement b = SampleUniform(ctx, rng);
    const RingElement c = SampleUniform(ctx, rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a - a, RingElement(ctx));
  }
}

TEST(RingTest, MismatchedRings) {
  auto c1 = Ctx(4, 97);
  auto c2 = Ctx(4, 113);
  const RingElement a = RingElement::Constant(c1, 3);
  const RingElement b = RingElement::Constant(c2, 3);
  EXPECT_TRUE(HasErrorKind(Add(a, b).status(), ErrorKind::kParamsMismatch));
  EXPECT_TRUE(HasErrorKind(Mul(a, b).status(), ErrorKind::kParamsMismatch));
  EXPECT_TRUE(Sub(a, a).ok());
}

TEST(RingTest, ConjugateIsXInverseSubstitution) {
  auto ctx = Ctx(256, kQ256);
  Rng rng(SeedOf(9));
  const RingElement a = SampleUniform(ctx, rng);
  const RingElement x = RingElement::Monomial(ctx, 1);
  // conj(x) = x^{-1} = -x^{n-1}
  EXPECT_EQ(x.Conjugate() * x, RingElement::Constant(ctx, 1));
  EXPECT_EQ((a * x).Conjugate(), a.Conjugate() * x.Conjugate());
}

TEST(InvertTest, ZeroAndX) {
  auto ctx = Ctx(256, kQ256);
  EXPECT_FALSE(IsInvertible(RingElement(ctx)));
  EXPECT_TRUE(HasErrorKind(Invert(RingElement(ctx)).status(), ErrorKind::kNotInvertible));
  const RingElement x = RingElement::Monomial(ctx, 1);
  ASSERT_TRUE(IsInvertible(x));
  EXPECT_EQ(*Invert(x), -RingElement::Monomial(ctx, 255));
}

uint64_t EvalAt(const RingElement& a, uint64_t r, uint64_t q) {
  uint64_t acc = 0;
  for (int i = static_cast<int>(a.n()) - 1; i >= 0; --i) {
    acc = AddMod(MulMod(acc, r, q), a[i], q);
  }
  return acc;
}

// Resultant of a and x^4 + 1 over Z_97 via Sylvester determinant.
uint64_t ResultantWithX4Plus1(const RingElement& a) {
  constexpr uint64_t q = 97;
  // deg f = 4 (f = x^4+1), deg a <= 3; use 7x7 matrix with a padded to
  // degree 3 (leading zeros change the resultant by a unit only when the
  // leading coefficient vanishes, and zero-ness is all we need).
  const int da = 3, df = 4, size = da + df;
  std::vector<std::vector<int64_t>> m(size, std::vector<int64_t>(size, 0));
  const int64_t f[5] = {1, 0, 0, 0, 1};  // descending: x^4 + 1
  for (int r = 0; r < da; ++r) {
    for (int j = 0; j <= df; ++j) m[r][r + j] = f[j];
  }
  for (int r = 0; r < df; ++r) {
    for (int j = 0; j <= da; ++j) m[da + r][r + j] = static_cast<int64_t>(a[da - j]);
  }
  uint64_t det = 1;
  for (int c = 0; c < size; ++c) {
    int piv = -1;
    for (int r = c; r < size; ++r) {
      if (m[r][c] % 97 != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    std::swap(m[piv], m[c]);
    const uint64_t pv = ReduceSigned(m[c][c], q);
    det = MulMod(det, pv, q);
    const uint64_t inv = InvModPrime(pv, q);
    for (int r = c + 1; r < size; ++r) {
      const uint64_t factor = MulMod(ReduceSigned(m[r][c], q), inv, q);
      for (int j = c; j < size; ++j) {
        m[r][j] = static_cast<int64_t>(
            SubMod(ReduceSigned(m[r][j], q), MulMod(factor, ReduceSigned(m[c][j], q), q), q));
      }
    }
  }
  return det;
}

TEST(InvertTest, MatchesSlotOracleAtN4) {
  constexpr uint64_t q = 97;
  auto ctx = Ctx(4, q);
  std::vector<uint64_t> roots;  // roots of x^4 + 1 mod 97 by brute force
  for (uint64_t r = 1; r < q; ++r) {
    if (PowMod(r, 4, q) == q - 1) roots.push_back(r);
  }
  ASSERT_EQ(roots.size(), 4u);
  Rng rng(SeedOf(4));
  int invertible = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    RingElement a(ctx);
    for (uint32_t i = 0; i < 4; ++i) a.mutable_coeff(i) = rng.UniformBelow(6);
    bool oracle = true;
    for (uint64_t r : roots) oracle &= EvalAt(a, r, q) != 0;
    ASSERT_EQ(IsInvertible(a), oracle);
    ASSERT_EQ(IsInvertible(a), ResultantWithX4Plus1(a) != 0);
    if (!oracle) continue;
    ++invertible;
    const RingElement inv = *Invert(a);
    for (uint64_t r : roots) {
      const uint64_t ev = EvalAt(a, r, q);
      uint64_t slot_inv = 0;
      for (uint64_t c = 1; c < q; ++c) {
        if (MulMod(c, ev, q) == 1) slot_inv = c;
      }
      ASSERT_EQ(EvalAt(inv, r, q), slot_inv);
    }
    ASSERT_EQ(a * inv, RingElement::Constant(ctx, 1));
  }
  EXPECT_GT(invertible, 1000);
  EXPECT_LT(invertible, 2000);
}

TEST(DecodeTest, Bracket) {
  auto ctx = Ctx(4, 97);
  const RingElement w(ctx, {24, 25, 48, 96});
  EXPECT_EQ(DecodeBits(w), (std::vector<uint8_t>{0, 1, 1, 0}));
  const RingElement edge(ctx, {0, 71, 72, 73});
  EXPECT_EQ(DecodeBits(edge), (std::vector<uint8_t>{0, 1, 0, 0}));
}

TEST(DecodeTest, ExhaustiveN4) {
  auto ctx = Ctx(4, 97);
  for (int msg = 0; msg < 16; ++msg) {
    std::vector<uint8_t> bits(4);
    for (int i = 0; i < 4; ++i) bits[i] = (msg >> i) & 1;
    auto m = EncodeMessage(ctx, bits);
    ASSERT_TRUE(m.ok());
    EXPECT_EQ(DecodeBits(ScaleHalfQ(*m)), bits);
  }
  EXPECT_TRUE(EncodeMessage(ctx, std::vector<uint8_t>(4, 0))->IsZero());
  EXPECT_TRUE(HasErrorKind(EncodeMessage(ctx, std::vector<uint8_t>(3, 0)).status(),
                           ErrorKind::kInvalidMessage));
  EXPECT_TRUE(HasErrorKind(EncodeMessage(ctx, std::vector<uint8_t>{0, 2, 0, 0}).status(),
                           ErrorKind::kInvalidMessage));
}

TEST(UniformTest, ChiSquarePerCoefficient) {
  constexpr uint64_t q = 97;
  auto ctx = Ctx(4, q);
  Rng rng(SeedOf(5));
  constexpr int kDraws = 100000;
  std::vector<std::vector<int>> counts(4, std::vector<int>(q, 0));
  for (int i = 0; i < kDraws; ++i) {
    const RingElement x = SampleUniform(ctx, rng);
    for (int j = 0; j < 4; ++j) ++counts[j][x[j]];
  }
  boost::math::chi_squared dist(q - 1);
  for (int j = 0; j < 4; ++j) {
    double chi = 0;
    const double expected = static_cast<double>(kDraws) / q;
    for (int c : counts[j]) chi += (c - expected) * (c - expected) / expected;
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi)), 0.001) << j;
  }
}

TEST(BytesTest, RoundTrip) {
  auto ctx = Ctx(256, kQ256);
  Rng rng(SeedOf(6));
  const RingElement x = SampleUniform(ctx, rng);
  std::vector<uint8_t> bytes;
  AppendBytes(x, bytes);
  ASSERT_EQ(bytes.size(), 256u * 8);
  EXPECT_EQ(*ElementFromBytes(ctx, bytes), x);
  bytes[7] = 0xff;  // coefficient 0 now >= q
  EXPECT_TRUE(HasErrorKind(ElementFromBytes(ctx, bytes).status(), ErrorKind::kMalformed));
  bytes.pop_back();
  EXPECT_FALSE(ElementFromBytes(ctx, bytes).ok());
}

}  // namespace
}  // namespace lpkeet
