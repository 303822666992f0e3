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

#include "lpkeet/matlattice.h"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "lpkeet/modarith.h"
#include "lpkeet/status.h"

namespace lpkeet {
namespace {

// Frozen from the measured spread at n = 16 and n = 32 (ratios 1.62 to 1.71).
constexpr double kGsConstant = 2.0;

Rng TestRng(uint8_t b) {
  Rng::Seed s{};
  s.fill(b);
  return Rng(s);
}

ParamsInt Toy(uint32_t n) { return *DeriveIntParams(128, n, Profile::kToy); }

bool InKernel(const IntMatrix& a, const IntTrapdoorBasis& basis) {
  std::vector<int64_t> col(basis.dim());
  for (size_t c = 0; c < basis.dim(); ++c) {
    for (size_t r = 0; r < basis.dim(); ++r) col[r] = basis.basis_at(r, c);
    for (uint64_t v : a.MulSigned(col)) {
      if (v != 0) return false;
    }
  }
  return true;
}

TEST(IntMatrixTest, ProductsAgreeWithNaive) {
  Rng rng = TestRng(1);
  const uint64_t q = (1ULL << 61) - 1;
  const IntMatrix a = IntMatrix::Uniform(5, 37, q, rng);
  std::vector<uint64_t> x(37), s(5);
  for (auto& v : x) v = rng.UniformBelow(q);
  for (auto& v : s) v = rng.UniformBelow(q);
  const std::vector<uint64_t> ax = a.Mul(x);
  const std::vector<uint64_t> ats = a.TransposeMul(s);
  for (size_t r = 0; r < 5; ++r) {
    uint64_t acc = 0;
    for (size_t c = 0; c < 37; ++c) acc = AddMod(acc, MulMod(a.at(r, c), x[c], q), q);
    EXPECT_EQ(ax[r], acc);
  }
  for (size_t c = 0; c < 37; ++c) {
    uint64_t acc = 0;
    for (size_t r = 0; r < 5; ++r) acc = AddMod(acc, MulMod(a.at(r, c), s[r], q), q);
    EXPECT_EQ(ats[c], acc);
  }
  std::vector<int64_t> signed_x(37);
  for (auto& v : signed_x) v = static_cast<int64_t>(rng.UniformBelow(2001)) - 1000;
  std::vector<uint64_t> reduced(37);
  for (size_t c = 0; c < 37; ++c) reduced[c] = ReduceSigned(signed_x[c], q);
  EXPECT_EQ(a.MulSigned(signed_x), a.Mul(reduced));
}

TEST(TrapGenIntTest, BasisIsInKernelAndFullRank) {
  const ParamsInt p = Toy(32);
  Rng rng = TestRng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto gen = TrapGenInt(p, rng);
    ASSERT_TRUE(gen.ok()) << gen.status();
    ASSERT_TRUE(InKernel(gen->a, *gen->basis)) << "trial " << trial;
    // |det S| = prod of Gram-Schmidt norms must equal q^n.
    double log_det = 0;
    for (double g : gen->basis->GsNorms()) log_det += std::log(g);
    EXPECT_NEAR(log_det / (p.n * std::log(static_cast<double>(p.q))), 1.0, 1e-9);
    EXPECT_LE(gen->basis->MaxGsNorm(),
              kGsConstant * std::sqrt(p.n * std::log2(static_cast<double>(p.q))));
  }
}

TEST(TrapGenIntTest, PublicMatrixLooksUniform) {
  const ParamsInt p = Toy(32);
  Rng rng = TestRng(3);
  auto gen = *TrapGenInt(p, rng);
  constexpr int kBins = 64;
  std::vector<double> counts(kBins, 0);
  for (uint64_t v : gen.a.data()) {
    ++counts[static_cast<size_t>(static_cast<uint128_t>(v) * kBins / p.q)];
  }
  const double expected = static_cast<double>(gen.a.data().size()) / kBins;
  double chi = 0;
  for (double c : counts) chi += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(kBins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi)), 0.001);
}

TEST(TrapGenIntTest, MismatchedTrapdoorIsRejected) {
  const ParamsInt p = Toy(16);
  Rng rng = TestRng(4);
  auto gen = *TrapGenInt(p, rng);
  IntTrapdoor bad = gen.trapdoor;
  bad.r[7] = bad.r[7] == 0 ? 1 : 0;
  EXPECT_TRUE(HasErrorKind(IntTrapdoorBasis::FromGadget(gen.a, bad, p.k).status(),
                           ErrorKind::kRankError));
  bad.r[7] = 5;
  EXPECT_FALSE(IntTrapdoorBasis::FromGadget(gen.a, bad, p.k).ok());
  auto again = IntTrapdoorBasis::FromGadget(gen.a, gen.trapdoor, p.k);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ((*again)->GsNorms(), gen.basis->GsNorms());
}

TEST(SampleCosetTest, LandsInCosetWithExpectedSpread) {
  const ParamsInt p = Toy(16);
  Rng rng = TestRng(5);
  auto gen = *TrapGenInt(p, rng);
  const int draws = 300;
  double sum_sq = 0;
  for (int d = 0; d < draws; ++d) {
    std::vector<uint64_t> u(p.n);
    for (auto& v : u) v = rng.UniformBelow(p.q);
    auto x = gen.basis->SampleCoset(u, p.sigma, rng);
    ASSERT_TRUE(x.ok());
    ASSERT_EQ(gen.a.MulSigned(*x), u);
    for (int64_t v : *x) sum_sq += static_cast<double>(v) * v;
  }
  const double var = sum_sq / (draws * static_cast<double>(p.m));
  EXPECT_NEAR(var / (p.sigma * p.sigma / (2 * std::numbers::pi)), 1.0, 0.15);
}

TEST(SampleCosetTest, WidthGuard) {
  const ParamsInt p = Toy(16);
  Rng rng = TestRng(6);
  auto gen = *TrapGenInt(p, rng);
  std::vector<uint64_t> u(p.n, 1);
  EXPECT_TRUE(HasErrorKind(gen.basis->SampleCoset(u, 1.0, rng).status(),
                           ErrorKind::kWidthTooSmall));
}

// Lambda^perp_17((1 5)) with basis (-5, 1), (17, 0). Centred on a lattice
// point, nearest-plane returns that point with probability
// prod_i 1 / sum_z rho_{sigma/|b~_i|}(z).
TEST(SampleLatticeTest, TwoDimensionalExactPointFrequency) {
  IntMatrix a(1, 2, 17);
  a.at(0, 0) = 1;
  a.at(0, 1) = 5;
  auto basis = IntTrapdoorBasis::FromBasis(a, {-5, 1, 17, 0});
  ASSERT_TRUE(basis.ok()) << basis.status();
  const double sigma = 4.5;
  double expected = 1;
  for (double g : (*basis)->GsNorms()) {
    const double w = sigma / g;
    double mass = 0;
    for (int z = -60; z <= 60; ++z) mass += std::exp(-std::numbers::pi * z * z / (w * w));
    expected /= mass;
  }
  const std::vector<double> center = {7.0, 2.0};
  ASSERT_EQ(a.MulSigned(std::vector<int64_t>{7, 2})[0], 0u);
  Rng rng = TestRng(7);
  const int draws = 200000;
  int hits = 0;
  for (int d = 0; d < draws; ++d) {
    auto v = (*basis)->SampleLattice(center, sigma, rng);
    ASSERT_TRUE(v.ok());
    ASSERT_EQ(a.MulSigned(*v)[0], 0u);
    if ((*v)[0] == 7 && (*v)[1] == 2) ++hits;
  }
  const double freq = static_cast<double>(hits) / draws;
  const double se = std::sqrt(expected * (1 - expected) / draws);
  EXPECT_NEAR(freq, expected, 5 * se) << "expected " << expected;
  EXPECT_TRUE(HasErrorKind((*basis)->SampleLattice(center, 1.0, rng).status(),
                           ErrorKind::kWidthTooSmall));
}

TEST(FromBasisTest, RejectsNonKernelColumns) {
  IntMatrix a(1, 2, 17);
  a.at(0, 0) = 1;
  a.at(0, 1) = 5;
  EXPECT_TRUE(HasErrorKind(IntTrapdoorBasis::FromBasis(a, {-5, 1, 16, 0}).status(),
                           ErrorKind::kRankError));
  EXPECT_TRUE(HasErrorKind(IntTrapdoorBasis::FromBasis(a, {-5, 1, -5, 1}).status(),
                           ErrorKind::kRankError));
}

TEST(SampleLeftTest, ResidualIsZeroAndNormsBounded) {
  const ParamsInt p = Toy(32);
  Rng rng = TestRng(8);
  auto gen = *TrapGenInt(p, rng);
  const double bound = p.t_tail * p.sigma * std::sqrt(2.0 * p.m);
  int columns = 0;
  int within = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix m1 = IntMatrix::Uniform(p.n, p.m, p.q, rng);
    const IntMatrix u = IntMatrix::Uniform(p.n, p.t_msg, p.q, rng);
    auto e = SampleLeft(*gen.basis, m1, u, p.sigma, rng);
    ASSERT_TRUE(e.ok()) << e.status();
    ASSERT_EQ(e->size(), p.t_msg);
    for (size_t j = 0; j < p.t_msg; ++j) {
      const std::vector<int64_t>& col = (*e)[j];
      ASSERT_EQ(col.size(), 2 * p.m);
      const std::vector<uint64_t> left = gen.a.MulSigned(std::span(col).first(p.m));
      const std::vector<uint64_t> right = m1.MulSigned(std::span(col).subspan(p.m));
      for (size_t r = 0; r < p.n; ++r) {
        ASSERT_EQ(AddMod(left[r], right[r], p.q), u.at(r, j)) << "trial " << trial;
      }
      double sq = 0;
      for (int64_t v : col) sq += static_cast<double>(v) * v;
      ++columns;
      if (std::sqrt(sq) <= bound) ++within;
    }
  }
  EXPECT_GE(static_cast<double>(within) / columns, 0.999);
}

TEST(SampleLeftTest, ZeroTargetGivesKernelVectors) {
  const ParamsInt p = Toy(16);
  Rng rng = TestRng(9);
  auto gen = *TrapGenInt(p, rng);
  const IntMatrix m1 = IntMatrix::Uniform(p.n, p.m, p.q, rng);
  const IntMatrix u(p.n, 4, p.q);
  auto e = *SampleLeft(*gen.basis, m1, u, p.sigma, rng);
  for (const auto& col : e) {
    const auto left = gen.a.MulSigned(std::span(col).first(p.m));
    const auto right = m1.MulSigned(std::span(col).subspan(p.m));
    for (size_t r = 0; r < p.n; ++r) EXPECT_EQ(AddMod(left[r], right[r], p.q), 0u);
  }
}

// With no extension block SampleLeft is coset sampling column by column.
TEST(SampleLeftTest, EmptyExtensionMatchesCosetSampler) {
  const ParamsInt p = Toy(16);
  Rng rng = TestRng(10);
  auto gen = *TrapGenInt(p, rng);
  const IntMatrix none(p.n, 0, p.q);
  const IntMatrix u = IntMatrix::Uniform(p.n, 200, p.q, rng);
  auto left = *SampleLeft(*gen.basis, none, u, p.sigma, rng);
  double left_sq = 0, coset_sq = 0;
  for (size_t j = 0; j < u.cols(); ++j) {
    std::vector<uint64_t> col(p.n);
    for (size_t r = 0; r < p.n; ++r) col[r] = u.at(r, j);
    const auto x = *gen.basis->SampleCoset(col, p.sigma, rng);
    for (size_t i = 0; i < p.m; ++i) {
      left_sq += static_cast<double>(left[j][i]) * left[j][i];
      coset_sq += static_cast<double>(x[i]) * x[i];
    }
  }
  EXPECT_NEAR(left_sq / coset_sq, 1.0, 0.05);
}

TEST(SampleLeftTest, GuardsAndShapes) {
  const ParamsInt p = Toy(16);
  Rng rng = TestRng(11);
  auto gen = *TrapGenInt(p, rng);
  const IntMatrix m1 = IntMatrix::Uniform(p.n, p.m, p.q, rng);
  const IntMatrix u = IntMatrix::Uniform(p.n, 2, p.q, rng);
  EXPECT_TRUE(HasErrorKind(SampleLeft(*gen.basis, m1, u, 10.0, rng).status(),
                           ErrorKind::kWidthTooSmall));
  const IntMatrix wrong(p.n + 1, p.m, p.q);
  EXPECT_TRUE(HasErrorKind(SampleLeft(*gen.basis, wrong, u, p.sigma, rng).status(),
                           ErrorKind::kInvalidParams));
}

}  // namespace
}  // namespace lpkeet
