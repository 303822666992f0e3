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

#include "lpkeet/sampling.h"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "lpkeet/modarith.h"
#include "lpkeet/status.h"

namespace lpkeet {
namespace {

constexpr double kPi = std::numbers::pi;

Rng::Seed SeedOf(uint8_t b) {
  Rng::Seed s{};
  s[31] = b;
  return s;
}

double Rho(double x, double s) { return std::exp(-kPi * x * x / (s * s)); }

// Exact moments of D_{Z,s,c} by direct summation over |x - c| <= 60.
std::pair<double, double> ExactMoments(double s, double c) {
  double z = 0, m1 = 0, m2 = 0;
  for (int x = static_cast<int>(c) - 60; x <= static_cast<int>(c) + 60; ++x) {
    const double r = Rho(x - c, s);
    z += r;
    m1 += r * x;
    m2 += r * x * x;
  }
  const double mean = m1 / z;
  return {mean, m2 / z - mean * mean};
}

TEST(SampleZTest, MomentsAtWidth4) {
  Rng rng(SeedOf(1));
  constexpr int kDraws = 1000000;
  double sum = 0, sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = static_cast<double>(*SampleZ({4.0, 0.0}, rng));
    sum += x;
    sq += x * x;
  }
  const double mean = sum / kDraws;
  const double var = sq / kDraws - mean * mean;
  const auto [exact_mean, exact_var] = ExactMoments(4.0, 0.0);
  EXPECT_NEAR(mean, exact_mean, 0.02);
  EXPECT_NEAR(var, exact_var, 0.03 * exact_var);
}

TEST(SampleZTest, OffCenterMoments) {
  Rng rng(SeedOf(2));
  constexpr int kDraws = 400000;
  for (double c : {0.3, -7.5, 1234.71}) {
    double sum = 0, sq = 0;
    for (int i = 0; i < kDraws; ++i) {
      const double x = static_cast<double>(*SampleZ({3.0, c}, rng));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / kDraws;
    const auto [exact_mean, exact_var] = ExactMoments(3.0, c);
    EXPECT_NEAR(mean, exact_mean, 0.02) << c;
    EXPECT_NEAR(sq / kDraws - mean * mean, exact_var, 0.03 * exact_var) << c;
  }
}

TEST(SampleZTest, NarrowInternalWidth) {
  // Below the public floor the unchecked sampler still tracks the oracle.
  Rng rng(SeedOf(3));
  constexpr int kDraws = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = static_cast<double>(SampleZUnchecked(0.6, 0.2, kTailCut, rng));
    sum += x;
    sq += x * x;
  }
  const auto [exact_mean, exact_var] = ExactMoments(0.6, 0.2);
  const double mean = sum / kDraws;
  EXPECT_NEAR(mean, exact_mean, 0.01);
  EXPECT_NEAR(sq / kDraws - mean * mean, exact_var, 0.05 * exact_var);
}

TEST(SampleZTest, WidthTooSmall) {
  Rng rng(SeedOf(4));
  EXPECT_TRUE(HasErrorKind(SampleZ({0.5, 0.0}, rng).status(), ErrorKind::kWidthTooSmall));
}

TEST(SampleZTest, SeededStreamsReproduce) {
  Rng a(SeedOf(5)), b(SeedOf(5));
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(*SampleZ({10.0, 0.5}, a), *SampleZ({10.0, 0.5}, b));
}

TEST(SampleRingTest, ShapeMeanAndIndependence) {
  auto ctx = *RingContext::Create(16, 422497919329ULL);
  Rng rng(SeedOf(6));
  constexpr int kDraws = 1000000 / 16;
  std::vector<double> sum(16, 0), sq(16, 0);
  double cross01 = 0, cross5_11 = 0;
  for (int d = 0; d < kDraws; ++d) {
    const std::vector<int64_t> c = SampleRing(ctx, 4.0, rng).Centered();
    for (int i = 0; i < 16; ++i) {
      sum[i] += c[i];
      sq[i] += double(c[i]) * c[i];
    }
    cross01 += double(c[0]) * c[1];
    cross5_11 += double(c[5]) * c[11];
  }
  const auto [m0, exact_var] = ExactMoments(4.0, 0.0);
  for (int i = 0; i < 16; ++i) {
    EXPECT_NEAR(sum[i] / kDraws, 0.0, 0.05);
    EXPECT_NEAR(sq[i] / kDraws, exact_var, 0.05 * exact_var);
  }
  // Correlation coefficient between coefficient pairs.
  EXPECT_LT(std::abs(cross01 / kDraws / exact_var), 0.02);
  EXPECT_LT(std::abs(cross5_11 / kDraws / exact_var), 0.02);
  EXPECT_EQ(SampleRingVec(ctx, 4.0, 7, rng).size(), 7u);
}

TEST(SampleRingTest, PairwiseCorrelationMillionDraws) {
  auto ctx = *RingContext::Create(4, 97);
  Rng rng(SeedOf(7));
  constexpr int kDraws = 1000000;
  double c01 = 0, c23 = 0, s = 0;
  for (int d = 0; d < kDraws; ++d) {
    const std::vector<int64_t> c = SampleRing(ctx, 4.0, rng).Centered();
    c01 += double(c[0]) * c[1];
    c23 += double(c[2]) * c[3];
    s += double(c[0]) * c[0];
  }
  EXPECT_LT(std::abs(c01 / s), 0.01);
  EXPECT_LT(std::abs(c23 / s), 0.01);
}

uint64_t GadgetDot(const std::vector<int64_t>& z, uint64_t q) {
  int128_t acc = 0;
  for (size_t i = 0; i < z.size(); ++i) acc += static_cast<int128_t>(z[i]) << i;
  return ReduceSigned128(acc, q);
}

TEST(GadgetTest, ExactCongruence) {
  const uint64_t q = 155974524236801ULL;
  const double alpha = std::sqrt(5.0) * 4.44;
  GadgetSampler g(q, 48, alpha);
  Rng rng(SeedOf(8));
  for (int i = 0; i < 10000; ++i) {
    const uint64_t v = i == 0 ? 0 : rng.UniformBelow(q);
    ASSERT_EQ(GadgetDot(g.Sample(v, rng), q), v);
  }
}

TEST(GadgetTest, TailBound) {
  const uint64_t q = 155974524236801ULL;
  const double alpha = std::sqrt(5.0) * 4.44;
  GadgetSampler g(q, 48, alpha);
  Rng rng(SeedOf(9));
  int within = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const auto z = g.Sample(rng.UniformBelow(q), rng);
    int64_t mx = 0;
    for (int64_t x : z) mx = std::max(mx, std::abs(x));
    within += mx <= kTailCut * alpha;
  }
  EXPECT_GE(within, 0.999 * kDraws);
}

// Exact per-coordinate variance of D_{Z^k, alpha} conditioned on
// <g, z> = v mod q, by dynamic programming over residues.
std::vector<double> GadgetOracleVariance(uint64_t q, uint32_t k, double alpha, uint64_t v) {
  constexpr int kSupport = 50;
  std::vector<double> out(k);
  for (uint32_t j = 0; j < k; ++j) {
    std::vector<double> dist(q, 0.0);
    dist[0] = 1.0;
    for (uint32_t i = 0; i < k; ++i) {
      if (i == j) continue;
      std::vector<double> next(q, 0.0);
      const uint64_t gi = (1ULL << i) % q;
      for (int a = -kSupport; a <= kSupport; ++a) {
        const double w = Rho(a, alpha);
        const uint64_t shift = ReduceSigned(static_cast<int64_t>(gi) * a, q);
        for (uint64_t r = 0; r < q; ++r) {
          if (dist[r] == 0) continue;
          next[AddMod(r, shift, q)] += w * dist[r];
        }
      }
      double total = 0;
      for (double x : next) total += x;
      for (double& x : next) x /= total;
      dist.swap(next);
    }
    double z = 0, m1 = 0, m2 = 0;
    const uint64_t gj = (1ULL << j) % q;
    for (int a = -kSupport; a <= kSupport; ++a) {
      const uint64_t need = SubMod(v, ReduceSigned(static_cast<int64_t>(gj) * a, q), q);
      const double w = Rho(a, alpha) * dist[need];
      z += w;
      m1 += w * a;
      m2 += w * a * a;
    }
    out[j] = m2 / z - (m1 / z) * (m1 / z);
  }
  return out;
}

TEST(GadgetTest, VarianceMatchesCosetOracle) {
  const uint64_t q = 12289;
  const uint32_t k = 14;
  const double alpha = std::sqrt(5.0) * 4.44;
  const uint64_t v = 1234;
  const std::vector<double> oracle = GadgetOracleVariance(q, k, alpha, v);
  GadgetSampler g(q, k, alpha);
  Rng rng(SeedOf(10));
  constexpr int kDraws = 100000;
  std::vector<double> sum(k, 0), sq(k, 0);
  for (int d = 0; d < kDraws; ++d) {
    const auto z = g.Sample(v, rng);
    ASSERT_EQ(GadgetDot(z, q), v);
    for (uint32_t i = 0; i < k; ++i) {
      sum[i] += z[i];
      sq[i] += double(z[i]) * z[i];
    }
  }
  for (uint32_t i = 0; i < k; ++i) {
    const double mean = sum[i] / kDraws;
    const double var = sq[i] / kDraws - mean * mean;
    EXPECT_NEAR(var, oracle[i], 0.15 * oracle[i]) << "coordinate " << i;
  }
}

TEST(SamplePolyGTest, ExactInRing) {
  auto ctx = *RingContext::Create(256, 155974524236801ULL);
  GadgetSampler g(ctx->q(), 48, std::sqrt(5.0) * 4.44);
  Rng rng(SeedOf(11));
  for (int trial = 0; trial < 1000; ++trial) {
    const RingElement v = trial == 0 ? RingElement(ctx) : SampleUniform(ctx, rng);
    const std::vector<RingElement> z = SamplePolyG(g, v, rng);
    ASSERT_EQ(z.size(), 48u);
    RingElement acc(ctx);
    for (uint32_t i = 0; i < 48; ++i) acc += z[i].ScalarMul(1ULL << i);
    ASSERT_EQ(acc, v);
  }
}

TEST(SamplePolyGTest, SquaredNormMatchesProductOracle) {
  const uint64_t q = 12289;
  auto ctx = *RingContext::Create(16, q);
  const double alpha = std::sqrt(5.0) * 4.44;
  GadgetSampler g(q, 14, alpha);
  const RingElement v = RingElement::Constant(ctx, 1234);
  // Slot 0 holds 1234, the other slots hold 0.
  const std::vector<double> var_v = GadgetOracleVariance(q, 14, alpha, 1234);
  const std::vector<double> var_0 = GadgetOracleVariance(q, 14, alpha, 0);
  double expected = 0;
  for (int i = 0; i < 14; ++i) expected += var_v[i] + 15 * var_0[i];
  Rng rng(SeedOf(12));
  constexpr int kDraws = 5000;
  double total = 0;
  for (int d = 0; d < kDraws; ++d) {
    for (const RingElement& zi : SamplePolyG(g, v, rng)) {
      for (int64_t c : zi.Centered()) total += double(c) * c;
    }
  }
  // Means are near zero, so E||z||^2 is the sum of coordinate variances.
  EXPECT_NEAR(total / kDraws, expected, 0.05 * expected);
}

struct SmallTrapdoor {
  RingPtr ctx;
  TrapdoorMatrix t;
};

SmallTrapdoor MakeTrapdoor(uint32_t n, uint64_t q, uint32_t k, double sigma, Rng& rng) {
  SmallTrapdoor s{*RingContext::Create(n, q), {}};
  for (int a = 0; a < 2; ++a) s.t[a] = SampleRingVec(s.ctx, sigma, k, rng);
  return s;
}

Eigen::MatrixXd DenseRot(const TrapdoorMatrix& t) {
  const uint32_t n = t[0][0].n();
  const size_t k = t[0].size();
  Eigen::MatrixXd m(2 * n, k * n);
  for (int a = 0; a < 2; ++a) {
    for (size_t j = 0; j < k; ++j) {
      const std::vector<int64_t> f = t[a][j].Centered();
      for (uint32_t r = 0; r < n; ++r) {
        for (uint32_t c = 0; c < n; ++c) {
          m(a * n + r, j * n + c) = r >= c ? f[r - c] : -f[n + r - c];
        }
      }
    }
  }
  return m;
}

TEST(SpectralNormTest, MatchesSvd) {
  Rng rng(SeedOf(13));
  auto td = MakeTrapdoor(16, 422497919329ULL, 39, 4.34, rng);
  const double s1 = SpectralNorm(td.t);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(DenseRot(td.t));
  EXPECT_NEAR(s1, svd.singularValues()(0), 1e-4 * s1);
}

TEST(PerturbationTest, NotPdBelowBound) {
  Rng rng(SeedOf(14));
  auto td = MakeTrapdoor(16, 422497919329ULL, 39, 4.34, rng);
  const double alpha = std::sqrt(5.0) * 4.34;
  const double s1 = SpectralNorm(td.t);
  const double threshold = alpha * std::sqrt(s1 * s1 + 1);
  EXPECT_TRUE(HasErrorKind(PerturbationSampler::Create(td.t, 0.95 * threshold, alpha).status(),
                           ErrorKind::kCovarianceNotPD));
  EXPECT_TRUE(PerturbationSampler::Create(td.t, 1.05 * threshold, alpha).ok());
  EXPECT_TRUE(HasErrorKind(PerturbationSampler::Create(td.t, alpha, alpha).status(),
                           ErrorKind::kCovarianceNotPD));
}

void CheckPerturbationVariance(const TrapdoorMatrix& t, double zeta, double alpha,
                               int draws, uint8_t seed) {
  auto sampler = PerturbationSampler::Create(t, zeta, alpha);
  ASSERT_TRUE(sampler.ok()) << sampler.status();
  const uint32_t n = t[0][0].n();
  const size_t k = t[0].size();
  // Diagonal of Sigma_p: zeta^2 - alpha^2 ||t_a||^2 summed over the row for
  // the first 2n coordinates, zeta^2 - alpha^2 for the rest.
  std::vector<double> diag;
  for (int a = 0; a < 2; ++a) {
    double row = 0;
    for (const RingElement& e : t[a]) {
      for (int64_t c : e.Centered()) row += double(c) * c;
    }
    for (uint32_t i = 0; i < n; ++i) diag.push_back(zeta * zeta - alpha * alpha * row);
  }
  for (size_t i = 0; i < k * n; ++i) diag.push_back(zeta * zeta - alpha * alpha);

  Rng rng(SeedOf(seed));
  std::vector<double> sq(diag.size(), 0), sum(diag.size(), 0);
  for (int d = 0; d < draws; ++d) {
    const std::vector<RingElement> p = sampler->Sample(rng);
    ASSERT_EQ(p.size(), 2 + k);
    for (size_t e = 0; e < p.size(); ++e) {
      const std::vector<int64_t> c = p[e].Centered();
      for (uint32_t i = 0; i < n; ++i) {
        sum[e * n + i] += c[i];
        sq[e * n + i] += double(c[i]) * c[i];
      }
    }
  }
  for (size_t i = 0; i < diag.size(); ++i) {
    const double mean = sum[i] / draws;
    const double var = sq[i] / draws - mean * mean;
    const double expected = diag[i] / (2 * kPi);
    ASSERT_NEAR(var, expected, 0.10 * expected) << "coordinate " << i;
  }
}

TEST(PerturbationTest, CoefficientVarianceMatchesSigmaP) {
  Rng rng(SeedOf(15));
  auto td = MakeTrapdoor(16, 422497919329ULL, 39, 4.34, rng);
  CheckPerturbationVariance(td.t, 650.0, std::sqrt(5.0) * 4.34, 100000, 16);
}

TEST(PerturbationTest, ZeroTrapdoorClosedForm) {
  auto ctx = *RingContext::Create(16, 422497919329ULL);
  TrapdoorMatrix t;
  for (int a = 0; a < 2; ++a) t[a].assign(39, RingElement(ctx));
  auto sampler = PerturbationSampler::Create(t, 650.0, std::sqrt(5.0) * 4.34);
  ASSERT_TRUE(sampler.ok());
  for (long double d : sampler->SchurDiagonal()) EXPECT_DOUBLE_EQ(double(d), 650.0 * 650.0);
  CheckPerturbationVariance(t, 650.0, std::sqrt(5.0) * 4.34, 40000, 17);
}

}  // namespace
}  // namespace lpkeet
