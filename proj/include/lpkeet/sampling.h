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

// Discrete Gaussian samplers.
//
// Width convention: rho_s(x) = exp(-pi * |x - c|^2 / s^2), so a width-s
// sample has variance close to s^2 / (2 pi). All randomness comes from the
// caller's Rng; nothing here is constant time.

#ifndef LPKEET_SAMPLING_H_
#define LPKEET_SAMPLING_H_

#include <array>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/params.h"
#include "lpkeet/ring.h"
#include "lpkeet/rng.h"

namespace lpkeet {

struct GaussParams {
  double width = 1.0;
  double center = 0.0;
  double tail_cut = kTailCut;
};

// D_{Z, width, center}. WidthTooSmall when width < 1.
absl::StatusOr<int64_t> SampleZ(const GaussParams& g, Rng& rng);

// Same sampler without the public width floor; width must be > 0. Used by
// the nearest-plane samplers whose per-level widths may drop below one.
int64_t SampleZUnchecked(double width, double center, double tail_cut,
                         Rng& rng);

// Coefficients i.i.d. D_{Z, width}, reduced mod q.
RingElement SampleRing(const RingPtr& ctx, double width, Rng& rng,
                       double tail_cut = kTailCut);
std::vector<RingElement> SampleRingVec(const RingPtr& ctx, double width,
                                       size_t len, Rng& rng,
                                       double tail_cut = kTailCut);

// Klein sampler on the gadget lattice {z : <g, z> = 0 mod q} for
// g = (1, 2, ..., 2^{k-1}), using the basis with columns 2e_i - e_{i+1}
// and the binary digits of q as the last column.
class GadgetSampler {
 public:
  GadgetSampler(uint64_t q, uint32_t k, double width,
                double tail_cut = kTailCut);

  // z with <g, z> = v mod q exactly, distributed close to D_{coset, width}.
  std::vector<int64_t> Sample(uint64_t v, Rng& rng) const;

  uint64_t q() const { return q_; }
  uint32_t k() const { return k_; }
  double width() const { return width_; }
  // Largest Gram-Schmidt norm of the basis.
  double MaxGsNorm() const;

 private:
  uint64_t q_;
  uint32_t k_;
  double width_;
  double tail_cut_;
  std::vector<std::vector<int64_t>> basis_;     // columns
  std::vector<std::vector<long double>> gs_;    // Gram-Schmidt columns
  std::vector<long double> gs_sqnorm_;
};

// z in R_q^k with g^T z = v, one gadget sample per coefficient slot.
std::vector<RingElement> SamplePolyG(const GadgetSampler& g,
                                     const RingElement& v, Rng& rng);

// The 2 x k trapdoor matrix of ring elements, stored by rows.
using TrapdoorMatrix = std::array<std::vector<RingElement>, 2>;

// Largest singular value of T in the coefficient embedding, by power
// iteration on rot(T) rot(T)^T (at most 50 steps, relative tolerance 1e-6).
double SpectralNorm(const TrapdoorMatrix& t);

// Perturbation sampler for Sigma_p = zeta^2 I - alpha^2 [T; I][T^T I].
//
// The last k ring elements are i.i.d. with width sqrt(zeta^2 - alpha^2); the
// first two are then drawn from the conditional distribution, whose
// covariance is the Schur complement
//   S = zeta^2 I - (alpha^2 zeta^2 / (zeta^2 - alpha^2)) rot(T) rot(T)^T,
// factored once here as L D L^T in long double.
class PerturbationSampler {
 public:
  static absl::StatusOr<PerturbationSampler> Create(
      const TrapdoorMatrix& t, double zeta, double alpha,
      double tail_cut = kTailCut);

  // p as 2 + k ring elements.
  std::vector<RingElement> Sample(Rng& rng) const;

  // Diagonal of the Schur complement S (first 2n coordinates), for tests.
  std::vector<long double> SchurDiagonal() const;
  double zeta() const { return zeta_; }
  double alpha() const { return alpha_; }

 private:
  PerturbationSampler() = default;

  RingPtr ctx_;
  uint32_t n_ = 0;
  uint32_t k_ = 0;
  double zeta_ = 0;
  double alpha_ = 0;
  double tail_cut_ = kTailCut;
  double tail_width_ = 0;   // sqrt(zeta^2 - alpha^2)
  long double center_scale_ = 0;  // -alpha^2 / (zeta^2 - alpha^2)
  std::vector<NttForm> t_ntt_[2];
  std::vector<long double> l_;  // packed unit lower triangle, row-major
  std::vector<long double> d_;
  std::vector<long double> diag_;
};

}  // namespace lpkeet

#endif  // LPKEET_SAMPLING_H_
