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

#include "lpkeet/trapdoor_ring.h"

#include <cmath>

#include "lpkeet/status.h"

namespace lpkeet {

namespace {

constexpr int kTrapGenAttempts = 16;

RingElement Gadget(const RingElement& h, uint32_t i) {
  return h.ScalarMul((1ULL << i) % h.context()->q());
}

}  // namespace

RingElement InnerProduct(const std::vector<RingElement>& a,
                         const std::vector<RingElement>& x) {
  const RingPtr& ctx = a[0].context();
  NttForm acc(ctx, std::vector<uint64_t>(ctx->n(), 0));
  for (size_t i = 0; i < a.size(); ++i) acc.MulAcc(ToNtt(a[i]), ToNtt(x[i]));
  return FromNtt(acc);
}

absl::StatusOr<std::shared_ptr<const RingPreimageSampler>>
RingPreimageSampler::Create(const ParamsRing& params, const TrapdoorMatrix& t) {
  LPKEET_ASSIGN_OR_RETURN(
      PerturbationSampler p,
      PerturbationSampler::Create(t, params.zeta, params.alpha_g, params.t_tail));
  GadgetSampler g(params.q, params.k, params.alpha_g, params.t_tail);
  return std::shared_ptr<const RingPreimageSampler>(
      new RingPreimageSampler(t, std::move(p), std::move(g)));
}

absl::StatusOr<std::vector<RingElement>> RingPreimageSampler::Sample(
    const std::vector<RingElement>& a_h, const RingElement& h,
    const RingElement& u, Rng& rng) const {
  auto h_inv = Invert(h);
  if (!h_inv.ok()) {
    return MakeError(ErrorKind::kTagNotInvertible, "preimage tag is not a unit");
  }
  std::vector<RingElement> x = perturbation_.Sample(rng);
  const RingElement v = *h_inv * (u - InnerProduct(a_h, x));
  const std::vector<RingElement> z = SamplePolyG(gadget_, v, rng);
  for (int row = 0; row < 2; ++row) x[row] += InnerProduct(t_[row], z);
  for (size_t i = 0; i < z.size(); ++i) x[2 + i] += z[i];
  return x;
}

absl::StatusOr<RingTrapGenResult> TrapGen(
    const ParamsRing& params, const RingPtr& ctx, const RingElement& h,
    Rng& rng, const std::optional<std::vector<RingElement>>& a_prime) {
  std::vector<RingElement> base;
  if (a_prime.has_value()) {
    if (a_prime->size() != params.base_len) {
      return MakeError(ErrorKind::kInvalidParams, "a' must have m - k entries");
    }
    base = *a_prime;
  } else {
    for (uint32_t i = 0; i < params.base_len; ++i) base.push_back(SampleUniform(ctx, rng));
  }
  for (int attempt = 0; attempt < kTrapGenAttempts; ++attempt) {
    TrapdoorMatrix t;
    for (int row = 0; row < 2; ++row) {
      t[row] = SampleRingVec(ctx, params.sigma_trap, params.k, rng, params.t_tail);
    }
    auto sampler = RingPreimageSampler::Create(params, t);
    if (!sampler.ok()) {
      if (HasErrorKind(sampler.status(), ErrorKind::kCovarianceNotPD)) continue;
      return sampler.status();
    }
    RingTrapGenResult out;
    out.a = base;
    const std::vector<NttForm> base_ntt = {ToNtt(base[0]), ToNtt(base[1])};
    for (uint32_t j = 0; j < params.k; ++j) {
      NttForm acc(ctx, std::vector<uint64_t>(ctx->n(), 0));
      for (int row = 0; row < 2; ++row) acc.MulAcc(base_ntt[row], ToNtt(t[row][j]));
      out.a.push_back(Gadget(h, j) - FromNtt(acc));
    }
    out.trapdoor = RingTrapdoor{std::move(t), h};
    out.sampler = *std::move(sampler);
    return out;
  }
  return MakeError(ErrorKind::kGenerationFailed,
                   "no trapdoor with a positive definite perturbation covariance");
}

std::vector<RingElement> ApplyTagShift(const std::vector<RingElement>& a,
                                       const RingElement& h) {
  std::vector<RingElement> out = a;
  for (size_t i = 2; i < out.size(); ++i) out[i] += Gadget(h, static_cast<uint32_t>(i - 2));
  return out;
}

std::vector<RingElement> TrapdoorImage(const std::vector<RingElement>& a,
                                       const TrapdoorMatrix& t) {
  std::vector<RingElement> out;
  for (size_t j = 0; j < t[0].size(); ++j) {
    out.push_back(a[0] * t[0][j] + a[1] * t[1][j] + a[2 + j]);
  }
  return out;
}

double MaxColumnNorm(const TrapdoorMatrix& t) {
  double best = 0;
  for (size_t j = 0; j < t[0].size(); ++j) {
    double sq = 0;
    for (int row = 0; row < 2; ++row) {
      for (int64_t c : t[row][j].Centered()) sq += static_cast<double>(c) * c;
    }
    best = std::max(best, std::sqrt(sq));
  }
  return best;
}

}  // namespace lpkeet
