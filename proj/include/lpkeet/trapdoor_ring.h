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

// Tagged gadget trapdoors over R_q and preimage sampling.
//
// A public vector a = (a' | h g - a'^T T) of length m = 2 + k satisfies
// a^T [T; I_k] = h g^T. Preimages of u under a tag-shifted vector a_h are
// x = p + [T; I] z with p a perturbation and z a gadget sample of
// h^{-1} (u - a_h^T p).

#ifndef LPKEET_TRAPDOOR_RING_H_
#define LPKEET_TRAPDOOR_RING_H_

#include <memory>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/params.h"
#include "lpkeet/ring.h"
#include "lpkeet/rng.h"
#include "lpkeet/sampling.h"

namespace lpkeet {

struct RingTrapdoor {
  TrapdoorMatrix t;
  RingElement tag;
};

// Cached sampling state for one trapdoor: the perturbation factorization and
// the gadget basis. Immutable; share freely across threads.
class RingPreimageSampler {
 public:
  static absl::StatusOr<std::shared_ptr<const RingPreimageSampler>> Create(
      const ParamsRing& params, const TrapdoorMatrix& t);

  // x with a_h^T x = u, where the trapdoor has tag h with respect to a_h.
  // TagNotInvertible when h is not a unit.
  absl::StatusOr<std::vector<RingElement>> Sample(
      const std::vector<RingElement>& a_h, const RingElement& h,
      const RingElement& u, Rng& rng) const;

  const PerturbationSampler& perturbation() const { return perturbation_; }

 private:
  RingPreimageSampler(TrapdoorMatrix t, PerturbationSampler p, GadgetSampler g)
      : t_(std::move(t)), perturbation_(std::move(p)), gadget_(std::move(g)) {}

  TrapdoorMatrix t_;
  PerturbationSampler perturbation_;
  GadgetSampler gadget_;
};

struct RingTrapGenResult {
  std::vector<RingElement> a;  // length m
  RingTrapdoor trapdoor;
  std::shared_ptr<const RingPreimageSampler> sampler;
};

// Draws T with i.i.d. width-sigma_trap coefficients and builds
// a = (a' | h g - a'^T T). a' is sampled uniformly when not supplied. T is
// redrawn (at most 16 times) if the perturbation covariance is not positive
// definite for it; GenerationFailed after that.
absl::StatusOr<RingTrapGenResult> TrapGen(
    const ParamsRing& params, const RingPtr& ctx, const RingElement& h,
    Rng& rng, const std::optional<std::vector<RingElement>>& a_prime = std::nullopt);

// a + (0 | h g): adds h * 2^i to slot 2 + i.
std::vector<RingElement> ApplyTagShift(const std::vector<RingElement>& a,
                                       const RingElement& h);

// a^T [T; I_k], returned as k ring elements; equals tag * g^T for a valid
// trapdoor.
std::vector<RingElement> TrapdoorImage(const std::vector<RingElement>& a,
                                       const TrapdoorMatrix& t);

// Euclidean norm of each column of T in the coefficient embedding; the
// largest one.
double MaxColumnNorm(const TrapdoorMatrix& t);

// Inner product sum_i a_i x_i in R_q.
RingElement InnerProduct(const std::vector<RingElement>& a,
                         const std::vector<RingElement>& x);

}  // namespace lpkeet

#endif  // LPKEET_TRAPDOOR_RING_H_
