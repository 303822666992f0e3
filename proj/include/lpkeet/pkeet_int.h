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

// Public key encryption with equality test over integer lattices.
//
// c1 = U^T s1 + x1 + m floor(q/2) and c2 = U^T s2 + x2 + H(m) floor(q/2)
// carry the message and its hash. c3, c4 are LWE samples under
// F1 = (A | B + sum b_i A_i) and F2 = (A' | B + sum b_i A_i) with
// b = Hb(c1 || c2 || D). An SIS one-time signature (D = A K, u = K d with
// d = Hd(c1 || c2 || c3 || c4)) binds the ciphertext. The tester holds the
// trapdoor of A' only.

#ifndef LPKEET_PKEET_INT_H_
#define LPKEET_PKEET_INT_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/matlattice.h"
#include "lpkeet/params.h"
#include "lpkeet/rng.h"

namespace lpkeet {

struct PkInt {
  IntMatrix a;
  IntMatrix a_prime;
  std::vector<IntMatrix> a_i;  // l matrices
  IntMatrix b;
  IntMatrix u;  // n x t_msg

  bool operator==(const PkInt& o) const = default;
};

struct SkInt {
  IntTrapdoor ta;
  IntTrapdoor ta_prime;
  std::shared_ptr<const IntTrapdoorBasis> basis_a;
  std::shared_ptr<const IntTrapdoorBasis> basis_a_prime;
};

struct CtInt {
  std::vector<uint64_t> c1;  // t_msg
  std::vector<uint64_t> c2;
  std::vector<uint64_t> c3;  // 2m
  std::vector<uint64_t> c4;
  std::vector<uint64_t> u;   // m, centred lift is the signature
  IntMatrix d;               // n x k_sig

  bool operator==(const CtInt& o) const = default;
};

// Trapdoor of A' plus the public matrices Test needs. Never holds the
// trapdoor of A.
struct TokenInt {
  IntTrapdoor ta_prime;
  IntMatrix a_prime;
  std::vector<IntMatrix> a_i;
  IntMatrix b;
  IntMatrix u;
  std::shared_ptr<const IntTrapdoorBasis> basis_a_prime;
};

class IntPkeet {
 public:
  static absl::StatusOr<IntPkeet> Create(const ParamsInt& params);

  const ParamsInt& params() const { return params_; }
  uint64_t digest() const { return digest_; }

  absl::StatusOr<std::pair<PkInt, SkInt>> Setup(Rng& rng) const;

  // msg has t_msg entries, each 0 or 1; InvalidMessage otherwise.
  absl::StatusOr<CtInt> Encrypt(const PkInt& pk, std::span<const uint8_t> msg, Rng& rng) const;

  absl::StatusOr<std::vector<uint8_t>> Decrypt(const PkInt& pk, const SkInt& sk, const CtInt& ct,
                                               Rng& rng) const;

  TokenInt Trapdoor(const PkInt& pk, const SkInt& sk) const;

  absl::StatusOr<bool> Test(const TokenInt& td_i, const CtInt& ct_i, const TokenInt& td_j,
                            const CtInt& ct_j, Rng& rng) const;

  absl::Status AttachBases(const PkInt& pk, SkInt& sk) const;
  absl::Status AttachBasis(TokenInt& td) const;

  // H(m) with the fixed all-zero prefix.
  std::vector<uint8_t> MessageHash(std::span<const uint8_t> msg) const;

 private:
  IntPkeet(ParamsInt params, uint64_t digest) : params_(std::move(params)), digest_(digest) {}

  absl::Status CheckShape(const CtInt& ct) const;
  std::vector<int8_t> ExtensionSigns(const CtInt& ct) const;
  IntMatrix Extension(const std::vector<IntMatrix>& a_i, const IntMatrix& b,
                      const std::vector<int8_t>& signs) const;
  // floor(q/2)-decoding of c - E^T c_long for E from SampleLeft.
  absl::StatusOr<std::vector<uint8_t>> Recover(const IntTrapdoorBasis& basis,
                                               const IntMatrix& ext, const IntMatrix& u,
                                               std::span<const uint64_t> c_short,
                                               std::span<const uint64_t> c_long,
                                               Rng& rng) const;

  ParamsInt params_;
  uint64_t digest_;
};

}  // namespace lpkeet

#endif  // LPKEET_PKEET_INT_H_
