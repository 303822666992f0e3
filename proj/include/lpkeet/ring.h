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

// Arithmetic in R_q = Z_q[x]/(x^n + 1), n a power of two, q prime with
// q = 1 mod 2n. Multiplication always goes through the negacyclic NTT.

#ifndef LPKEET_RING_H_
#define LPKEET_RING_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lpkeet/rng.h"

namespace lpkeet {

// Precomputed root tables for one (n, q). Immutable once built and shared by
// every element living in that ring.
class RingContext {
 public:
  static absl::StatusOr<std::shared_ptr<const RingContext>> Create(
      uint32_t n, uint64_t q, uint64_t params_id = 0);

  uint32_t n() const { return n_; }
  uint64_t q() const { return q_; }
  uint64_t params_id() const { return params_id_; }
  // The primitive 2n-th root of unity the tables are built from.
  uint64_t psi() const { return psi_; }

  bool SameRing(const RingContext& other) const {
    return n_ == other.n_ && q_ == other.q_ && params_id_ == other.params_id_;
  }

  // In-place transforms. Evaluations come out in bit-reversed order of the
  // odd powers of psi.
  void Forward(std::span<uint64_t> a) const;
  void Inverse(std::span<uint64_t> a) const;

 private:
  RingContext() = default;

  uint32_t n_ = 0;
  uint32_t log_n_ = 0;
  uint64_t q_ = 0;
  uint64_t params_id_ = 0;
  uint64_t psi_ = 0;
  uint64_t n_inv_ = 0;
  uint64_t n_inv_shoup_ = 0;
  std::vector<uint64_t> psi_rev_, psi_rev_shoup_;
  std::vector<uint64_t> psi_inv_rev_, psi_inv_rev_shoup_;
};

using RingPtr = std::shared_ptr<const RingContext>;

class NttForm;

// A polynomial of degree < n with coefficients in [0, q).
class RingElement {
 public:
  RingElement() = default;
  // The zero element.
  explicit RingElement(RingPtr ctx);
  // Takes ownership of canonical residues; size must equal n.
  RingElement(RingPtr ctx, std::vector<uint64_t> coeffs);

  static RingElement Constant(RingPtr ctx, uint64_t c);
  static RingElement Monomial(RingPtr ctx, uint32_t degree);
  // Reduces signed integers mod q.
  static RingElement FromSigned(RingPtr ctx, std::span<const int64_t> values);

  const RingPtr& context() const { return ctx_; }
  bool initialized() const { return ctx_ != nullptr; }
  uint32_t n() const { return static_cast<uint32_t>(coeffs_.size()); }
  const std::vector<uint64_t>& coeffs() const { return coeffs_; }
  uint64_t operator[](size_t i) const { return coeffs_[i]; }
  uint64_t& mutable_coeff(size_t i) { return coeffs_[i]; }

  // Centered representatives in (-q/2, q/2].
  std::vector<int64_t> Centered() const;
  // Max |coefficient| over centered representatives.
  uint64_t InfNorm() const;
  bool IsZero() const;

  // t(x) -> t(x^{-1}) in R_q, i.e. (t_0, -t_{n-1}, ..., -t_1).
  RingElement Conjugate() const;

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const RingElement& o);
  RingElement operator-() const;
  RingElement ScalarMul(uint64_t c) const;

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }
  bool operator==(const RingElement& o) const {
    return coeffs_ == o.coeffs_ && SameContext(o);
  }

  bool SameContext(const RingElement& o) const;

 private:
  RingPtr ctx_;
  std::vector<uint64_t> coeffs_;
};

// Evaluation-domain representation. Pointwise ops only.
class NttForm {
 public:
  NttForm() = default;
  NttForm(RingPtr ctx, std::vector<uint64_t> evals)
      : ctx_(std::move(ctx)), evals_(std::move(evals)) {}

  const RingPtr& context() const { return ctx_; }
  const std::vector<uint64_t>& evals() const { return evals_; }

  NttForm& operator+=(const NttForm& o);
  NttForm& operator*=(const NttForm& o);
  // this += a * b, pointwise.
  void MulAcc(const NttForm& a, const NttForm& b);

 private:
  RingPtr ctx_;
  std::vector<uint64_t> evals_;
};

// Checked operations: ParamsMismatch when the operands live in different
// rings, NotInitialized on a default-constructed operand.
absl::StatusOr<RingElement> Add(const RingElement& a, const RingElement& b);
absl::StatusOr<RingElement> Sub(const RingElement& a, const RingElement& b);
absl::StatusOr<RingElement> Mul(const RingElement& a, const RingElement& b);

absl::StatusOr<NttForm> NttForward(const RingElement& x);
absl::StatusOr<RingElement> NttInverse(const NttForm& y);

// Unchecked fast paths; operands must share a context.
NttForm ToNtt(const RingElement& x);
RingElement FromNtt(const NttForm& y);

bool IsInvertible(const RingElement& a);
absl::StatusOr<RingElement> Invert(const RingElement& a);

// bit_i = 1 iff w_i lies in [ceil(q/4), floor(3q/4)).
std::vector<uint8_t> DecodeBits(const RingElement& w);

RingElement SampleUniform(const RingPtr& ctx, Rng& rng);

// Bits (each 0 or 1) to a {0,1}-coefficient element; InvalidMessage on a
// wrong length or non-bit entry.
absl::StatusOr<RingElement> EncodeMessage(const RingPtr& ctx,
                                          std::span<const uint8_t> bits);
// True iff every coefficient is 0 or 1.
bool IsBinary(const RingElement& m);
RingElement ScaleHalfQ(const RingElement& m);

// Plain O(n^2) negacyclic product. Test oracle only.
RingElement MulSchoolbook(const RingElement& a, const RingElement& b);

// n little-endian 8-byte words, ascending degree.
void AppendBytes(const RingElement& x, std::vector<uint8_t>& out);
absl::StatusOr<RingElement> ElementFromBytes(const RingPtr& ctx,
                                             std::span<const uint8_t> bytes);

}  // namespace lpkeet

#endif  // LPKEET_RING_H_
