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

#include <bit>
#include <cstdio>
#include <cstdlib>

#include "absl/strings/str_cat.h"
#include "lpkeet/modarith.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

uint32_t BitReverse(uint32_t x, uint32_t bits) {
  uint32_t r = 0;
  for (uint32_t i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

// Smallest-generator search: psi = g^((q-1)/2n) has order exactly 2n iff
// psi^n = -1, because 2n is a power of two.
uint64_t FindPsi(uint32_t n, uint64_t q) {
  const uint64_t e = (q - 1) / (2ULL * n);
  for (uint64_t g = 2; g < q; ++g) {
    const uint64_t psi = PowMod(g, e, q);
    if (PowMod(psi, n, q) == q - 1) return psi;
  }
  return 0;
}

[[noreturn]] void RingMismatch() {
  std::fprintf(stderr, "lpkeet: ring operands from different contexts\n");
  std::abort();
}

absl::Status CheckPair(const RingElement& a, const RingElement& b) {
  if (!a.initialized() || !b.initialized()) {
    return MakeError(ErrorKind::kNotInitialized, "ring element has no context");
  }
  if (!a.SameContext(b)) {
    return MakeError(ErrorKind::kParamsMismatch, "ring elements from different rings");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RingPtr> RingContext::Create(uint32_t n, uint64_t q,
                                            uint64_t params_id) {
  if (n < 2 || !std::has_single_bit(n)) {
    return MakeError(ErrorKind::kInvalidDegree,
                     absl::StrCat("ring degree must be a power of two, got ", n));
  }
  if (q >= (1ULL << 62) || !IsPrime(q) || q % (2ULL * n) != 1) {
    return MakeError(ErrorKind::kInvalidParams,
                     absl::StrCat("modulus ", q, " is not a prime = 1 mod 2n below 2^62"));
  }
  auto ctx = std::shared_ptr<RingContext>(new RingContext());
  ctx->n_ = n;
  ctx->log_n_ = static_cast<uint32_t>(std::countr_zero(n));
  ctx->q_ = q;
  ctx->params_id_ = params_id;
  ctx->psi_ = FindPsi(n, q);
  const uint64_t psi_inv = InvModPrime(ctx->psi_, q);
  ctx->psi_rev_.resize(n);
  ctx->psi_rev_shoup_.resize(n);
  ctx->psi_inv_rev_.resize(n);
  ctx->psi_inv_rev_shoup_.resize(n);
  uint64_t pw = 1, pw_inv = 1;
  for (uint32_t i = 0; i < n; ++i) {
    const uint32_t r = BitReverse(i, ctx->log_n_);
    ctx->psi_rev_[r] = pw;
    ctx->psi_inv_rev_[r] = pw_inv;
    pw = MulMod(pw, ctx->psi_, q);
    pw_inv = MulMod(pw_inv, psi_inv, q);
  }
  for (uint32_t i = 0; i < n; ++i) {
    ctx->psi_rev_shoup_[i] = ShoupPrecompute(ctx->psi_rev_[i], q);
    ctx->psi_inv_rev_shoup_[i] = ShoupPrecompute(ctx->psi_inv_rev_[i], q);
  }
  ctx->n_inv_ = InvModPrime(n % q, q);
  ctx->n_inv_shoup_ = ShoupPrecompute(ctx->n_inv_, q);
  return RingPtr(std::move(ctx));
}

void RingContext::Forward(std::span<uint64_t> a) const {
  const uint64_t q = q_;
  uint32_t t = n_;
  for (uint32_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (uint32_t i = 0; i < m; ++i) {
      const uint32_t j1 = 2 * i * t;
      const uint64_t s = psi_rev_[m + i];
      const uint64_t s_shoup = psi_rev_shoup_[m + i];
      for (uint32_t j = j1; j < j1 + t; ++j) {
        const uint64_t u = a[j];
        const uint64_t v = MulModShoup(a[j + t], s, s_shoup, q);
        a[j] = AddMod(u, v, q);
        a[j + t] = SubMod(u, v, q);
      }
    }
  }
}

void RingContext::Inverse(std::span<uint64_t> a) const {
  const uint64_t q = q_;
  uint32_t t = 1;
  for (uint32_t m = n_; m > 1; m >>= 1) {
    const uint32_t h = m >> 1;
    uint32_t j1 = 0;
    for (uint32_t i = 0; i < h; ++i) {
      const uint64_t s = psi_inv_rev_[h + i];
      const uint64_t s_shoup = psi_inv_rev_shoup_[h + i];
      for (uint32_t j = j1; j < j1 + t; ++j) {
        const uint64_t u = a[j];
        const uint64_t v = a[j + t];
        a[j] = AddMod(u, v, q);
        a[j + t] = MulModShoup(SubMod(u, v, q), s, s_shoup, q);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (uint64_t& x : a) x = MulModShoup(x, n_inv_, n_inv_shoup_, q);
}

RingElement::RingElement(RingPtr ctx)
    : ctx_(std::move(ctx)), coeffs_(ctx_ ? ctx_->n() : 0, 0) {}

RingElement::RingElement(RingPtr ctx, std::vector<uint64_t> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {}

RingElement RingElement::Constant(RingPtr ctx, uint64_t c) {
  RingElement r(std::move(ctx));
  r.coeffs_[0] = c % r.ctx_->q();
  return r;
}

RingElement RingElement::Monomial(RingPtr ctx, uint32_t degree) {
  RingElement r(std::move(ctx));
  r.coeffs_[degree] = 1;
  return r;
}

RingElement RingElement::FromSigned(RingPtr ctx, std::span<const int64_t> values) {
  RingElement r(std::move(ctx));
  const uint64_t q = r.ctx_->q();
  for (size_t i = 0; i < values.size() && i < r.coeffs_.size(); ++i) {
    r.coeffs_[i] = ReduceSigned(values[i], q);
  }
  return r;
}

bool RingElement::SameContext(const RingElement& o) const {
  if (ctx_ == o.ctx_) return true;
  if (!ctx_ || !o.ctx_) return false;
  return ctx_->SameRing(*o.ctx_);
}

std::vector<int64_t> RingElement::Centered() const {
  std::vector<int64_t> out(coeffs_.size());
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = CenteredLift(coeffs_[i], q);
  return out;
}

uint64_t RingElement::InfNorm() const {
  uint64_t best = 0;
  const uint64_t q = ctx_->q();
  for (uint64_t c : coeffs_) best = std::max(best, std::min(c, q - c));
  return best;
}

bool RingElement::IsZero() const {
  for (uint64_t c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

RingElement RingElement::Conjugate() const {
  RingElement r(ctx_);
  const uint64_t q = ctx_->q();
  const size_t n = coeffs_.size();
  r.coeffs_[0] = coeffs_[0];
  for (size_t j = 1; j < n; ++j) r.coeffs_[j] = NegMod(coeffs_[n - j], q);
  return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  if (!SameContext(o)) RingMismatch();
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = AddMod(coeffs_[i], o.coeffs_[i], q);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  if (!SameContext(o)) RingMismatch();
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = SubMod(coeffs_[i], o.coeffs_[i], q);
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& o) {
  if (!SameContext(o)) RingMismatch();
  NttForm a = ToNtt(*this);
  a *= ToNtt(o);
  *this = FromNtt(a);
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r(ctx_);
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = NegMod(coeffs_[i], q);
  return r;
}

RingElement RingElement::ScalarMul(uint64_t c) const {
  RingElement r(ctx_);
  const uint64_t q = ctx_->q();
  c %= q;
  const uint64_t c_shoup = ShoupPrecompute(c, q);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    r.coeffs_[i] = MulModShoup(coeffs_[i], c, c_shoup, q);
  }
  return r;
}

NttForm& NttForm::operator+=(const NttForm& o) {
  if (!ctx_->SameRing(*o.ctx_)) RingMismatch();
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < evals_.size(); ++i) evals_[i] = AddMod(evals_[i], o.evals_[i], q);
  return *this;
}

NttForm& NttForm::operator*=(const NttForm& o) {
  if (!ctx_->SameRing(*o.ctx_)) RingMismatch();
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < evals_.size(); ++i) evals_[i] = MulMod(evals_[i], o.evals_[i], q);
  return *this;
}

void NttForm::MulAcc(const NttForm& a, const NttForm& b) {
  if (!ctx_->SameRing(*a.ctx_) || !ctx_->SameRing(*b.ctx_)) RingMismatch();
  const uint64_t q = ctx_->q();
  for (size_t i = 0; i < evals_.size(); ++i) {
    evals_[i] = AddMod(evals_[i], MulMod(a.evals_[i], b.evals_[i], q), q);
  }
}

absl::StatusOr<RingElement> Add(const RingElement& a, const RingElement& b) {
  LPKEET_RETURN_IF_ERROR(CheckPair(a, b));
  return a + b;
}

absl::StatusOr<RingElement> Sub(const RingElement& a, const RingElement& b) {
  LPKEET_RETURN_IF_ERROR(CheckPair(a, b));
  return a - b;
}

absl::StatusOr<RingElement> Mul(const RingElement& a, const RingElement& b) {
  LPKEET_RETURN_IF_ERROR(CheckPair(a, b));
  return a * b;
}

absl::StatusOr<NttForm> NttForward(const RingElement& x) {
  if (!x.initialized()) {
    return MakeError(ErrorKind::kNotInitialized, "no root-of-unity table");
  }
  return ToNtt(x);
}

absl::StatusOr<RingElement> NttInverse(const NttForm& y) {
  if (y.context() == nullptr) {
    return MakeError(ErrorKind::kNotInitialized, "no root-of-unity table");
  }
  return FromNtt(y);
}

NttForm ToNtt(const RingElement& x) {
  std::vector<uint64_t> v = x.coeffs();
  x.context()->Forward(v);
  return NttForm(x.context(), std::move(v));
}

RingElement FromNtt(const NttForm& y) {
  std::vector<uint64_t> v = y.evals();
  y.context()->Inverse(v);
  return RingElement(y.context(), std::move(v));
}

bool IsInvertible(const RingElement& a) {
  if (!a.initialized()) return false;
  const NttForm f = ToNtt(a);
  for (uint64_t e : f.evals()) {
    if (e == 0) return false;
  }
  return true;
}

absl::StatusOr<RingElement> Invert(const RingElement& a) {
  if (!a.initialized()) {
    return MakeError(ErrorKind::kNotInitialized, "ring element has no context");
  }
  NttForm f = ToNtt(a);
  std::vector<uint64_t> inv = f.evals();
  const uint64_t q = a.context()->q();
  for (uint64_t& e : inv) {
    if (e == 0) return MakeError(ErrorKind::kNotInvertible, "zero NTT slot");
    e = InvModPrime(e, q);
  }
  return FromNtt(NttForm(a.context(), std::move(inv)));
}

std::vector<uint8_t> DecodeBits(const RingElement& w) {
  const uint64_t q = w.context()->q();
  std::vector<uint8_t> bits(w.n());
  for (uint32_t i = 0; i < w.n(); ++i) bits[i] = DecodeHalf(w[i], q);
  return bits;
}

RingElement SampleUniform(const RingPtr& ctx, Rng& rng) {
  RingElement r(ctx);
  for (uint32_t i = 0; i < ctx->n(); ++i) r.mutable_coeff(i) = rng.UniformBelow(ctx->q());
  return r;
}

absl::StatusOr<RingElement> EncodeMessage(const RingPtr& ctx,
                                          std::span<const uint8_t> bits) {
  if (bits.size() != ctx->n()) {
    return MakeError(ErrorKind::kInvalidMessage,
                     absl::StrCat("message needs ", ctx->n(), " bits, got ", bits.size()));
  }
  RingElement r(ctx);
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) return MakeError(ErrorKind::kInvalidMessage, "entry is not a bit");
    r.mutable_coeff(i) = bits[i];
  }
  return r;
}

bool IsBinary(const RingElement& m) {
  for (uint64_t c : m.coeffs()) {
    if (c > 1) return false;
  }
  return true;
}

RingElement ScaleHalfQ(const RingElement& m) {
  return m.ScalarMul(m.context()->q() / 2);
}

RingElement MulSchoolbook(const RingElement& a, const RingElement& b) {
  const uint64_t q = a.context()->q();
  const uint32_t n = a.n();
  std::vector<uint64_t> c(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      const uint64_t p = MulMod(a[i], b[j], q);
      const uint32_t d = i + j;
      if (d < n) {
        c[d] = AddMod(c[d], p, q);
      } else {
        c[d - n] = SubMod(c[d - n], p, q);
      }
    }
  }
  return RingElement(a.context(), std::move(c));
}

void AppendBytes(const RingElement& x, std::vector<uint8_t>& out) {
  for (uint64_t c : x.coeffs()) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<uint8_t>(c >> (8 * b)));
  }
}

absl::StatusOr<RingElement> ElementFromBytes(const RingPtr& ctx,
                                             std::span<const uint8_t> bytes) {
  if (bytes.size() != 8ULL * ctx->n()) {
    return MakeError(ErrorKind::kMalformed, "ring element byte length mismatch");
  }
  std::vector<uint64_t> coeffs(ctx->n());
  for (uint32_t i = 0; i < ctx->n(); ++i) {
    uint64_t c = 0;
    for (int b = 7; b >= 0; --b) c = (c << 8) | bytes[8 * i + b];
    if (c >= ctx->q()) {
      return MakeError(ErrorKind::kMalformed, "ring coefficient out of range");
    }
    coeffs[i] = c;
  }
  return RingElement(ctx, std::move(coeffs));
}

}  // namespace lpkeet
