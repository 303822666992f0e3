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

#include "lpkeet/pkeet_int.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_join.h"
#include "lpkeet/hashing.h"
#include "lpkeet/modarith.h"
#include "lpkeet/ots.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

void AppendWords(std::span<const uint64_t> words, std::vector<uint8_t>& out) {
  for (uint64_t w : words) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(w >> (8 * i)));
  }
}

// round(q X) mod q with X ~ N(0, alpha / sqrt(2 pi)).
int64_t RoundedGaussian(double alpha, uint64_t q, Rng& rng) {
  const double std_dev = alpha / std::sqrt(2 * std::numbers::pi);
  return std::llround(static_cast<double>(q) * std_dev * rng.StandardNormal());
}

bool IsBitVector(std::span<const uint8_t> bits, size_t len) {
  if (bits.size() != len) return false;
  for (uint8_t b : bits) {
    if (b > 1) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<IntPkeet> IntPkeet::Create(const ParamsInt& params) {
  const std::vector<std::string> violations = Validate(params);
  if (!violations.empty()) {
    return MakeError(ErrorKind::kInvalidParams,
                     "integer parameters violate: " + absl::StrJoin(violations, ", "));
  }
  return IntPkeet(params, ParamsDigest(params));
}

absl::StatusOr<std::pair<PkInt, SkInt>> IntPkeet::Setup(Rng& rng) const {
  const ParamsInt& p = params_;
  LPKEET_ASSIGN_OR_RETURN(IntTrapGenResult ga, TrapGenInt(p, rng));
  LPKEET_ASSIGN_OR_RETURN(IntTrapGenResult gb, TrapGenInt(p, rng));
  PkInt pk;
  pk.a = std::move(ga.a);
  pk.a_prime = std::move(gb.a);
  for (uint32_t i = 0; i < p.l; ++i) pk.a_i.push_back(IntMatrix::Uniform(p.n, p.m, p.q, rng));
  pk.b = IntMatrix::Uniform(p.n, p.m, p.q, rng);
  pk.u = IntMatrix::Uniform(p.n, p.t_msg, p.q, rng);
  SkInt sk{std::move(ga.trapdoor), std::move(gb.trapdoor), std::move(ga.basis),
           std::move(gb.basis)};
  return std::make_pair(std::move(pk), std::move(sk));
}

std::vector<uint8_t> IntPkeet::MessageHash(std::span<const uint8_t> msg) const {
  return HashMessageInt(digest_, msg, params_.t_msg);
}

std::vector<int8_t> IntPkeet::ExtensionSigns(const CtInt& ct) const {
  std::vector<uint8_t> bytes;
  AppendWords(ct.c1, bytes);
  AppendWords(ct.c2, bytes);
  AppendWords(ct.d.data(), bytes);
  return HashPmOne(digest_, bytes, params_.l);
}

IntMatrix IntPkeet::Extension(const std::vector<IntMatrix>& a_i, const IntMatrix& b,
                              const std::vector<int8_t>& signs) const {
  IntMatrix out = b;
  for (size_t i = 0; i < signs.size(); ++i) out.AddScaled(a_i[i], signs[i]);
  return out;
}

absl::StatusOr<CtInt> IntPkeet::Encrypt(const PkInt& pk, std::span<const uint8_t> msg,
                                        Rng& rng) const {
  const ParamsInt& p = params_;
  if (!IsBitVector(msg, p.t_msg)) {
    return MakeError(ErrorKind::kInvalidMessage, "message must be t_msg bits");
  }
  const uint64_t q = p.q;
  const uint64_t half = q / 2;
  std::vector<uint64_t> s1(p.n), s2(p.n);
  for (auto& v : s1) v = rng.UniformBelow(q);
  for (auto& v : s2) v = rng.UniformBelow(q);

  CtInt ct;
  const std::vector<uint8_t> hashed = MessageHash(msg);
  ct.c1 = pk.u.TransposeMul(s1);
  ct.c2 = pk.u.TransposeMul(s2);
  for (uint32_t j = 0; j < p.t_msg; ++j) {
    ct.c1[j] = AddMod(ct.c1[j], ReduceSigned(RoundedGaussian(p.alpha, q, rng), q), q);
    ct.c2[j] = AddMod(ct.c2[j], ReduceSigned(RoundedGaussian(p.alpha, q, rng), q), q);
    if (msg[j]) ct.c1[j] = AddMod(ct.c1[j], half, q);
    if (hashed[j]) ct.c2[j] = AddMod(ct.c2[j], half, q);
  }

  const OtsSisKeys ots = OtsSisKeyGen(pk.a, p, rng);
  ct.d = ots.pub;
  const std::vector<int8_t> signs = ExtensionSigns(ct);
  const IntMatrix ext = Extension(pk.a_i, pk.b, signs);

  std::vector<int64_t> y1(p.m), y2(p.m);
  for (auto& v : y1) v = RoundedGaussian(p.alpha, q, rng);
  for (auto& v : y2) v = RoundedGaussian(p.alpha, q, rng);
  // z = R^T y with R = sum_i b_i R_i, R_i uniform in {-1, 1}^{m x m}. The
  // R_i are streamed row by row and never stored.
  std::vector<int64_t> z1(p.m, 0), z2(p.m, 0);
  std::vector<uint64_t> row((p.m + 63) / 64);
  for (uint32_t i = 0; i < p.l; ++i) {
    for (uint32_t r = 0; r < p.m; ++r) {
      for (auto& w : row) w = rng.Next64();
      if (y1[r] == 0 && y2[r] == 0) continue;
      for (uint32_t c = 0; c < p.m; ++c) {
        const int64_t entry = ((row[c / 64] >> (c % 64)) & 1) ? signs[i] : -signs[i];
        z1[c] += entry * y1[r];
        z2[c] += entry * y2[r];
      }
    }
  }

  auto build = [&](const IntMatrix& left, const std::vector<uint64_t>& s,
                   const std::vector<int64_t>& y, const std::vector<int64_t>& z) {
    std::vector<uint64_t> out = left.TransposeMul(s);
    const std::vector<uint64_t> tail = ext.TransposeMul(s);
    out.insert(out.end(), tail.begin(), tail.end());
    for (uint32_t c = 0; c < p.m; ++c) {
      out[c] = AddMod(out[c], ReduceSigned(y[c], q), q);
      out[p.m + c] = AddMod(out[p.m + c], ReduceSigned(z[c], q), q);
    }
    return out;
  };
  ct.c3 = build(pk.a, s1, y1, z1);
  ct.c4 = build(pk.a_prime, s2, y2, z2);

  std::vector<uint8_t> body;
  AppendWords(ct.c1, body);
  AppendWords(ct.c2, body);
  AppendWords(ct.c3, body);
  AppendWords(ct.c4, body);
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> d,
                          HashWeighted(digest_, body, p.k_sig, p.w_sig));
  LPKEET_ASSIGN_OR_RETURN(const std::vector<int64_t> sig, OtsSisSign(ots, d, p));
  ct.u.resize(p.m);
  for (uint32_t i = 0; i < p.m; ++i) ct.u[i] = ReduceSigned(sig[i], q);
  return ct;
}

absl::Status IntPkeet::CheckShape(const CtInt& ct) const {
  const ParamsInt& p = params_;
  auto residues = [&](const std::vector<uint64_t>& v, size_t len) {
    if (v.size() != len) return false;
    for (uint64_t x : v) {
      if (x >= p.q) return false;
    }
    return true;
  };
  bool good = residues(ct.c1, p.t_msg) && residues(ct.c2, p.t_msg) &&
              residues(ct.c3, 2 * size_t{p.m}) && residues(ct.c4, 2 * size_t{p.m}) &&
              residues(ct.u, p.m) && ct.d.rows() == p.n && ct.d.cols() == p.k_sig &&
              ct.d.q() == p.q && residues(ct.d.data(), size_t{p.n} * p.k_sig);
  if (!good) return MakeError(ErrorKind::kParamsMismatch, "ciphertext does not match parameters");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<uint8_t>> IntPkeet::Recover(const IntTrapdoorBasis& basis,
                                                      const IntMatrix& ext, const IntMatrix& u,
                                                      std::span<const uint64_t> c_short,
                                                      std::span<const uint64_t> c_long,
                                                      Rng& rng) const {
  const uint64_t q = params_.q;
  LPKEET_ASSIGN_OR_RETURN(const auto e, SampleLeft(basis, ext, u, params_.sigma, rng));
  std::vector<uint8_t> bits(params_.t_msg);
  for (uint32_t j = 0; j < params_.t_msg; ++j) {
    int128_t acc = 0;
    for (size_t i = 0; i < c_long.size(); ++i) acc += static_cast<int128_t>(e[j][i]) * c_long[i];
    bits[j] = DecodeHalf(SubMod(c_short[j], ReduceSigned128(acc, q), q), q);
  }
  return bits;
}

absl::StatusOr<std::vector<uint8_t>> IntPkeet::Decrypt(const PkInt& pk, const SkInt& sk,
                                                      const CtInt& ct, Rng& rng) const {
  const ParamsInt& p = params_;
  LPKEET_RETURN_IF_ERROR(CheckShape(ct));
  if (sk.basis_a == nullptr || sk.basis_a_prime == nullptr) {
    return MakeError(ErrorKind::kNotInitialized, "secret key bases are not attached");
  }
  std::vector<uint8_t> body;
  AppendWords(ct.c1, body);
  AppendWords(ct.c2, body);
  AppendWords(ct.c3, body);
  AppendWords(ct.c4, body);
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> d,
                          HashWeighted(digest_, body, p.k_sig, p.w_sig));
  std::vector<int64_t> sig(p.m);
  for (uint32_t i = 0; i < p.m; ++i) sig[i] = CenteredLift(ct.u[i], p.q);
  if (!OtsSisVerify(pk.a, ct.d, d, sig, p)) {
    return MakeError(ErrorKind::kRejectSignature, "one-time signature check failed");
  }
  const IntMatrix ext = Extension(pk.a_i, pk.b, ExtensionSigns(ct));
  LPKEET_ASSIGN_OR_RETURN(std::vector<uint8_t> msg,
                          Recover(*sk.basis_a, ext, pk.u, ct.c1, ct.c3, rng));
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> h,
                          Recover(*sk.basis_a_prime, ext, pk.u, ct.c2, ct.c4, rng));
  if (h != MessageHash(msg)) {
    return MakeError(ErrorKind::kRejectHash, "recovered hash does not match the message");
  }
  return msg;
}

TokenInt IntPkeet::Trapdoor(const PkInt& pk, const SkInt& sk) const {
  return TokenInt{sk.ta_prime, pk.a_prime, pk.a_i, pk.b, pk.u, sk.basis_a_prime};
}

absl::StatusOr<bool> IntPkeet::Test(const TokenInt& td_i, const CtInt& ct_i,
                                    const TokenInt& td_j, const CtInt& ct_j, Rng& rng) const {
  LPKEET_RETURN_IF_ERROR(CheckShape(ct_i));
  LPKEET_RETURN_IF_ERROR(CheckShape(ct_j));
  if (td_i.basis_a_prime == nullptr || td_j.basis_a_prime == nullptr) {
    return MakeError(ErrorKind::kNotInitialized, "token basis is not attached");
  }
  auto side = [&](const TokenInt& td, const CtInt& ct) {
    const IntMatrix ext = Extension(td.a_i, td.b, ExtensionSigns(ct));
    return Recover(*td.basis_a_prime, ext, td.u, ct.c2, ct.c4, rng);
  };
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> h_i, side(td_i, ct_i));
  LPKEET_ASSIGN_OR_RETURN(const std::vector<uint8_t> h_j, side(td_j, ct_j));
  return h_i == h_j;
}

absl::Status IntPkeet::AttachBases(const PkInt& pk, SkInt& sk) const {
  LPKEET_ASSIGN_OR_RETURN(sk.basis_a, IntTrapdoorBasis::FromGadget(pk.a, sk.ta, params_.k));
  LPKEET_ASSIGN_OR_RETURN(sk.basis_a_prime,
                          IntTrapdoorBasis::FromGadget(pk.a_prime, sk.ta_prime, params_.k));
  return absl::OkStatus();
}

absl::Status IntPkeet::AttachBasis(TokenInt& td) const {
  LPKEET_ASSIGN_OR_RETURN(td.basis_a_prime,
                          IntTrapdoorBasis::FromGadget(td.a_prime, td.ta_prime, params_.k));
  return absl::OkStatus();
}

}  // namespace lpkeet
