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

#include "lpkeet/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "absl/strings/escaping.h"
#include "absl/strings/str_format.h"
#include "lpkeet/hashing.h"
#include "lpkeet/matlattice.h"
#include "lpkeet/modarith.h"
#include "lpkeet/ots.h"
#include "lpkeet/pkeet_int.h"
#include "lpkeet/pkeet_ring.h"
#include "lpkeet/sampling.h"
#include "lpkeet/serialize.h"
#include "lpkeet/shake.h"
#include "lpkeet/status.h"
#include "lpkeet/trapdoor_ring.h"

namespace lpkeet {

namespace {

constexpr uint32_t kLambda = 128;
constexpr uint32_t kRingN = 256;
constexpr uint32_t kIntN = 32;

// Pinned limits and tolerances.
constexpr double kRingCorrectnessLimit = 60;
constexpr double kTruthTableLimit = 120;
constexpr double kIntRoundTripLimit = 600;
constexpr double kBaseVarianceTol = 0.03;
constexpr double kPreimageVarianceTol = 0.15;

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome Fail(const absl::Status& s) { return {false, std::string(s.message())}; }

Rng FixedRng(uint8_t tag) {
  Rng::Seed s{};
  s.fill(0xa5);
  s[0] = tag;
  return Rng(s);
}

std::vector<uint8_t> RandomBits(size_t n, Rng& rng) {
  std::vector<uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<uint8_t>(rng.Bit());
  return bits;
}

RingPtr ContextFor(const ParamsRing& p) {
  return *RingContext::Create(p.n, p.q, ParamsDigest(p));
}

RingElement RandomUnit(const RingPtr& ctx, Rng& rng) {
  for (;;) {
    RingElement h = SampleUniform(ctx, rng);
    if (IsInvertible(h)) return h;
  }
}

// [1] Ring round trips.
Outcome RingCorrectness(Profile profile) {
  auto params = DeriveRingParams(kLambda, kRingN, profile);
  if (!params.ok()) return Fail(params.status());
  auto scheme = RingPkeet::Create(*params);
  if (!scheme.ok()) return Fail(scheme.status());
  Rng rng = FixedRng(1);
  auto keys = scheme->Setup(rng);
  if (!keys.ok()) return Fail(keys.status());
  constexpr int kTrials = 200;
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    std::vector<uint8_t> bits = RandomBits(params->n, rng);
    if (i == 0) std::fill(bits.begin(), bits.end(), 0);
    const RingElement msg = *EncodeMessage(scheme->ring(), bits);
    auto ct = scheme->Encrypt(keys->first, msg, rng);
    if (!ct.ok()) return Fail(ct.status());
    auto dec = scheme->Decrypt(keys->first, keys->second, *ct, rng);
    if (!dec.ok() || *dec != msg) ++failures;
  }
  return {failures == 0,
          absl::StrFormat("%d/%d messages recovered", kTrials - failures, kTrials)};
}

// [2] Equality test across two users.
Outcome TruthTable(Profile profile) {
  auto params = DeriveRingParams(kLambda, kRingN, profile);
  if (!params.ok()) return Fail(params.status());
  auto scheme = RingPkeet::Create(*params);
  if (!scheme.ok()) return Fail(scheme.status());
  Rng rng = FixedRng(2);
  auto user0 = scheme->Setup(rng);
  auto user1 = scheme->Setup(rng);
  if (!user0.ok()) return Fail(user0.status());
  if (!user1.ok()) return Fail(user1.status());
  const TokenRing td0 = scheme->Trapdoor(user0->first, user0->second);
  const TokenRing td1 = scheme->Trapdoor(user1->first, user1->second);

  constexpr int kPairs = 100;
  int equal_ok = 0, distinct_ok = 0;
  for (int i = 0; i < 2 * kPairs; ++i) {
    const bool same = i < kPairs;
    const RingElement m0 = *EncodeMessage(scheme->ring(), RandomBits(params->n, rng));
    const RingElement m1 =
        same ? m0 : *EncodeMessage(scheme->ring(), RandomBits(params->n, rng));
    auto ct0 = scheme->Encrypt(user0->first, m0, rng);
    auto ct1 = scheme->Encrypt(user1->first, m1, rng);
    if (!ct0.ok()) return Fail(ct0.status());
    if (!ct1.ok()) return Fail(ct1.status());
    auto eq = scheme->Test(td0, *ct0, td1, *ct1, rng);
    if (!eq.ok()) return Fail(eq.status());
    if (*eq != (m0 == m1)) continue;
    (same ? equal_ok : distinct_ok) += 1;
  }
  return {equal_ok == kPairs && distinct_ok == kPairs,
          absl::StrFormat("equal pairs %d/%d -> 1, independent pairs %d/%d -> 0", equal_ok,
                          kPairs, distinct_ok, kPairs)};
}

void Perturb(RingElement& e, Rng& rng) {
  const uint64_t q = e.context()->q();
  const size_t c = rng.UniformBelow(e.n());
  e.mutable_coeff(c) = AddMod(e[c], 1 + rng.UniformBelow(q - 1), q);
}

void Perturb(uint64_t& v, uint64_t q, Rng& rng) { v = AddMod(v, 1 + rng.UniformBelow(q - 1), q); }

// [3] Single-coefficient modifications must be rejected.
Outcome TamperRejection(Profile profile) {
  int ring_rejected = 0, int_rejected = 0;
  constexpr int kRingTampers = 100, kIntTampers = 50, kPerCiphertext = 10;
  {
    auto params = DeriveRingParams(kLambda, kRingN, profile);
    if (!params.ok()) return Fail(params.status());
    auto scheme = RingPkeet::Create(*params);
    if (!scheme.ok()) return Fail(scheme.status());
    Rng rng = FixedRng(3);
    auto keys = scheme->Setup(rng);
    if (!keys.ok()) return Fail(keys.status());
    for (int i = 0; i < kRingTampers / kPerCiphertext; ++i) {
      const RingElement msg = *EncodeMessage(scheme->ring(), RandomBits(params->n, rng));
      auto ct = scheme->Encrypt(keys->first, msg, rng);
      if (!ct.ok()) return Fail(ct.status());
      for (int j = 0; j < kPerCiphertext; ++j) {
        CtRing bad = *ct;
        switch (rng.UniformBelow(6)) {
          case 0:
            Perturb(bad.ct1, rng);
            break;
          case 1:
            Perturb(bad.ct2, rng);
            break;
          case 2:
            Perturb(bad.ct3[rng.UniformBelow(bad.ct3.size())], rng);
            break;
          case 3:
            Perturb(bad.ct4[rng.UniformBelow(bad.ct4.size())], rng);
            break;
          case 4:
            Perturb(bad.sig[rng.UniformBelow(bad.sig.size())], rng);
            break;
          default:
            Perturb(bad.v.v[rng.UniformBelow(2)], rng);
        }
        if (!scheme->Decrypt(keys->first, keys->second, bad, rng).ok()) ++ring_rejected;
      }
    }
  }
  {
    auto params = DeriveIntParams(kLambda, kIntN, profile);
    if (!params.ok()) return Fail(params.status());
    auto scheme = IntPkeet::Create(*params);
    if (!scheme.ok()) return Fail(scheme.status());
    Rng rng = FixedRng(4);
    auto keys = scheme->Setup(rng);
    if (!keys.ok()) return Fail(keys.status());
    const uint64_t q = params->q;
    for (int i = 0; i < kIntTampers / kPerCiphertext; ++i) {
      auto ct = scheme->Encrypt(keys->first, RandomBits(params->t_msg, rng), rng);
      if (!ct.ok()) return Fail(ct.status());
      for (int j = 0; j < kPerCiphertext; ++j) {
        CtInt bad = *ct;
        const uint64_t which = rng.UniformBelow(6);
        if (which == 5) {
          auto& d = bad.d.mutable_data();
          Perturb(d[rng.UniformBelow(d.size())], q, rng);
        } else {
          std::vector<uint64_t>* parts[] = {&bad.c1, &bad.c2, &bad.c3, &bad.c4, &bad.u};
          auto& v = *parts[which];
          Perturb(v[rng.UniformBelow(v.size())], q, rng);
        }
        if (!scheme->Decrypt(keys->first, keys->second, bad, rng).ok()) ++int_rejected;
      }
    }
  }
  return {ring_rejected == kRingTampers && int_rejected == kIntTampers,
          absl::StrFormat("ring %d/%d rejected, int %d/%d rejected", ring_rejected,
                          kRingTampers, int_rejected, kIntTampers)};
}

// [4] Exact algebraic identities.
Outcome ExactGates() {
  const ParamsRing rp = *DeriveRingParams(kLambda, kRingN, Profile::kToy);
  const RingPtr ctx = ContextFor(rp);
  Rng rng = FixedRng(5);

  int identity_ok = 0;
  constexpr int kTrapGenTrials = 50;
  for (int t = 0; t < kTrapGenTrials; ++t) {
    const RingElement h = t % 2 == 0 ? RingElement(ctx) : SampleUniform(ctx, rng);
    auto gen = TrapGen(rp, ctx, h, rng);
    if (!gen.ok()) return Fail(gen.status());
    const std::vector<RingElement> image = TrapdoorImage(gen->a, gen->trapdoor.t);
    bool ok = true;
    for (uint32_t j = 0; j < rp.k; ++j) ok &= image[j] == h.ScalarMul((1ULL << j) % rp.q);
    identity_ok += ok;
  }

  int preimage_ok = 0;
  constexpr int kPreimageTrials = 1000, kPerTrapdoor = 100;
  for (int t = 0; t < kPreimageTrials / kPerTrapdoor; ++t) {
    auto gen = TrapGen(rp, ctx, RingElement(ctx), rng);
    if (!gen.ok()) return Fail(gen.status());
    for (int i = 0; i < kPerTrapdoor; ++i) {
      const RingElement h = RandomUnit(ctx, rng);
      const std::vector<RingElement> a_h = ApplyTagShift(gen->a, h);
      const RingElement u = SampleUniform(ctx, rng);
      auto x = gen->sampler->Sample(a_h, h, u, rng);
      if (!x.ok()) return Fail(x.status());
      preimage_ok += InnerProduct(a_h, *x) == u;
    }
  }

  const ParamsInt ip = *DeriveIntParams(kLambda, kIntN, Profile::kToy);
  int left_ok = 0;
  constexpr int kLeftTrials = 20, kLeftColumns = 4;
  for (int t = 0; t < kLeftTrials; ++t) {
    auto gen = TrapGenInt(ip, rng);
    if (!gen.ok()) return Fail(gen.status());
    const IntMatrix m1 = IntMatrix::Uniform(ip.n, ip.m, ip.q, rng);
    const IntMatrix u = IntMatrix::Uniform(ip.n, kLeftColumns, ip.q, rng);
    auto e = SampleLeft(*gen->basis, m1, u, ip.sigma, rng);
    if (!e.ok()) return Fail(e.status());
    bool ok = e->size() == kLeftColumns;
    for (size_t j = 0; ok && j < e->size(); ++j) {
      const std::span<const int64_t> col((*e)[j]);
      const std::vector<uint64_t> head = gen->a.MulSigned(col.first(ip.m));
      const std::vector<uint64_t> tail = m1.MulSigned(col.subspan(ip.m));
      for (uint32_t r = 0; r < ip.n; ++r) ok &= AddMod(head[r], tail[r], ip.q) == u.at(r, j);
    }
    left_ok += ok;
  }

  constexpr int kOtsTrials = 1000;
  int ots_ring_ok = 0, ots_sis_ok = 0;
  std::vector<RingElement> h_ring;
  for (uint32_t i = 0; i < rp.base_len; ++i) h_ring.push_back(SampleUniform(ctx, rng));
  const IntMatrix h_sis = IntMatrix::Uniform(ip.n, ip.m, ip.q, rng);
  for (int t = 0; t < kOtsTrials; ++t) {
    const std::vector<uint8_t> label = {static_cast<uint8_t>(t), static_cast<uint8_t>(t >> 8)};
    const OtsRingKeys rk = OtsRingKeyGen(h_ring, rp, rng);
    auto rmsg = HashToSparse(ctx, label, rp.delta_w);
    if (!rmsg.ok()) return Fail(rmsg.status());
    auto rsig = OtsRingSign(rk.secret, *rmsg, rp);
    ots_ring_ok += rsig.ok() && OtsRingVerify(h_ring, rk.pub, *rmsg, *rsig, rp);

    const OtsSisKeys sk = OtsSisKeyGen(h_sis, ip, rng);
    auto smsg = HashWeighted(ParamsDigest(ip), label, ip.k_sig, ip.w_sig);
    if (!smsg.ok()) return Fail(smsg.status());
    auto ssig = OtsSisSign(sk, *smsg, ip);
    ots_sis_ok += ssig.ok() && OtsSisVerify(h_sis, sk.pub, *smsg, *ssig, ip);
  }

  const bool ok = identity_ok == kTrapGenTrials && preimage_ok == kPreimageTrials &&
                  left_ok == kLeftTrials && ots_ring_ok == kOtsTrials &&
                  ots_sis_ok == kOtsTrials;
  return {ok, absl::StrFormat("trapgen %d/%d, preimage %d/%d, sample_left %d/%d, "
                              "ots ring %d/%d, ots sis %d/%d",
                              identity_ok, kTrapGenTrials, preimage_ok, kPreimageTrials, left_ok,
                              kLeftTrials, ots_ring_ok, kOtsTrials, ots_sis_ok, kOtsTrials)};
}

uint64_t EvalAt(const RingElement& a, uint64_t r, uint64_t q) {
  uint64_t acc = 0;
  for (int i = static_cast<int>(a.n()) - 1; i >= 0; --i) acc = AddMod(MulMod(acc, r, q), a[i], q);
  return acc;
}

// [5] Agreement with direct oracles on small instances.
Outcome OracleEquivalence() {
  Rng rng = FixedRng(6);
  const ParamsRing rp = *DeriveRingParams(kLambda, kRingN, Profile::kToy);
  constexpr int kPairs = 1000;
  int ntt_ok = 0;
  for (auto [n, q] : {std::pair<uint32_t, uint64_t>{4, 97}, {rp.n, rp.q}}) {
    const RingPtr ctx = *RingContext::Create(n, q);
    for (int i = 0; i < kPairs; ++i) {
      const RingElement a = SampleUniform(ctx, rng);
      const RingElement b = SampleUniform(ctx, rng);
      ntt_ok += a * b == MulSchoolbook(a, b);
    }
  }

  constexpr uint64_t q = 97;
  const RingPtr small = *RingContext::Create(4, q);
  int decode_ok = 0;
  for (int msg = 0; msg < 16; ++msg) {
    std::vector<uint8_t> bits(4);
    for (int i = 0; i < 4; ++i) bits[i] = (msg >> i) & 1;
    decode_ok += DecodeBits(ScaleHalfQ(*EncodeMessage(small, bits))) == bits;
  }

  // Slot oracle: a is a unit iff a(r) != 0 at every root r of x^4 + 1, and
  // then inv(a)(r) = a(r)^(q-2).
  std::vector<uint64_t> roots;
  for (uint64_t r = 1; r < q; ++r) {
    if (PowMod(r, 4, q) == q - 1) roots.push_back(r);
  }
  int inv_ok = 0;
  constexpr int kInvTrials = 1000;
  for (int t = 0; t < kInvTrials; ++t) {
    RingElement a(small);
    for (uint32_t i = 0; i < 4; ++i) a.mutable_coeff(i) = rng.UniformBelow(6);
    bool unit = roots.size() == 4;
    for (uint64_t r : roots) unit &= EvalAt(a, r, q) != 0;
    auto inv = Invert(a);
    bool ok = inv.ok() == unit && IsInvertible(a) == unit;
    if (ok && unit) {
      for (uint64_t r : roots) ok &= EvalAt(*inv, r, q) == PowMod(EvalAt(a, r, q), q - 2, q);
    }
    inv_ok += ok;
  }
  return {ntt_ok == 2 * kPairs && decode_ok == 16 && inv_ok == kInvTrials,
          absl::StrFormat("ntt %d/%d, decode %d/16, inversion %d/%d", ntt_ok, 2 * kPairs,
                          decode_ok, inv_ok, kInvTrials)};
}

// [6] Sampler statistics.
Outcome SamplerStatistics() {
  constexpr double kPi = std::numbers::pi;
  Rng rng = FixedRng(7);

  constexpr double kWidth = 4.0;
  double z = 0, m2 = 0;
  for (int x = -60; x <= 60; ++x) {
    const double r = std::exp(-kPi * x * x / (kWidth * kWidth));
    z += r;
    m2 += r * x * x;
  }
  const double exact_var = m2 / z;
  constexpr int kDraws = 1000000;
  double sum = 0, sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    auto x = SampleZ({kWidth, 0.0}, rng);
    if (!x.ok()) return Fail(x.status());
    sum += static_cast<double>(*x);
    sq += static_cast<double>(*x) * static_cast<double>(*x);
  }
  const double mean = sum / kDraws;
  const double base_rel = std::abs((sq / kDraws - mean * mean) / exact_var - 1);

  const ParamsRing small = *DeriveRingParams(kLambda, 16, Profile::kToy);
  const RingPtr ctx = ContextFor(small);
  auto gen = TrapGen(small, ctx, RingElement(ctx), rng);
  if (!gen.ok()) return Fail(gen.status());
  const RingElement one = RingElement::Constant(ctx, 1);
  const std::vector<RingElement> a_h = ApplyTagShift(gen->a, one);
  constexpr int kPreDraws = 4000;
  std::vector<double> sum_sq(small.m, 0);
  for (int d = 0; d < kPreDraws; ++d) {
    auto x = gen->sampler->Sample(a_h, one, SampleUniform(ctx, rng), rng);
    if (!x.ok()) return Fail(x.status());
    for (uint32_t i = 0; i < small.m; ++i) {
      for (int64_t c : (*x)[i].Centered()) sum_sq[i] += static_cast<double>(c) * c;
    }
  }
  const double expected = small.zeta * small.zeta / (2 * kPi);
  double pre_rel = 0;
  for (double s : sum_sq) {
    pre_rel = std::max(pre_rel, std::abs(s / (kPreDraws * small.n) / expected - 1));
  }

  const ParamsRing rp = *DeriveRingParams(kLambda, kRingN, Profile::kToy);
  GadgetSampler g(rp.q, rp.k, rp.alpha_g, rp.t_tail);
  constexpr int kGadgetDraws = 10000;
  int congruent = 0;
  for (int i = 0; i < kGadgetDraws; ++i) {
    const uint64_t v = i == 0 ? 0 : rng.UniformBelow(rp.q);
    const std::vector<int64_t> zs = g.Sample(v, rng);
    int128_t acc = 0;
    for (size_t j = 0; j < zs.size(); ++j) acc += static_cast<int128_t>(zs[j]) << j;
    congruent += ReduceSigned128(acc, rp.q) == v;
  }

  return {base_rel <= kBaseVarianceTol && pre_rel <= kPreimageVarianceTol &&
              congruent == kGadgetDraws,
          absl::StrFormat("base variance off by %.2f%% (tol 3%%), preimage variance worst "
                          "slot off by %.1f%% (tol 15%%), gadget congruence %d/%d",
                          100 * base_rel, 100 * pre_rel, congruent, kGadgetDraws)};
}

// [7] Integer scheme round trips.
Outcome IntRoundTrip(Profile profile) {
  auto params = DeriveIntParams(kLambda, kIntN, profile);
  if (!params.ok()) return Fail(params.status());
  auto scheme = IntPkeet::Create(*params);
  if (!scheme.ok()) return Fail(scheme.status());
  Rng rng = FixedRng(8);
  auto keys = scheme->Setup(rng);
  if (!keys.ok()) return Fail(keys.status());
  constexpr int kTrials = 50;
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    std::vector<uint8_t> msg = RandomBits(params->t_msg, rng);
    if (i == 0) std::fill(msg.begin(), msg.end(), 0);
    auto ct = scheme->Encrypt(keys->first, msg, rng);
    if (!ct.ok()) return Fail(ct.status());
    auto dec = scheme->Decrypt(keys->first, keys->second, *ct, rng);
    if (!dec.ok() || *dec != msg) ++failures;
  }
  return {failures == 0,
          absl::StrFormat("%d/%d messages recovered", kTrials - failures, kTrials)};
}

std::string Hex(std::span<const uint8_t> v) {
  return absl::BytesToHexString(
      absl::string_view(reinterpret_cast<const char*>(v.data()), v.size()));
}

// Frozen vectors; the same values are pinned in the unit tests.
int FrozenVectorsMatched(int* total) {
  int ok = 0;
  *total = 0;
  auto check = [&](bool b) {
    ++*total;
    ok += b;
  };
  const uint8_t abc[] = {'a', 'b', 'c'};
  check(Hex(Shake256Digest(abc, 32)) ==
        "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739");
  Rng::Seed counting;
  std::iota(counting.begin(), counting.end(), 0);
  Rng rng(counting);
  check(rng.Next64() == 0x0280ce40887cf069ULL);
  check(rng.Next64() == 0x5b3d2c883909b34dULL);
  check(ParamsDigest(*DeriveRingParams(80, 256, Profile::kToy)) == 0x59ec9ac2b4344841ULL);
  constexpr uint64_t kDigest = 0x0123456789abcdefULL;
  const RingPtr ctx16 = *RingContext::Create(16, 422497919329ULL, kDigest);
  const RingElement h = HashMessageRing(ctx16, abc);
  std::string bits;
  for (uint64_t c : h.coeffs()) bits += static_cast<char>('0' + c);
  check(bits == "0101101111010011");
  auto hd = HashWeighted(kDigest, abc, 64, 8);
  std::vector<int> ones;
  if (hd.ok()) {
    for (int i = 0; i < 64; ++i) {
      if ((*hd)[i]) ones.push_back(i);
    }
  }
  check(ones == std::vector<int>{1, 5, 15, 19, 22, 31, 54, 62});
  return ok;
}

struct Files {
  std::vector<uint8_t> pk, sk, ct;
  bool reencodes = false;
};

absl::StatusOr<Files> RingFiles(const RingPkeet& scheme) {
  Rng key_rng = FixedRng(9);
  LPKEET_ASSIGN_OR_RETURN(auto keys, scheme.Setup(key_rng));
  Rng enc_rng = FixedRng(10);
  const RingElement msg = *EncodeMessage(scheme.ring(), RandomBits(scheme.params().n, enc_rng));
  LPKEET_ASSIGN_OR_RETURN(CtRing ct, scheme.Encrypt(keys.first, msg, enc_rng));
  Files f{EncodeRingPk(scheme.params(), keys.first), EncodeRingSk(scheme.params(), keys.second),
          EncodeRingCt(scheme.params(), ct)};
  LPKEET_ASSIGN_OR_RETURN(PkRing pk, DecodeRingPk(scheme, f.pk));
  LPKEET_ASSIGN_OR_RETURN(CtRing ct2, DecodeRingCt(scheme, f.ct));
  f.reencodes = EncodeRingPk(scheme.params(), pk) == f.pk &&
                EncodeRingCt(scheme.params(), ct2) == f.ct;
  return f;
}

absl::StatusOr<Files> IntFiles(const IntPkeet& scheme) {
  Rng key_rng = FixedRng(11);
  LPKEET_ASSIGN_OR_RETURN(auto keys, scheme.Setup(key_rng));
  Rng enc_rng = FixedRng(12);
  LPKEET_ASSIGN_OR_RETURN(
      CtInt ct, scheme.Encrypt(keys.first, RandomBits(scheme.params().t_msg, enc_rng), enc_rng));
  Files f{EncodeIntPk(scheme.params(), keys.first), EncodeIntSk(scheme.params(), keys.second),
          EncodeIntCt(scheme.params(), ct)};
  LPKEET_ASSIGN_OR_RETURN(PkInt pk, DecodeIntPk(scheme, f.pk));
  LPKEET_ASSIGN_OR_RETURN(CtInt ct2, DecodeIntCt(scheme, f.ct));
  f.reencodes = EncodeIntPk(scheme.params(), pk) == f.pk &&
                EncodeIntCt(scheme.params(), ct2) == f.ct;
  return f;
}

bool SameFiles(const Files& a, const Files& b) {
  return a.pk == b.pk && a.sk == b.sk && a.ct == b.ct && a.reencodes && b.reencodes;
}

// [8] Seeded runs reproduce byte for byte; frozen vectors match.
Outcome Determinism(Profile profile) {
  auto rp = DeriveRingParams(kLambda, kRingN, profile);
  if (!rp.ok()) return Fail(rp.status());
  auto ring = RingPkeet::Create(*rp);
  if (!ring.ok()) return Fail(ring.status());
  auto r1 = RingFiles(*ring);
  auto r2 = RingFiles(*ring);
  if (!r1.ok()) return Fail(r1.status());
  if (!r2.ok()) return Fail(r2.status());

  auto ip = DeriveIntParams(kLambda, kIntN, profile);
  if (!ip.ok()) return Fail(ip.status());
  auto integer = IntPkeet::Create(*ip);
  if (!integer.ok()) return Fail(integer.status());
  auto i1 = IntFiles(*integer);
  auto i2 = IntFiles(*integer);
  if (!i1.ok()) return Fail(i1.status());
  if (!i2.ok()) return Fail(i2.status());

  const bool ring_same = SameFiles(*r1, *r2);
  const bool int_same = SameFiles(*i1, *i2);
  int total = 0;
  const int frozen = FrozenVectorsMatched(&total);
  return {ring_same && int_same && frozen == total,
          absl::StrFormat("ring files %s, int files %s, frozen vectors %d/%d",
                          ring_same ? "identical" : "DIFFER", int_same ? "identical" : "DIFFER",
                          frozen, total)};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome(Profile)> run;
};

}  // namespace

std::string FormatResult(const CriterionResult& r) {
  std::string time = absl::StrFormat("%.1f s", r.seconds);
  if (r.limit_seconds > 0) absl::StrAppendFormat(&time, " / limit %.0f s", r.limit_seconds);
  return absl::StrFormat("%s  [%d] %s: %s (%s)", r.pass ? "PASS" : "FAIL", r.id, r.name,
                         r.detail, time);
}

std::vector<CriterionResult> RunAcceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result) {
  const std::vector<Criterion> criteria = {
      {1, "ring correctness", kRingCorrectnessLimit, RingCorrectness},
      {2, "equality test truth table", kTruthTableLimit, TruthTable},
      {3, "tamper rejection", 0, TamperRejection},
      {4, "exact algebraic gates", 0, [](Profile) { return ExactGates(); }},
      {5, "oracle equivalence", 0, [](Profile) { return OracleEquivalence(); }},
      {6, "sampler statistics", 0, [](Profile) { return SamplerStatistics(); }},
      {7, "integer round trip", kIntRoundTripLimit, IntRoundTrip},
      {8, "determinism and frozen vectors", 0, Determinism},
  };
  std::vector<CriterionResult> results;
  for (const Criterion& c : criteria) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const Outcome out = c.run(options.profile);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CriterionResult r{c.id, c.name, out.ok, secs, c.limit, out.detail};
    if (c.limit > 0 && secs > c.limit) {
      r.pass = false;
      r.detail += ", over time limit";
    }
    results.push_back(r);
    if (on_result) on_result(r);
  }
  return results;
}

}  // namespace lpkeet
