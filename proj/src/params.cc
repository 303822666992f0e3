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

#include "lpkeet/params.h"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "lpkeet/modarith.h"
#include "lpkeet/shake.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

using KeyValues = std::map<std::string, std::string>;

// Every finite double is a dyadic rational; this recovers it exactly.
cpp_rational ExactRational(double x) {
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  const auto mant = static_cast<int64_t>(std::ldexp(frac, 53));
  cpp_rational r(mant);
  exp -= 53;
  if (exp >= 0) {
    r *= cpp_rational(cpp_int(1) << exp);
  } else {
    r /= cpp_rational(cpp_int(1) << -exp);
  }
  return r;
}

long double SigmaFloor(uint32_t n) {
  // sqrt(ln(2n/eps)/pi) with eps = 2^kEpsilonLog2.
  const long double ln_ratio =
      std::log(2.0L * n) - kEpsilonLog2 * std::numbers::ln2_v<long double>;
  return std::sqrt(ln_ratio / std::numbers::pi_v<long double>);
}

long double ZetaBoundLd(long double sigma, uint32_t k, uint32_t n,
                        long double t_prime) {
  const long double c = 1.0L / std::sqrt(2.0L * std::numbers::pi_v<long double>);
  return std::sqrt(5.0L) * c * sigma * sigma *
         (std::sqrt(static_cast<long double>(k) * n) +
          std::sqrt(2.0L * n) + t_prime);
}

uint32_t SparseWeight(uint32_t n) {
  return static_cast<uint32_t>(n / std::bit_width(n - 1));
}

uint64_t StrictOtsBound(uint32_t lambda, uint32_t n, uint32_t delta,
                        uint64_t q) {
  // (|M|^{1/n} 2^{lambda/n} q)^{1/2} with |M| = C(n, delta) 2^delta.
  const long double ln_m = std::lgamma(n + 1.0L) - std::lgamma(delta + 1.0L) -
                           std::lgamma(n - delta + 1.0L) +
                           delta * std::numbers::ln2_v<long double>;
  const long double e =
      0.5L * (ln_m / n + lambda * std::numbers::ln2_v<long double> / n +
              std::log(static_cast<long double>(q)));
  return static_cast<uint64_t>(std::llround(std::exp(e)));
}

std::string Dbl(double x) { return absl::StrFormat("%.17g", x); }

std::string Render(const KeyValues& kv) {
  std::string out;
  for (const auto& [key, value] : kv) absl::StrAppend(&out, key, "=", value, "\n");
  return out;
}

absl::StatusOr<KeyValues> ParseKv(absl::string_view text) {
  KeyValues kv;
  for (absl::string_view line : absl::StrSplit(text, '\n', absl::SkipEmpty())) {
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return MakeError(ErrorKind::kMalformed, "params line without '='");
    }
    auto [it, inserted] =
        kv.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    if (!inserted) {
      return MakeError(ErrorKind::kMalformed,
                       absl::StrCat("duplicate params key ", it->first));
    }
  }
  return kv;
}

class KvReader {
 public:
  explicit KvReader(const KeyValues& kv) : kv_(kv) {}

  template <typename T>
  void Uint(const char* key, T& out) {
    uint64_t v = 0;
    const std::string* s = Find(key);
    if (s == nullptr || !absl::SimpleAtoi(*s, &v) ||
        v > std::numeric_limits<T>::max()) {
      ok_ = false;
      return;
    }
    out = static_cast<T>(v);
  }

  void Double(const char* key, double& out) {
    const std::string* s = Find(key);
    if (s == nullptr || !absl::SimpleAtod(*s, &out)) ok_ = false;
  }

  void Prof(Profile& out) {
    const std::string* s = Find("profile");
    if (s == nullptr) {
      ok_ = false;
      return;
    }
    auto p = ParseProfile(*s);
    if (!p.ok()) {
      ok_ = false;
      return;
    }
    out = *p;
  }

  bool ok() const { return ok_; }

 private:
  const std::string* Find(const char* key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return nullptr;
    return &it->second;
  }

  const KeyValues& kv_;
  bool ok_ = true;
};

KeyValues RingKv(const ParamsRing& p) {
  return {{"alpha_g", Dbl(p.alpha_g)},
          {"b_ots", absl::StrCat(p.b_ots)},
          {"base_len", absl::StrCat(p.base_len)},
          {"delta_w", absl::StrCat(p.delta_w)},
          {"gamma", Dbl(p.gamma)},
          {"k", absl::StrCat(p.k)},
          {"lambda_sec", absl::StrCat(p.lambda_sec)},
          {"m", absl::StrCat(p.m)},
          {"mu", Dbl(p.mu)},
          {"n", absl::StrCat(p.n)},
          {"profile", std::string(ProfileName(p.profile))},
          {"q", absl::StrCat(p.q)},
          {"scheme", "ring"},
          {"sigma_trap", Dbl(p.sigma_trap)},
          {"t_prime", Dbl(p.t_prime)},
          {"t_tail", Dbl(p.t_tail)},
          {"tau", Dbl(p.tau)},
          {"zeta", Dbl(p.zeta)}};
}

KeyValues IntKv(const ParamsInt& p) {
  return {{"alpha", Dbl(p.alpha)},
          {"b_sig", absl::StrCat(p.b_sig)},
          {"delta_exp", Dbl(p.delta_exp)},
          {"k", absl::StrCat(p.k)},
          {"k_sig", absl::StrCat(p.k_sig)},
          {"l", absl::StrCat(p.l)},
          {"lambda_sec", absl::StrCat(p.lambda_sec)},
          {"m", absl::StrCat(p.m)},
          {"m_multiplier", absl::StrCat(p.m_multiplier)},
          {"n", absl::StrCat(p.n)},
          {"profile", std::string(ProfileName(p.profile))},
          {"q", absl::StrCat(p.q)},
          {"q_bound", absl::StrCat(p.q_bound)},
          {"scheme", "int"},
          {"sigma", Dbl(p.sigma)},
          {"t_msg", absl::StrCat(p.t_msg)},
          {"t_tail", Dbl(p.t_tail)},
          {"w_sig", absl::StrCat(p.w_sig)}};
}

uint64_t DigestOf(const std::string& text) {
  const auto bytes = Shake256Digest(
      {reinterpret_cast<const uint8_t*>(text.data()), text.size()}, 8);
  uint64_t d = 0;
  for (int i = 7; i >= 0; --i) d = (d << 8) | bytes[i];
  return d;
}

bool IsPowerOfTwo(uint32_t n) { return n != 0 && std::has_single_bit(n); }

long double IntOmega(uint32_t n) {
  return 2.0L * std::sqrt(std::log2(static_cast<long double>(n)));
}

}  // namespace

absl::string_view ProfileName(Profile p) {
  return p == Profile::kStrict ? "strict" : "toy";
}

absl::StatusOr<Profile> ParseProfile(absl::string_view name) {
  if (name == "strict") return Profile::kStrict;
  if (name == "toy") return Profile::kToy;
  return MakeError(ErrorKind::kInvalidParams,
                   absl::StrCat("unknown profile '", name, "'"));
}

double RingZetaLowerBound(const ParamsRing& p) {
  return static_cast<double>(ZetaBoundLd(p.sigma_trap, p.k, p.n, p.t_prime));
}

bool RingCorrectnessHolds(const ParamsRing& p) {
  const cpp_rational t = ExactRational(p.t_tail);
  const cpp_rational tau = ExactRational(p.tau);
  const cpp_rational zeta = ExactRational(p.zeta);
  const cpp_rational gamma = ExactRational(p.gamma);
  const cpp_rational n(p.n);
  const cpp_rational k(p.k);
  const cpp_rational quarter(p.q / 4);
  const cpp_rational rational_part =
      2 * t * t * tau * zeta * n + t * t * gamma * zeta * k * n;
  const cpp_rational slack = quarter - rational_part;
  if (slack <= 0) return false;
  // t*tau*sqrt(n) < slack  <=>  (t*tau)^2 * n < slack^2 (both sides positive).
  return t * t * tau * tau * n < slack * slack;
}

absl::StatusOr<ParamsRing> DeriveRingParams(uint32_t lambda_sec, uint32_t n,
                                            Profile profile) {
  if (!IsPowerOfTwo(n) || n < 16) {
    return MakeError(ErrorKind::kInvalidDegree,
                     absl::StrCat("ring degree must be a power of two >= 16, got ", n));
  }
  ParamsRing p;
  p.profile = profile;
  p.lambda_sec = lambda_sec;
  p.n = n;
  p.sigma_trap = std::ceil(100.0L * SigmaFloor(n)) / 100.0;
  p.alpha_g = std::sqrt(5.0) * p.sigma_trap;
  p.tau = p.sigma_trap;
  p.t_tail = kTailCut;
  p.t_prime = 2.0 * std::sqrt(static_cast<double>(n));
  p.mu = p.t_tail * p.sigma_trap * p.tau * std::sqrt(2.0 * n);
  p.gamma = 2.0 * p.t_tail * p.sigma_trap * p.tau * std::sqrt(static_cast<double>(n));
  p.delta_w = SparseWeight(n);

  const long double t = p.t_tail;
  const long double strict_floor =
      std::ceil(std::pow(static_cast<long double>(n), 2.5L) * std::log2(static_cast<long double>(n)));
  const uint64_t step = 2ULL * n;
  for (uint32_t k = 2; k <= 62; ++k) {
    const long double zeta = std::floor(ZetaBoundLd(p.sigma_trap, k, n, p.t_prime)) + 1;
    const long double lhs = t * p.tau * std::sqrt(static_cast<long double>(n)) +
                            2 * t * t * p.tau * zeta * n +
                            t * t * p.gamma * zeta * k * n;
    const long double lhs_inflated = std::ceil(lhs * (1 + 1e-12L));
    if (lhs_inflated >= static_cast<long double>(kModulusLimit)) break;
    uint64_t lo = std::max<uint64_t>((1ULL << (k - 1)) + 1,
                                     4 * (static_cast<uint64_t>(lhs_inflated) + 1));
    if (profile == Profile::kStrict) {
      lo = std::max<uint64_t>(lo, static_cast<uint64_t>(strict_floor));
    }
    const uint64_t hi = std::min<uint64_t>(1ULL << k, kModulusLimit - 1);
    if (lo > hi) continue;
    for (uint64_t q = (lo - 1 + step - 1) / step * step + 1; q <= hi; q += step) {
      if (!IsPrime(q)) continue;
      p.q = q;
      p.k = k;
      p.m = k + p.base_len;
      p.zeta = static_cast<double>(zeta);
      if (!RingCorrectnessHolds(p)) continue;
      p.b_ots = profile == Profile::kStrict
                    ? StrictOtsBound(lambda_sec, n, p.delta_w, q)
                    : 1;
      return p;
    }
  }
  return MakeError(ErrorKind::kParameterOverflow,
                   absl::StrCat("no modulus below 2^62 satisfies the correctness "
                                "bound for n=", n));
}

absl::StatusOr<ParamsInt> DeriveIntParams(uint32_t lambda_sec, uint32_t n,
                                          Profile profile, uint64_t q_bound) {
  if (n < 16) {
    return MakeError(ErrorKind::kInvalidParams,
                     absl::StrCat("integer dimension must be >= 16, got ", n));
  }
  ParamsInt p;
  p.profile = profile;
  p.lambda_sec = lambda_sec;
  p.n = n;
  p.q_bound = q_bound;
  p.m_multiplier =
      profile == Profile::kStrict ? kIntStrictMultiplier : kIntToyMultiplier;
  p.l = profile == Profile::kStrict ? lambda_sec : 16;
  p.t_msg = profile == Profile::kStrict ? lambda_sec : 32;
  p.k_sig = 4 * n;
  p.w_sig = SparseWeight(n);
  p.b_sig = 1;
  p.t_tail = kTailCut;
  const long double omega = IntOmega(n);
  const long double log_root = std::sqrt(std::log2(static_cast<long double>(n)));
  for (uint32_t k = 1; k <= 62; ++k) {
    const uint64_t m = static_cast<uint64_t>(p.m_multiplier) * n * (k + 1);
    const long double qmin_ld =
        std::ceil(std::pow(static_cast<long double>(m), 2.5L) * omega);
    if (qmin_ld >= static_cast<long double>(kModulusLimit)) break;
    const uint64_t qmin = std::max<uint64_t>(q_bound, static_cast<uint64_t>(qmin_ld));
    const uint64_t q = NextPrime(qmin);
    if (q == 0 || q >= kModulusLimit) break;
    if (static_cast<uint32_t>(std::bit_width(q)) > k) continue;
    if (m > std::numeric_limits<uint32_t>::max()) break;
    p.q = q;
    p.k = static_cast<uint32_t>(std::bit_width(q));
    p.m = static_cast<uint32_t>(m);
    p.delta_exp = static_cast<double>(std::log(static_cast<long double>(k + 1)) /
                                      std::log(static_cast<long double>(n)));
    p.sigma = static_cast<double>(
        std::ceil(static_cast<long double>(m) * p.l * log_root));
    p.alpha = static_cast<double>(
        1.0L / (static_cast<long double>(p.l) * p.l * m * m * log_root));
    return p;
  }
  return MakeError(ErrorKind::kParameterOverflow,
                   absl::StrCat("integer modulus exceeds 2^62 for n=", n));
}

std::vector<std::string> Validate(const ParamsRing& p) {
  std::vector<std::string> bad;
  if (!IsPowerOfTwo(p.n) || p.n < 16) bad.push_back("n_power_of_two");
  if (!IsPrime(p.q)) bad.push_back("q_prime");
  if (p.n == 0 || p.q % (2ULL * p.n) != 1) bad.push_back("q_congruent_1_mod_2n");
  if (p.q >= kModulusLimit) bad.push_back("q_below_2^62");
  if (p.q < 2 || static_cast<uint32_t>(std::bit_width(p.q - 1)) != p.k) {
    bad.push_back("k_is_ceil_log2_q");
  }
  if (p.base_len != 2 || p.m != p.k + p.base_len) bad.push_back("m_equals_k_plus_2");
  if (std::abs(p.alpha_g - std::sqrt(5.0) * p.sigma_trap) >
      1e-12 * std::abs(p.alpha_g)) {
    bad.push_back("alpha_g_equals_sqrt5_sigma");
  }
  if (p.gamma != 2.0 * p.t_tail * p.sigma_trap * p.tau *
                     std::sqrt(static_cast<double>(p.n))) {
    bad.push_back("gamma_formula");
  }
  if (p.mu != p.t_tail * p.sigma_trap * p.tau * std::sqrt(2.0 * p.n)) {
    bad.push_back("mu_formula");
  }
  if (p.n > 0 && !(p.sigma_trap > static_cast<double>(SigmaFloor(p.n)))) {
    bad.push_back("sigma_smoothing_bound");
  }
  if (!(p.zeta > RingZetaLowerBound(p))) bad.push_back("zeta_lower_bound");
  if (!RingCorrectnessHolds(p)) bad.push_back("correctness_inequality");
  if (p.delta_w == 0 || p.delta_w > p.n) bad.push_back("delta_w_range");
  if (p.b_ots == 0 ||
      static_cast<long double>(2) * p.delta_w * p.b_ots >= p.q / 2.0L) {
    bad.push_back("ots_bound_fits_modulus");
  }
  if (p.profile == Profile::kStrict && p.n > 0 &&
      static_cast<long double>(p.q) <
          std::pow(static_cast<long double>(p.n), 2.5L) * std::log2(static_cast<long double>(p.n))) {
    bad.push_back("strict_q_floor");
  }
  return bad;
}

std::vector<std::string> Validate(const ParamsInt& p) {
  std::vector<std::string> bad;
  if (p.n < 16) bad.push_back("n_minimum");
  if (!IsPrime(p.q)) bad.push_back("q_prime");
  if (p.q >= kModulusLimit) bad.push_back("q_below_2^62");
  if (static_cast<uint32_t>(std::bit_width(p.q)) != p.k) {
    bad.push_back("k_is_ceil_log2_q");
  }
  const uint64_t trapgen_min =
      static_cast<uint64_t>(p.profile == Profile::kStrict ? 6 : kIntToyMultiplier) *
      p.n * p.k;
  if (p.m < trapgen_min) bad.push_back("m_trapgen_minimum");
  if (static_cast<uint64_t>(p.m) < static_cast<uint64_t>(p.n) * (p.k + 1)) {
    bad.push_back("m_exceeds_gadget_width");
  }
  if (p.n >= 2 && p.m > 0) {
    const long double log_root = std::sqrt(std::log2(static_cast<long double>(p.n)));
    const long double qmin = std::pow(static_cast<long double>(p.m), 2.5L) * IntOmega(p.n);
    if (static_cast<long double>(p.q) < std::max<long double>(p.q_bound, qmin)) {
      bad.push_back("q_lower_bound");
    }
    if (static_cast<long double>(p.sigma) <
        static_cast<long double>(p.m) * p.l * log_root) {
      bad.push_back("sigma_lower_bound");
    }
    if (!(p.alpha > 0) ||
        static_cast<long double>(p.alpha) >
            1.0L / (static_cast<long double>(p.l) * p.l * p.m * p.m * log_root) *
                (1 + 1e-12L)) {
      bad.push_back("alpha_upper_bound");
    }
  }
  if (p.l == 0) bad.push_back("l_positive");
  if (p.t_msg == 0) bad.push_back("t_msg_positive");
  if (p.w_sig == 0 || p.w_sig > p.k_sig) bad.push_back("w_sig_range");
  if (p.b_sig != 1) bad.push_back("b_sig_is_one");
  return bad;
}

std::string CanonicalText(const ParamsRing& p) { return Render(RingKv(p)); }
std::string CanonicalText(const ParamsInt& p) { return Render(IntKv(p)); }

absl::StatusOr<ParamsRing> ParseRingParams(absl::string_view text) {
  LPKEET_ASSIGN_OR_RETURN(KeyValues kv, ParseKv(text));
  if (kv.count("scheme") == 0 || kv.at("scheme") != "ring") {
    return MakeError(ErrorKind::kMalformed, "params text is not for the ring scheme");
  }
  ParamsRing p;
  KvReader r(kv);
  r.Prof(p.profile);
  r.Uint("lambda_sec", p.lambda_sec);
  r.Uint("n", p.n);
  r.Uint("q", p.q);
  r.Uint("k", p.k);
  r.Uint("m", p.m);
  r.Uint("base_len", p.base_len);
  r.Double("sigma_trap", p.sigma_trap);
  r.Double("alpha_g", p.alpha_g);
  r.Double("zeta", p.zeta);
  r.Double("tau", p.tau);
  r.Double("mu", p.mu);
  r.Double("gamma", p.gamma);
  r.Double("t_tail", p.t_tail);
  r.Double("t_prime", p.t_prime);
  r.Uint("delta_w", p.delta_w);
  r.Uint("b_ots", p.b_ots);
  if (!r.ok() || CanonicalText(p) != text) {
    return MakeError(ErrorKind::kMalformed, "ring params text is not canonical");
  }
  return p;
}

absl::StatusOr<ParamsInt> ParseIntParams(absl::string_view text) {
  LPKEET_ASSIGN_OR_RETURN(KeyValues kv, ParseKv(text));
  if (kv.count("scheme") == 0 || kv.at("scheme") != "int") {
    return MakeError(ErrorKind::kMalformed, "params text is not for the integer scheme");
  }
  ParamsInt p;
  KvReader r(kv);
  r.Prof(p.profile);
  r.Uint("lambda_sec", p.lambda_sec);
  r.Uint("n", p.n);
  r.Uint("q", p.q);
  r.Uint("k", p.k);
  r.Uint("m", p.m);
  r.Uint("m_multiplier", p.m_multiplier);
  r.Uint("l", p.l);
  r.Uint("t_msg", p.t_msg);
  r.Double("sigma", p.sigma);
  r.Double("alpha", p.alpha);
  r.Double("delta_exp", p.delta_exp);
  r.Uint("k_sig", p.k_sig);
  r.Uint("w_sig", p.w_sig);
  r.Uint("b_sig", p.b_sig);
  r.Uint("q_bound", p.q_bound);
  r.Double("t_tail", p.t_tail);
  if (!r.ok() || CanonicalText(p) != text) {
    return MakeError(ErrorKind::kMalformed, "integer params text is not canonical");
  }
  return p;
}

uint64_t ParamsDigest(const ParamsRing& p) { return DigestOf(CanonicalText(p)); }
uint64_t ParamsDigest(const ParamsInt& p) { return DigestOf(CanonicalText(p)); }

}  // namespace lpkeet
