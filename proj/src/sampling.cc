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

#include "absl/strings/str_cat.h"
#include "lpkeet/modarith.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

constexpr double kPi = std::numbers::pi;

// Two-sided geometric variate: P(x) proportional to p^|x|.
int64_t TwoSidedGeometric(double log_p, Rng& rng) {
  while (true) {
    const int sign = rng.Bit();
    int64_t g = 0;
    if (std::isfinite(log_p)) {
      g = static_cast<int64_t>(std::floor(std::log(rng.UniformUnit()) / log_p));
    }
    if (sign == 1 && g == 0) continue;  // zero would be counted twice
    return sign ? -g : g;
  }
}

// Entry (i, j) of the negacyclic multiplication matrix of f.
inline int64_t RotEntry(const std::vector<int64_t>& f, uint32_t i, uint32_t j) {
  const uint32_t n = static_cast<uint32_t>(f.size());
  return i >= j ? f[i - j] : -f[n + i - j];
}

// rot(T) rot(T)^T as a dense 2n x 2n matrix. Block (a, b) is
// rot(sum_j t_aj * conj(t_bj)); products are exact as centered lifts
// because T is short.
std::vector<long double> GramOfT(const TrapdoorMatrix& t) {
  const RingPtr& ctx = t[0][0].context();
  const uint32_t n = ctx->n();
  const size_t dim = 2 * n;
  std::vector<long double> m(dim * dim);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      NttForm acc(ctx, std::vector<uint64_t>(n, 0));
      for (size_t j = 0; j < t[a].size(); ++j) {
        acc.MulAcc(ToNtt(t[a][j]), ToNtt(t[b][j].Conjugate()));
      }
      const std::vector<int64_t> f = FromNtt(acc).Centered();
      for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
          m[(a * n + i) * dim + b * n + j] = static_cast<long double>(RotEntry(f, i, j));
        }
      }
    }
  }
  return m;
}

}  // namespace

int64_t SampleZUnchecked(double width, double center, double tail_cut,
                         Rng& rng) {
  const double s2 = width * width;
  const double r = std::round(center);
  const double lambda =
      (-0.5 + std::sqrt(0.25 + 2.0 * s2 / kPi)) * kPi / s2;
  const double log_bound = lambda * lambda * s2 / (4.0 * kPi) + lambda / 2.0;
  const double tail = tail_cut * width;
  while (true) {
    const int64_t d = TwoSidedGeometric(-lambda, rng);
    const double x = r + static_cast<double>(d);
    const double dx = x - center;
    if (std::abs(dx) > tail) continue;
    const double log_accept =
        -kPi * dx * dx / s2 + lambda * std::abs(static_cast<double>(d)) - log_bound;
    if (rng.UniformUnit() <= std::exp(log_accept)) return static_cast<int64_t>(x);
  }
}

absl::StatusOr<int64_t> SampleZ(const GaussParams& g, Rng& rng) {
  if (!(g.width >= 1.0)) {
    return MakeError(ErrorKind::kWidthTooSmall,
                     absl::StrCat("Gaussian width ", g.width, " is below 1"));
  }
  return SampleZUnchecked(g.width, g.center, g.tail_cut, rng);
}

RingElement SampleRing(const RingPtr& ctx, double width, Rng& rng,
                       double tail_cut) {
  RingElement r(ctx);
  for (uint32_t i = 0; i < ctx->n(); ++i) {
    r.mutable_coeff(i) = ReduceSigned(SampleZUnchecked(width, 0.0, tail_cut, rng), ctx->q());
  }
  return r;
}

std::vector<RingElement> SampleRingVec(const RingPtr& ctx, double width,
                                       size_t len, Rng& rng, double tail_cut) {
  std::vector<RingElement> out;
  out.reserve(len);
  for (size_t i = 0; i < len; ++i) out.push_back(SampleRing(ctx, width, rng, tail_cut));
  return out;
}

GadgetSampler::GadgetSampler(uint64_t q, uint32_t k, double width,
                             double tail_cut)
    : q_(q), k_(k), width_(width), tail_cut_(tail_cut) {
  basis_.assign(k, std::vector<int64_t>(k, 0));
  for (uint32_t i = 0; i + 1 < k; ++i) {
    basis_[i][i] = 2;
    basis_[i][i + 1] = -1;
  }
  for (uint32_t j = 0; j < k; ++j) basis_[k - 1][j] = (q >> j) & 1;

  gs_.assign(k, std::vector<long double>(k, 0));
  gs_sqnorm_.assign(k, 0);
  for (uint32_t i = 0; i < k; ++i) {
    std::vector<long double> v(basis_[i].begin(), basis_[i].end());
    for (uint32_t j = 0; j < i; ++j) {
      long double dot = 0;
      for (uint32_t c = 0; c < k; ++c) dot += basis_[i][c] * gs_[j][c];
      const long double mu = dot / gs_sqnorm_[j];
      for (uint32_t c = 0; c < k; ++c) v[c] -= mu * gs_[j][c];
    }
    long double sq = 0;
    for (long double x : v) sq += x * x;
    gs_[i] = std::move(v);
    gs_sqnorm_[i] = sq;
  }
}

double GadgetSampler::MaxGsNorm() const {
  long double best = 0;
  for (long double s : gs_sqnorm_) best = std::max(best, s);
  return static_cast<double>(std::sqrt(best));
}

std::vector<int64_t> GadgetSampler::Sample(uint64_t v, Rng& rng) const {
  // Coset representative: the binary digits of v.
  std::vector<int64_t> z(k_);
  for (uint32_t j = 0; j < k_; ++j) z[j] = static_cast<int64_t>((v >> j) & 1);
  // Randomized nearest plane towards -z; adds a lattice vector to z.
  std::vector<long double> c(k_);
  for (uint32_t j = 0; j < k_; ++j) c[j] = -static_cast<long double>(z[j]);
  for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
    long double dot = 0;
    for (uint32_t j = 0; j < k_; ++j) dot += c[j] * gs_[i][j];
    const long double ci = dot / gs_sqnorm_[i];
    const double si = width_ / static_cast<double>(std::sqrt(gs_sqnorm_[i]));
    const int64_t zi = SampleZUnchecked(si, static_cast<double>(ci), tail_cut_, rng);
    if (zi == 0) continue;
    for (uint32_t j = 0; j < k_; ++j) {
      c[j] -= static_cast<long double>(zi) * basis_[i][j];
      z[j] += zi * basis_[i][j];
    }
  }
  return z;
}

std::vector<RingElement> SamplePolyG(const GadgetSampler& g,
                                     const RingElement& v, Rng& rng) {
  const RingPtr& ctx = v.context();
  std::vector<RingElement> z(g.k(), RingElement(ctx));
  for (uint32_t slot = 0; slot < v.n(); ++slot) {
    const std::vector<int64_t> digits = g.Sample(v[slot], rng);
    for (uint32_t i = 0; i < g.k(); ++i) {
      z[i].mutable_coeff(slot) = ReduceSigned(digits[i], ctx->q());
    }
  }
  return z;
}

double SpectralNorm(const TrapdoorMatrix& t) {
  const std::vector<long double> m = GramOfT(t);
  const size_t dim = 2 * t[0][0].n();
  std::vector<long double> v(dim), w(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = 1.0L + static_cast<long double>(i) / dim;
  long double norm = 0;
  for (long double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (long double& x : v) x /= norm;
  long double lambda = 0;
  for (int iter = 0; iter < 50; ++iter) {
    for (size_t i = 0; i < dim; ++i) {
      long double acc = 0;
      for (size_t j = 0; j < dim; ++j) acc += m[i * dim + j] * v[j];
      w[i] = acc;
    }
    long double len = 0;
    for (long double x : w) len += x * x;
    len = std::sqrt(len);
    if (len == 0) return 0.0;
    for (size_t i = 0; i < dim; ++i) v[i] = w[i] / len;
    const bool converged = std::abs(len - lambda) <= 1e-6L * len;
    lambda = len;
    if (converged) break;
  }
  return static_cast<double>(std::sqrt(lambda));
}

absl::StatusOr<PerturbationSampler> PerturbationSampler::Create(
    const TrapdoorMatrix& t, double zeta, double alpha, double tail_cut) {
  if (t[0].empty() || t[0].size() != t[1].size()) {
    return MakeError(ErrorKind::kInvalidParams, "trapdoor must be 2 x k");
  }
  const long double z2 = static_cast<long double>(zeta) * zeta;
  const long double a2 = static_cast<long double>(alpha) * alpha;
  if (!(z2 > a2)) {
    return MakeError(ErrorKind::kCovarianceNotPD, "zeta must exceed alpha");
  }
  PerturbationSampler s;
  s.ctx_ = t[0][0].context();
  s.n_ = s.ctx_->n();
  s.k_ = static_cast<uint32_t>(t[0].size());
  s.zeta_ = zeta;
  s.alpha_ = alpha;
  s.tail_cut_ = tail_cut;
  s.tail_width_ = static_cast<double>(std::sqrt(z2 - a2));
  s.center_scale_ = -a2 / (z2 - a2);

  // T * p2 is computed mod q and lifted; it must not wrap.
  uint64_t t_max = 0;
  for (int a = 0; a < 2; ++a) {
    for (const RingElement& e : t[a]) t_max = std::max(t_max, e.InfNorm());
  }
  const long double wrap_bound = static_cast<long double>(s.k_) * s.n_ * t_max *
                                 (tail_cut * s.tail_width_ + 1);
  if (wrap_bound >= s.ctx_->q() / 2.0L) {
    return MakeError(ErrorKind::kInvalidParams,
                     "trapdoor too large for exact perturbation centers");
  }
  for (int a = 0; a < 2; ++a) {
    for (const RingElement& e : t[a]) s.t_ntt_[a].push_back(ToNtt(e));
  }

  const size_t dim = 2 * s.n_;
  std::vector<long double> m = GramOfT(t);
  const long double scale = a2 * z2 / (z2 - a2);
  for (size_t i = 0; i < dim * dim; ++i) m[i] = -scale * m[i];
  for (size_t i = 0; i < dim; ++i) m[i * dim + i] += z2;

  s.diag_.resize(dim);
  for (size_t i = 0; i < dim; ++i) s.diag_[i] = m[i * dim + i];

  // LDL^T, L stored in a packed lower triangle.
  s.l_.assign(dim * (dim + 1) / 2, 0);
  s.d_.assign(dim, 0);
  auto row = [](size_t i) { return i * (i + 1) / 2; };
  const long double min_pivot = 1e-9L * z2;
  std::vector<long double> ld(dim);  // L_jk * D_k for the current j
  for (size_t j = 0; j < dim; ++j) {
    const long double* lj = &s.l_[row(j)];
    long double dj = m[j * dim + j];
    for (size_t k = 0; k < j; ++k) {
      ld[k] = lj[k] * s.d_[k];
      dj -= lj[k] * ld[k];
    }
    if (!(dj > min_pivot)) {
      return MakeError(ErrorKind::kCovarianceNotPD,
                       absl::StrCat("perturbation covariance not positive definite "
                                    "(pivot ", static_cast<double>(dj), " at ", j, ")"));
    }
    s.d_[j] = dj;
    s.l_[row(j) + j] = 1;
    for (size_t i = j + 1; i < dim; ++i) {
      const long double* li = &s.l_[row(i)];
      long double acc = m[i * dim + j];
      for (size_t k = 0; k < j; ++k) acc -= li[k] * ld[k];
      s.l_[row(i) + j] = acc / dj;
    }
  }
  return s;
}

std::vector<long double> PerturbationSampler::SchurDiagonal() const {
  return diag_;
}

std::vector<RingElement> PerturbationSampler::Sample(Rng& rng) const {
  const uint64_t q = ctx_->q();
  std::vector<RingElement> p;
  p.reserve(2 + k_);
  p.emplace_back(ctx_);
  p.emplace_back(ctx_);
  std::vector<NttForm> p2_ntt;
  p2_ntt.reserve(k_);
  for (uint32_t j = 0; j < k_; ++j) {
    p.push_back(SampleRing(ctx_, tail_width_, rng, tail_cut_));
    p2_ntt.push_back(ToNtt(p.back()));
  }
  // Conditional mean of p1 given p2.
  const size_t dim = 2 * n_;
  std::vector<long double> center(dim);
  for (int a = 0; a < 2; ++a) {
    NttForm acc(ctx_, std::vector<uint64_t>(n_, 0));
    for (uint32_t j = 0; j < k_; ++j) acc.MulAcc(t_ntt_[a][j], p2_ntt[j]);
    const std::vector<int64_t> tp = FromNtt(acc).Centered();
    for (uint32_t i = 0; i < n_; ++i) center[a * n_ + i] = center_scale_ * tp[i];
  }
  // Sequential conditional sampling along L D L^T.
  std::vector<long double> u(dim);
  for (size_t i = 0; i < dim; ++i) {
    const long double* li = &l_[i * (i + 1) / 2];
    long double c = center[i];
    for (size_t j = 0; j < i; ++j) c += li[j] * u[j];
    const int64_t x = SampleZUnchecked(static_cast<double>(std::sqrt(d_[i])),
                                       static_cast<double>(c), tail_cut_, rng);
    u[i] = static_cast<long double>(x) - c;
    p[i / n_].mutable_coeff(i % n_) = ReduceSigned(x, q);
  }
  return p;
}

}  // namespace lpkeet
