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

#include "lpkeet/matlattice.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "lpkeet/modarith.h"
#include "lpkeet/sampling.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

constexpr int kTrapGenAttempts = 8;
// Relative floor on |R_ii| below which S is treated as singular.
constexpr double kSingularTolerance = 1e-9;

// Sums of up to 8 products of residues below 2^62 fit in 128 bits.
constexpr size_t kReduceEvery = 8;

uint64_t DotResidues(const uint64_t* a, size_t stride, std::span<const uint64_t> x,
                     uint64_t q) {
  uint128_t acc = 0;
  uint64_t out = 0;
  for (size_t j = 0; j < x.size(); ++j) {
    acc += static_cast<uint128_t>(a[j * stride]) * x[j];
    if ((j + 1) % kReduceEvery == 0) {
      out = AddMod(out, static_cast<uint64_t>(acc % q), q);
      acc = 0;
    }
  }
  return AddMod(out, static_cast<uint64_t>(acc % q), q);
}

}  // namespace

IntMatrix IntMatrix::Uniform(size_t rows, size_t cols, uint64_t q, Rng& rng) {
  IntMatrix out(rows, cols, q);
  for (uint64_t& v : out.data_) v = rng.UniformBelow(q);
  return out;
}

std::vector<uint64_t> IntMatrix::MulSigned(std::span<const int64_t> x) const {
  std::vector<uint64_t> out(rows_);
  for (size_t r = 0; r < rows_; ++r) {
    int128_t acc = 0;
    const uint64_t* row = &data_[r * cols_];
    for (size_t c = 0; c < cols_; ++c) acc += static_cast<int128_t>(row[c]) * x[c];
    out[r] = ReduceSigned128(acc, q_);
  }
  return out;
}

std::vector<uint64_t> IntMatrix::Mul(std::span<const uint64_t> x) const {
  std::vector<uint64_t> out(rows_);
  for (size_t r = 0; r < rows_; ++r) out[r] = DotResidues(&data_[r * cols_], 1, x, q_);
  return out;
}

std::vector<uint64_t> IntMatrix::TransposeMul(std::span<const uint64_t> s) const {
  std::vector<uint64_t> out(cols_);
  for (size_t c = 0; c < cols_; ++c) out[c] = DotResidues(&data_[c], cols_, s, q_);
  return out;
}

void IntMatrix::AddScaled(const IntMatrix& other, int64_t c) {
  const uint64_t cr = ReduceSigned(c, q_);
  for (size_t i = 0; i < data_.size(); ++i) {
    data_[i] = AddMod(data_[i], MulMod(other.data_[i], cr, q_), q_);
  }
}

absl::StatusOr<std::shared_ptr<const IntTrapdoorBasis>> IntTrapdoorBasis::FromGadget(
    const IntMatrix& a, const IntTrapdoor& trapdoor, uint32_t k) {
  const size_t n = a.rows();
  const size_t m = a.cols();
  const size_t nk = n * k;
  const uint64_t q = a.q();
  if (k == 0 || k > 63 || (q >> k) != 0 || nk >= m || trapdoor.rows != m - nk ||
      trapdoor.cols != nk || trapdoor.r.size() != (m - nk) * nk) {
    return MakeError(ErrorKind::kInvalidParams, "gadget trapdoor shape mismatch");
  }
  const size_t mbar = m - nk;
  for (int8_t v : trapdoor.r) {
    if (v < -1 || v > 1) return MakeError(ErrorKind::kMalformed, "trapdoor entry outside {-1,0,1}");
  }

  // A [R; I] must equal G.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < nk; ++j) {
      int128_t acc = static_cast<int128_t>(a.at(i, mbar + j));
      for (size_t t = 0; t < mbar; ++t) {
        acc += static_cast<int128_t>(a.at(i, t)) * trapdoor.r[t * nk + j];
      }
      const uint64_t expect = (j / k == i) ? (1ULL << (j % k)) % q : 0;
      if (ReduceSigned128(acc, q) != expect) {
        return MakeError(ErrorKind::kRankError, "trapdoor does not match the public matrix");
      }
    }
  }

  std::shared_ptr<IntTrapdoorBasis> out(new IntTrapdoorBasis());
  out->a_ = a;
  out->m_ = m;
  out->k_ = k;
  out->has_gadget_ = true;
  out->trapdoor_ = trapdoor;

  // W = G^{-1}(-Abar), nk x mbar, binary.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(nk, mbar);
  for (size_t i = 0; i < n; ++i) {
    for (size_t c = 0; c < mbar; ++c) {
      const uint64_t v = NegMod(a.at(i, c), q);
      for (uint32_t b = 0; b < k; ++b) w(i * k + b, c) = static_cast<double>((v >> b) & 1);
    }
  }
  Eigen::MatrixXd r(mbar, nk);
  for (size_t t = 0; t < mbar; ++t) {
    for (size_t j = 0; j < nk; ++j) r(t, j) = trapdoor.r[t * nk + j];
  }
  // Entries are small integers, so the double product is exact.
  const Eigen::MatrixXd rw = r * w;

  // Gadget columns first: with this order the Gram-Schmidt norms stay near
  // sqrt(5) (s_1(R) + 1) instead of the raw length of the [I + R W; W] block.
  Eigen::MatrixXd& s = out->s_;
  s = Eigen::MatrixXd::Zero(m, m);
  for (size_t j = 0; j < nk; ++j) {
    const size_t block = j / k;
    const uint32_t local = j % k;
    // Column `local` of the gadget basis, as (row offset, value) pairs.
    std::vector<std::pair<uint32_t, double>> g_col;
    if (local + 1 < k) {
      g_col = {{local, 2.0}, {local + 1, -1.0}};
    } else {
      for (uint32_t b = 0; b < k; ++b) {
        if ((q >> b) & 1) g_col.push_back({b, 1.0});
      }
    }
    for (const auto& [off, val] : g_col) {
      const size_t col_in_r = block * k + off;
      s(mbar + col_in_r, j) = val;
      s.col(j).head(mbar) += val * r.col(col_in_r);
    }
  }
  s.block(0, nk, mbar, mbar) = rw + Eigen::MatrixXd::Identity(mbar, mbar);
  s.block(mbar, nk, nk, mbar) = w;
  LPKEET_RETURN_IF_ERROR(out->Factor());
  return std::shared_ptr<const IntTrapdoorBasis>(std::move(out));
}

absl::StatusOr<std::shared_ptr<const IntTrapdoorBasis>> IntTrapdoorBasis::FromBasis(
    const IntMatrix& a, std::vector<int64_t> basis) {
  const size_t m = a.cols();
  if (basis.size() != m * m) {
    return MakeError(ErrorKind::kInvalidParams, "basis must be m x m");
  }
  for (size_t c = 0; c < m; ++c) {
    const std::vector<uint64_t> syn =
        a.MulSigned(std::span<const int64_t>(&basis[c * m], m));
    for (uint64_t v : syn) {
      if (v != 0) {
        return MakeError(ErrorKind::kRankError,
                         absl::StrCat("basis column ", c, " is not in the kernel"));
      }
    }
  }
  std::shared_ptr<IntTrapdoorBasis> out(new IntTrapdoorBasis());
  out->a_ = a;
  out->m_ = m;
  out->s_.resize(m, m);
  for (size_t c = 0; c < m; ++c) {
    for (size_t r = 0; r < m; ++r) out->s_(r, c) = static_cast<double>(basis[c * m + r]);
  }
  LPKEET_RETURN_IF_ERROR(out->Factor());
  return std::shared_ptr<const IntTrapdoorBasis>(std::move(out));
}

absl::Status IntTrapdoorBasis::Factor() {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(s_);
  qr_ = qr.matrixQR();
  qr_coeffs_ = qr.hCoeffs();
  double largest = 0;
  for (size_t i = 0; i < m_; ++i) largest = std::max(largest, std::abs(qr_(i, i)));
  for (size_t i = 0; i < m_; ++i) {
    if (std::abs(qr_(i, i)) <= kSingularTolerance * largest) {
      return MakeError(ErrorKind::kRankError, "basis is singular");
    }
  }
  max_gs_ = largest;
  return absl::OkStatus();
}

std::vector<double> IntTrapdoorBasis::GsNorms() const {
  std::vector<double> out(m_);
  for (size_t i = 0; i < m_; ++i) out[i] = std::abs(qr_(i, i));
  return out;
}

std::vector<int64_t> IntTrapdoorBasis::Klein(std::span<const double> center, double sigma,
                                             Rng& rng) const {
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(center.data(), m_);
  y.applyOnTheLeft(
      Eigen::HouseholderSequence<Eigen::MatrixXd, Eigen::VectorXd>(qr_, qr_coeffs_).adjoint());
  Eigen::VectorXd z(m_);
  for (size_t i = m_; i-- > 0;) {
    const double rii = qr_(i, i);
    z[i] = static_cast<double>(SampleZUnchecked(sigma / std::abs(rii), y[i] / rii, kTailCut, rng));
    if (z[i] != 0) y.head(i + 1) -= z[i] * qr_.col(i).head(i + 1);
  }
  // Exact: all partial sums stay far below 2^53.
  const Eigen::VectorXd v = s_ * z;
  std::vector<int64_t> out(m_);
  for (size_t i = 0; i < m_; ++i) out[i] = std::llround(v[i]);
  return out;
}

absl::StatusOr<std::vector<int64_t>> IntTrapdoorBasis::SampleLattice(
    std::span<const double> center, double sigma, Rng& rng) const {
  if (center.size() != m_) return MakeError(ErrorKind::kInvalidParams, "center length");
  if (sigma < max_gs_ * std::sqrt(std::log(static_cast<double>(m_)))) {
    return MakeError(ErrorKind::kWidthTooSmall, "sigma below the basis smoothing guard");
  }
  return Klein(center, sigma, rng);
}

std::vector<int64_t> IntTrapdoorBasis::CosetRepresentative(
    std::span<const uint64_t> syndrome) const {
  const size_t nk = a_.rows() * k_;
  const size_t mbar = m_ - nk;
  std::vector<int64_t> t(m_, 0);
  for (size_t i = 0; i < a_.rows(); ++i) {
    for (uint32_t b = 0; b < k_; ++b) t[mbar + i * k_ + b] = (syndrome[i] >> b) & 1;
  }
  for (size_t r = 0; r < mbar; ++r) {
    const int8_t* row = &trapdoor_.r[r * nk];
    int64_t acc = 0;
    for (size_t j = 0; j < nk; ++j) acc += row[j] * t[mbar + j];
    t[r] = acc;
  }
  return t;
}

absl::StatusOr<std::vector<int64_t>> IntTrapdoorBasis::SampleCoset(
    std::span<const uint64_t> syndrome, double sigma, Rng& rng) const {
  if (!has_gadget_) {
    return MakeError(ErrorKind::kInvalidParams, "coset sampling needs a gadget trapdoor");
  }
  if (syndrome.size() != a_.rows()) return MakeError(ErrorKind::kInvalidParams, "syndrome length");
  if (sigma < max_gs_ * std::sqrt(std::log(static_cast<double>(m_)))) {
    return MakeError(ErrorKind::kWidthTooSmall, "sigma below the basis smoothing guard");
  }
  std::vector<int64_t> x = CosetRepresentative(syndrome);
  const std::vector<double> center(x.begin(), x.end());
  const std::vector<int64_t> v = Klein(center, sigma, rng);
  for (size_t i = 0; i < m_; ++i) x[i] -= v[i];
  return x;
}

absl::StatusOr<IntTrapGenResult> TrapGenInt(const ParamsInt& params, Rng& rng) {
  const size_t n = params.n;
  const size_t nk = n * params.k;
  if (params.m <= nk) {
    return MakeError(ErrorKind::kInvalidParams, "m must exceed n k for the gadget trapdoor");
  }
  const size_t mbar = params.m - nk;
  const uint64_t q = params.q;
  for (int attempt = 0; attempt < kTrapGenAttempts; ++attempt) {
    IntTrapGenResult out;
    out.trapdoor.rows = static_cast<uint32_t>(mbar);
    out.trapdoor.cols = static_cast<uint32_t>(nk);
    out.trapdoor.r.resize(mbar * nk);
    for (int8_t& v : out.trapdoor.r) {
      const uint64_t two = rng.UniformBelow(4);
      v = two == 0 ? -1 : (two == 1 ? 1 : 0);
    }
    out.a = IntMatrix(n, params.m, q);
    const IntMatrix abar = IntMatrix::Uniform(n, mbar, q, rng);
    for (size_t i = 0; i < n; ++i) {
      for (size_t c = 0; c < mbar; ++c) out.a.at(i, c) = abar.at(i, c);
      for (size_t j = 0; j < nk; ++j) {
        int128_t acc = 0;
        for (size_t t = 0; t < mbar; ++t) {
          acc += static_cast<int128_t>(abar.at(i, t)) * out.trapdoor.r[t * nk + j];
        }
        const uint64_t g = (j / params.k == i) ? (1ULL << (j % params.k)) % q : 0;
        out.a.at(i, mbar + j) = SubMod(g, ReduceSigned128(acc, q), q);
      }
    }
    auto basis = IntTrapdoorBasis::FromGadget(out.a, out.trapdoor, params.k);
    if (!basis.ok()) {
      if (HasErrorKind(basis.status(), ErrorKind::kRankError)) continue;
      return basis.status();
    }
    out.basis = *std::move(basis);
    return out;
  }
  return MakeError(ErrorKind::kGenerationFailed, "gadget trapdoor generation kept failing");
}

absl::StatusOr<std::vector<std::vector<int64_t>>> SampleLeft(
    const IntTrapdoorBasis& basis, const IntMatrix& m1, const IntMatrix& u,
    double sigma, Rng& rng) {
  const IntMatrix& a = basis.a();
  if (m1.rows() != a.rows() || u.rows() != a.rows() || m1.q() != a.q() || u.q() != a.q()) {
    return MakeError(ErrorKind::kInvalidParams, "SampleLeft shape mismatch");
  }
  const size_t m = a.cols();
  const size_t total = m + m1.cols();
  if (sigma < basis.MaxGsNorm() * std::sqrt(std::log(static_cast<double>(total)))) {
    return MakeError(ErrorKind::kWidthTooSmall, "sigma below the SampleLeft guard");
  }
  const uint64_t q = a.q();
  std::vector<std::vector<int64_t>> cols;
  cols.reserve(u.cols());
  for (size_t j = 0; j < u.cols(); ++j) {
    std::vector<int64_t> e(total);
    for (size_t i = m; i < total; ++i) e[i] = SampleZUnchecked(sigma, 0.0, kTailCut, rng);
    std::vector<uint64_t> syn =
        m1.MulSigned(std::span<const int64_t>(e.data() + m, m1.cols()));
    for (size_t r = 0; r < syn.size(); ++r) syn[r] = SubMod(u.at(r, j), syn[r], q);
    LPKEET_ASSIGN_OR_RETURN(std::vector<int64_t> head, basis.SampleCoset(syn, sigma, rng));
    std::copy(head.begin(), head.end(), e.begin());
    cols.push_back(std::move(e));
  }
  return cols;
}

}  // namespace lpkeet
