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

// Matrices over Z_q, gadget trapdoors for Lambda^perp_q(A) and Gaussian
// sampling over its cosets.
//
// A = [Abar | G - Abar R] with G = I_n (x) (1, 2, ..., 2^{k-1}) and R small.
// The short basis is
//   S = [[R S_g, I + R W], [S_g, W]],   G W = -Abar (mod q),
// where S_g is the per-block gadget basis (block diagonal). A S = 0 (mod q)
// and det S = q^n.

#ifndef LPKEET_MATLATTICE_H_
#define LPKEET_MATLATTICE_H_

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "lpkeet/params.h"
#include "lpkeet/rng.h"

namespace lpkeet {

// Row-major matrix of residues in [0, q).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols, uint64_t q)
      : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {}

  static IntMatrix Uniform(size_t rows, size_t cols, uint64_t q, Rng& rng);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint64_t q() const { return q_; }
  uint64_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  uint64_t& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const std::vector<uint64_t>& data() const { return data_; }
  std::vector<uint64_t>& mutable_data() { return data_; }

  // A x mod q for a signed integer vector x.
  std::vector<uint64_t> MulSigned(std::span<const int64_t> x) const;
  // A x mod q for a residue vector x.
  std::vector<uint64_t> Mul(std::span<const uint64_t> x) const;
  // A^T s mod q.
  std::vector<uint64_t> TransposeMul(std::span<const uint64_t> s) const;

  // this += c * other, entrywise mod q.
  void AddScaled(const IntMatrix& other, int64_t c);

  bool operator==(const IntMatrix& o) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  uint64_t q_ = 0;
  std::vector<uint64_t> data_;
};

// The secret part of a gadget trapdoor: R in {-1, 0, 1}^{mbar x nk},
// row-major.
struct IntTrapdoor {
  uint32_t rows = 0;  // mbar
  uint32_t cols = 0;  // n k
  std::vector<int8_t> r;

  bool operator==(const IntTrapdoor& o) const = default;
};

// Short basis of Lambda^perp_q(A) with its Gram-Schmidt data. Immutable.
class IntTrapdoorBasis {
 public:
  // Builds S from the gadget trapdoor of A. RankError if A S != 0 or S is
  // numerically singular.
  static absl::StatusOr<std::shared_ptr<const IntTrapdoorBasis>> FromGadget(
      const IntMatrix& a, const IntTrapdoor& trapdoor, uint32_t k);

  // Any basis of Lambda^perp_q(A), columns of the m x m column-major matrix
  // `basis`. Only lattice sampling is available on such a basis.
  static absl::StatusOr<std::shared_ptr<const IntTrapdoorBasis>> FromBasis(
      const IntMatrix& a, std::vector<int64_t> basis);

  size_t dim() const { return m_; }
  const IntMatrix& a() const { return a_; }
  int64_t basis_at(size_t r, size_t c) const { return std::llround(s_(r, c)); }
  double MaxGsNorm() const { return max_gs_; }
  // Gram-Schmidt norms in basis order.
  std::vector<double> GsNorms() const;

  // v in the lattice with probability close to rho_sigma(v - center).
  // WidthTooSmall unless sigma >= MaxGsNorm() * sqrt(ln m).
  absl::StatusOr<std::vector<int64_t>> SampleLattice(
      std::span<const double> center, double sigma, Rng& rng) const;

  // x with A x = syndrome (mod q), distributed close to a width-sigma
  // Gaussian over that coset. Needs a gadget basis.
  absl::StatusOr<std::vector<int64_t>> SampleCoset(
      std::span<const uint64_t> syndrome, double sigma, Rng& rng) const;

  // Some integer x with A x = syndrome (mod q), from the gadget structure.
  std::vector<int64_t> CosetRepresentative(std::span<const uint64_t> syndrome) const;

 private:
  IntTrapdoorBasis() = default;
  absl::Status Factor();
  std::vector<int64_t> Klein(std::span<const double> center, double sigma,
                             Rng& rng) const;

  IntMatrix a_;
  size_t m_ = 0;
  uint32_t k_ = 0;
  bool has_gadget_ = false;
  IntTrapdoor trapdoor_;
  Eigen::MatrixXd s_;           // basis columns, exact small integers
  Eigen::MatrixXd qr_;          // packed Householder QR of S
  Eigen::VectorXd qr_coeffs_;
  double max_gs_ = 0;
};

struct IntTrapGenResult {
  IntMatrix a;
  IntTrapdoor trapdoor;
  std::shared_ptr<const IntTrapdoorBasis> basis;
};

// A = [Abar | G - Abar R] with Abar uniform and R entries -1, 0, 1 with
// probabilities 1/4, 1/2, 1/4. Retries up to 8 times on RankError, then
// GenerationFailed.
absl::StatusOr<IntTrapGenResult> TrapGenInt(const ParamsInt& params, Rng& rng);

// Columns e_j in Z^{m + m1} with (A | M1) e_j = U_j (mod q): the tail is
// drawn i.i.d. D_{Z, sigma}, the head from the coset it leaves.
// WidthTooSmall unless sigma >= MaxGsNorm() * sqrt(ln(m + m1)); InvalidParams
// on shape mismatch.
absl::StatusOr<std::vector<std::vector<int64_t>>> SampleLeft(
    const IntTrapdoorBasis& basis, const IntMatrix& m1, const IntMatrix& u,
    double sigma, Rng& rng);

}  // namespace lpkeet

#endif  // LPKEET_MATLATTICE_H_
