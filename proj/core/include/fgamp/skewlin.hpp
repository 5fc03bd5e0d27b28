#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fgamp/types.hpp"

namespace fgamp {

/// Dense complex skew-symmetric matrix. Construction symmetrizes
/// (m - m^T)/2 after checking |m_ij + m_ji| <= 1e-12 elementwise;
/// anything further from skew is rejected.
class SkewMatrix {
 public:
  static constexpr double kSkewTol = 1e-12;

  SkewMatrix() : mat_(0, 0) {}
  explicit SkewMatrix(const Matrix& m);

  static SkewMatrix Zero(Eigen::Index dim);
  /// Unchecked wrap for matrices that are skew by construction.
  static SkewMatrix FromSkewParts(Matrix m);

  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }
  cxd operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

  /// Principal submatrix on the given ascending index set.
  SkewMatrix submatrix(std::span<const Eigen::Index> keep) const;
  /// Copy with one extra zero row and column appended.
  SkewMatrix padded() const;

 private:
  Matrix mat_;
};

/// Ascending subset of [0, parent_dim). The sorted-unique requirement fixes
/// the sub-Pfaffian sign convention; permuted subsets are unrepresentable.
class IndexSubset {
 public:
  IndexSubset(Eigen::Index parent_dim, std::vector<Eigen::Index> kept);

  Eigen::Index parent_dim() const { return parent_dim_; }
  std::span<const Eigen::Index> kept() const { return kept_; }
  std::size_t size() const { return kept_.size(); }

  static IndexSubset All(Eigen::Index parent_dim);

 private:
  Eigen::Index parent_dim_;
  std::vector<Eigen::Index> kept_;
};

/// Pfaffian via unitary Householder tridiagonalization, O(dim^3). Odd dim
/// -> exactly 0; dim 0 -> exactly 1. Column norms below 1e-14 * max|entry|
/// short-circuit to 0. The unitary congruence keeps the reduction stable for
/// large matrices whose pfaffian sits far below the entry scale.
cxd pfaffian(const SkewMatrix& m);

/// Skew-symmetric Gaussian elimination with partial pivoting. Same contract
/// as pfaffian(); kept as an independent small-matrix reference.
cxd pfaffian_parlett_reid(const SkewMatrix& m);

/// Pfaffian of the principal submatrix on the kept indices ("pfaffinho").
cxd sub_pfaffian(const SkewMatrix& m, const IndexSubset& keep);

/// Row-expansion Pfaffian: sum_{j != i} (-1)^{i+j+1+H(i-j)} m_ij pf(m with
/// rows/cols i,j removed). Indices 0-based; the sign is parity-identical to
/// the 1-based form. Requires even dim >= 2.
cxd pfaffian_expand_row(const SkewMatrix& m, Eigen::Index i);

/// pf of the matrix with entries m_ij - (-1)^{i+j} lambda_i lambda_j (j > i).
/// (-1)^{i+j} is the same for 0- and 1-based indexing, so no offset applies.
/// Equals sum_k sum_{|Ibar|=L-2k} pf(m_Ibar) prod_{j in I} lambda_j.
cxd lieb_shifted_pfaffian(const SkewMatrix& m, std::span<const cxd> lambdas);

/// Odd-dimension extension: pads m with a zero row/column, sets the extra
/// weight to 1 and applies lieb_shifted_pfaffian. Equals the subset sum over
/// ALL subset sizes of the unpadded matrix.
cxd lieb_odd_extension(const SkewMatrix& m, std::span<const cxd> lambdas);

}  // namespace fgamp
