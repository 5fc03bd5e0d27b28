#include "fgamp/skewlin.hpp"

#include <algorithm>
#include <cmath>

namespace fgamp {

SkewMatrix::SkewMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("SkewMatrix: matrix must be square, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
  if (m.rows() > 0) {
    const double dev = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (dev > kSkewTol) {
      throw std::invalid_argument(
          "SkewMatrix: input violates skew-symmetry, max |m_ij + m_ji| = " +
          std::to_string(dev));
    }
  }
  mat_ = 0.5 * (m - m.transpose().eval());
}

SkewMatrix SkewMatrix::Zero(Eigen::Index dim) {
  SkewMatrix s;
  s.mat_ = Matrix::Zero(dim, dim);
  return s;
}

SkewMatrix SkewMatrix::FromSkewParts(Matrix m) {
  SkewMatrix s;
  s.mat_ = std::move(m);
  return s;
}

SkewMatrix SkewMatrix::submatrix(std::span<const Eigen::Index> keep) const {
  const auto k = static_cast<Eigen::Index>(keep.size());
  Matrix sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      sub(a, b) = mat_(keep[a], keep[b]);
    }
  }
  return FromSkewParts(std::move(sub));
}

SkewMatrix SkewMatrix::padded() const {
  const Eigen::Index n = dim();
  Matrix p = Matrix::Zero(n + 1, n + 1);
  p.topLeftCorner(n, n) = mat_;
  return FromSkewParts(std::move(p));
}

IndexSubset::IndexSubset(Eigen::Index parent_dim,
                         std::vector<Eigen::Index> kept)
    : parent_dim_(parent_dim), kept_(std::move(kept)) {
  for (std::size_t a = 0; a < kept_.size(); ++a) {
    if (kept_[a] < 0 || kept_[a] >= parent_dim_) {
      throw std::invalid_argument("IndexSubset: index " +
                                  std::to_string(kept_[a]) +
                                  " out of range [0, " +
                                  std::to_string(parent_dim_) + ")");
    }
    if (a > 0 && kept_[a] <= kept_[a - 1]) {
      throw std::invalid_argument(
          "IndexSubset: indices must be strictly increasing");
    }
  }
}

IndexSubset IndexSubset::All(Eigen::Index parent_dim) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(parent_dim));
  for (Eigen::Index i = 0; i < parent_dim; ++i) all[static_cast<std::size_t>(i)] = i;
  return IndexSubset(parent_dim, std::move(all));
}

cxd pfaffian(const SkewMatrix& m) {
  const Eigen::Index n = m.dim();
  if (n == 0) return cxd(1.0, 0.0);
  if (n % 2 != 0) return cxd(0.0, 0.0);

  Matrix a = m.matrix();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return cxd(0.0, 0.0);
  const double floor = 1e-14 * scale;

  // Reduce to skew tridiagonal form by unitary congruence, one Householder
  // reflector per column; pf picks up det(H) = -1 per reflector.
  int reflectors = 0;
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const auto tail = Eigen::seq(k + 1, n - 1);
    Vector x = a(tail, k);
    const double xnorm = x.norm();
    if (xnorm < floor) return cxd(0.0, 0.0);
    if (x.tail(x.size() - 1).cwiseAbs().maxCoeff() <= floor * 1e-2) {
      continue;  // already tridiagonal in this column
    }
    const cxd x0 = x(0);
    const cxd phase = (std::abs(x0) == 0.0) ? cxd(1.0, 0.0) : x0 / std::abs(x0);
    Vector v = x;
    v(0) += phase * xnorm;
    const double vsq = v.squaredNorm();
    if (vsq == 0.0) continue;
    const double tau = 2.0 / vsq;

    // A := H A H^T restricted to the trailing block, H = I - tau v v^dag.
    Matrix block = a(tail, Eigen::all);
    block.noalias() -= (tau * v) * (v.adjoint() * block);
    a(tail, Eigen::all) = block;
    Matrix cols = a(Eigen::all, tail);
    cols.noalias() -= (cols * v.conjugate()) * (tau * v).transpose();
    a(Eigen::all, tail) = cols;
    ++reflectors;
  }

  cxd pf = (reflectors % 2 == 0) ? cxd(1.0, 0.0) : cxd(-1.0, 0.0);
  for (Eigen::Index i = 0; i + 1 < n; i += 2) {
    pf *= a(i, i + 1);
  }
  return pf;
}

cxd pfaffian_parlett_reid(const SkewMatrix& m) {
  const Eigen::Index n = m.dim();
  if (n == 0) return cxd(1.0, 0.0);
  if (n % 2 != 0) return cxd(0.0, 0.0);

  Matrix a = m.matrix();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return cxd(0.0, 0.0);
  const double pivot_floor = 1e-14 * scale;

  cxd pf(1.0, 0.0);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // Largest |a(i,k)| below the diagonal becomes the (k+1,k) pivot.
    Eigen::Index piv = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < pivot_floor) return cxd(0.0, 0.0);
    if (piv != k + 1) {
      a.row(piv).swap(a.row(k + 1));
      a.col(piv).swap(a.col(k + 1));
      pf = -pf;
    }
    pf *= a(k + 1, k);

    if (k + 2 < n) {
      // Congruence update zeroing column/row k and k+1 outside the 2x2 block.
      const auto tail = Eigen::seq(k + 2, n - 1);
      const Vector f = a(tail, k) / a(k + 1, k);
      a(tail, Eigen::all).noalias() -= f * a.row(k + 1);
      a(Eigen::all, tail).noalias() -= a.col(k + 1) * f.transpose();
    }
  }
  // Elimination makes a block-tridiagonal skew form; pf is the product of
  // (k+1,k) pivots times the accumulated swap sign, negated per 2x2 block
  // convention pf [[0, x], [-x, 0]] = x with x = a(k, k+1) = -a(k+1, k).
  const Eigen::Index blocks = n / 2;
  if (blocks % 2 != 0) pf = -pf;
  return pf;
}

cxd sub_pfaffian(const SkewMatrix& m, const IndexSubset& keep) {
  if (keep.parent_dim() != m.dim()) {
    throw std::invalid_argument("sub_pfaffian: subset parent_dim " +
                                std::to_string(keep.parent_dim()) +
                                " does not match matrix dim " +
                                std::to_string(m.dim()));
  }
  if (keep.size() % 2 != 0) return cxd(0.0, 0.0);
  return pfaffian(m.submatrix(keep.kept()));
}

cxd pfaffian_expand_row(const SkewMatrix& m, Eigen::Index i) {
  const Eigen::Index n = m.dim();
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(
        "pfaffian_expand_row: dimension must be even and >= 2, got " +
        std::to_string(n));
  }
  if (i < 0 || i >= n) {
    throw std::invalid_argument("pfaffian_expand_row: row index out of range");
  }
  cxd acc(0.0, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == i) continue;
    std::vector<Eigen::Index> rest;
    rest.reserve(static_cast<std::size_t>(n - 2));
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l != i && l != j) rest.push_back(l);
    }
    const int heaviside = (i > j) ? 1 : 0;
    const double sign = ((i + j + 1 + heaviside) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * m(i, j) * pfaffian(m.submatrix(rest));
  }
  return acc;
}

cxd lieb_shifted_pfaffian(const SkewMatrix& m, std::span<const cxd> lambdas) {
  const Eigen::Index n = m.dim();
  if (n % 2 != 0) {
    throw std::invalid_argument(
        "lieb_shifted_pfaffian: dimension must be even");
  }
  if (static_cast<Eigen::Index>(lambdas.size()) != n) {
    throw std::invalid_argument(
        "lieb_shifted_pfaffian: need exactly dim weights, got " +
        std::to_string(lambdas.size()));
  }
  Matrix shifted = m.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double parity = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      const cxd shift = parity * lambdas[static_cast<std::size_t>(i)] *
                        lambdas[static_cast<std::size_t>(j)];
      shifted(i, j) -= shift;
      shifted(j, i) += shift;
    }
  }
  return pfaffian(SkewMatrix::FromSkewParts(std::move(shifted)));
}

cxd lieb_odd_extension(const SkewMatrix& m, std::span<const cxd> lambdas) {
  const Eigen::Index n = m.dim();
  if (n % 2 == 0) {
    throw std::invalid_argument("lieb_odd_extension: dimension must be odd");
  }
  if (static_cast<Eigen::Index>(lambdas.size()) != n) {
    throw std::invalid_argument(
        "lieb_odd_extension: need exactly dim weights");
  }
  std::vector<cxd> ext(lambdas.begin(), lambdas.end());
  ext.push_back(cxd(1.0, 0.0));
  return lieb_shifted_pfaffian(m.padded(), ext);
}

}  // namespace fgamp
