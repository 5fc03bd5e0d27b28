#include "fgamp/oracle.hpp"

#include <cmath>

namespace fgamp {

Eigen::Index config_index(const FermionConfiguration& config) {
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < config.size(); ++j) {
    idx = (idx << 1) | config.bit(j);
  }
  return idx;
}

FermionConfiguration index_to_config(Eigen::Index idx, Eigen::Index length) {
  std::vector<int> bits(static_cast<std::size_t>(length));
  for (Eigen::Index j = 0; j < length; ++j) {
    bits[static_cast<std::size_t>(j)] =
        static_cast<int>((idx >> (length - 1 - j)) & 1);
  }
  return FermionConfiguration(std::move(bits));
}

Eigen::Index outcome_index(const SpinConfiguration& outcome) {
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < outcome.size(); ++j) {
    idx = (idx << 1) | (outcome.sign(j) > 0 ? 1 : 0);
  }
  return idx;
}

SpinConfiguration index_to_outcome(Eigen::Index idx, Eigen::Index length) {
  std::vector<int> signs(static_cast<std::size_t>(length));
  for (Eigen::Index j = 0; j < length; ++j) {
    signs[static_cast<std::size_t>(j)] =
        ((idx >> (length - 1 - j)) & 1) ? 1 : -1;
  }
  return SpinConfiguration(std::move(signs));
}

DenseState dense_from_gaussian(const GaussianPureState& state) {
  const Eigen::Index L = state.size();
  if (L > kOracleMaxSites) {
    throw guard_error("dense_from_gaussian: L = " + std::to_string(L) +
                      " exceeds the dense-oracle limit " +
                      std::to_string(kOracleMaxSites));
  }
  const Eigen::Index dim = Eigen::Index(1) << L;
  const std::vector<int>& base = state.base_config().bits();
  DenseState out;
  out.size = L;
  out.vec = Vector::Zero(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    std::vector<int> bits(static_cast<std::size_t>(L));
    std::vector<Eigen::Index> delta;
    for (Eigen::Index j = 0; j < L; ++j) {
      bits[static_cast<std::size_t>(j)] =
          static_cast<int>((idx >> (L - 1 - j)) & 1);
      if (bits[static_cast<std::size_t>(j)] !=
          base[static_cast<std::size_t>(j)]) {
        delta.push_back(j);
      }
    }
    if (delta.size() % 2 != 0) continue;
    const cxd pf = sub_pfaffian(state.r_matrix(), IndexSubset(L, delta));
    if (pf == cxd(0.0, 0.0)) continue;
    const int sgn = detail::transition_sign(base, base, bits);
    out.vec(idx) = state.phase() * static_cast<double>(sgn) * pf / state.norm();
  }
  return out;
}

cxd oracle_amplitude(const DenseState& dense, const PauliBasisSpec& basis,
                     const SpinConfiguration& config) {
  const Eigen::Index L = dense.size;
  if (basis.size() != L || config.size() != L) {
    throw std::invalid_argument("oracle_amplitude: length mismatch");
  }
  std::vector<CanonicalBraPair> bras;
  bras.reserve(static_cast<std::size_t>(L));
  for (Eigen::Index j = 0; j < L; ++j) {
    bras.push_back(canonical_bras(basis.site(j)));
  }
  const Eigen::Index dim = Eigen::Index(1) << L;
  cxd acc(0.0, 0.0);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const cxd v = dense.vec(idx);
    if (v == cxd(0.0, 0.0)) continue;
    cxd w = v;
    for (Eigen::Index j = 0; j < L; ++j) {
      const int occ = static_cast<int>((idx >> (L - 1 - j)) & 1);
      w *= bras[static_cast<std::size_t>(j)].bra(config.sign(j), occ);
    }
    acc += w;
  }
  return acc;
}

Vector oracle_all_amplitudes(const DenseState& dense,
                             const PauliBasisSpec& basis) {
  const Eigen::Index L = dense.size;
  if (basis.size() != L) {
    throw std::invalid_argument("oracle_all_amplitudes: length mismatch");
  }
  Vector v = dense.vec;
  // Fold one site at a time; outcome bit 1 ('+') lands where occupation
  // bit 1 lived, so the result is laid out by outcome_index.
  for (Eigen::Index j = 0; j < L; ++j) {
    const CanonicalBraPair b = canonical_bras(basis.site(j));
    const Eigen::Index stride = Eigen::Index(1) << (L - 1 - j);
    for (Eigen::Index block = 0; block < (Eigen::Index(1) << L);
         block += 2 * stride) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        const cxd v0 = v(block + off);
        const cxd v1 = v(block + stride + off);
        v(block + stride + off) = b.plus_0 * v0 + b.plus_1 * v1;
        v(block + off) = b.minus_0 * v0 + b.minus_1 * v1;
      }
    }
  }
  return v;
}

Matrix oracle_partial_trace(const DenseState& dense,
                            std::span<const Eigen::Index> keep) {
  const Eigen::Index L = dense.size;
  const Eigen::Index k = static_cast<Eigen::Index>(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] < 0 || keep[a] >= L) {
      throw std::invalid_argument("oracle_partial_trace: site out of range");
    }
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      if (keep[a] == keep[b]) {
        throw std::invalid_argument("oracle_partial_trace: repeated site");
      }
    }
  }
  if (k > 10) {
    throw guard_error("oracle_partial_trace: keeping " + std::to_string(k) +
                      " sites exceeds the 2^10 reduced-dimension limit");
  }
  std::vector<bool> kept(static_cast<std::size_t>(L), false);
  for (const auto s : keep) kept[static_cast<std::size_t>(s)] = true;

  const Eigen::Index dim_keep = Eigen::Index(1) << k;
  const Eigen::Index dim_env = Eigen::Index(1) << (L - k);
  Matrix w = Matrix::Zero(dim_env, dim_keep);
  for (Eigen::Index idx = 0; idx < (Eigen::Index(1) << L); ++idx) {
    Eigen::Index a = 0;
    for (std::size_t pos = 0; pos < keep.size(); ++pos) {
      a = (a << 1) | ((idx >> (L - 1 - keep[pos])) & 1);
    }
    Eigen::Index e = 0;
    for (Eigen::Index j = 0; j < L; ++j) {
      if (!kept[static_cast<std::size_t>(j)]) {
        e = (e << 1) | ((idx >> (L - 1 - j)) & 1);
      }
    }
    w(e, a) = dense.vec(idx);
  }
  return w.transpose() * w.conjugate();
}

}  // namespace fgamp
