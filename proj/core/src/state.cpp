#include "fgamp/state.hpp"

#include <cmath>
#include <random>

#include <Eigen/Cholesky>

namespace fgamp {

FermionConfiguration::FermionConfiguration(std::vector<int> bits)
    : bits_(std::move(bits)) {
  for (int b : bits_) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument(
          "FermionConfiguration: bits must be 0 or 1");
    }
  }
}

FermionConfiguration FermionConfiguration::Vacuum(Eigen::Index length) {
  return FermionConfiguration(
      std::vector<int>(static_cast<std::size_t>(length), 0));
}

bool FermionConfiguration::is_vacuum() const {
  for (int b : bits_) {
    if (b != 0) return false;
  }
  return true;
}

int FermionConfiguration::occupation() const {
  int n = 0;
  for (int b : bits_) n += b;
  return n;
}

std::vector<Eigen::Index> FermionConfiguration::occupied_sites() const {
  std::vector<Eigen::Index> occ;
  for (Eigen::Index j = 0; j < size(); ++j) {
    if (bit(j)) occ.push_back(j);
  }
  return occ;
}

std::string FermionConfiguration::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (int b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

double log_det_norm(const SkewMatrix& r) {
  const Eigen::Index n = r.dim();
  if (n == 0) return 0.0;
  Matrix a = Matrix::Identity(n, n) + r.matrix().adjoint() * r.matrix();
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("normalization: Cholesky of I + R^dag R failed");
  }
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    log_det += 2.0 * std::log(std::real(llt.matrixLLT()(i, i)));
  }
  return log_det;
}

double normalization(const SkewMatrix& r) {
  return std::exp(0.25 * log_det_norm(r));
}

GaussianPureState::GaussianPureState(SkewMatrix r, FermionConfiguration base,
                                     cxd phase)
    : r_(std::move(r)), base_(std::move(base)), phase_(phase) {
  if (base_.size() != r_.dim()) {
    throw std::invalid_argument(
        "GaussianPureState: base configuration length " +
        std::to_string(base_.size()) + " does not match matrix dim " +
        std::to_string(r_.dim()));
  }
  log_norm_ = 0.25 * log_det_norm(r_);
  norm_ = std::exp(log_norm_);
}

void GaussianPureState::require_vacuum_base(const char* caller) const {
  if (!base_.is_vacuum()) {
    throw std::invalid_argument(std::string(caller) +
                                ": state must be in vacuum base; call "
                                "make_state or base_config_change first");
  }
}

GaussianPureState make_state(SkewMatrix r, FermionConfiguration base,
                             cxd phase) {
  GaussianPureState raw(std::move(r), std::move(base), phase);
  if (raw.base_config().is_vacuum()) return raw;
  return base_config_change(raw, FermionConfiguration::Vacuum(raw.size()));
}

GaussianPureState make_state(SkewMatrix r) {
  const Eigen::Index n = r.dim();
  return GaussianPureState(std::move(r), FermionConfiguration::Vacuum(n));
}

cxd computational_amplitude(const GaussianPureState& state,
                            const FermionConfiguration& config) {
  state.require_vacuum_base("computational_amplitude");
  if (config.size() != state.size()) {
    throw std::invalid_argument(
        "computational_amplitude: configuration length mismatch");
  }
  if (config.occupation() % 2 != 0) return cxd(0.0, 0.0);
  const auto occ = config.occupied_sites();
  return state.phase() *
         sub_pfaffian(state.r_matrix(), IndexSubset(state.size(), occ)) /
         state.norm();
}

namespace detail {

int transition_sign(const std::vector<int>& prefix_bits,
                    const std::vector<int>& x, const std::vector<int>& y) {
  int sign = 1;
  int prefix = prefix_bits.empty() ? 0 : prefix_bits[0];
  for (std::size_t l = 1; l < prefix_bits.size(); ++l) {
    if (x[l] != y[l] && (prefix % 2) != 0) sign = -sign;
    prefix += prefix_bits[l];
  }
  return sign;
}

}  // namespace detail

namespace {

std::vector<Eigen::Index> differing_sites(const std::vector<int>& a,
                                          const std::vector<int>& b) {
  std::vector<Eigen::Index> out;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (a[l] != b[l]) out.push_back(static_cast<Eigen::Index>(l));
  }
  return out;
}

}  // namespace

GaussianPureState base_config_change(const GaussianPureState& state,
                                     const FermionConfiguration& new_base) {
  const Eigen::Index n = state.size();
  if (new_base.size() != n) {
    throw std::invalid_argument("base_config_change: base length mismatch");
  }
  const std::vector<int>& c = state.base_config().bits();
  const std::vector<int>& cp = new_base.bits();
  if (c == cp) {
    return GaussianPureState(state.r_matrix(), new_base, state.phase());
  }

  const auto cc = differing_sites(c, cp);
  const cxd pf_base =
      sub_pfaffian(state.r_matrix(), IndexSubset(n, cc));
  if (pf_base == cxd(0.0, 0.0)) {
    throw guard_error(
        "base_config_change: target configuration has zero amplitude "
        "(pf R_{C delta C'} vanishes on " +
        std::to_string(cc.size()) + " differing sites)");
  }
  const int sgn_ccp = detail::transition_sign(c, c, cp);

  Matrix rp = Matrix::Zero(n, n);
  std::vector<int> flipped = cp;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // I' = C' with sites i and j flipped.
      flipped[static_cast<std::size_t>(i)] ^= 1;
      flipped[static_cast<std::size_t>(j)] ^= 1;

      const auto ci = differing_sites(c, flipped);
      const cxd pf_num =
          sub_pfaffian(state.r_matrix(), IndexSubset(n, ci));
      if (pf_num != cxd(0.0, 0.0)) {
        const int sgn_ci = detail::transition_sign(c, c, flipped);
        const int sgn_cpi = detail::transition_sign(cp, cp, flipped);
        const double sign =
            static_cast<double>(sgn_ccp * sgn_ci * sgn_cpi);
        rp(i, j) = sign * pf_num / pf_base;
        rp(j, i) = -rp(i, j);
      }

      flipped[static_cast<std::size_t>(i)] ^= 1;
      flipped[static_cast<std::size_t>(j)] ^= 1;
    }
  }
  // The new expansion pins the |C'> component real-positive; the original
  // state's C' amplitude has phase sgn(C,C') pf_base / |pf_base|.
  const cxd phase = state.phase() * static_cast<double>(sgn_ccp) * pf_base /
                    std::abs(pf_base);
  return GaussianPureState(SkewMatrix::FromSkewParts(std::move(rp)), new_base,
                           phase);
}

GaussianPureState random_state(Eigen::Index length, std::uint64_t seed,
                               double scale) {
  Matrix r = Matrix::Zero(length, length);
  if (scale > 0.0) {
    std::mt19937_64 rng(seed);
    // Std dev `scale` for the complex entry: scale/sqrt(2) per component.
    std::normal_distribution<double> gauss(0.0, scale / std::sqrt(2.0));
    for (Eigen::Index i = 0; i < length; ++i) {
      for (Eigen::Index j = i + 1; j < length; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        r(i, j) = cxd(re, im);
        r(j, i) = -r(i, j);
      }
    }
  }
  return make_state(SkewMatrix::FromSkewParts(std::move(r)));
}

}  // namespace fgamp
