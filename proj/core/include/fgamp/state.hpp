#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgamp/skewlin.hpp"
#include "fgamp/types.hpp"

namespace fgamp {

/// Occupation-number string over {0,1}, site 0 first.
class FermionConfiguration {
 public:
  FermionConfiguration() = default;
  explicit FermionConfiguration(std::vector<int> bits);

  static FermionConfiguration Vacuum(Eigen::Index length);

  Eigen::Index size() const { return static_cast<Eigen::Index>(bits_.size()); }
  int bit(Eigen::Index j) const { return bits_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& bits() const { return bits_; }
  bool is_vacuum() const;
  int occupation() const;
  std::vector<Eigen::Index> occupied_sites() const;
  std::string to_string() const;

  bool operator==(const FermionConfiguration&) const = default;

 private:
  std::vector<int> bits_;
};

/// Fermionic Gaussian pure state |R, C>, held as the pairing matrix R plus
/// a base configuration C and the cached normalization det(I + R^dag R)^{1/4}.
///
/// The canonical expansion pins the |C> component real-positive, so changing
/// the base can only reproduce the state up to a ray phase; `phase` carries
/// that factor explicitly and base_config_change keeps dense statevectors
/// exactly equal.
///
/// make_state() canonicalizes any nonvacuum base to the vacuum eagerly so
/// the amplitude formulas, which assume |C> = |0>, apply directly.
/// base_config_change() returns the literal |R', C'> representation instead.
class GaussianPureState {
 public:
  GaussianPureState(SkewMatrix r, FermionConfiguration base,
                    cxd phase = cxd(1.0, 0.0));

  Eigen::Index size() const { return r_.dim(); }
  const SkewMatrix& r_matrix() const { return r_; }
  const FermionConfiguration& base_config() const { return base_; }
  cxd phase() const { return phase_; }
  double norm() const { return norm_; }
  double log_norm() const { return log_norm_; }

  void require_vacuum_base(const char* caller) const;

 private:
  SkewMatrix r_;
  FermionConfiguration base_;
  cxd phase_;
  double norm_;
  double log_norm_;
};

/// Canonical constructor: converts a nonvacuum base to the vacuum when the
/// vacuum amplitude is nonzero; throws guard_error otherwise.
GaussianPureState make_state(SkewMatrix r, FermionConfiguration base,
                             cxd phase = cxd(1.0, 0.0));
GaussianPureState make_state(SkewMatrix r);

/// det(I + R^dag R)^{1/4}; always >= 1 and real.
double normalization(const SkewMatrix& r);
/// ln det(I + R^dag R), accumulated in log space.
double log_det_norm(const SkewMatrix& r);

/// pf(R_I) / N_R with I the occupied sites; exactly 0 for odd occupation.
/// Requires vacuum base.
cxd computational_amplitude(const GaussianPureState& state,
                            const FermionConfiguration& config);

/// Re-expresses the same physical state over a different base configuration
/// via the pfaffinho-ratio rule. The target configuration must have nonzero
/// amplitude; otherwise the vanishing Pfaffian is reported.
GaussianPureState base_config_change(const GaussianPureState& state,
                                     const FermionConfiguration& new_base);

/// Deterministic-from-seed dense random state: independent complex Gaussian
/// entries of standard deviation `scale` above the diagonal, vacuum base.
GaussianPureState random_state(Eigen::Index length, std::uint64_t seed,
                               double scale);

namespace detail {

/// prod over sites l >= 1 of (-1)^{[x_l != y_l] * sum_{j<l} prefix_j}; the
/// fermionic reordering sign between configurations over base `prefix`.
int transition_sign(const std::vector<int>& prefix, const std::vector<int>& x,
                    const std::vector<int>& y);

}  // namespace detail

}  // namespace fgamp
