#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fgamp/types.hpp"

namespace fgamp {

/// One local measurement basis, parameterized by three angles in radians.
struct SiteAngles {
  double phi = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
};

/// Per-site basis angles for a chain. Angles are stored as given; reduction
/// mod 2pi happens only at parse/display time so that shifted angles like
/// 2pi - theta survive intermediate algebra unreduced.
class PauliBasisSpec {
 public:
  PauliBasisSpec() = default;
  explicit PauliBasisSpec(std::vector<SiteAngles> sites)
      : sites_(std::move(sites)) {}

  static PauliBasisSpec Uniform(Eigen::Index length, double phi, double theta,
                                double alpha);

  Eigen::Index size() const { return static_cast<Eigen::Index>(sites_.size()); }
  const SiteAngles& site(Eigen::Index j) const {
    return sites_[static_cast<std::size_t>(j)];
  }
  SiteAngles& site(Eigen::Index j) { return sites_[static_cast<std::size_t>(j)]; }
  const std::vector<SiteAngles>& sites() const { return sites_; }

  /// Copy with every angle reduced into [0, 2pi).
  PauliBasisSpec canonicalized() const;

 private:
  std::vector<SiteAngles> sites_;
};

/// Measurement outcome string; +1 per up spin, -1 per down spin.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<int> signs);

  Eigen::Index size() const { return static_cast<Eigen::Index>(signs_.size()); }
  int sign(Eigen::Index j) const { return signs_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& signs() const { return signs_; }

  std::vector<Eigen::Index> plus_sites() const;
  std::vector<Eigen::Index> minus_sites() const;
  SpinConfiguration flipped() const;

  std::string to_string() const;

 private:
  std::vector<int> signs_;
};

/// Accepts +/u/1 for up and -/d/0 for down; anything else is rejected with
/// the offending position.
SpinConfiguration parse_configuration(std::string_view text);

/// The single-qubit basis-change matrix
///   [[cos(t/2),            sin(t/2) e^{-i phi}   ],
///    [sin(t/2) e^{-i a},  -cos(t/2) e^{-i(a+phi)}]].
Eigen::Matrix2cd u_matrix(double phi, double theta, double alpha);

/// Bra-side convention the whole engine is pinned to. The rows are
/// orthonormal for all angles, and product-state contractions against these
/// bras reproduce the Pfaffian amplitude formula exactly in phase, not just
/// in modulus.
struct CanonicalBraPair {
  cxd plus_0;   ///< <+|0>
  cxd plus_1;   ///< <+|1>
  cxd minus_0;  ///< <-|0>
  cxd minus_1;  ///< <-|1>

  cxd bra(int spin_sign, int occupation) const {
    if (spin_sign > 0) return occupation ? plus_1 : plus_0;
    return occupation ? minus_1 : minus_0;
  }
};

/// <+|0> = sin(t/2), <+|1> = e^{i phi} cos(t/2),
/// <-|0> = -e^{-i a} cos(t/2), <-|1> = e^{-i a} e^{i phi} sin(t/2).
CanonicalBraPair canonical_bras(double phi, double theta, double alpha);
CanonicalBraPair canonical_bras(const SiteAngles& a);

}  // namespace fgamp
