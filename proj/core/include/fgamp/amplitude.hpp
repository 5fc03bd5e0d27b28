#pragma once

#include <span>
#include <string>
#include <vector>

#include "fgamp/basis.hpp"
#include "fgamp/state.hpp"

namespace fgamp {

enum class AmplitudePath { Auto, TanForm, MForm, DomainWall };

struct AmplitudeRequest {
  const GaussianPureState& state;
  const PauliBasisSpec& basis;
  const SpinConfiguration& config;
  AmplitudePath path = AmplitudePath::Auto;
};

/// Even-size working problem: odd chains gain one ancilla site carrying the
/// first spin, theta = pi/2, alpha = 0, and a zero row/column of R.
struct PaddedProblem {
  Eigen::Index original_size;
  Eigen::Index effective_size;
  SkewMatrix r;
  std::vector<SiteAngles> angles;
  std::vector<int> spins;
};

PaddedProblem build_padded(const GaussianPureState& state,
                           const PauliBasisSpec& basis,
                           const SpinConfiguration& config);

/// Half-width of the theta band around multiples of pi where the tan/cot
/// parameterization blows up; tan_form and the det-ratio probability reject
/// angles inside it.
inline constexpr double kThetaSingularBand = 1e-6;

/// Theta-regular default evaluation (the pf M form).
cxd amplitude_m_form(const AmplitudeRequest& req);
cxd amplitude_m_form(const GaussianPureState&, const PauliBasisSpec&,
                     const SpinConfiguration&);

/// tan/cot-parameterized form; rejects theta within kThetaSingularBand of
/// {0, pi, 2pi} and refers the caller to the m form.
cxd amplitude_tan_form(const AmplitudeRequest& req);
cxd amplitude_tan_form(const GaussianPureState&, const PauliBasisSpec&,
                       const SpinConfiguration&);

/// Dispatcher; Auto resolves to the m form.
cxd amplitude(const AmplitudeRequest& req);
cxd amplitude(const GaussianPureState&, const PauliBasisSpec&,
              const SpinConfiguration&, AmplitudePath path = AmplitudePath::Auto);

/// Domain-wall evaluation for the uniform (phi, pi/2, 0) basis. Kept as a
/// cross-validation route; errors on singular intermediate matrices.
cxd domain_wall_amplitude(const GaussianPureState& state, double phi,
                          const SpinConfiguration& config);

struct RelationCheck {
  std::string name;
  double residual;
};

struct AmplitudeRelationsReport {
  std::vector<RelationCheck> checks;
  double max_residual;
};

/// Verifies the three printed L=4 amplitude product relations: one in the
/// sigma-z basis and two in the (phi, pi/2, 0) basis (phi taken from the
/// first site of the supplied basis).
AmplitudeRelationsReport amplitude_relations_check(
    const GaussianPureState& state, const PauliBasisSpec& basis);

namespace detail {

/// Entry b_{s_n, s_m} of the amplitude matrix M for one ordered pair.
/// `parity` is (-1)^{n+m}; 0- and 1-based index parities coincide.
cxd pair_b(cxd r_nm, int parity, const SiteAngles& an, const SiteAngles& am,
           int sn, int sm);

/// e^{-i sum_{minus sites} alpha} * pf M over an even-length site sequence;
/// equals N_R * a for an even chain. The recursion's b-objects are exactly
/// these values on reduced sequences.
cxd even_sequence_b(const SkewMatrix& r, std::span<const SiteAngles> angles,
                    std::span<const int> spins);

/// (-1)^{L (1 - s1) / 2} * sqrt(2)^{L mod 2}, with the ORIGINAL length and
/// first spin (oracle-arbitrated for odd chains).
double theorem1_prefactor(Eigen::Index original_length, int s1);

}  // namespace detail

}  // namespace fgamp
