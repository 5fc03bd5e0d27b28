#pragma once

#include <vector>

#include "fgamp/amplitude.hpp"

namespace fgamp {

enum class RecursionVariant {
  PhiShift,   ///< odd pairs carry phi -> phi + pi/2 on both pair sites
  ThetaFlip,  ///< odd pairs carry theta_1 -> 2pi - theta_1 instead
};

/// One term of the pairwise expansion of b_S: site 1 paired with `partner`,
/// a remainder sequence with per-site theta -> 2pi - theta surgeries, and a
/// spin-parity sign. All indices are 0-based positions in the padded chain.
struct RecursionTerm {
  Eigen::Index partner;
  bool odd_pair;         ///< second-sum term (overall minus in the PhiShift form)
  double parity_sign;    ///< P(A_2j) or P(Abar_2j)
  bool pair_phi_shift;   ///< phi + pi/2 on both pair sites
  bool pair_theta_flip;  ///< 2pi - theta on the first pair site
  std::vector<Eigen::Index> remainder;
  std::vector<bool> remainder_theta_flip;  ///< parallel to `remainder`
};

/// Term list without evaluation; the printed small-size expansions are
/// checked against exactly this structure.
std::vector<RecursionTerm> recursion_terms(
    Eigen::Index padded_size, std::span<const int> padded_spins,
    RecursionVariant variant = RecursionVariant::PhiShift);

/// b_S = N_R * a_S; also well defined on principal submatrices.
cxd unnormalized_amplitude(const GaussianPureState& state,
                           const PauliBasisSpec& basis,
                           const SpinConfiguration& config);

/// Pairwise recursive evaluation of the amplitude. Pair and remainder
/// factors go through the direct engine, making this a genuine second route;
/// `full_recursion` instead recurses the remainder down to two-site factors.
cxd recursive_amplitude(const GaussianPureState& state,
                        const PauliBasisSpec& basis,
                        const SpinConfiguration& config,
                        RecursionVariant variant = RecursionVariant::PhiShift,
                        bool full_recursion = false);

/// The theta-flip variant of the odd-pair branch.
cxd recursive_amplitude_alt(const GaussianPureState& state,
                            const PauliBasisSpec& basis,
                            const SpinConfiguration& config,
                            bool full_recursion = false);

namespace detail {

/// Evaluates the recursion on an explicit even-length padded sequence.
cxd recursive_b(const SkewMatrix& r, std::span<const SiteAngles> angles,
                std::span<const int> spins, RecursionVariant variant,
                bool full_recursion);

}  // namespace detail

}  // namespace fgamp
