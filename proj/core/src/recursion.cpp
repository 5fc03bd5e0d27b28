#include "fgamp/recursion.hpp"

#include <cmath>

namespace fgamp {

std::vector<RecursionTerm> recursion_terms(Eigen::Index padded_size,
                                           std::span<const int> padded_spins,
                                           RecursionVariant variant) {
  const Eigen::Index lp = padded_size;
  if (lp % 2 != 0 || lp < 2) {
    throw std::invalid_argument("recursion_terms: padded size must be even");
  }
  if (padded_spins.size() != static_cast<std::size_t>(lp)) {
    throw std::invalid_argument("recursion_terms: spin length mismatch");
  }
  std::vector<RecursionTerm> terms;

  // Even pairs (1, 2j) in 1-based labels: partner index 2j-1 here.
  for (Eigen::Index j = 1; j <= lp / 2; ++j) {
    RecursionTerm t;
    t.partner = 2 * j - 1;
    t.odd_pair = false;
    t.pair_phi_shift = false;
    t.pair_theta_flip = false;
    double parity = 1.0;  // P(Abar_2j) over 1-based positions 2j+1..L'
    for (Eigen::Index p = 2 * j; p < lp; ++p) {
      parity *= padded_spins[static_cast<std::size_t>(p)];
    }
    t.parity_sign = parity;
    for (Eigen::Index p = 1; p < lp; ++p) {
      if (p == t.partner) continue;
      t.remainder.push_back(p);
      t.remainder_theta_flip.push_back(p >= 2 * j);  // 1-based p+1 > 2j
    }
    terms.push_back(std::move(t));
  }

  // Odd pairs (1, 2j+1): partner index 2j. The remainder carries the
  // complementary surgery 2pi - thetabar^j.
  for (Eigen::Index j = 1; j <= lp / 2 - 1; ++j) {
    RecursionTerm t;
    t.partner = 2 * j;
    t.odd_pair = true;
    t.pair_phi_shift = (variant == RecursionVariant::PhiShift);
    t.pair_theta_flip = (variant == RecursionVariant::ThetaFlip);
    double parity = 1.0;  // P(A_2j) over 1-based positions 2..2j
    for (Eigen::Index p = 1; p < 2 * j; ++p) {
      parity *= padded_spins[static_cast<std::size_t>(p)];
    }
    t.parity_sign = parity;
    for (Eigen::Index p = 1; p < lp; ++p) {
      if (p == t.partner) continue;
      t.remainder.push_back(p);
      t.remainder_theta_flip.push_back(p < 2 * j);  // flipped on A_2j
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

namespace detail {

namespace {

cxd evaluate_sequence(const SkewMatrix& r, std::vector<SiteAngles> angles,
                      std::vector<int> spins, RecursionVariant variant,
                      bool full_recursion) {
  if (full_recursion && r.dim() > 2) {
    return recursive_b(r, angles, spins, variant, full_recursion);
  }
  return even_sequence_b(r, angles, spins);
}

}  // namespace

cxd recursive_b(const SkewMatrix& r, std::span<const SiteAngles> angles,
                std::span<const int> spins, RecursionVariant variant,
                bool full_recursion) {
  const Eigen::Index lp = r.dim();
  if (lp == 0) return cxd(1.0, 0.0);
  if (lp == 2) return even_sequence_b(r, angles, spins);

  const auto terms = recursion_terms(lp, spins, variant);
  cxd acc(0.0, 0.0);
  for (const auto& t : terms) {
    // Pair factor b_{s_1, s_partner}.
    std::vector<Eigen::Index> pair_idx{0, t.partner};
    SkewMatrix r_pair = r.submatrix(pair_idx);
    std::vector<SiteAngles> pair_angles{angles[0],
                                        angles[static_cast<std::size_t>(t.partner)]};
    std::vector<int> pair_spins{spins[0],
                                spins[static_cast<std::size_t>(t.partner)]};
    if (t.pair_phi_shift) {
      pair_angles[0].phi += kPi / 2.0;
      pair_angles[1].phi += kPi / 2.0;
    }
    if (t.pair_theta_flip) {
      pair_angles[0].theta = 2.0 * kPi - pair_angles[0].theta;
    }
    const cxd pair_b = even_sequence_b(r_pair, pair_angles, pair_spins);

    // Remainder factor with the theta surgery applied.
    SkewMatrix r_rest = r.submatrix(t.remainder);
    std::vector<SiteAngles> rest_angles;
    std::vector<int> rest_spins;
    rest_angles.reserve(t.remainder.size());
    rest_spins.reserve(t.remainder.size());
    for (std::size_t a = 0; a < t.remainder.size(); ++a) {
      SiteAngles sa = angles[static_cast<std::size_t>(t.remainder[a])];
      if (t.remainder_theta_flip[a]) sa.theta = 2.0 * kPi - sa.theta;
      rest_angles.push_back(sa);
      rest_spins.push_back(spins[static_cast<std::size_t>(t.remainder[a])]);
    }
    const cxd rest_b = evaluate_sequence(r_rest, std::move(rest_angles),
                                         std::move(rest_spins), variant,
                                         full_recursion);

    double sign = t.parity_sign;
    if (t.odd_pair && variant == RecursionVariant::PhiShift) sign = -sign;
    if (t.odd_pair && variant == RecursionVariant::ThetaFlip) {
      // (-1)^{(1 + s_1)/2}
      sign *= (spins[0] > 0) ? -1.0 : 1.0;
    }
    acc += sign * pair_b * rest_b;
  }
  return acc;
}

}  // namespace detail

cxd unnormalized_amplitude(const GaussianPureState& state,
                           const PauliBasisSpec& basis,
                           const SpinConfiguration& config) {
  const PaddedProblem p = build_padded(state, basis, config);
  return state.phase() *
         detail::theorem1_prefactor(p.original_size, p.spins.front()) *
         detail::even_sequence_b(p.r, p.angles, p.spins);
}

cxd recursive_amplitude(const GaussianPureState& state,
                        const PauliBasisSpec& basis,
                        const SpinConfiguration& config,
                        RecursionVariant variant, bool full_recursion) {
  const PaddedProblem p = build_padded(state, basis, config);
  const cxd sum =
      detail::recursive_b(p.r, p.angles, p.spins, variant, full_recursion);
  return state.phase() *
         detail::theorem1_prefactor(p.original_size, p.spins.front()) * sum /
         state.norm();
}

cxd recursive_amplitude_alt(const GaussianPureState& state,
                            const PauliBasisSpec& basis,
                            const SpinConfiguration& config,
                            bool full_recursion) {
  return recursive_amplitude(state, basis, config,
                             RecursionVariant::ThetaFlip, full_recursion);
}

}  // namespace fgamp
