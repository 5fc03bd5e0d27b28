#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fgamp/amplitude.hpp"

namespace fgamp {

enum class ProbabilityPath { AmplitudeSquared, DetRatio };

std::string to_string(ProbabilityPath path);

/// Outcome probability. Neither path touches alpha, so the result is
/// bit-identical under alpha changes. DetRatio shares tan_form's singular
/// theta band.
double probability(const GaussianPureState& state, const PauliBasisSpec& basis,
                   const SpinConfiguration& config, ProbabilityPath path);

/// Full outcome distribution, stored compactly by outcome index
/// (site 0 = most significant bit, '+' = 1).
class ProbabilityTable {
 public:
  ProbabilityTable(Eigen::Index length, std::vector<double> probs,
                   ProbabilityPath path);

  Eigen::Index length() const { return length_; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(probs_.size()); }
  double probability_at(Eigen::Index idx) const {
    return probs_[static_cast<std::size_t>(idx)];
  }
  SpinConfiguration configuration_at(Eigen::Index idx) const;
  const std::vector<double>& probabilities() const { return probs_; }
  ProbabilityPath path() const { return path_; }
  /// Deterministic pairwise-tree total.
  double total() const { return total_; }

 private:
  Eigen::Index length_;
  std::vector<double> probs_;
  ProbabilityPath path_;
  double total_;
};

inline constexpr Eigen::Index kEnumerationMaxSites = 24;

/// Enumerates all 2^L outcomes in index order; refuses L > 24 unless
/// `force` is set. `threads` parallelizes over fixed 2^14-outcome blocks
/// without changing any result bit.
ProbabilityTable enumerate_probabilities(
    const GaussianPureState& state, const PauliBasisSpec& basis,
    ProbabilityPath path = ProbabilityPath::AmplitudeSquared,
    bool force = false, int threads = 1);

struct SubregionOutcome {
  std::vector<Eigen::Index> sites;  ///< sorted, nonempty
  std::vector<int> signs;           ///< parallel to sites, +1/-1
};

/// Sum of full-chain probabilities over all extensions of the outcome to the
/// complement of B. The complement must have at most 24 sites.
double marginal_probability(const GaussianPureState& state,
                            const PauliBasisSpec& basis,
                            const SubregionOutcome& outcome);

/// H_alpha = (1-alpha)^{-1} ln sum_S P_S^alpha over the complete outcome
/// distribution; alpha = 1 is the Shannon sum. Natural logarithm.
double shannon_renyi_entropy(const GaussianPureState& state,
                             const PauliBasisSpec& basis, double alpha,
                             bool force = false);

struct BasisSearchResult {
  PauliBasisSpec basis;
  SpinConfiguration config;
  double probability;
};

/// Coordinate-ascent heuristic for the maximum outcome probability over
/// per-site (theta, phi); a lower bound on the true maximum, deterministic
/// for a given seed.
BasisSearchResult max_probability_search(const GaussianPureState& state,
                                         int grid_resolution, int restarts,
                                         std::uint64_t seed = 0);

namespace detail {

/// Fixed-shape pairwise summation; the result depends only on the values.
double tree_sum(std::span<const double> values);

}  // namespace detail

}  // namespace fgamp
