#pragma once

#include <span>

#include "fgamp/basis.hpp"
#include "fgamp/state.hpp"

namespace fgamp {

/// Brute-force dense reference state over 2^L occupation configurations.
///
/// Bit-indexing convention, fixed here and imported everywhere: site 0 is
/// the MOST significant bit; occupation 1 (and spin '+') set the bit.
struct DenseState {
  Eigen::Index size = 0;
  Vector vec;
};

Eigen::Index config_index(const FermionConfiguration& config);
FermionConfiguration index_to_config(Eigen::Index idx, Eigen::Index length);
Eigen::Index outcome_index(const SpinConfiguration& outcome);
SpinConfiguration index_to_outcome(Eigen::Index idx, Eigen::Index length);

inline constexpr Eigen::Index kOracleMaxSites = 14;

/// Expands the Gaussian state into the full statevector. Handles nonvacuum
/// bases through the signed pfaffinho expansion. L <= 14.
DenseState dense_from_gaussian(const GaussianPureState& state);

/// Contracts the dense vector with the per-site canonical bras; this is the
/// reference value for amplitude().
cxd oracle_amplitude(const DenseState& dense, const PauliBasisSpec& basis,
                     const SpinConfiguration& config);

/// All 2^L outcome amplitudes at once (outcome_index layout).
Vector oracle_all_amplitudes(const DenseState& dense,
                             const PauliBasisSpec& basis);

/// Exact reduced density matrix on the kept sites, in listed order
/// (keep[0] is the most significant bit of the reduced index).
Matrix oracle_partial_trace(const DenseState& dense,
                            std::span<const Eigen::Index> keep);

}  // namespace fgamp
