#pragma once

#include <string>

#include "fgamp/state.hpp"

namespace fgamp {

/// Transverse-field Ising ring H = -sum_i (J x_i x_{i+1} + h z_i),
/// periodic, even fermion-parity (antiperiodic) sector.
struct TfimSpec {
  Eigen::Index size = 0;
  double coupling_j = 1.0;
  double field_h = 1.0;
};

/// Authoritative small-size route: diagonalizes the spin Hamiltonian in the
/// even-parity sector, reads the ground state's fermionic amplitudes off the
/// Jordan-Wigner correspondence and inverts the pfaffinho formula,
/// r_ij = a_{ij} / a_vacuum. L <= 12; requires a nonzero vacuum overlap.
GaussianPureState tfim_r_matrix_exact_small(const TfimSpec& spec);

/// Scalable route: Bogoliubov diagonalization in the antiperiodic momentum
/// sector, returning the BCS pairing matrix in real space. Pinned to agree
/// entrywise with the exact-small route.
GaussianPureState tfim_r_matrix_bogoliubov(const TfimSpec& spec);

namespace detail {

/// Both routes parameterized by the occupied spin direction of the
/// Jordan-Wigner map. The public builders fix `up_is_occupied` so that the
/// engine's '+' outcome at theta = 0 is the field-aligned direction.
GaussianPureState tfim_exact_small_impl(const TfimSpec& spec,
                                        bool up_is_occupied);
GaussianPureState tfim_bogoliubov_impl(const TfimSpec& spec,
                                       bool up_is_occupied);

}  // namespace detail

}  // namespace fgamp
