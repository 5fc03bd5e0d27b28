#pragma once

#include <span>
#include <string>
#include <vector>

#include "fgamp/amplitude.hpp"
#include "fgamp/basis.hpp"
#include "fgamp/state.hpp"

namespace fgamp {

/// Ring partition in cyclic order A1, B1, A2, B2. The separation d is the
/// number of B1 sites strictly between the facing ends of A1 and A2.
struct MeasurementGeometry {
  Eigen::Index ring_size = 0;
  std::vector<Eigen::Index> a1, b1, a2, b2;

  static MeasurementGeometry Ring(Eigen::Index ring_size,
                                  Eigen::Index a1_size, Eigen::Index a2_size,
                                  Eigen::Index d);

  std::vector<Eigen::Index> a_sites() const;  ///< a1 then a2
  std::vector<Eigen::Index> b_sites() const;  ///< b1 then b2
  Eigen::Index a_size() const;
  Eigen::Index b_size() const;
  void validate() const;
};

/// Conditional state on A after projecting B onto a fixed outcome.
struct PostMeasurementState {
  Vector amplitudes;  ///< 2^{|A|}, a_sites order, first listed site = MSB
  double p_outcome = 0.0;
  SpinConfiguration outcome_b;
};

/// Joint amplitudes over all 2^{|A|} extensions, normalized by sqrt(P_SB).
/// Outcome signs follow geometry.b_sites() order. |A| <= 16.
PostMeasurementState condition_on_outcome(const GaussianPureState& state,
                                          const PauliBasisSpec& basis,
                                          const MeasurementGeometry& geometry,
                                          const SpinConfiguration& outcome_b,
                                          int threads = 1);

/// psi psi^dag after reshaping the conditional vector to 2^{|A1|} x 2^{|A2|}
/// (A1 index major).
Matrix reduced_density_matrix(const PostMeasurementState& pm,
                              const MeasurementGeometry& geometry);

/// Eigenvalue-based Renyi entropy of a density matrix; alpha = 1 gives the
/// von Neumann entropy. Eigenvalues below 1e-14 are dropped.
double renyi_entropy(const Matrix& rho, double alpha);

enum class OutcomePattern {
  ZAllPlus,          ///< sigma-z basis, + on all of B
  XAllPlus,          ///< sigma-x basis, + on all of B
  XPlusMinus,        ///< sigma-x basis, + on B1 and - on B2
  XAlternating,      ///< sigma-x basis, alternating +- on B1 and B2
  XAlternatingPlus,  ///< sigma-x basis, alternating on B1, + on B2
};

OutcomePattern parse_pattern(const std::string& name);
std::string to_string(OutcomePattern pattern);
PauliBasisSpec pattern_basis(OutcomePattern pattern, Eigen::Index ring_size);
/// Outcome on B (b1-then-b2 order); alternating patterns require even blocks.
SpinConfiguration pattern_outcome(OutcomePattern pattern,
                                  const MeasurementGeometry& geometry);

struct DecayRow {
  Eigen::Index ring_size;
  Eigen::Index d;
  double alpha;
  double entropy;
  double p_outcome;
};
using DecayTable = std::vector<DecayRow>;

/// Post-measurement entanglement between A1 and A2 versus separation d,
/// at fixed ring size and block sizes.
DecayTable decay_scan(const GaussianPureState& state, OutcomePattern pattern,
                      std::span<const double> alphas,
                      std::span<const Eigen::Index> d_values,
                      Eigen::Index a1_size, Eigen::Index a2_size,
                      int threads = 1);

struct PowerLawFit {
  double eta = 0.0;       ///< - d ln E / d ln d
  double delta1 = 0.0;    ///< eta/(4 alpha) for alpha < 1, eta/4 otherwise
  double residual = 0.0;  ///< rms residual of ln E
  int n_points = 0;
  double alpha = 0.0;
  Eigen::Index window_lo = 0, window_hi = 0;
};

/// Least-squares slope of ln E vs ln d over the window; needs >= 4 points.
PowerLawFit fit_decay_exponent(const DecayTable& table, double alpha,
                               Eigen::Index window_lo, Eigen::Index window_hi);

struct ExponentialFit {
  double rate = 0.0;      ///< - d ln E / d d
  double residual = 0.0;  ///< rms residual of ln E
  int n_points = 0;
};

/// ln E vs d regression over the same window, for decay-model comparison.
ExponentialFit fit_exponential_decay(const DecayTable& table, double alpha,
                                     Eigen::Index window_lo,
                                     Eigen::Index window_hi);

/// Linear extrapolation of eta(1/L) to 1/L -> 0.
double extrapolate_to_thermodynamic_limit(
    std::span<const std::pair<double, double>> size_eta_pairs);

}  // namespace fgamp
