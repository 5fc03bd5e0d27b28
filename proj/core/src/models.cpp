#include "fgamp/models.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace fgamp {

namespace {

void check_spec(const TfimSpec& spec) {
  if (spec.size < 2 || spec.size % 2 != 0) {
    throw std::invalid_argument(
        "tfim: L must be even and >= 2 for the antiperiodic sector, got " +
        std::to_string(spec.size));
  }
}

}  // namespace

namespace detail {

GaussianPureState tfim_exact_small_impl(const TfimSpec& spec,
                                        bool up_is_occupied) {
  check_spec(spec);
  const Eigen::Index L = spec.size;
  if (L > 12) {
    throw guard_error("tfim_r_matrix_exact_small: L = " + std::to_string(L) +
                      " exceeds the dense-diagonalization limit 12");
  }
  const double j = spec.coupling_j;
  const double h = spec.field_h;

  // Even-parity sector: bitmask states (bit set = spin up, site 0 = MSB)
  // with an even number of up spins; even L makes this the even-fermion
  // sector for either Jordan-Wigner direction.
  const Eigen::Index full = Eigen::Index(1) << L;
  std::vector<Eigen::Index> states;
  std::vector<Eigen::Index> position(static_cast<std::size_t>(full), -1);
  for (Eigen::Index b = 0; b < full; ++b) {
    if (__builtin_popcountll(static_cast<unsigned long long>(b)) % 2 == 0) {
      position[static_cast<std::size_t>(b)] =
          static_cast<Eigen::Index>(states.size());
      states.push_back(b);
    }
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(states.size());

  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    const Eigen::Index b = states[static_cast<std::size_t>(row)];
    const int ups = __builtin_popcountll(static_cast<unsigned long long>(b));
    ham(row, row) = -h * (2.0 * ups - static_cast<double>(L));
    for (Eigen::Index site = 0; site < L; ++site) {
      const Eigen::Index next = (site + 1) % L;
      const Eigen::Index flipped =
          b ^ (Eigen::Index(1) << (L - 1 - site)) ^
          (Eigen::Index(1) << (L - 1 - next));
      ham(row, position[static_cast<std::size_t>(flipped)]) -= j;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ham);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("tfim_r_matrix_exact_small: eigensolver failed");
  }
  const Eigen::VectorXd gs = es.eigenvectors().col(0);

  // Fermion configuration I (occupied sites) maps to the spin state with the
  // occupied direction at I; the ordered c^dag string carries no extra sign.
  auto amplitude_of = [&](Eigen::Index occupied_mask) {
    const Eigen::Index spin_mask =
        up_is_occupied ? occupied_mask : (full - 1) ^ occupied_mask;
    const Eigen::Index pos = position[static_cast<std::size_t>(spin_mask)];
    return (pos >= 0) ? gs(pos) : 0.0;
  };

  const double a_vac = amplitude_of(0);
  if (std::abs(a_vac) < 1e-12) {
    throw guard_error(
        "tfim_r_matrix_exact_small: vacuum overlap |a_0| = " +
        std::to_string(std::abs(a_vac)) +
        " below 1e-12; the pairing-matrix representation degenerates");
  }

  Matrix r = Matrix::Zero(L, L);
  for (Eigen::Index a = 0; a < L; ++a) {
    for (Eigen::Index b = a + 1; b < L; ++b) {
      const Eigen::Index mask =
          (Eigen::Index(1) << (L - 1 - a)) | (Eigen::Index(1) << (L - 1 - b));
      r(a, b) = amplitude_of(mask) / a_vac;
      r(b, a) = -r(a, b);
    }
  }
  return make_state(SkewMatrix::FromSkewParts(std::move(r)));
}

GaussianPureState tfim_bogoliubov_impl(const TfimSpec& spec,
                                       bool up_is_occupied) {
  check_spec(spec);
  const Eigen::Index L = spec.size;
  const double j = spec.coupling_j;
  const double h = spec.field_h;

  // Antiperiodic momenta k = (2n-1) pi / L, n = 1..L/2. Per (k, -k) pair the
  // Hamiltonian restricts to {|0>, c^dag_k c^dag_{-k} |0>} with diagonal
  // (0, 2 xi_k) and off-diagonal g_k; the BCS ratio is (xi - E)/conj(g).
  std::vector<cxd> ratio(static_cast<std::size_t>(L / 2));
  for (Eigen::Index n = 1; n <= L / 2; ++n) {
    const double k = (2.0 * n - 1.0) * kPi / static_cast<double>(L);
    const double xi = up_is_occupied ? -2.0 * (j * std::cos(k) + h)
                                     : 2.0 * (h - j * std::cos(k));
    const cxd g(0.0, -2.0 * j * std::sin(k));
    const double e = std::sqrt(xi * xi + std::norm(g));
    if (e < 1e-12) {
      throw guard_error(
          "tfim_r_matrix_bogoliubov: modes +-k with k = " + std::to_string(k) +
          " are numerically degenerate (E < 1e-12)");
    }
    ratio[static_cast<std::size_t>(n - 1)] = (xi - e) / std::conj(g);
  }

  Matrix r = Matrix::Zero(L, L);
  for (Eigen::Index a = 0; a < L; ++a) {
    for (Eigen::Index b = a + 1; b < L; ++b) {
      cxd acc(0.0, 0.0);
      for (Eigen::Index n = 1; n <= L / 2; ++n) {
        const double k = (2.0 * n - 1.0) * kPi / static_cast<double>(L);
        acc += ratio[static_cast<std::size_t>(n - 1)] *
               std::sin(k * static_cast<double>(b - a));
      }
      r(a, b) = cxd(0.0, -2.0) * acc / static_cast<double>(L);
      r(b, a) = -r(a, b);
    }
  }
  return make_state(SkewMatrix::FromSkewParts(std::move(r)));
}

}  // namespace detail

GaussianPureState tfim_r_matrix_exact_small(const TfimSpec& spec) {
  return detail::tfim_exact_small_impl(spec, true);
}

GaussianPureState tfim_r_matrix_bogoliubov(const TfimSpec& spec) {
  return detail::tfim_bogoliubov_impl(spec, true);
}

}  // namespace fgamp
