#include "fgamp/probability.hpp"

#include "fgamp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include <Eigen/LU>

namespace fgamp {

namespace detail {

double tree_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return tree_sum(values.subspan(0, half)) + tree_sum(values.subspan(half));
}

}  // namespace detail

std::string to_string(ProbabilityPath path) {
  return path == ProbabilityPath::AmplitudeSquared ? "amplitude_squared"
                                                   : "det_ratio";
}

namespace {

double log_abs_det(const Matrix& m) {
  Eigen::PartialPivLU<Matrix> lu(m);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double d = std::abs(lu.matrixLU()(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

double probability_amplitude_squared(const GaussianPureState& state,
                                     const PauliBasisSpec& basis,
                                     const SpinConfiguration& config) {
  // |a|^2 without the alpha phase or the sign prefactor: 2^{L mod 2}
  // |pf M|^2 / N^2, manifestly alpha-free.
  const PaddedProblem p = build_padded(state, basis, config);
  std::vector<SiteAngles> angles = p.angles;
  for (auto& a : angles) a.alpha = 0.0;
  const cxd b = detail::even_sequence_b(p.r, angles, p.spins);
  const double two = (p.original_size % 2 != 0) ? 2.0 : 1.0;
  return two * std::norm(b) * std::exp(-2.0 * state.log_norm());
}

double probability_det_ratio(const GaussianPureState& state,
                             const PauliBasisSpec& basis,
                             const SpinConfiguration& config) {
  const PaddedProblem p = build_padded(state, basis, config);
  const Eigen::Index n = p.effective_size;
  const cxd i(0.0, 1.0);
  Matrix rs = Matrix::Zero(n, n);
  double log_trig = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const SiteAngles& sa = p.angles[static_cast<std::size_t>(a)];
    const double rem = std::abs(std::remainder(sa.theta, kPi));
    if (rem < kThetaSingularBand) {
      throw guard_error("probability(det_ratio): theta at site " +
                        std::to_string(a) +
                        " lies in the singular band; use amplitude_squared");
    }
    const int sn = p.spins[static_cast<std::size_t>(a)];
    const double c = (sn > 0) ? std::cos(sa.theta / 2.0)
                              : std::sin(sa.theta / 2.0);
    log_trig += 2.0 * std::log(std::abs(c));
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const SiteAngles& sb = p.angles[static_cast<std::size_t>(b)];
      const int sm = p.spins[static_cast<std::size_t>(b)];
      const double parity = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      const double align = (sn == sm) ? -1.0 : 1.0;
      rs(a, b) = p.r(a, b) * std::exp(i * (sa.phi + sb.phi)) +
                 parity * align * std::pow(std::tan(sa.theta / 2.0), sn) *
                     std::pow(std::tan(sb.theta / 2.0), sm);
      rs(b, a) = -rs(a, b);
    }
  }
  // sqrt(det(RS^dag RS)) = |det RS|; everything in log space.
  const double log_det_rs = log_abs_det(rs);
  if (std::isinf(log_det_rs)) return 0.0;
  const double two = (p.original_size % 2 != 0) ? std::log(2.0) : 0.0;
  const double log_p =
      two + log_det_rs - 0.5 * log_det_norm(state.r_matrix()) + log_trig;
  return std::exp(log_p);
}

}  // namespace

double probability(const GaussianPureState& state, const PauliBasisSpec& basis,
                   const SpinConfiguration& config, ProbabilityPath path) {
  if (path == ProbabilityPath::DetRatio) {
    return probability_det_ratio(state, basis, config);
  }
  return probability_amplitude_squared(state, basis, config);
}

ProbabilityTable::ProbabilityTable(Eigen::Index length,
                                   std::vector<double> probs,
                                   ProbabilityPath path)
    : length_(length), probs_(std::move(probs)), path_(path) {
  total_ = detail::tree_sum(probs_);
}

SpinConfiguration ProbabilityTable::configuration_at(Eigen::Index idx) const {
  std::vector<int> signs(static_cast<std::size_t>(length_));
  for (Eigen::Index j = 0; j < length_; ++j) {
    signs[static_cast<std::size_t>(j)] =
        ((idx >> (length_ - 1 - j)) & 1) ? 1 : -1;
  }
  return SpinConfiguration(std::move(signs));
}

ProbabilityTable enumerate_probabilities(const GaussianPureState& state,
                                         const PauliBasisSpec& basis,
                                         ProbabilityPath path, bool force,
                                         int threads) {
  const Eigen::Index L = state.size();
  if (L > kEnumerationMaxSites && !force) {
    throw guard_error("enumerate_probabilities: L = " + std::to_string(L) +
                      " exceeds the 2^" +
                      std::to_string(kEnumerationMaxSites) +
                      " enumeration guard (pass force to override)");
  }
  const Eigen::Index total = Eigen::Index(1) << L;
  std::vector<double> probs(static_cast<std::size_t>(total));

  const Eigen::Index block = Eigen::Index(1) << std::min<Eigen::Index>(L, 14);
  auto run_block = [&](Eigen::Index begin, Eigen::Index end) {
    std::vector<int> signs(static_cast<std::size_t>(L));
    for (Eigen::Index idx = begin; idx < end; ++idx) {
      for (Eigen::Index j = 0; j < L; ++j) {
        signs[static_cast<std::size_t>(j)] =
            ((idx >> (L - 1 - j)) & 1) ? 1 : -1;
      }
      probs[static_cast<std::size_t>(idx)] =
          probability(state, basis, SpinConfiguration(signs), path);
    }
  };

  if (threads <= 1) {
    run_block(0, total);
  } else {
    std::vector<std::future<void>> pending;
    std::size_t inflight = 0;
    for (Eigen::Index begin = 0; begin < total; begin += block) {
      const Eigen::Index end = std::min(total, begin + block);
      pending.push_back(
          std::async(std::launch::async, run_block, begin, end));
      if (++inflight >= static_cast<std::size_t>(threads)) {
        for (auto& f : pending) f.get();
        pending.clear();
        inflight = 0;
      }
    }
    for (auto& f : pending) f.get();
  }
  return ProbabilityTable(L, std::move(probs), path);
}

double marginal_probability(const GaussianPureState& state,
                            const PauliBasisSpec& basis,
                            const SubregionOutcome& outcome) {
  const Eigen::Index L = state.size();
  if (outcome.sites.empty()) {
    throw std::invalid_argument("marginal_probability: B must be nonempty");
  }
  if (outcome.sites.size() != outcome.signs.size()) {
    throw std::invalid_argument(
        "marginal_probability: sites/signs length mismatch");
  }
  std::vector<bool> in_b(static_cast<std::size_t>(L), false);
  for (std::size_t a = 0; a < outcome.sites.size(); ++a) {
    const Eigen::Index s = outcome.sites[a];
    if (s < 0 || s >= L) {
      throw std::invalid_argument("marginal_probability: site out of range");
    }
    if (a > 0 && outcome.sites[a] <= outcome.sites[a - 1]) {
      throw std::invalid_argument(
          "marginal_probability: sites must be strictly increasing");
    }
    in_b[static_cast<std::size_t>(s)] = true;
  }
  std::vector<Eigen::Index> free_sites;
  for (Eigen::Index j = 0; j < L; ++j) {
    if (!in_b[static_cast<std::size_t>(j)]) free_sites.push_back(j);
  }
  const Eigen::Index k = static_cast<Eigen::Index>(free_sites.size());
  if (k > kEnumerationMaxSites) {
    throw guard_error(
        "marginal_probability: complement of B has " + std::to_string(k) +
        " sites, above the 2^24 enumeration guard; choose a smaller A");
  }

  std::vector<int> signs(static_cast<std::size_t>(L), 1);
  for (std::size_t a = 0; a < outcome.sites.size(); ++a) {
    signs[static_cast<std::size_t>(outcome.sites[a])] = outcome.signs[a];
  }
  const Eigen::Index count = Eigen::Index(1) << k;
  std::vector<double> terms(static_cast<std::size_t>(count));
  for (Eigen::Index ext = 0; ext < count; ++ext) {
    for (Eigen::Index a = 0; a < k; ++a) {
      signs[static_cast<std::size_t>(free_sites[static_cast<std::size_t>(a)])] =
          ((ext >> (k - 1 - a)) & 1) ? 1 : -1;
    }
    terms[static_cast<std::size_t>(ext)] =
        probability(state, basis, SpinConfiguration(signs),
                    ProbabilityPath::AmplitudeSquared);
  }
  return detail::tree_sum(terms);
}

double shannon_renyi_entropy(const GaussianPureState& state,
                             const PauliBasisSpec& basis, double alpha,
                             bool force) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("shannon_renyi_entropy: alpha must be > 0");
  }
  const ProbabilityTable table = enumerate_probabilities(
      state, basis, ProbabilityPath::AmplitudeSquared, force);
  const auto& p = table.probabilities();
  if (alpha == 1.0) {
    std::vector<double> terms(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0) terms[i] = -p[i] * std::log(p[i]);
    }
    return detail::tree_sum(terms);
  }
  std::vector<double> powers(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    powers[i] = (p[i] > 0.0) ? std::pow(p[i], alpha) : 0.0;
  }
  const double z = detail::tree_sum(powers);
  return std::log(z) / (1.0 - alpha);
}

namespace {

struct BestConfig {
  Eigen::Index index;
  double probability;
};

BestConfig best_configuration(const GaussianPureState& state,
                              const PauliBasisSpec& basis) {
  const ProbabilityTable t = enumerate_probabilities(state, basis);
  BestConfig best{0, -1.0};
  for (Eigen::Index idx = 0; idx < t.rows(); ++idx) {
    if (t.probability_at(idx) > best.probability) {
      best = {idx, t.probability_at(idx)};
    }
  }
  return best;
}

}  // namespace

BasisSearchResult max_probability_search(const GaussianPureState& state,
                                         int grid_resolution, int restarts,
                                         std::uint64_t seed) {
  const Eigen::Index L = state.size();
  if (L > 16) {
    throw guard_error("max_probability_search: L = " + std::to_string(L) +
                      " exceeds the search guard of 16 sites");
  }
  if (grid_resolution < 2) grid_resolution = 2;
  if (restarts < 1) restarts = 1;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  BasisSearchResult global{PauliBasisSpec::Uniform(L, 0, 0, 0),
                           SpinConfiguration(std::vector<int>(
                               static_cast<std::size_t>(L), -1)),
                           -1.0};

  for (int r = 0; r < restarts; ++r) {
    PauliBasisSpec basis =
        (r == 0) ? PauliBasisSpec::Uniform(L, 0.0, 0.0, 0.0)
                 : PauliBasisSpec::Uniform(L, 2.0 * kPi * u01(rng),
                                           kPi * u01(rng), 0.0);
    double best_p = best_configuration(state, basis).probability;

    double theta_step = kPi / (grid_resolution - 1);
    double phi_step = 2.0 * kPi / grid_resolution;
    for (int level = 0; level < 4; ++level) {
      bool improved = true;
      int sweeps = 0;
      while (improved && sweeps < 16) {
        improved = false;
        ++sweeps;
        for (Eigen::Index j = 0; j < L; ++j) {
          const SiteAngles current = basis.site(j);
          SiteAngles winner = current;
          for (int dt = -grid_resolution; dt <= grid_resolution; ++dt) {
            for (int dp = -grid_resolution; dp <= grid_resolution; ++dp) {
              SiteAngles cand = current;
              cand.theta = std::clamp(current.theta + dt * theta_step, 0.0, kPi);
              cand.phi = current.phi + dp * phi_step;
              basis.site(j) = cand;
              const double p = best_configuration(state, basis).probability;
              if (p > best_p + 1e-14) {
                best_p = p;
                winner = cand;
                improved = true;
              }
            }
          }
          basis.site(j) = winner;
        }
      }
      theta_step /= 2.0;
      phi_step /= 2.0;
    }

    const BestConfig bc = best_configuration(state, basis);
    if (bc.probability > global.probability) {
      global.basis = basis;
      global.config = index_to_outcome(bc.index, L);
      global.probability = bc.probability;
    }
  }
  return global;
}

}  // namespace fgamp
