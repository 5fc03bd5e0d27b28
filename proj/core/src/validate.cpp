#include "fgamp/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fgamp/amplitude.hpp"
#include "fgamp/oracle.hpp"
#include "fgamp/probability.hpp"
#include "fgamp/recursion.hpp"

namespace fgamp {

namespace {

PauliBasisSpec random_basis(std::mt19937_64& rng, Eigen::Index length,
                            bool away_from_singular) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<SiteAngles> sites;
  for (Eigen::Index j = 0; j < length; ++j) {
    double theta = 2.0 * kPi * u01(rng);
    if (away_from_singular) {
      // Keep a comfortable margin from the tan/cot band at multiples of pi.
      theta = 0.2 + (kPi - 0.4) * u01(rng);
      if (u01(rng) < 0.5) theta += kPi;
    }
    sites.push_back(
        SiteAngles{2.0 * kPi * u01(rng), theta, 2.0 * kPi * u01(rng)});
  }
  return PauliBasisSpec(std::move(sites));
}

SpinConfiguration random_outcome(std::mt19937_64& rng, Eigen::Index length) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> signs(static_cast<std::size_t>(length));
  for (auto& s : signs) s = coin(rng) ? 1 : -1;
  return SpinConfiguration(std::move(signs));
}

// Local tan-form evaluation with an optional deliberate sign corruption of
// the parity factor; the suite must catch the corrupted port.
cxd tan_form_local(const GaussianPureState& state, const PauliBasisSpec& basis,
                   const SpinConfiguration& config, bool mutate_sign) {
  const PaddedProblem p = build_padded(state, basis, config);
  const Eigen::Index n = p.effective_size;
  const cxd i(0.0, 1.0);
  Matrix rs = Matrix::Zero(n, n);
  double trig = 1.0;
  double alpha_sum = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const SiteAngles& sa = p.angles[static_cast<std::size_t>(a)];
    const int sn = p.spins[static_cast<std::size_t>(a)];
    trig *= (sn > 0) ? std::cos(sa.theta / 2.0) : std::sin(sa.theta / 2.0);
    if (sn < 0) alpha_sum += sa.alpha;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const SiteAngles& sb = p.angles[static_cast<std::size_t>(b)];
      const int sm = p.spins[static_cast<std::size_t>(b)];
      double parity = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      if (mutate_sign) parity = -parity;
      const double align = (sn == sm) ? -1.0 : 1.0;
      rs(a, b) = p.r(a, b) * std::exp(i * (sa.phi + sb.phi)) +
                 parity * align * std::pow(std::tan(sa.theta / 2.0), sn) *
                     std::pow(std::tan(sb.theta / 2.0), sm);
      rs(b, a) = -rs(a, b);
    }
  }
  const cxd pf = pfaffian(SkewMatrix::FromSkewParts(std::move(rs)));
  return detail::theorem1_prefactor(p.original_size, p.spins.front()) *
         std::exp(-i * alpha_sum) * trig * pf / state.norm();
}

struct Recorder {
  std::vector<CheckResult>& out;
  void add(const std::string& name, double residual, double tol) {
    out.push_back(CheckResult{name, residual, tol, residual <= tol});
  }
};

}  // namespace

std::vector<CheckResult> run_validation_suite(const ValidationConfig& cfg) {
  std::vector<CheckResult> results;
  Recorder rec{results};
  const Eigen::Index lmax = std::max<Eigen::Index>(2, cfg.max_size);
  const int trials_small = std::max(1, cfg.trials / 10);

  {  // Theorem 1 vs the dense oracle, all outcomes.
    std::mt19937_64 rng(cfg.seed ^ 0x101);
    double worst = 0.0;
    for (Eigen::Index L = 2; L <= std::min<Eigen::Index>(lmax, 10); ++L) {
      for (int t = 0; t < trials_small; ++t) {
        const auto state = random_state(L, rng(), 1.0);
        const auto basis = random_basis(rng, L, false);
        const auto dense = dense_from_gaussian(state);
        const Vector ref = oracle_all_amplitudes(dense, basis);
        for (Eigen::Index idx = 0; idx < ref.size(); ++idx) {
          const auto outcome = index_to_outcome(idx, L);
          worst = std::max(
              worst, std::abs(amplitude_m_form(state, basis, outcome) -
                              ref(idx)));
        }
      }
    }
    rec.add("oracle_equivalence", worst, 1e-9);
  }

  {  // Eq. tan form vs m form away from the singular band.
    std::mt19937_64 rng(cfg.seed ^ 0x202);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % (lmax - 1));
      const auto state = random_state(L, rng(), 1.0);
      const auto basis = random_basis(rng, L, true);
      const auto outcome = random_outcome(rng, L);
      const cxd tan_v =
          tan_form_local(state, basis, outcome, cfg.mutate_eq9_sign);
      const cxd m_v = amplitude_m_form(state, basis, outcome);
      worst = std::max(worst,
                       std::abs(tan_v - m_v) / std::max(1.0, std::abs(m_v)));
    }
    rec.add("tan_vs_m_path", worst, 1e-10);
  }

  {  // a(R, phi) = a(-R, phi + pi/2).
    std::mt19937_64 rng(cfg.seed ^ 0x303);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % (lmax - 1));
      const auto state = random_state(L, rng(), 1.0);
      const auto neg =
          make_state(SkewMatrix::FromSkewParts(-state.r_matrix().matrix()));
      auto basis = random_basis(rng, L, false);
      const auto outcome = random_outcome(rng, L);
      const cxd lhs = amplitude_m_form(state, basis, outcome);
      PauliBasisSpec shifted = basis;
      for (Eigen::Index jj = 0; jj < L; ++jj) {
        shifted.site(jj).phi += kPi / 2.0;
      }
      const cxd rhs = amplitude_m_form(neg, shifted, outcome);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rec.add("minus_r_phase_identity", worst, 1e-12);
  }

  {  // Both recursion variants against the direct engine.
    std::mt19937_64 rng(cfg.seed ^ 0x404);
    double worst_rec = 0.0, worst_alt = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % (lmax - 1));
      const auto state = random_state(L, rng(), 1.0);
      const auto basis = random_basis(rng, L, false);
      const auto outcome = random_outcome(rng, L);
      const cxd direct = amplitude_m_form(state, basis, outcome);
      const cxd rec_v = recursive_amplitude(state, basis, outcome);
      const cxd alt_v = recursive_amplitude_alt(state, basis, outcome);
      const double scale = std::max(1.0, std::abs(direct));
      worst_rec = std::max(worst_rec, std::abs(rec_v - direct) / scale);
      worst_alt = std::max(worst_alt, std::abs(alt_v - rec_v) / scale);
    }
    rec.add("recursion_vs_direct", worst_rec, 1e-9);
    rec.add("recursion_variants_agree", worst_alt, 1e-10);
  }

  {  // Shifted-pfaffian sum rules by full subset enumeration, dim <= 8.
    std::mt19937_64 rng(cfg.seed ^ 0x505);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> dim_pick(2, 8);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const Eigen::Index n = dim_pick(rng);
      Matrix m = Matrix::Zero(n, n);
      std::vector<cxd> lam(static_cast<std::size_t>(n));
      for (Eigen::Index a = 0; a < n; ++a) {
        lam[static_cast<std::size_t>(a)] = cxd(gauss(rng), gauss(rng));
        for (Eigen::Index b = a + 1; b < n; ++b) {
          m(a, b) = cxd(gauss(rng), gauss(rng));
          m(b, a) = -m(a, b);
        }
      }
      const SkewMatrix skew = SkewMatrix::FromSkewParts(std::move(m));
      cxd sum(0.0, 0.0);
      for (Eigen::Index mask = 0; mask < (Eigen::Index(1) << n); ++mask) {
        std::vector<Eigen::Index> kept;
        cxd weight(1.0, 0.0);
        for (Eigen::Index a = 0; a < n; ++a) {
          if ((mask >> a) & 1) {
            kept.push_back(a);
          } else {
            weight *= lam[static_cast<std::size_t>(a)];
          }
        }
        if (n % 2 == 0 && kept.size() % 2 != 0) continue;
        sum += weight * sub_pfaffian(skew, IndexSubset(n, kept));
      }
      const cxd direct = (n % 2 == 0)
                             ? lieb_shifted_pfaffian(skew, lam)
                             : lieb_odd_extension(skew, lam);
      worst = std::max(worst, std::abs(direct - sum));
    }
    rec.add("lieb_subset_sums", worst, 1e-9);
  }

  {  // The three printed L=4 product relations.
    std::mt19937_64 rng(cfg.seed ^ 0x606);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const auto state = random_state(4, rng(), 1.0);
      const auto basis =
          PauliBasisSpec::Uniform(4, 2.0 * kPi * u01(rng), kPi / 2.0, 0.0);
      worst = std::max(worst,
                       amplitude_relations_check(state, basis).max_residual);
    }
    rec.add("l4_amplitude_relations", worst, 1e-10);
  }

  {  // Domain-wall route at theta = pi/2.
    std::mt19937_64 rng(cfg.seed ^ 0x707);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const Eigen::Index L =
          2 * (1 + static_cast<Eigen::Index>(rng() % (lmax / 2)));
      const auto state = random_state(L, rng(), 1.0);
      const double phi = 2.0 * kPi * u01(rng);
      const auto basis = PauliBasisSpec::Uniform(L, phi, kPi / 2.0, 0.0);
      const auto outcome = random_outcome(rng, L);
      const cxd dw = domain_wall_amplitude(state, phi, outcome);
      const cxd direct = amplitude_m_form(state, basis, outcome);
      worst = std::max(worst, std::abs(dw - direct));
    }
    rec.add("domain_wall_route", worst, 1e-9);
  }

  {  // Probability path agreement and completeness.
    std::mt19937_64 rng(cfg.seed ^ 0x808);
    double worst_path = 0.0, worst_total = 0.0;
    for (int t = 0; t < trials_small; ++t) {
      const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % (lmax - 1));
      const auto state = random_state(L, rng(), 1.0);
      const auto basis = random_basis(rng, L, true);
      for (int c = 0; c < 8; ++c) {
        const auto outcome = random_outcome(rng, L);
        const double p1 = probability(state, basis, outcome,
                                      ProbabilityPath::AmplitudeSquared);
        const double p2 =
            probability(state, basis, outcome, ProbabilityPath::DetRatio);
        worst_path = std::max(worst_path, std::abs(p1 - p2));
      }
      const auto table = enumerate_probabilities(state, basis);
      worst_total = std::max(worst_total, std::abs(table.total() - 1.0));
    }
    rec.add("probability_path_agreement", worst_path, 1e-9);
    rec.add("probability_completeness", worst_total, 1e-9);
  }

  {  // |a_{-S}(theta)| = |a_S(pi - theta)|.
    std::mt19937_64 rng(cfg.seed ^ 0x909);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % (lmax - 1));
      const auto state = random_state(L, rng(), 1.0);
      const auto basis = random_basis(rng, L, false);
      const auto outcome = random_outcome(rng, L);
      PauliBasisSpec reflected = basis;
      for (Eigen::Index jj = 0; jj < L; ++jj) {
        reflected.site(jj).theta = kPi - reflected.site(jj).theta;
      }
      const double lhs =
          std::abs(amplitude_m_form(state, basis, outcome.flipped()));
      const double rhs = std::abs(amplitude_m_form(state, reflected, outcome));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rec.add("spin_flip_theta_reflection", worst, 1e-10);
  }

  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& c) { return c.pass; });
}

}  // namespace fgamp
