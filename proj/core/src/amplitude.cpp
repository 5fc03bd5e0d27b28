#include "fgamp/amplitude.hpp"

#include <cmath>

#include <Eigen/LU>

namespace fgamp {

namespace detail {

cxd pair_b(cxd r_nm, int parity, const SiteAngles& an, const SiteAngles& am,
           int sn, int sm) {
  const double cn = std::cos(an.theta / 2.0), snn = std::sin(an.theta / 2.0);
  const double cm = std::cos(am.theta / 2.0), smm = std::sin(am.theta / 2.0);
  const cxd i(0.0, 1.0);
  const cxd rot = r_nm * std::exp(i * (an.phi + am.phi));
  // (-1)^{(sn+sm)/2}: -1 for aligned pairs, +1 for mixed.
  const double align = (sn == sm) ? -1.0 : 1.0;
  const cxd first = (sn > 0 ? cn : snn) * (sm > 0 ? cm : smm) * rot;
  const double second =
      parity * align * (sn > 0 ? snn : cn) * (sm > 0 ? smm : cm);
  return first + second;
}

cxd even_sequence_b(const SkewMatrix& r, std::span<const SiteAngles> angles,
                    std::span<const int> spins) {
  const Eigen::Index n = r.dim();
  if (angles.size() != static_cast<std::size_t>(n) ||
      spins.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("even_sequence_b: length mismatch");
  }
  if (n % 2 != 0) {
    throw std::invalid_argument("even_sequence_b: sequence must be even");
  }
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const int parity = ((a + b) % 2 == 0) ? 1 : -1;
      m(a, b) = pair_b(r(a, b), parity, angles[static_cast<std::size_t>(a)],
                       angles[static_cast<std::size_t>(b)],
                       spins[static_cast<std::size_t>(a)],
                       spins[static_cast<std::size_t>(b)]);
      m(b, a) = -m(a, b);
    }
  }
  double alpha_sum = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    if (spins[static_cast<std::size_t>(a)] < 0) {
      alpha_sum += angles[static_cast<std::size_t>(a)].alpha;
    }
  }
  const cxd i(0.0, 1.0);
  return std::exp(-i * alpha_sum) *
         pfaffian(SkewMatrix::FromSkewParts(std::move(m)));
}

double theorem1_prefactor(Eigen::Index original_length, int s1) {
  const Eigen::Index exponent = original_length * ((1 - s1) / 2);
  double pref = (exponent % 2 == 0) ? 1.0 : -1.0;
  if (original_length % 2 != 0) pref *= std::sqrt(2.0);
  return pref;
}

}  // namespace detail

PaddedProblem build_padded(const GaussianPureState& state,
                           const PauliBasisSpec& basis,
                           const SpinConfiguration& config) {
  state.require_vacuum_base("amplitude");
  const Eigen::Index L = state.size();
  if (basis.size() != L || config.size() != L) {
    throw std::invalid_argument(
        "amplitude: state, basis and configuration lengths must agree (" +
        std::to_string(L) + ", " + std::to_string(basis.size()) + ", " +
        std::to_string(config.size()) + ")");
  }
  PaddedProblem p;
  p.original_size = L;
  p.angles = basis.sites();
  p.spins = config.signs();
  if (L % 2 == 0) {
    p.effective_size = L;
    p.r = state.r_matrix();
  } else {
    p.effective_size = L + 1;
    p.r = state.r_matrix().padded();
    p.angles.push_back(SiteAngles{0.0, kPi / 2.0, 0.0});
    p.spins.push_back(p.spins.front());
  }
  return p;
}

namespace {

bool theta_near_singular(double theta) {
  const double r = std::abs(std::remainder(theta, kPi));
  return r < kThetaSingularBand;
}

}  // namespace

cxd amplitude_m_form(const GaussianPureState& state,
                     const PauliBasisSpec& basis,
                     const SpinConfiguration& config) {
  const PaddedProblem p = build_padded(state, basis, config);
  const cxd b = detail::even_sequence_b(p.r, p.angles, p.spins);
  return state.phase() *
         detail::theorem1_prefactor(p.original_size, p.spins.front()) * b /
         state.norm();
}

cxd amplitude_tan_form(const GaussianPureState& state,
                       const PauliBasisSpec& basis,
                       const SpinConfiguration& config) {
  const PaddedProblem p = build_padded(state, basis, config);
  const Eigen::Index n = p.effective_size;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (theta_near_singular(p.angles[static_cast<std::size_t>(j)].theta)) {
      throw guard_error(
          "amplitude_tan_form: theta at site " + std::to_string(j) +
          " is within " + std::to_string(kThetaSingularBand) +
          " of a multiple of pi; use the m form");
    }
  }

  const cxd i(0.0, 1.0);
  Matrix rs = Matrix::Zero(n, n);
  double trig = 1.0;
  double alpha_sum = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const SiteAngles& sa = p.angles[static_cast<std::size_t>(a)];
    const int spin = p.spins[static_cast<std::size_t>(a)];
    trig *= (spin > 0) ? std::cos(sa.theta / 2.0) : std::sin(sa.theta / 2.0);
    if (spin < 0) alpha_sum += sa.alpha;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const SiteAngles& sb = p.angles[static_cast<std::size_t>(b)];
      const int sn = spin, sm = p.spins[static_cast<std::size_t>(b)];
      const double parity = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      const double align = (sn == sm) ? -1.0 : 1.0;
      const double ta = std::pow(std::tan(sa.theta / 2.0), sn);
      const double tb = std::pow(std::tan(sb.theta / 2.0), sm);
      rs(a, b) = p.r(a, b) * std::exp(i * (sa.phi + sb.phi)) +
                 parity * align * ta * tb;
      rs(b, a) = -rs(a, b);
    }
  }
  const cxd pf = pfaffian(SkewMatrix::FromSkewParts(std::move(rs)));
  return state.phase() *
         detail::theorem1_prefactor(p.original_size, p.spins.front()) *
         std::exp(-i * alpha_sum) * trig * pf / state.norm();
}

cxd amplitude_m_form(const AmplitudeRequest& req) {
  return amplitude_m_form(req.state, req.basis, req.config);
}

cxd amplitude_tan_form(const AmplitudeRequest& req) {
  return amplitude_tan_form(req.state, req.basis, req.config);
}

cxd amplitude(const GaussianPureState& state, const PauliBasisSpec& basis,
              const SpinConfiguration& config, AmplitudePath path) {
  switch (path) {
    case AmplitudePath::TanForm:
      return amplitude_tan_form(state, basis, config);
    case AmplitudePath::DomainWall: {
      if (basis.size() == 0) {
        throw std::invalid_argument("amplitude: empty basis");
      }
      const double phi = basis.site(0).phi;
      for (Eigen::Index j = 0; j < basis.size(); ++j) {
        const SiteAngles& s = basis.site(j);
        if (std::abs(s.theta - kPi / 2.0) > 1e-12 ||
            std::abs(s.alpha) > 1e-12 || std::abs(s.phi - phi) > 1e-12) {
          throw std::invalid_argument(
              "amplitude: domain-wall path requires the uniform "
              "(phi, pi/2, 0) basis");
        }
      }
      return domain_wall_amplitude(state, phi, config);
    }
    case AmplitudePath::Auto:
    case AmplitudePath::MForm:
      return amplitude_m_form(state, basis, config);
  }
  throw std::logic_error("amplitude: unknown path");
}

cxd amplitude(const AmplitudeRequest& req) {
  return amplitude(req.state, req.basis, req.config, req.path);
}

cxd domain_wall_amplitude(const GaussianPureState& state, double phi,
                          const SpinConfiguration& config) {
  state.require_vacuum_base("domain_wall_amplitude");
  const Eigen::Index n = state.size();
  if (config.size() != n) {
    throw std::invalid_argument("domain_wall_amplitude: length mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("domain_wall_amplitude: need at least 2 sites");
  }
  const cxd i(0.0, 1.0);
  const Matrix id = Matrix::Identity(n, n);
  const Matrix r_phi = std::exp(2.0 * i * phi) * state.r_matrix().matrix();

  Eigen::FullPivLU<Matrix> lu_plus(r_phi + id);
  if (!lu_plus.isInvertible()) {
    throw guard_error("domain_wall_amplitude: R^phi + I is singular");
  }
  const Matrix w = (r_phi - id) * lu_plus.inverse();

  Matrix p = Matrix::Zero(n, n);
  p(0, n - 1) = 1.0;
  for (Eigen::Index k = 1; k < n; ++k) p(k, k - 1) = -1.0;

  const Matrix wp = w * p;
  Eigen::FullPivLU<Matrix> lu_minus(wp - id);
  if (!lu_minus.isInvertible()) {
    throw guard_error("domain_wall_amplitude: W^phi P - I is singular");
  }
  Matrix rt = (id + wp) * lu_minus.inverse();

  const double skew_dev = (rt + rt.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, rt.cwiseAbs().maxCoeff());
  if (skew_dev > 1e-8 * scale) {
    throw guard_error(
        "domain_wall_amplitude: transformed matrix lost skew-symmetry "
        "(deviation " +
        std::to_string(skew_dev) + ")");
  }
  rt = 0.5 * (rt - rt.transpose().eval());
  const SkewMatrix rt_skew = SkewMatrix::FromSkewParts(std::move(rt));

  // Wall at bond j when s_j != s_{j+1}, cyclic; the bond (L-1, 0) is index L-1.
  std::vector<Eigen::Index> walls;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (config.sign(j) != config.sign((j + 1) % n)) walls.push_back(j);
  }
  const int minus_count = static_cast<int>(config.minus_sites().size());
  const double sgn = (minus_count % 2 == 0) ? 1.0 : -1.0;
  const double norm_rt = normalization(rt_skew);

  // The wall expansion carries one undetermined overall phase. Pin it with
  // the closed form of the all-plus amplitude: at theta = pi/2 the pair
  // matrix is (R^phi_{nm} - (-1)^{n+m})/2, a shifted pfaffian with unit
  // weights, so the reference never goes through the pf M engine.
  const SkewMatrix r_phi_skew = SkewMatrix::FromSkewParts(r_phi);
  const std::vector<cxd> ones(static_cast<std::size_t>(n), cxd(1.0, 0.0));
  const Eigen::Index padded = (n % 2 == 0) ? n : n + 1;
  const cxd lieb = (n % 2 == 0) ? lieb_shifted_pfaffian(r_phi_skew, ones)
                                : lieb_odd_extension(r_phi_skew, ones);
  const cxd all_plus = detail::theorem1_prefactor(n, 1) *
                       std::pow(0.5, 0.5 * static_cast<double>(padded)) *
                       lieb / state.norm();
  cxd phase = all_plus * std::sqrt(2.0) * norm_rt;
  const double mag = std::abs(phase);
  if (mag < 1e-12) {
    throw guard_error(
        "domain_wall_amplitude: reference amplitude vanished; the "
        "transformed representation is singular");
  }
  phase /= mag;

  const cxd pf = sub_pfaffian(rt_skew, IndexSubset(n, walls));
  return state.phase() * phase * sgn * pf / (std::sqrt(2.0) * norm_rt);
}

namespace {

cxd amp_of(const GaussianPureState& state, const PauliBasisSpec& basis,
           const char* s) {
  return amplitude_m_form(state, basis, parse_configuration(s));
}

}  // namespace

AmplitudeRelationsReport amplitude_relations_check(
    const GaussianPureState& state, const PauliBasisSpec& basis) {
  if (state.size() != 4) {
    throw std::invalid_argument(
        "amplitude_relations_check: defined for L = 4 only");
  }
  AmplitudeRelationsReport report;

  const PauliBasisSpec z = PauliBasisSpec::Uniform(4, 0.0, 0.0, 0.0);
  {
    const cxd lhs = amp_of(state, z, "----") * amp_of(state, z, "++++");
    const cxd rhs = amp_of(state, z, "++--") * amp_of(state, z, "--++") -
                    amp_of(state, z, "+-+-") * amp_of(state, z, "-+-+") +
                    amp_of(state, z, "+--+") * amp_of(state, z, "-++-");
    report.checks.push_back({"sigma_z_product_relation", std::abs(lhs - rhs)});
  }

  const double phi = basis.size() > 0 ? basis.site(0).phi : 0.0;
  const PauliBasisSpec xw = PauliBasisSpec::Uniform(4, phi, kPi / 2.0, 0.0);
  {
    const cxd lhs = amp_of(state, xw, "++++") * amp_of(state, xw, "+-+-");
    const cxd rhs = amp_of(state, xw, "+-++") * amp_of(state, xw, "+++-") -
                    amp_of(state, xw, "+--+") * amp_of(state, xw, "++--") +
                    amp_of(state, xw, "+---") * amp_of(state, xw, "++-+");
    report.checks.push_back(
        {"wall_basis_plus_sector_relation", std::abs(lhs - rhs)});
  }
  {
    const cxd lhs = amp_of(state, xw, "----") * amp_of(state, xw, "-+-+");
    const cxd rhs = amp_of(state, xw, "-+--") * amp_of(state, xw, "---+") -
                    amp_of(state, xw, "-++-") * amp_of(state, xw, "--++") +
                    amp_of(state, xw, "-+++") * amp_of(state, xw, "--+-");
    report.checks.push_back(
        {"wall_basis_minus_sector_relation", std::abs(lhs - rhs)});
  }

  report.max_residual = 0.0;
  for (const auto& c : report.checks) {
    report.max_residual = std::max(report.max_residual, c.residual);
  }
  return report;
}

}  // namespace fgamp
