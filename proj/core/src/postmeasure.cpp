#include "fgamp/postmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <Eigen/Eigenvalues>

#include "fgamp/probability.hpp"

namespace fgamp {

MeasurementGeometry MeasurementGeometry::Ring(Eigen::Index ring_size,
                                              Eigen::Index a1_size,
                                              Eigen::Index a2_size,
                                              Eigen::Index d) {
  if (a1_size < 1 || a2_size < 1 || d < 0) {
    throw std::invalid_argument("MeasurementGeometry: block sizes invalid");
  }
  const Eigen::Index b2_size = ring_size - a1_size - a2_size - d;
  if (b2_size < 0) {
    throw std::invalid_argument(
        "MeasurementGeometry: blocks exceed the ring (L = " +
        std::to_string(ring_size) + ", need " +
        std::to_string(a1_size + a2_size + d) + ")");
  }
  MeasurementGeometry g;
  g.ring_size = ring_size;
  Eigen::Index site = 0;
  for (Eigen::Index i = 0; i < a1_size; ++i) g.a1.push_back(site++);
  for (Eigen::Index i = 0; i < d; ++i) g.b1.push_back(site++);
  for (Eigen::Index i = 0; i < a2_size; ++i) g.a2.push_back(site++);
  for (Eigen::Index i = 0; i < b2_size; ++i) g.b2.push_back(site++);
  g.validate();
  return g;
}

std::vector<Eigen::Index> MeasurementGeometry::a_sites() const {
  std::vector<Eigen::Index> s = a1;
  s.insert(s.end(), a2.begin(), a2.end());
  return s;
}

std::vector<Eigen::Index> MeasurementGeometry::b_sites() const {
  std::vector<Eigen::Index> s = b1;
  s.insert(s.end(), b2.begin(), b2.end());
  return s;
}

Eigen::Index MeasurementGeometry::a_size() const {
  return static_cast<Eigen::Index>(a1.size() + a2.size());
}

Eigen::Index MeasurementGeometry::b_size() const {
  return static_cast<Eigen::Index>(b1.size() + b2.size());
}

void MeasurementGeometry::validate() const {
  std::vector<int> seen(static_cast<std::size_t>(ring_size), 0);
  auto mark = [&](const std::vector<Eigen::Index>& block) {
    for (const auto s : block) {
      if (s < 0 || s >= ring_size) {
        throw std::invalid_argument("MeasurementGeometry: site out of range");
      }
      if (seen[static_cast<std::size_t>(s)]++) {
        throw std::invalid_argument("MeasurementGeometry: blocks overlap");
      }
    }
  };
  mark(a1);
  mark(b1);
  mark(a2);
  mark(b2);
  if (static_cast<Eigen::Index>(a1.size() + b1.size() + a2.size() +
                                b2.size()) != ring_size) {
    throw std::invalid_argument(
        "MeasurementGeometry: blocks must cover the ring");
  }
}

PostMeasurementState condition_on_outcome(const GaussianPureState& state,
                                          const PauliBasisSpec& basis,
                                          const MeasurementGeometry& geometry,
                                          const SpinConfiguration& outcome_b,
                                          int threads) {
  geometry.validate();
  if (geometry.ring_size != state.size() || basis.size() != state.size()) {
    throw std::invalid_argument("condition_on_outcome: length mismatch");
  }
  if (outcome_b.size() != geometry.b_size()) {
    throw std::invalid_argument(
        "condition_on_outcome: outcome length does not match |B|");
  }
  const Eigen::Index a_count = geometry.a_size();
  if (a_count > 16) {
    throw guard_error("condition_on_outcome: |A| = " +
                      std::to_string(a_count) +
                      " exceeds the 2^16 amplitude-batch guard");
  }
  const auto a_sites = geometry.a_sites();
  const auto b_sites = geometry.b_sites();

  std::vector<int> signs(static_cast<std::size_t>(state.size()), 1);
  for (std::size_t i = 0; i < b_sites.size(); ++i) {
    signs[static_cast<std::size_t>(b_sites[i])] =
        outcome_b.sign(static_cast<Eigen::Index>(i));
  }

  const Eigen::Index dim = Eigen::Index(1) << a_count;
  Vector amps(dim);
  auto run_block = [&](Eigen::Index begin, Eigen::Index end) {
    std::vector<int> local = signs;
    for (Eigen::Index idx = begin; idx < end; ++idx) {
      for (Eigen::Index pos = 0; pos < a_count; ++pos) {
        local[static_cast<std::size_t>(
            a_sites[static_cast<std::size_t>(pos)])] =
            ((idx >> (a_count - 1 - pos)) & 1) ? 1 : -1;
      }
      amps(idx) = amplitude_m_form(state, basis, SpinConfiguration(local));
    }
  };
  if (threads <= 1 || dim < 64) {
    run_block(0, dim);
  } else {
    const Eigen::Index block = std::max<Eigen::Index>(1, dim / (4 * threads));
    std::vector<std::future<void>> pending;
    for (Eigen::Index begin = 0; begin < dim; begin += block) {
      pending.push_back(std::async(std::launch::async, run_block, begin,
                                   std::min(dim, begin + block)));
    }
    for (auto& f : pending) f.get();
  }

  std::vector<double> sq(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) sq[static_cast<std::size_t>(i)] = std::norm(amps(i));
  const double p = detail::tree_sum(sq);
  if (p < 1e-300) {
    throw guard_error(
        "condition_on_outcome: outcome probability underflows (P < 1e-300)");
  }
  PostMeasurementState pm;
  pm.amplitudes = amps / std::sqrt(p);
  pm.p_outcome = p;
  pm.outcome_b = outcome_b;
  return pm;
}

Matrix reduced_density_matrix(const PostMeasurementState& pm,
                              const MeasurementGeometry& geometry) {
  const Eigen::Index a1 = static_cast<Eigen::Index>(geometry.a1.size());
  const Eigen::Index a2 = static_cast<Eigen::Index>(geometry.a2.size());
  const Eigen::Index d1 = Eigen::Index(1) << a1;
  const Eigen::Index d2 = Eigen::Index(1) << a2;
  if (pm.amplitudes.size() != d1 * d2) {
    throw std::invalid_argument(
        "reduced_density_matrix: amplitude vector does not match geometry");
  }
  Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      psi(pm.amplitudes.data(), d1, d2);
  return psi * psi.adjoint();
}

double renyi_entropy(const Matrix& rho, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("renyi_entropy: alpha must be > 0");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("renyi_entropy: eigensolver failed");
  }
  const Eigen::VectorXd ev = es.eigenvalues();
  if (alpha == 1.0) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > 1e-14) s -= ev(i) * std::log(ev(i));
    }
    return s;
  }
  double z = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 1e-14) z += std::pow(ev(i), alpha);
  }
  return std::log(z) / (1.0 - alpha);
}

OutcomePattern parse_pattern(const std::string& name) {
  if (name == "z-all-plus") return OutcomePattern::ZAllPlus;
  if (name == "x-all-plus") return OutcomePattern::XAllPlus;
  if (name == "x-plus-minus") return OutcomePattern::XPlusMinus;
  if (name == "x-alternating") return OutcomePattern::XAlternating;
  if (name == "x-alternating-plus") return OutcomePattern::XAlternatingPlus;
  throw parse_error(
      "unknown pattern '" + name +
      "' (expected z-all-plus, x-all-plus, x-plus-minus, x-alternating, "
      "x-alternating-plus)");
}

std::string to_string(OutcomePattern pattern) {
  switch (pattern) {
    case OutcomePattern::ZAllPlus: return "z-all-plus";
    case OutcomePattern::XAllPlus: return "x-all-plus";
    case OutcomePattern::XPlusMinus: return "x-plus-minus";
    case OutcomePattern::XAlternating: return "x-alternating";
    case OutcomePattern::XAlternatingPlus: return "x-alternating-plus";
  }
  throw std::logic_error("to_string: unknown pattern");
}

PauliBasisSpec pattern_basis(OutcomePattern pattern, Eigen::Index ring_size) {
  if (pattern == OutcomePattern::ZAllPlus) {
    return PauliBasisSpec::Uniform(ring_size, 0.0, 0.0, 0.0);
  }
  return PauliBasisSpec::Uniform(ring_size, 0.0, kPi / 2.0, 0.0);
}

SpinConfiguration pattern_outcome(OutcomePattern pattern,
                                  const MeasurementGeometry& geometry) {
  const Eigen::Index n1 = static_cast<Eigen::Index>(geometry.b1.size());
  const Eigen::Index n2 = static_cast<Eigen::Index>(geometry.b2.size());
  auto alternating = [](Eigen::Index n, const char* block) {
    if (n % 2 != 0) {
      throw guard_error(std::string("pattern_outcome: alternating pattern "
                                    "needs an even ") +
                        block + " block, got " + std::to_string(n) + " sites");
    }
    std::vector<int> s(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      s[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1 : -1;
    }
    return s;
  };
  std::vector<int> signs;
  switch (pattern) {
    case OutcomePattern::ZAllPlus:
    case OutcomePattern::XAllPlus:
      signs.assign(static_cast<std::size_t>(n1 + n2), 1);
      break;
    case OutcomePattern::XPlusMinus:
      signs.assign(static_cast<std::size_t>(n1), 1);
      signs.insert(signs.end(), static_cast<std::size_t>(n2), -1);
      break;
    case OutcomePattern::XAlternating: {
      signs = alternating(n1, "B1");
      const auto tail = alternating(n2, "B2");
      signs.insert(signs.end(), tail.begin(), tail.end());
      break;
    }
    case OutcomePattern::XAlternatingPlus: {
      signs = alternating(n1, "B1");
      signs.insert(signs.end(), static_cast<std::size_t>(n2), 1);
      break;
    }
  }
  return SpinConfiguration(std::move(signs));
}

DecayTable decay_scan(const GaussianPureState& state, OutcomePattern pattern,
                      std::span<const double> alphas,
                      std::span<const Eigen::Index> d_values,
                      Eigen::Index a1_size, Eigen::Index a2_size,
                      int threads) {
  const Eigen::Index L = state.size();
  const PauliBasisSpec basis = pattern_basis(pattern, L);
  DecayTable table;
  for (const Eigen::Index d : d_values) {
    const MeasurementGeometry geom =
        MeasurementGeometry::Ring(L, a1_size, a2_size, d);
    const SpinConfiguration outcome = pattern_outcome(pattern, geom);
    const PostMeasurementState pm =
        condition_on_outcome(state, basis, geom, outcome, threads);
    const Matrix rho = reduced_density_matrix(pm, geom);
    for (const double alpha : alphas) {
      table.push_back(DecayRow{L, d, alpha, renyi_entropy(rho, alpha),
                               pm.p_outcome});
    }
  }
  return table;
}

namespace {

struct LinearFit {
  double slope;
  double rms;
  int n;
};

LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  return LinearFit{slope, std::sqrt(ss / n), n};
}

void collect_window(const DecayTable& table, double alpha,
                    Eigen::Index window_lo, Eigen::Index window_hi,
                    std::vector<double>& d_out, std::vector<double>& e_out) {
  for (const auto& row : table) {
    if (std::abs(row.alpha - alpha) > 1e-12) continue;
    if (row.d < window_lo || row.d > window_hi) continue;
    if (!(row.entropy > 0.0)) continue;  // log-fit needs positive values
    d_out.push_back(static_cast<double>(row.d));
    e_out.push_back(row.entropy);
  }
  if (d_out.size() < 4) {
    throw std::invalid_argument(
        "decay fit: fewer than 4 usable points in window [" +
        std::to_string(window_lo) + ", " + std::to_string(window_hi) + "]");
  }
}

}  // namespace

PowerLawFit fit_decay_exponent(const DecayTable& table, double alpha,
                               Eigen::Index window_lo,
                               Eigen::Index window_hi) {
  std::vector<double> d, e;
  collect_window(table, alpha, window_lo, window_hi, d, e);
  std::vector<double> ln_d(d.size()), ln_e(e.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    ln_d[i] = std::log(d[i]);
    ln_e[i] = std::log(e[i]);
  }
  const LinearFit f = least_squares(ln_d, ln_e);
  PowerLawFit out;
  out.eta = -f.slope;
  out.delta1 = (alpha < 1.0) ? out.eta / (4.0 * alpha) : out.eta / 4.0;
  out.residual = f.rms;
  out.n_points = f.n;
  out.alpha = alpha;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  return out;
}

ExponentialFit fit_exponential_decay(const DecayTable& table, double alpha,
                                     Eigen::Index window_lo,
                                     Eigen::Index window_hi) {
  std::vector<double> d, e;
  collect_window(table, alpha, window_lo, window_hi, d, e);
  std::vector<double> ln_e(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) ln_e[i] = std::log(e[i]);
  const LinearFit f = least_squares(d, ln_e);
  return ExponentialFit{-f.slope, f.rms, f.n};
}

double extrapolate_to_thermodynamic_limit(
    std::span<const std::pair<double, double>> size_eta_pairs) {
  if (size_eta_pairs.size() < 2) {
    throw std::invalid_argument(
        "extrapolate_to_thermodynamic_limit: need at least 2 sizes");
  }
  std::vector<double> x, y;
  for (const auto& [size, eta] : size_eta_pairs) {
    x.push_back(1.0 / size);
    y.push_back(eta);
  }
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  return (sy - slope * sx) / n;  // intercept at 1/L = 0
}

}  // namespace fgamp
