#include "fgamp/basis.hpp"

#include <cmath>

namespace fgamp {

namespace {

double mod_2pi(double x) {
  double r = std::fmod(x, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

}  // namespace

PauliBasisSpec PauliBasisSpec::Uniform(Eigen::Index length, double phi,
                                       double theta, double alpha) {
  std::vector<SiteAngles> sites(static_cast<std::size_t>(length),
                                SiteAngles{phi, theta, alpha});
  return PauliBasisSpec(std::move(sites));
}

PauliBasisSpec PauliBasisSpec::canonicalized() const {
  std::vector<SiteAngles> reduced = sites_;
  for (auto& s : reduced) {
    s.phi = mod_2pi(s.phi);
    s.theta = mod_2pi(s.theta);
    s.alpha = mod_2pi(s.alpha);
  }
  return PauliBasisSpec(std::move(reduced));
}

SpinConfiguration::SpinConfiguration(std::vector<int> signs)
    : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("SpinConfiguration: signs must be +1 or -1");
    }
  }
}

std::vector<Eigen::Index> SpinConfiguration::plus_sites() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < size(); ++j) {
    if (sign(j) > 0) out.push_back(j);
  }
  return out;
}

std::vector<Eigen::Index> SpinConfiguration::minus_sites() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < size(); ++j) {
    if (sign(j) < 0) out.push_back(j);
  }
  return out;
}

SpinConfiguration SpinConfiguration::flipped() const {
  std::vector<int> f = signs_;
  for (int& s : f) s = -s;
  return SpinConfiguration(std::move(f));
}

std::string SpinConfiguration::to_string() const {
  std::string out;
  out.reserve(signs_.size());
  for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

SpinConfiguration parse_configuration(std::string_view text) {
  std::vector<int> signs;
  signs.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case '+':
      case 'u':
      case '1':
        signs.push_back(1);
        break;
      case '-':
      case 'd':
      case '0':
        signs.push_back(-1);
        break;
      default:
        throw parse_error("configuration: invalid character '" +
                          std::string(1, text[pos]) + "' at index " +
                          std::to_string(pos));
    }
  }
  return SpinConfiguration(std::move(signs));
}

Eigen::Matrix2cd u_matrix(double phi, double theta, double alpha) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cxd i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << c, s * std::exp(-i * phi),
       s * std::exp(-i * alpha), -c * std::exp(-i * (alpha + phi));
  return u;
}

CanonicalBraPair canonical_bras(double phi, double theta, double alpha) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cxd i(0.0, 1.0);
  CanonicalBraPair b;
  b.plus_0 = s;
  b.plus_1 = std::exp(i * phi) * c;
  b.minus_0 = -std::exp(-i * alpha) * c;
  b.minus_1 = std::exp(-i * alpha) * std::exp(i * phi) * s;
  return b;
}

CanonicalBraPair canonical_bras(const SiteAngles& a) {
  return canonical_bras(a.phi, a.theta, a.alpha);
}

}  // namespace fgamp
