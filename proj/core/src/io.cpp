#include "fgamp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fgamp {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw parse_error(what + ": malformed JSON");
  }
  return j;
}

double mod_2pi(double x) {
  double r = std::fmod(x, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

GaussianPureState parse_state_json(const std::string& text) {
  const json j = parse_json_text(text, "state spec");
  if (!j.is_object() || j.value("kind", "") != "matrix") {
    throw parse_error("state spec: expected {\"kind\":\"matrix\", ...}");
  }
  if (!j.contains("L") || !j["L"].is_number_integer()) {
    throw parse_error("state spec: missing integer field \"L\"");
  }
  const Eigen::Index L = j["L"].get<Eigen::Index>();
  if (L < 1) {
    throw parse_error("state spec: L must be >= 1");
  }
  Matrix r = Matrix::Zero(L, L);
  if (j.contains("entries")) {
    if (!j["entries"].is_array()) {
      throw parse_error("state spec: \"entries\" must be an array");
    }
    for (const auto& e : j["entries"]) {
      if (!e.is_array() || e.size() != 4) {
        throw parse_error(
            "state spec: each entry must be [i, j, re, im]");
      }
      const Eigen::Index i = e[0].get<Eigen::Index>();
      const Eigen::Index jj = e[1].get<Eigen::Index>();
      if (i < 0 || jj < 0 || i >= L || jj >= L) {
        throw parse_error("state spec: entry (" + std::to_string(i) + ", " +
                          std::to_string(jj) + ") out of range");
      }
      if (i >= jj) {
        throw parse_error("state spec: entry (" + std::to_string(i) + ", " +
                          std::to_string(jj) +
                          ") is not strictly upper-triangular");
      }
      if (r(i, jj) != cxd(0.0, 0.0)) {
        throw parse_error("state spec: duplicate entry (" + std::to_string(i) +
                          ", " + std::to_string(jj) + ")");
      }
      r(i, jj) = cxd(e[2].get<double>(), e[3].get<double>());
      r(jj, i) = -r(i, jj);
    }
  }
  return make_state(SkewMatrix::FromSkewParts(std::move(r)));
}

GaussianPureState load_state_json(const std::string& path) {
  return parse_state_json(slurp(path));
}

std::string state_to_json(const GaussianPureState& state) {
  json entries = json::array();
  const Eigen::Index L = state.size();
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index jj = i + 1; jj < L; ++jj) {
      const cxd v = state.r_matrix()(i, jj);
      if (v != cxd(0.0, 0.0)) {
        entries.push_back({i, jj, v.real(), v.imag()});
      }
    }
  }
  json j{{"kind", "matrix"}, {"L", L}, {"entries", entries}};
  return j.dump();
}

void save_state_json(const GaussianPureState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw parse_error("cannot write '" + path + "'");
  }
  out << state_to_json(state) << "\n";
}

PauliBasisSpec parse_basis_json(const std::string& text, Eigen::Index length) {
  const json j = parse_json_text(text, "basis spec");
  if (j.contains("uniform")) {
    const auto& u = j["uniform"];
    if (!u.contains("phi") || !u.contains("theta") || !u.contains("alpha")) {
      throw parse_error("basis spec: uniform needs phi, theta, alpha");
    }
    return PauliBasisSpec::Uniform(length, mod_2pi(u["phi"].get<double>()),
                                   mod_2pi(u["theta"].get<double>()),
                                   mod_2pi(u["alpha"].get<double>()));
  }
  if (j.contains("per_site")) {
    const auto& list = j["per_site"];
    if (!list.is_array()) {
      throw parse_error("basis spec: per_site must be an array");
    }
    if (static_cast<Eigen::Index>(list.size()) != length) {
      throw parse_error("basis spec: per_site has " +
                        std::to_string(list.size()) + " rows, state has " +
                        std::to_string(length) + " sites");
    }
    std::vector<SiteAngles> sites;
    for (const auto& row : list) {
      if (!row.is_array() || row.size() != 3) {
        throw parse_error("basis spec: each per_site row is [phi,theta,alpha]");
      }
      sites.push_back(SiteAngles{mod_2pi(row[0].get<double>()),
                                 mod_2pi(row[1].get<double>()),
                                 mod_2pi(row[2].get<double>())});
    }
    return PauliBasisSpec(std::move(sites));
  }
  throw parse_error("basis spec: expected \"uniform\" or \"per_site\"");
}

PauliBasisSpec load_basis_json(const std::string& path, Eigen::Index length) {
  return parse_basis_json(slurp(path), length);
}

PauliBasisSpec parse_basis_arg(const std::string& arg, Eigen::Index length,
                               bool degrees) {
  const double unit = degrees ? kPi / 180.0 : 1.0;
  if (arg == "z") return PauliBasisSpec::Uniform(length, 0.0, 0.0, 0.0);
  if (arg == "x") return PauliBasisSpec::Uniform(length, 0.0, kPi / 2.0, 0.0);
  if (arg == "y") {
    return PauliBasisSpec::Uniform(length, kPi / 2.0, kPi / 2.0, 0.0);
  }
  if (arg.rfind("uniform:", 0) == 0) {
    const std::string rest = arg.substr(8);
    double phi, theta, alpha;
    char tail;
    if (std::sscanf(rest.c_str(), "%lf,%lf,%lf%c", &phi, &theta, &alpha,
                    &tail) != 3) {
      throw parse_error("basis: expected uniform:phi,theta,alpha, got '" +
                        arg + "'");
    }
    return PauliBasisSpec::Uniform(length, mod_2pi(phi * unit),
                                   mod_2pi(theta * unit),
                                   mod_2pi(alpha * unit));
  }
  return load_basis_json(arg, length);
}

void write_probability_csv(const ProbabilityTable& table, std::ostream& out) {
  out << "config,probability,path\n";
  const std::string path = to_string(table.path());
  for (Eigen::Index idx = 0; idx < table.rows(); ++idx) {
    out << table.configuration_at(idx).to_string() << ','
        << format_double(table.probability_at(idx)) << ',' << path << '\n';
  }
  out << "TOTAL," << format_double(table.total()) << ',' << path << '\n';
}

void write_decay_csv(const DecayTable& table, std::ostream& out) {
  out << "L,d,alpha,entropy,P_outcome\n";
  for (const auto& row : table) {
    out << row.ring_size << ',' << row.d << ',' << format_double(row.alpha)
        << ',' << format_double(row.entropy) << ','
        << format_double(row.p_outcome) << '\n';
  }
}

DecayTable read_decay_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open '" + path + "'");
  }
  DecayTable table;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    DecayRow row;
    long long ll = 0, dd = 0;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lf,%lf,%lf", &ll, &dd,
                    &row.alpha, &row.entropy, &row.p_outcome) != 5) {
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": expected L,d,alpha,entropy,P_outcome");
    }
    row.ring_size = static_cast<Eigen::Index>(ll);
    row.d = static_cast<Eigen::Index>(dd);
    table.push_back(row);
  }
  return table;
}

}  // namespace fgamp
