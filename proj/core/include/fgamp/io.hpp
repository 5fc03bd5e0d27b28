#pragma once

#include <iosfwd>
#include <string>

#include "fgamp/postmeasure.hpp"
#include "fgamp/probability.hpp"
#include "fgamp/state.hpp"

namespace fgamp {

/// State spec: {"kind":"matrix","L":N,"entries":[[i,j,re,im],...]} with
/// strictly-upper 0-based entries; unlisted entries are 0.
GaussianPureState load_state_json(const std::string& path);
GaussianPureState parse_state_json(const std::string& text);
void save_state_json(const GaussianPureState& state, const std::string& path);
std::string state_to_json(const GaussianPureState& state);

/// Basis spec: {"uniform":{"phi":x,"theta":y,"alpha":z}} or
/// {"per_site":[[phi,theta,alpha],...]} (radians). Angles are reduced
/// mod 2pi here, at parse time.
PauliBasisSpec load_basis_json(const std::string& path, Eigen::Index length);
PauliBasisSpec parse_basis_json(const std::string& text, Eigen::Index length);

/// Inline CLI forms: "z" | "x" | "y" | "uniform:phi,theta,alpha" | a path to
/// a JSON basis spec. Angles in radians unless `degrees` is set.
PauliBasisSpec parse_basis_arg(const std::string& arg, Eigen::Index length,
                               bool degrees = false);

/// Fixed "%.17g" float formatting: shortest round-trippable, locale-free.
std::string format_double(double v);

void write_probability_csv(const ProbabilityTable& table, std::ostream& out);
void write_decay_csv(const DecayTable& table, std::ostream& out);
DecayTable read_decay_csv(const std::string& path);

}  // namespace fgamp
