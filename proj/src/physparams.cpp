// Copyright 2026 The flyqubit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flyqubit/physparams.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "flyqubit/error.hpp"

namespace flyqubit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

nlohmann::json convention_entry(const PhysicalSetup& s, const std::string& label) {
  nlohmann::json j;
  j["omega_interpretation"] = label;
  j["omega_perp_rad_s"] = s.omega_perp;
  const double a_perp = transverse_length(s);
  j["a_perp_m"] = a_perp;
  j["a3d_over_a_perp"] = s.a3d / a_perp;
  j["c_uncorrected_per_m"] = coupling_from_setup(s, CouplingFormula::Uncorrected);
  j["optimal_velocity_uncorrected_m_s"] = optimal_velocity(s, CouplingFormula::Uncorrected);
  try {
    j["c_corrected_per_m"] = coupling_from_setup(s, CouplingFormula::Corrected);
    j["optimal_velocity_corrected_m_s"] = optimal_velocity(s, CouplingFormula::Corrected);
  } catch (const ValidationError& e) {
    j["c_corrected_per_m"] = nullptr;
    j["optimal_velocity_corrected_m_s"] = nullptr;
    j["error"] = e.what();
  }
  return j;
}

}  // namespace

void UnitSystem::validate() const {
  if (!positive_finite(length_m) || !positive_finite(mass_kg) || !positive_finite(time_s))
    throw ValidationError("unit system: base units must be positive");
}

void PhysicalSetup::validate() const {
  if (!positive_finite(mass)) throw ValidationError("setup: mass must be > 0");
  if (!positive_finite(a3d)) throw ValidationError("setup: a3d must be > 0");
  if (!positive_finite(omega_perp)) throw ValidationError("setup: omega_perp must be > 0");
  if (!std::isfinite(velocity) || velocity < 0.0) throw ValidationError("setup: velocity must be >= 0");
}

double transverse_length(const PhysicalSetup& s, const UnitSystem& u) {
  s.validate();
  u.validate();
  return std::sqrt(2.0 * u.hbar() / (s.mass * s.omega_perp));
}

double coupling_from_setup(const PhysicalSetup& s, CouplingFormula formula, const UnitSystem& u) {
  const double a_perp = transverse_length(s, u);
  const double hbar = u.hbar();
  double g = 2.0 * hbar * s.omega_perp * s.a3d;
  if (formula == CouplingFormula::Corrected) {
    const double denom = 1.0 - kConfinementConstant * s.a3d / a_perp;
    if (denom <= 0.1) {
      std::ostringstream os;
      os << "setup: too close to the confinement-induced resonance (1 - C a3d / a_perp = " << denom << ")";
      throw ValidationError(os.str());
    }
    g /= denom;
  }
  return s.mass * g / (hbar * hbar);
}

double wavenumber_from_velocity(const PhysicalSetup& s, const UnitSystem& u) {
  s.validate();
  u.validate();
  return s.mass * s.velocity / u.hbar();
}

double optimal_velocity(const PhysicalSetup& s, CouplingFormula formula, const UnitSystem& u) {
  const double c = coupling_from_setup(s, formula, u);
  return c * u.hbar() / (2.0 * s.mass);
}

std::vector<std::string> setup_warnings(const PhysicalSetup& s, const UnitSystem& u) {
  std::vector<std::string> out;
  const double ratio = s.a3d / transverse_length(s, u);
  if (ratio >= kPerturbativeConfinementLimit) {
    std::ostringstream os;
    os << "a3d / a_perp = " << ratio << " is outside the perturbative confinement regime (< "
       << kPerturbativeConfinementLimit << ")";
    out.push_back(os.str());
  }
  return out;
}

PhysicalSetup parse_setup(std::string_view text) {
  static constexpr std::array<std::string_view, 4> kKeys = {"mass_kg", "a3d_m", "omega_perp_rad_s", "velocity_m_s"};
  std::array<std::optional<double>, 4> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("setup line " + std::to_string(line_no) + ": expected key=value, got '" +
                            std::string(line) + "'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    std::size_t slot = kKeys.size();
    for (std::size_t i = 0; i < kKeys.size(); ++i)
      if (kKeys[i] == key) slot = i;
    if (slot == kKeys.size()) throw ValidationError("setup: unknown key '" + std::string(key) + "'");
    if (values[slot]) throw ValidationError("setup: duplicate key '" + std::string(key) + "'");
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty() || !std::isfinite(x))
      throw ValidationError("setup: invalid number for key '" + std::string(key) + "': '" + std::string(value) + "'");
    values[slot] = x;
  }
  for (std::size_t i = 0; i < kKeys.size(); ++i)
    if (!values[i]) throw ValidationError("setup: missing key '" + std::string(kKeys[i]) + "'");
  PhysicalSetup s{*values[0], *values[1], *values[2], *values[3]};
  s.validate();
  return s;
}

PhysicalSetup load_setup(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open setup file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading setup file '" + path.string() + "'");
  return parse_setup(buf.str());
}

std::string params_report_json(const PhysicalSetup& s) {
  s.validate();
  nlohmann::json j;
  j["setup"] = {{"mass_kg", s.mass}, {"a3d_m", s.a3d}, {"omega_perp_rad_s", s.omega_perp}, {"velocity_m_s", s.velocity}};
  j["hbar_J_s"] = kHbarSI;
  j["confinement_constant"] = kConfinementConstant;

  PhysicalSetup alt = s;
  alt.omega_perp = s.omega_perp / (2.0 * std::numbers::pi);
  j["conventions"] = nlohmann::json::array({convention_entry(s, "as_given"), convention_entry(alt, "divided_by_2pi")});

  const double p = wavenumber_from_velocity(s);
  j["p_per_atom_per_m"] = p;
  j["p_sum_per_m"] = 2.0 * p;
  // Headline numbers use the configured omega and the corrected coupling.
  const double c = coupling_from_setup(s);
  j["c_per_m"] = c;
  j["ratio_p_sum_over_c"] = 2.0 * p / c;
  j["optimal_velocity_m_s"] = optimal_velocity(s);
  j["warnings"] = setup_warnings(s);
  return j.dump(2);
}

}  // namespace flyqubit
