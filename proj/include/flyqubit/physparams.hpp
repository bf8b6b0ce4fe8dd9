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

#pragma once

// Laboratory parameters to the wavenumbers used by the gate formulas.
//
// The two-atom Hamiltonian -hbar^2/(2m) (d1^2 + d2^2) + g1D delta(x1 - x2)
// becomes -d1^2 - d2^2 + 2c delta after multiplying by 2m/hbar^2, so
// c = m g1D / hbar^2 and a particle of speed v has wavenumber p = m v / hbar.
// Both are in inverse metres and go into CollisionConfig unchanged.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace flyqubit {

inline constexpr double kHbarSI = 1.054571817e-34;  // J s
inline constexpr double kConfinementConstant = 1.0326;

/// A consistent set of base units, given by their size in SI. The numerical
/// value of hbar follows from them.
struct UnitSystem {
  double length_m = 1.0;
  double mass_kg = 1.0;
  double time_s = 1.0;

  double hbar() const { return kHbarSI * time_s / (mass_kg * length_m * length_m); }
  void validate() const;
};

/// Values are in the units of whichever UnitSystem they are used with.
struct PhysicalSetup {
  double mass = 0.0;
  double a3d = 0.0;         // 3D s-wave scattering length
  double omega_perp = 0.0;  // transverse trap frequency, rad per unit time
  double velocity = 0.0;    // per-atom speed; zero is allowed

  void validate() const;
};

enum class CouplingFormula { Corrected, Uncorrected };

/// sqrt(2 hbar / (m omega_perp)); the harmonic length is half of this squared.
double transverse_length(const PhysicalSetup& s, const UnitSystem& u = {});

/// 1D contact strength c (1 / length). The corrected form divides
/// 2 hbar omega_perp a3d by 1 - C a3d / a_perp and refuses to run when that
/// denominator is <= 0.1.
double coupling_from_setup(const PhysicalSetup& s, CouplingFormula formula = CouplingFormula::Corrected,
                           const UnitSystem& u = {});

/// Per-atom wavenumber m v / hbar.
double wavenumber_from_velocity(const PhysicalSetup& s, const UnitSystem& u = {});

/// Symmetric per-atom speed with p_a + p_b = c.
double optimal_velocity(const PhysicalSetup& s, CouplingFormula formula = CouplingFormula::Corrected,
                        const UnitSystem& u = {});

inline constexpr double kPerturbativeConfinementLimit = 0.5;

/// Human-readable warnings (currently: a3d / a_perp above 0.5).
std::vector<std::string> setup_warnings(const PhysicalSetup& s, const UnitSystem& u = {});

/// key=value text with keys mass_kg, a3d_m, omega_perp_rad_s, velocity_m_s.
/// Blank lines and lines starting with '#' are skipped. Errors name the key.
PhysicalSetup parse_setup(std::string_view text);

/// Reads and parses a setup file; IoError carries the path.
PhysicalSetup load_setup(const std::filesystem::path& path);

/// JSON report (SI): the setup, results for omega_perp as given and for
/// omega_perp / (2 pi), both coupling formulas, wavenumbers and warnings.
std::string params_report_json(const PhysicalSetup& s);

}  // namespace flyqubit
