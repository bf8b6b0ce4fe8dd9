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

// Numerical cross-check of the two-body phase from the Hamiltonian itself.
//
// With x = x1 - x2 and X = (x1 + x2) / 2 the two-body operator
//   -d^2/dx1^2 - d^2/dx2^2 + 2c delta(x1 - x2)
// separates into -(1/2) d^2/dX^2 for the centre of mass and
// -2 d^2/dx^2 + 2c delta(x) for the relative motion. The centre-of-mass factor
// is a free plane wave that scatters trivially and only contributes a global
// phase, so it is dropped. Dividing the relative part by 2 leaves the
// unit-kinetic problem -d^2/dx^2 + c delta(x) at energy E/2, relative
// wavenumber k = (p2 - p1) / 2 and derivative jump psi'(0+) - psi'(0-) = c psi(0).
//
// For that problem t = 2ik / (2ik - c) and r = c / (2ik - c). The spatially
// symmetric channel picks up t + r = (2ik + c) / (2ik - c), which is the
// two-body phase at p2 - p1 = 2k; the antisymmetric channel picks up
// t - r = 1 because odd wavefunctions vanish at contact.
//
// The time-dependent check propagates a Gaussian packet through a finite-width
// barrier of area c with Crank-Nicolson on a cell-centred lattice, reads t and
// r off the final state by projecting onto +-k0 and dividing by the same
// projection of a barrier-free twin run, and extrapolates the barrier width
// to zero.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flyqubit/smatrix.hpp"

namespace flyqubit {

/// Relative-coordinate reduction of the two-body contact problem.
struct RelativeProblem {
  double kinetic_coefficient_full = 2.0;  // -2 d^2/dx^2 before halving
  double potential_strength_full = 0.0;   // 2c
  double kinetic_coefficient = 1.0;       // after halving
  double jump_coefficient = 0.0;          // psi'(0+) - psi'(0-) = jump * psi(0)
  double energy_scale = 0.5;              // relative energy = E / 2
  double momentum_scale = 0.5;            // k = (p2 - p1) / 2
};

RelativeProblem reduce_to_relative(double c);

struct ScatteringAmplitudes {
  complex t;
  complex r;
  double k = 0.0;

  double unitarity_defect() const { return std::abs(std::norm(t) + std::norm(r) - 1.0); }
};

/// Stationary plane-wave matching for -psi'' + c delta(x) psi = k^2 psi.
ScatteringAmplitudes delta_barrier_amplitudes(double k, double c);

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;
  double dt = 0.0;
  std::size_t n_steps = 0;

  /// Cell-centred nodes x_j = x_min + (j + 1/2) h.
  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points); }
  double position(std::size_t j) const { return x_min + (static_cast<double>(j) + 0.5) * spacing(); }
  void validate() const;
};

struct WavepacketSpec {
  double x0 = 0.0;       // initial centre, left of the barrier
  double k0 = 0.0;       // mean relative wavenumber
  double sigma_x = 0.0;  // |psi|^2 has standard deviation sigma_x

  double momentum_spread() const { return 0.5 / sigma_x; }
  void validate() const;
};

enum class BarrierShape { Square, Gaussian };

/// Finite-width stand-in for c delta(x). `width` is the full width of the
/// square or the FWHM of the Gaussian; the area is always `strength`.
struct BarrierSpec {
  double strength = 0.0;
  double width = 0.0;
  BarrierShape shape = BarrierShape::Square;
};

std::string to_string(BarrierShape shape);
BarrierShape parse_barrier_shape(const std::string& tag);

enum class Symmetry { None, Even, Odd };

/// Sampled barrier, normalized so that sum V_j h equals the strength exactly.
std::vector<double> discretize(const BarrierSpec& barrier, const GridSpec& grid);

/// sqrt(12) times the RMS extent of a sampled barrier: equals the width of a
/// continuum square barrier with the same second moment. Used as the
/// extrapolation variable.
double effective_width(std::span<const double> potential, const GridSpec& grid);

/// Normalized Gaussian packet; Even/Odd add the mirror packet g(-x) with the
/// corresponding sign.
std::vector<complex> initial_state(const GridSpec& grid, const WavepacketSpec& packet, Symmetry symmetry = Symmetry::None);

struct Wavefunction {
  GridSpec grid;
  std::vector<complex> psi;
  double norm_drift = 0.0;  // |norm(final) - norm(initial)|
};

inline constexpr double kNormDriftLimit = 1e-6;
inline constexpr double kBoundaryProbabilityLimit = 1e-8;
inline constexpr std::size_t kBoundaryGuardPoints = 10;

/// Crank-Nicolson evolution of an arbitrary initial state over grid.n_steps.
/// Throws NumericalError on norm drift above 1e-6 or when more than 1e-8 of
/// the probability sits within 10 points of either wall.
Wavefunction propagate(const GridSpec& grid, std::span<const double> potential, std::vector<complex> initial);

/// Validated packet/barrier run. Checks the packet and barrier invariants,
/// the barrier resolution (>= 8 points across the width), the thin-barrier
/// condition k0 * width <= 1/20, and dt * k_hi^2 < 0.5 with
/// k_hi = k0 + 8 * momentum_spread.
Wavefunction propagate(const GridSpec& grid, const WavepacketSpec& packet, const BarrierSpec& barrier,
                       Symmetry symmetry = Symmetry::None);

/// <p> from an eighth-order central difference.
double mean_momentum(const Wavefunction& wf);

/// max_j |psi(x_j) - sign * psi(-x_j)|.
double parity_asymmetry(const Wavefunction& wf, double sign = 1.0);

/// t and r at wavenumber k from a scattered state and its barrier-free twin.
/// Throws NumericalError if the scattered state has not cleared the barrier
/// region or if |t|^2 + |r|^2 is off by more than 1e-4.
ScatteringAmplitudes extract_amplitudes(const Wavefunction& scattered, const Wavefunction& free_twin, double k);

/// Convenience overload that runs the twin itself.
ScatteringAmplitudes extract_amplitudes(const Wavefunction& scattered, const WavepacketSpec& packet);

inline constexpr double kExtractionUnitarityLimit = 1e-4;

struct WidthSample {
  double width = 0.0;
  ScatteringAmplitudes amplitudes;
};

struct WidthExtrapolation {
  ScatteringAmplitudes amplitudes;
  double residual = 0.0;  // change from dropping the widest sample
  bool monotone = true;   // successive differences shrink for both t and r
};

/// Polynomial (Neville) extrapolation of t and r separately to zero width,
/// through all samples. Widths must be strictly decreasing, at least three.
WidthExtrapolation width_extrapolate(std::span<const WidthSample> samples);

/// arg(t + r) in (-pi, pi]. Throws if |t + r| < 0.5.
double even_channel_phase(const ScatteringAmplitudes& amp);

/// Runs sharing one grid and packet; the barrier-free twins are computed once.
class RelativeScattering {
 public:
  RelativeScattering(GridSpec grid, WavepacketSpec packet);

  const GridSpec& grid() const noexcept { return grid_; }
  const WavepacketSpec& packet() const noexcept { return packet_; }

  ScatteringAmplitudes amplitudes(const BarrierSpec& barrier);

  /// S of the antisymmetric channel: outgoing +k0 amplitude of an odd packet
  /// relative to its free twin.
  complex odd_channel_s(const BarrierSpec& barrier);

 private:
  const Wavefunction& twin(Symmetry symmetry);

  GridSpec grid_;
  WavepacketSpec packet_;
  std::optional<Wavefunction> free_;
  std::optional<Wavefunction> free_odd_;
};

/// |S_odd - 1| for one finite-width barrier.
double odd_channel_null(const GridSpec& grid, const WavepacketSpec& packet, const BarrierSpec& barrier);

enum class OraclePreset { Fast, Accurate };

std::string to_string(OraclePreset preset);
OraclePreset parse_oracle_preset(const std::string& tag);

struct OraclePlan {
  GridSpec grid;
  WavepacketSpec packet;
  std::vector<double> widths;  // decreasing; shared by both barrier shapes
};

inline constexpr double kDefaultHalfWidthSigmas = 18.0;

/// Grid, packet and width ladder for a preset. Lengths scale with 1/k0. The
/// packet starts at -7 sigma and the run lasts until its transmitted part is
/// centred at +9 sigma.
OraclePlan make_oracle_plan(OraclePreset preset, double k0 = 1.0,
                            double half_width_sigmas = kDefaultHalfWidthSigmas);

struct OracleRow {
  double c_over_2k = 0.0;
  double phase_numeric = 0.0;
  double phase_analytic = 0.0;
  double abs_error = 0.0;
  double width_residual = 0.0;
  double unitarity_defect = 0.0;  // after extrapolation
  bool monotone = true;
};

/// Even-channel phase at c = 2 k0 * c_over_2k, extrapolated over plan.widths,
/// against arg S(p2 - p1 = 2 k0).
OracleRow compare_even_phase(const OraclePlan& plan, double c_over_2k, BarrierShape shape = BarrierShape::Square);

/// Same pipeline, returning the extrapolated amplitudes.
WidthExtrapolation extrapolated_amplitudes(const OraclePlan& plan, double c, BarrierShape shape = BarrierShape::Square);

struct OddChannelStudy {
  std::vector<double> widths;
  std::vector<double> deviations;  // |S_odd - 1| per width
  double extrapolated_deviation = 0.0;
  double residual = 0.0;
};

OddChannelStudy odd_channel_study(const OraclePlan& plan, double c, BarrierShape shape = BarrierShape::Square);

/// Binary snapshot: little-endian uint64 count, then count (re, im) float64 pairs.
void dump_wavefunction(const Wavefunction& wf, const std::filesystem::path& path);
std::vector<complex> read_wavefunction_dump(const std::filesystem::path& path);

struct SpreadFidelity {
  double fidelity = 1.0;
  double infidelity = 0.0;
};

/// Average gate fidelity of the channel obtained by averaging the gate family
/// over p ~ N(p_a + p_b, delta_p^2), against the gate at the central momentum.
/// Gauss-Hermite quadrature of the given order; the result must agree with
/// order 2n to 1e-10. Requires delta_p < 0.3 (p_a + p_b).
SpreadFidelity spread_averaged_gate(const CollisionConfig& cfg, double delta_p, GateFamily family,
                                    unsigned quadrature_order = 48);

}  // namespace flyqubit
