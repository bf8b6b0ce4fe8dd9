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

// Two-body S-matrices for identical particles on a line with contact
// interaction 2c*delta(x1 - x2), and the two-qubit gates they induce on
// counter-propagating "flying" qubits.
//
// Units: hbar = 2m = 1, so momenta and the coupling c are wavenumbers.
// Qubit A is the right-mover (momentum +p_a), qubit B the left-mover
// (momentum -p_b). Basis order is (00, 01, 10, 11) with qubit A in the first
// slot; for spin encodings 0 = up and 1 = down, i.e. (uu, ud, du, dd).

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace flyqubit {

using complex = std::complex<double>;
using Matrix4 = Eigen::Matrix<complex, 4, 4>;
using Vector4 = Eigen::Matrix<complex, 4, 1>;

enum class GateFamily { Boson, Fermion };

std::string to_string(GateFamily family);
GateFamily parse_gate_family(const std::string& tag);

/// Contact coupling strength. The hard-core limit is a flag rather than a
/// floating-point infinity so that gate formulas stay finite.
class Coupling {
 public:
  static Coupling finite(double c);
  static Coupling infinite() noexcept { return Coupling(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; throws for the infinite coupling.
  double value() const;

 private:
  Coupling(double c, bool infinite) noexcept : c_(c), infinite_(infinite) {}
  double c_;
  bool infinite_;
};

/// Incoming momenta magnitudes of the two qubits and the coupling.
/// p2 = p_a and p1 = -p_b, so the relative momentum p2 - p1 = p_a + p_b > 0.
class CollisionConfig {
 public:
  CollisionConfig(double p_a, double p_b, Coupling c);

  double p_a() const noexcept { return p_a_; }
  double p_b() const noexcept { return p_b_; }
  const Coupling& coupling() const noexcept { return c_; }
  double relative_momentum() const noexcept { return p_a_ + p_b_; }

 private:
  double p_a_;
  double p_b_;
  Coupling c_;
};

/// Momenta-magnitude encoding of a spinless boson: |0> <-> lambda0, |1> <-> lambda1.
class SpinlessEncoding {
 public:
  SpinlessEncoding(double lambda0, double lambda1);

  double lambda0() const noexcept { return lambda0_; }
  double lambda1() const noexcept { return lambda1_; }
  double lambda(int bit) const noexcept { return bit == 0 ? lambda0_ : lambda1_; }

  // Both should be << 1 for the gate to approach diag(-1, 1, 1, 1).
  double ratio0(double c) const noexcept { return lambda0_ / c; }
  double ratio1(double c) const noexcept { return c / lambda1_; }

 private:
  double lambda0_;
  double lambda1_;
};

class TwoQubitGate;

class TwoQubitState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Validates the norm.
  explicit TwoQubitState(const Vector4& amplitudes);
  static TwoQubitState basis(int index);
  static TwoQubitState product(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b);

  const Vector4& amplitudes() const noexcept { return amps_; }
  complex operator[](int i) const { return amps_(i); }

 private:
  struct Unchecked {};
  TwoQubitState(const Vector4& amplitudes, Unchecked) : amps_(amplitudes) {}
  friend TwoQubitState apply(const TwoQubitGate&, const TwoQubitState&);

  Vector4 amps_;
};

class TwoQubitGate {
 public:
  static constexpr double kUnitarityTolerance = 1e-12;

  /// Validates unitarity (entrywise max of |U^dagger U - I|).
  explicit TwoQubitGate(const Matrix4& matrix);

  const Matrix4& matrix() const noexcept { return m_; }
  complex operator()(int row, int col) const { return m_(row, col); }
  double unitarity_residual() const;

 private:
  Matrix4 m_;
};

/// max_ij |(U^dagger U - I)_ij|
double unitarity_residual(const Matrix4& u);

/// The 4x4 spin permutation: SWAP|uv> = |vu>.
const Matrix4& swap_matrix();

/// Lieb-Liniger two-body phase S(p2, p1) = (p2 - p1 - ic) / (p2 - p1 + ic), p2 > p1.
complex lieb_liniger_phase(double p2, double p1, Coupling c);

/// Exact diagonal gate of the momenta-magnitude encoding. Entry (i, j) is the
/// two-body phase at relative momentum lambda_i + lambda_j.
TwoQubitGate spinless_gate(const SpinlessEncoding& enc, Coupling c);

/// The hierarchy limit lambda0 << c << lambda1: exactly diag(-1, 1, 1, 1).
TwoQubitGate spinless_gate_idealized();

/// Spin-carrying bosons: ((p - ic*SWAP) / (p + ic)), p = p_a + p_b.
TwoQubitGate boson_gate(const CollisionConfig& cfg);

/// Spin-1/2 fermions (Yang): ((p + ic*SWAP) / (p + ic)), p = p_a + p_b.
TwoQubitGate fermion_gate(const CollisionConfig& cfg);

TwoQubitGate family_gate(GateFamily family, const CollisionConfig& cfg);

/// Gate matrix as a function of the total relative momentum only. Defined for
/// any real p when c > 0; used where p is integrated over a distribution.
Matrix4 family_matrix(GateFamily family, double relative_momentum, Coupling c);

TwoQubitState apply(const TwoQubitGate& gate, const TwoQubitState& state);

/// Row-major JSON array of [re, im] pairs.
std::string to_json(const TwoQubitGate& gate);

}  // namespace flyqubit
