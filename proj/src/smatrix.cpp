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

#include "flyqubit/smatrix.hpp"

#include <cmath>

#include <json.hpp>

#include "flyqubit/error.hpp"

namespace flyqubit {

namespace {

constexpr complex kI{0.0, 1.0};

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

std::string to_string(GateFamily family) {
  return family == GateFamily::Boson ? "boson" : "fermion";
}

GateFamily parse_gate_family(const std::string& tag) {
  if (tag == "boson") return GateFamily::Boson;
  if (tag == "fermion") return GateFamily::Fermion;
  throw ValidationError("unknown gate family '" + tag + "' (expected boson or fermion)");
}

Coupling Coupling::finite(double c) {
  require_finite(c, "coupling c");
  if (c < 0.0) throw ValidationError("coupling c must be >= 0 (attractive interactions are not supported)");
  return Coupling(c, false);
}

double Coupling::value() const {
  if (infinite_) throw ValidationError("infinite coupling has no finite value");
  return c_;
}

CollisionConfig::CollisionConfig(double p_a, double p_b, Coupling c) : p_a_(p_a), p_b_(p_b), c_(c) {
  require_finite(p_a, "p_a");
  require_finite(p_b, "p_b");
  if (!(p_a > 0.0) || !(p_b > 0.0))
    throw ValidationError("p_a and p_b must be > 0 so that the qubits counter-propagate");
}

SpinlessEncoding::SpinlessEncoding(double lambda0, double lambda1) : lambda0_(lambda0), lambda1_(lambda1) {
  require_finite(lambda0, "lambda0");
  require_finite(lambda1, "lambda1");
  if (!(lambda0 > 0.0) || !(lambda0 < lambda1))
    throw ValidationError("spinless encoding requires 0 < lambda0 < lambda1");
}

TwoQubitState::TwoQubitState(const Vector4& amplitudes) : amps_(amplitudes) {
  if (!amps_.allFinite()) throw ValidationError("state amplitudes must be finite");
  const double dev = std::abs(amps_.norm() - 1.0);
  if (dev > kNormTolerance) throw ValidationError("state is not normalized (|norm - 1| = " + std::to_string(dev) + ")");
}

TwoQubitState TwoQubitState::basis(int index) {
  if (index < 0 || index > 3) throw ValidationError("basis index must be in [0, 3]");
  Vector4 v = Vector4::Zero();
  v(index) = 1.0;
  return TwoQubitState(v);
}

TwoQubitState TwoQubitState::product(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  Vector4 v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return TwoQubitState(v);
}

double unitarity_residual(const Matrix4& u) {
  return (u.adjoint() * u - Matrix4::Identity()).cwiseAbs().maxCoeff();
}

TwoQubitGate::TwoQubitGate(const Matrix4& matrix) : m_(matrix) {
  if (!m_.allFinite()) throw ValidationError("gate entries must be finite");
  const double res = flyqubit::unitarity_residual(m_);
  if (res > kUnitarityTolerance)
    throw ValidationError("gate is not unitary (max |U^dagger U - I| = " + std::to_string(res) + ")");
}

double TwoQubitGate::unitarity_residual() const { return flyqubit::unitarity_residual(m_); }

const Matrix4& swap_matrix() {
  static const Matrix4 swap = [] {
    Matrix4 s = Matrix4::Zero();
    s(0, 0) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 3) = 1.0;
    return s;
  }();
  return swap;
}

complex lieb_liniger_phase(double p2, double p1, Coupling c) {
  require_finite(p2, "p2");
  require_finite(p1, "p1");
  if (!(p2 > p1)) throw ValidationError("lieb_liniger_phase requires p2 > p1");
  if (c.is_infinite()) return -1.0;
  const double k = p2 - p1;
  const double cv = c.value();
  return (k - kI * cv) / (k + kI * cv);
}

TwoQubitGate spinless_gate(const SpinlessEncoding& enc, Coupling c) {
  if (!c.is_infinite() && !(c.value() > 0.0)) throw ValidationError("spinless_gate requires c > 0");
  Matrix4 m = Matrix4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int idx = 2 * a + b;
      // right-mover lambda_a, left-mover -lambda_b
      m(idx, idx) = lieb_liniger_phase(enc.lambda(a), -enc.lambda(b), c);
    }
  return TwoQubitGate(m);
}

TwoQubitGate spinless_gate_idealized() {
  Matrix4 m = Matrix4::Identity();
  m(0, 0) = -1.0;
  return TwoQubitGate(m);
}

Matrix4 family_matrix(GateFamily family, double p, Coupling c) {
  require_finite(p, "relative momentum");
  const Matrix4& swap = swap_matrix();
  if (c.is_infinite()) return family == GateFamily::Boson ? Matrix4(-swap) : swap;
  const double cv = c.value();
  if (p == 0.0 && cv == 0.0) throw ValidationError("p_a + p_b and c must not both vanish");
  const complex denom = p + kI * cv;
  const complex sign = family == GateFamily::Boson ? -1.0 : 1.0;
  const Matrix4 num = complex(p) * Matrix4::Identity() + sign * kI * cv * swap;
  return num / denom;
}

TwoQubitGate boson_gate(const CollisionConfig& cfg) {
  return TwoQubitGate(family_matrix(GateFamily::Boson, cfg.relative_momentum(), cfg.coupling()));
}

TwoQubitGate fermion_gate(const CollisionConfig& cfg) {
  return TwoQubitGate(family_matrix(GateFamily::Fermion, cfg.relative_momentum(), cfg.coupling()));
}

TwoQubitGate family_gate(GateFamily family, const CollisionConfig& cfg) {
  return family == GateFamily::Boson ? boson_gate(cfg) : fermion_gate(cfg);
}

TwoQubitState apply(const TwoQubitGate& gate, const TwoQubitState& state) {
  return TwoQubitState(gate.matrix() * state.amplitudes(), TwoQubitState::Unchecked{});
}

std::string to_json(const TwoQubitGate& gate) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c) row.push_back({gate(r, c).real(), gate(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace flyqubit
