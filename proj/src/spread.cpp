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

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include <gsl/gsl_integration.h>

#include "flyqubit/error.hpp"
#include "flyqubit/oracle.hpp"

namespace flyqubit {

namespace {

constexpr double kDimension = 4.0;
constexpr double kConvergenceLimit = 1e-10;

struct FixedTableDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

// Entanglement infidelity 1 - E_p |tr(U0^dagger U(p))|^2 / d^2 of the averaged
// channel, with p ~ N(mean, delta^2) by Gauss-Hermite quadrature.
double entanglement_infidelity(GateFamily family, double mean, double delta, Coupling c, unsigned order) {
  std::unique_ptr<gsl_integration_fixed_workspace, FixedTableDeleter> table(
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, order, 0.0, 1.0, 0.0, 0.0));
  if (!table) throw NumericalError("could not build the Gauss-Hermite rule");
  const double* nodes = gsl_integration_fixed_nodes(table.get());
  const double* weights = gsl_integration_fixed_weights(table.get());

  const Matrix4 u0_adj = family_matrix(family, mean, c).adjoint();
  double loss = 0.0;
  for (unsigned i = 0; i < order; ++i) {
    const double p = mean + std::numbers::sqrt2 * delta * nodes[i];
    const double overlap = std::norm((u0_adj * family_matrix(family, p, c)).trace());
    loss += weights[i] / std::sqrt(std::numbers::pi) * (kDimension * kDimension - overlap);
  }
  return loss / (kDimension * kDimension);
}

}  // namespace

// Average gate fidelity of a channel E against a unitary U0 is
// (d F_e + 1) / (d + 1), where F_e = sum_k w_k |tr(U0^dagger U_k)|^2 / d^2 is
// the entanglement fidelity of E = sum_k w_k U_k . U_k^dagger.
SpreadFidelity spread_averaged_gate(const CollisionConfig& cfg, double delta_p, GateFamily family,
                                    unsigned quadrature_order) {
  const double mean = cfg.relative_momentum();
  if (!std::isfinite(delta_p) || delta_p < 0.0) throw ValidationError("spread: delta_p must be >= 0");
  if (!(delta_p < 0.3 * mean)) throw ValidationError("spread: delta_p must be < 0.3 (p_a + p_b)");
  if (quadrature_order < 2 || quadrature_order > 512)
    throw ValidationError("spread: quadrature order must be in [2, 512]");
  if (delta_p == 0.0 || cfg.coupling().is_infinite()) return {1.0, 0.0};

  const double e_n = entanglement_infidelity(family, mean, delta_p, cfg.coupling(), quadrature_order);
  const double e_2n = entanglement_infidelity(family, mean, delta_p, cfg.coupling(), 2 * quadrature_order);
  const double scale = kDimension / (kDimension + 1.0);
  if (std::abs(e_2n - e_n) * scale > kConvergenceLimit) {
    std::ostringstream os;
    os << "spread: Gauss-Hermite quadrature not converged at order " << quadrature_order << " (change "
       << std::abs(e_2n - e_n) * scale << " on doubling)";
    throw NumericalError(os.str());
  }
  SpreadFidelity out;
  out.infidelity = scale * e_n;
  out.fidelity = 1.0 - out.infidelity;
  return out;
}

}  // namespace flyqubit
