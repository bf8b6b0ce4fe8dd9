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

#include <cstdint>
#include <span>
#include <vector>

#include "flyqubit/smatrix.hpp"

namespace flyqubit {

/// Local-equivalence invariants of a two-qubit gate (Makhlin). g1 is the
/// complex invariant tr^2(m) / (16 det U), g2 the real invariant
/// (tr^2(m) - tr(m^2)) / (4 det U), with m = U_B^T U_B and U_B the gate in the
/// magic basis.
struct MakhlinInvariants {
  complex g1;
  double g2 = 0.0;
};

struct EntanglingPower {
  double mean = 0.0;    // mean squared concurrence over Haar product inputs
  double std_error = 0.0;  // Monte-Carlo standard error of the mean
};

struct SweepResult {
  double ratio = 0.0;  // (p_a + p_b) / c
  double entangling_power = 0.0;
  double std_error = 0.0;
  double max_concurrence = 0.0;  // over the four computational basis inputs
};

/// Pure-state concurrence 2|a00 a11 - a01 a10|.
double concurrence(const TwoQubitState& state);
/// Same, for raw amplitudes. Rejects inputs whose norm is off by more than 1e-9.
double concurrence(const Vector4& amplitudes);

MakhlinInvariants makhlin_invariants(const TwoQubitGate& gate);

inline constexpr double kDefaultLocalEquivalenceTolerance = 1e-8;

/// Componentwise comparison of Re g1, Im g1 and g2.
bool locally_equivalent(const TwoQubitGate& x, const TwoQubitGate& y,
                        double tol = kDefaultLocalEquivalenceTolerance);

/// Monte-Carlo entangling power with a deterministic seed. Samples are drawn in
/// fixed chunks, each with its own engine seeded from (seed, chunk index), so
/// the estimate does not depend on how chunks are scheduled. Requires
/// samples >= 1000.
EntanglingPower entangling_power(const TwoQubitGate& gate, std::uint64_t samples, std::uint64_t seed);

/// Entangling power and max basis-input concurrence of a gate family along
/// (p_a + p_b) / c, with p_a = p_b and c = 1. Ratios must be positive and
/// strictly increasing. Every point reuses the same seed, so neighbouring
/// points are compared on identical input samples.
std::vector<SweepResult> optimality_sweep(std::span<const double> ratios, std::uint64_t samples,
                                          std::uint64_t seed, GateFamily family);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

}  // namespace flyqubit
