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

#include "flyqubit/entanglement.hpp"

#include <cmath>
#include <random>
#include <string>

#include "flyqubit/error.hpp"

namespace flyqubit {

namespace {

constexpr std::uint64_t kChunkSize = 1024;

double concurrence_unchecked(const Vector4& a) { return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2)); }

// Magic (Bell) basis change used by the Makhlin invariants.
const Matrix4& magic_basis() {
  static const Matrix4 q = [] {
    const complex i{0.0, 1.0};
    Matrix4 m;
    m << 1.0, 0.0, 0.0, i,
         0.0, i, 1.0, 0.0,
         0.0, i, -1.0, 0.0,
         1.0, 0.0, 0.0, -i;
    return Matrix4(m / std::sqrt(2.0));
  }();
  return q;
}

Eigen::Vector2cd haar_qubit(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  Eigen::Vector2cd v;
  for (;;) {
    v(0) = complex(normal(rng), normal(rng));
    v(1) = complex(normal(rng), normal(rng));
    const double n = v.norm();
    if (n > 1e-300) return v / n;
  }
}

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

ChunkSums sample_chunk(const Matrix4& u, std::uint64_t seed, std::uint64_t chunk, std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  ChunkSums s;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Eigen::Vector2cd a = haar_qubit(rng, normal);
    const Eigen::Vector2cd b = haar_qubit(rng, normal);
    Vector4 in;
    in << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    const double c = concurrence_unchecked(u * in);
    s.sum += c * c;
    s.sum_sq += c * c * c * c;
  }
  return s;
}

}  // namespace

double concurrence(const TwoQubitState& state) { return concurrence_unchecked(state.amplitudes()); }

double concurrence(const Vector4& amplitudes) {
  const double dev = std::abs(amplitudes.norm() - 1.0);
  if (!(dev <= 1e-9)) throw ValidationError("concurrence: state is not normalized (|norm - 1| = " + std::to_string(dev) + ")");
  return concurrence_unchecked(amplitudes);
}

MakhlinInvariants makhlin_invariants(const TwoQubitGate& gate) {
  const Matrix4& q = magic_basis();
  const Matrix4 ub = q.adjoint() * gate.matrix() * q;
  const Matrix4 m = ub.transpose() * ub;
  const complex det = gate.matrix().determinant();
  const complex tr = m.trace();
  const complex tr_sq = (m * m).trace();
  MakhlinInvariants inv;
  inv.g1 = tr * tr / (16.0 * det);
  // Real for unitary input; the imaginary part is rounding noise.
  inv.g2 = ((tr * tr - tr_sq) / (4.0 * det)).real();
  return inv;
}

bool locally_equivalent(const TwoQubitGate& x, const TwoQubitGate& y, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("tolerance must be >= 0");
  const MakhlinInvariants a = makhlin_invariants(x);
  const MakhlinInvariants b = makhlin_invariants(y);
  return std::abs(a.g1.real() - b.g1.real()) <= tol && std::abs(a.g1.imag() - b.g1.imag()) <= tol &&
         std::abs(a.g2 - b.g2) <= tol;
}

EntanglingPower entangling_power(const TwoQubitGate& gate, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1000) throw ValidationError("entangling_power needs at least 1000 samples");
  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t k = 0; k < chunks; ++k) {
    const std::uint64_t count = std::min(kChunkSize, samples - k * kChunkSize);
    const ChunkSums s = sample_chunk(gate.matrix(), seed, k, count);
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

std::vector<SweepResult> optimality_sweep(std::span<const double> ratios, std::uint64_t samples,
                                          std::uint64_t seed, GateFamily family) {
  if (ratios.empty()) throw ValidationError("optimality_sweep: empty ratio list");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!std::isfinite(ratios[i]) || !(ratios[i] > 0.0)) throw ValidationError("optimality_sweep: ratios must be positive");
    if (i > 0 && !(ratios[i] > ratios[i - 1]))
      throw ValidationError("optimality_sweep: ratios must be strictly increasing");
  }
  std::vector<SweepResult> rows;
  rows.reserve(ratios.size());
  for (double r : ratios) {
    const CollisionConfig cfg(0.5 * r, 0.5 * r, Coupling::finite(1.0));
    const TwoQubitGate gate = family_gate(family, cfg);
    const EntanglingPower ep = entangling_power(gate, samples, seed);
    double best = 0.0;
    for (int b = 0; b < 4; ++b) best = std::max(best, concurrence(apply(gate, TwoQubitState::basis(b))));
    rows.push_back({r, ep.mean, ep.std_error, best});
  }
  return rows;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ValidationError("log_spaced: need 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace flyqubit
