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
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "flyqubit/entanglement.hpp"
#include "flyqubit/error.hpp"
#include "random_local.hpp"

using namespace flyqubit;
using testsupport::random_local;

namespace {

const complex I{0.0, 1.0};

Matrix4 diag(complex a, complex b, complex c, complex d) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

const Matrix4 kCz = diag(1, 1, 1, -1);

Matrix4 cnot() {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

// SWAP^alpha built from its spectral decomposition: +1 on the triplet,
// exp(i pi alpha) on the singlet.
Matrix4 swap_power(double alpha) {
  Vector4 s;
  s << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  return Matrix4::Identity() + (std::polar(1.0, std::numbers::pi * alpha) - 1.0) * s * s.adjoint();
}

void check_invariants(const Matrix4& u, complex g1, double g2, double tol = 1e-12) {
  const MakhlinInvariants inv = makhlin_invariants(TwoQubitGate(u));
  CHECK(std::abs(inv.g1 - g1) < tol);
  CHECK(std::abs(inv.g2 - g2) < tol);
}

}  // namespace

TEST_CASE("concurrence of reference states") {
  const double s2 = 1.0 / std::sqrt(2.0);
  CHECK(concurrence(TwoQubitState::basis(1)) == 0.0);
  Vector4 bell;
  bell << s2, 0.0, 0.0, s2;
  CHECK(std::abs(concurrence(TwoQubitState(bell)) - 1.0) < 1e-15);
  for (double theta = 0.0; theta <= std::numbers::pi / 2.0; theta += 0.1) {
    Vector4 v;
    v << 0.0, std::cos(theta), std::sin(theta), 0.0;
    CHECK(std::abs(concurrence(TwoQubitState(v)) - std::sin(2.0 * theta)) < 1e-15);
  }
}

TEST_CASE("concurrence rejects unnormalized amplitudes") {
  Vector4 v;
  v << 1.0, 1e-4, 0.0, 0.0;
  CHECK_THROWS_AS(concurrence(v), ValidationError);
  v << 1.0, 1e-5, 0.0, 0.0;  // norm off by 5e-11
  CHECK_NOTHROW(concurrence(v));
}

TEST_CASE("concurrence is unchanged by local unitaries") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = complex(n(rng), n(rng));
    v.normalize();
    const Vector4 w = random_local(rng) * v;
    CHECK(std::abs(concurrence(w) - concurrence(v)) < 1e-10);
  }
}

TEST_CASE("idealized spinless gate maximally entangles |+>|+>") {
  const TwoQubitState plus = TwoQubitState::product(Eigen::Vector2cd(1, 1) / std::sqrt(2.0), Eigen::Vector2cd(1, 1) / std::sqrt(2.0));
  CHECK(concurrence(plus) < 1e-15);
  CHECK(std::abs(concurrence(apply(spinless_gate_idealized(), plus)) - 1.0) < 1e-15);
}

TEST_CASE("Makhlin invariants of reference gates") {
  check_invariants(Matrix4::Identity(), 1.0, 3.0);
  check_invariants(kCz, 0.0, 1.0);
  check_invariants(diag(-1, 1, 1, 1), 0.0, 1.0);
  check_invariants(swap_matrix(), -1.0, -3.0);
  check_invariants(cnot(), 0.0, 1.0);
}

TEST_CASE("controlled phase: g1 = cos^2(theta/2), g2 = 2 cos^2(theta/2) + 1") {
  for (double theta = 0.0; theta < 2.0 * std::numbers::pi; theta += 0.37) {
    const double c2 = std::pow(std::cos(theta / 2.0), 2);
    check_invariants(diag(1, 1, 1, std::polar(1.0, theta)), c2, 2.0 * c2 + 1.0);
  }
}

TEST_CASE("Makhlin invariants ignore local unitaries and global phase") {
  std::mt19937_64 rng(13);
  const std::vector<Matrix4> gates = {kCz, swap_matrix(), swap_power(0.5),
                                      boson_gate(CollisionConfig(0.3, 0.4, Coupling::finite(0.9))).matrix(),
                                      fermion_gate(CollisionConfig(1.3, 0.2, Coupling::finite(0.4))).matrix()};
  for (const Matrix4& u : gates) {
    const MakhlinInvariants ref = makhlin_invariants(TwoQubitGate(u));
    for (int k = 0; k < 50; ++k) {
      const Matrix4 v = std::polar(1.0, 6.0 * k / 50.0) * random_local(rng) * u * random_local(rng);
      const MakhlinInvariants inv = makhlin_invariants(TwoQubitGate(v));
      CHECK(std::abs(inv.g1 - ref.g1) < 1e-9);
      CHECK(std::abs(inv.g2 - ref.g2) < 1e-9);
    }
  }
}

TEST_CASE("local equivalence: idealized spinless gate is a CZ") {
  CHECK(locally_equivalent(spinless_gate_idealized(), TwoQubitGate(kCz)));
  CHECK_FALSE(locally_equivalent(TwoQubitGate(Matrix4::Identity()), TwoQubitGate(kCz)));
  CHECK_THROWS_AS(locally_equivalent(TwoQubitGate(kCz), TwoQubitGate(kCz), -1.0), ValidationError);
}

TEST_CASE("boson and fermion gates at p = c are mirror-image square roots of SWAP") {
  const CollisionConfig cfg(0.5, 0.5, Coupling::finite(1.0));
  const TwoQubitGate b = boson_gate(cfg);
  const TwoQubitGate f = fermion_gate(cfg);
  CHECK(locally_equivalent(b, TwoQubitGate(swap_power(0.5))));
  CHECK(locally_equivalent(f, TwoQubitGate(swap_power(-0.5))));
  const MakhlinInvariants ib = makhlin_invariants(b);
  const MakhlinInvariants iff = makhlin_invariants(f);
  MESSAGE("boson g1 = " << ib.g1 << ", g2 = " << ib.g2 << "; fermion g1 = " << iff.g1 << ", g2 = " << iff.g2);
  CHECK(std::abs(ib.g1 - std::conj(iff.g1)) < 1e-12);
  CHECK(std::abs(ib.g2 - iff.g2) < 1e-12);
  CHECK(std::abs(std::abs(ib.g1) - 0.25) < 1e-12);
  CHECK(std::abs(ib.g1.real()) < 1e-12);
  // Complex-conjugate g1 with nonzero imaginary part: not locally equivalent.
  CHECK_FALSE(locally_equivalent(b, f));
  // Nor is either one CNOT-equivalent, though both are maximally entangling.
  CHECK_FALSE(locally_equivalent(b, TwoQubitGate(cnot())));
  CHECK_FALSE(locally_equivalent(f, TwoQubitGate(cnot())));
}

TEST_CASE("entangling power of the identity is zero") {
  const EntanglingPower ep = entangling_power(TwoQubitGate(Matrix4::Identity()), 5000, 1);
  CHECK(ep.mean < 1e-28);
  CHECK(ep.std_error < 1e-28);
}

TEST_CASE("entangling power of CZ against a brute-force Monte-Carlo") {
  // Independent estimate: for CZ on |a>|b>, C = 4 |a0 a1 b0 b1|.
  std::mt19937 rng(2024);
  std::normal_distribution<double> n(0.0, 1.0);
  auto haar = [&](complex& x, complex& y) {
    x = complex(n(rng), n(rng));
    y = complex(n(rng), n(rng));
    const double s = std::sqrt(std::norm(x) + std::norm(y));
    x /= s;
    y /= s;
  };
  const int samples = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    complex a0, a1, b0, b1;
    haar(a0, a1);
    haar(b0, b1);
    const double c = 4.0 * std::abs(a0 * a1 * b0 * b1);
    sum += c * c;
    sum_sq += c * c * c * c;
  }
  const double brute = sum / samples;
  const double brute_se = std::sqrt((sum_sq / samples - brute * brute) / samples);
  MESSAGE("brute-force CZ entangling power " << brute << " +- " << brute_se);
  CHECK(std::abs(brute - 4.0 / 9.0) < 4.0 * brute_se);

  const EntanglingPower ep = entangling_power(TwoQubitGate(kCz), 200000, 99);
  CHECK(std::abs(ep.mean - 4.0 / 9.0) < 4.0 * ep.std_error);
  CHECK(std::abs(ep.mean - brute) < 4.0 * std::hypot(ep.std_error, brute_se));
}

TEST_CASE("entangling power is deterministic per seed and symmetric under relabeling") {
  std::mt19937_64 rng(17);
  const Matrix4 u = random_local(rng) * kCz * random_local(rng) * swap_power(0.3);
  const TwoQubitGate g(u);
  const EntanglingPower a = entangling_power(g, 3000, 5);
  const EntanglingPower b = entangling_power(g, 3000, 5);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(entangling_power(g, 3000, 6).mean != a.mean);

  const TwoQubitGate relabeled(swap_matrix() * u * swap_matrix());
  const EntanglingPower x = entangling_power(g, 100000, 8);
  const EntanglingPower y = entangling_power(relabeled, 100000, 9);
  CHECK(std::abs(x.mean - y.mean) < 5.0 * std::hypot(x.std_error, y.std_error));
  CHECK_THROWS_AS(entangling_power(g, 999, 1), ValidationError);
}

TEST_CASE("|ud> output concurrence is 2pc / (p^2 + c^2) and symmetric under r -> 1/r") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> logu(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    const double p = std::pow(10.0, logu(rng));
    const double c = std::pow(10.0, logu(rng));
    const CollisionConfig cfg(0.5 * p, 0.5 * p, Coupling::finite(c));
    const double expected = 2.0 * p * c / (p * p + c * c);
    for (const GateFamily fam : {GateFamily::Boson, GateFamily::Fermion}) {
      CHECK(std::abs(concurrence(apply(family_gate(fam, cfg), TwoQubitState::basis(1))) - expected) < 1e-12);
      const double r = p / c;
      const CollisionConfig inv(0.5 / r, 0.5 / r, Coupling::finite(1.0));
      CHECK(std::abs(concurrence(apply(family_gate(fam, inv), TwoQubitState::basis(1))) -
                     concurrence(apply(family_gate(fam, CollisionConfig(0.5 * r, 0.5 * r, Coupling::finite(1.0))),
                                       TwoQubitState::basis(1)))) < 1e-12);
    }
  }
}

TEST_CASE("sweep examples") {
  const std::vector<double> one = {1.0};
  const auto f = optimality_sweep(one, 2000, 1, GateFamily::Fermion);
  REQUIRE(f.size() == 1);
  CHECK(std::abs(f[0].max_concurrence - 1.0) < 1e-12);
  const std::vector<double> tiny = {1e-6};
  const auto b = optimality_sweep(tiny, 2000, 1, GateFamily::Boson);
  CHECK(b[0].max_concurrence < 1e-5);
}

TEST_CASE("sweep input validation") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(optimality_sweep(empty, 2000, 1, GateFamily::Boson), ValidationError);
  const std::vector<double> unsorted = {1.0, 0.5};
  CHECK_THROWS_AS(optimality_sweep(unsorted, 2000, 1, GateFamily::Boson), ValidationError);
  const std::vector<double> negative = {-1.0, 0.5};
  CHECK_THROWS_AS(optimality_sweep(negative, 2000, 1, GateFamily::Boson), ValidationError);
}

TEST_CASE("log-spaced sweep is unimodal with its peak at ratio 1") {
  const std::vector<double> ratios = log_spaced(0.01, 100.0, 41);
  CHECK(ratios[20] == 1.0);
  for (const GateFamily fam : {GateFamily::Boson, GateFamily::Fermion}) {
    const auto rows = optimality_sweep(ratios, 20000, 42, fam);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].entangling_power > rows[peak].entangling_power) peak = i;
    CHECK(peak == 20);
    for (std::size_t i = 1; i <= peak; ++i) CHECK(rows[i].entangling_power > rows[i - 1].entangling_power);
    for (std::size_t i = peak + 1; i < rows.size(); ++i) CHECK(rows[i].entangling_power < rows[i - 1].entangling_power);
    for (const SweepResult& r : rows) {
      CHECK(r.entangling_power >= 0.0);
      CHECK(r.entangling_power <= 1.0);
      CHECK(r.max_concurrence <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("log_spaced endpoints and validation") {
  const auto v = log_spaced(0.1, 10.0, 3);
  CHECK(v[0] == 0.1);
  CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v[2] == 10.0);
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(log_spaced(1.0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(log_spaced(1.0, 2.0, 1), ValidationError);
}
