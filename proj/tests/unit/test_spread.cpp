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
#include <vector>

#include <doctest.h>

#include "flyqubit/error.hpp"
#include "flyqubit/oracle.hpp"

using namespace flyqubit;

namespace {

double infidelity(GateFamily fam, double p, double c, double dp, unsigned order = 48) {
  return spread_averaged_gate(CollisionConfig(0.5 * p, 0.5 * p, Coupling::finite(c)), dp, fam, order).infidelity;
}

// Independent route: the same average fidelity by a fine trapezoid rule on
// +-12 standard deviations, with |tr(U0^dagger U(p))|^2 written out from the
// spectral form (three eigenvalues e^{i phi(p)}, one eigenvalue 1).
double trapezoid_infidelity(double p0, double c, double dp) {
  auto phi = [c](double p) { return std::arg(complex(p, -c) / complex(p, c)); };
  const int n = 200000;
  const double lo = p0 - 12.0 * dp;
  const double step = 24.0 * dp / n;
  double acc = 0.0;
  double norm = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double p = lo + i * step;
    const double w = (i == 0 || i == n ? 0.5 : 1.0) * std::exp(-0.5 * std::pow((p - p0) / dp, 2));
    const double d = phi(p) - phi(p0);
    const double overlap = std::norm(3.0 * std::polar(1.0, d) + 1.0);
    acc += w * (16.0 - overlap);
    norm += w;
  }
  return (acc / norm / 16.0) * 4.0 / 5.0;
}

}  // namespace

TEST_CASE("zero spread is a perfect gate") {
  const SpreadFidelity f = spread_averaged_gate(CollisionConfig(0.5, 0.5, Coupling::finite(1.0)), 0.0, GateFamily::Boson);
  CHECK(f.fidelity == 1.0);
  CHECK(f.infidelity == 0.0);
}

TEST_CASE("quadrature agrees with an independent trapezoid rule") {
  for (double ratio : {0.5, 1.0, 3.0})
    for (double x : {0.01, 0.05, 0.1}) {
      const double c = 1.0;
      const double p = ratio * c;
      const double dp = x * c;
      if (!(dp < 0.3 * p)) continue;
      const double quad = infidelity(GateFamily::Boson, p, c, dp);
      const double trap = trapezoid_infidelity(p, c, dp);
      CHECK(std::abs(quad - trap) < 1e-10 + 1e-8 * trap);
    }
}

TEST_CASE("both families lose the same fidelity") {
  for (double x : {0.01, 0.04})
    CHECK(std::abs(infidelity(GateFamily::Boson, 1.0, 1.0, x) - infidelity(GateFamily::Fermion, 1.0, 1.0, x)) < 1e-14);
}

TEST_CASE("infidelity is quadratic in dp / c at p = c") {
  const double e1 = infidelity(GateFamily::Boson, 1.0, 1.0, 0.0025);
  const double e2 = infidelity(GateFamily::Boson, 1.0, 1.0, 0.005);
  CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(1e-3));
  // Leading term: the eigenphase slope at p = c is -1/c, so the averaged
  // fidelity loss is (4/5)(3/16) var(phi) = 3 dp^2 / (20 c^2).
  CHECK(e1 == doctest::Approx(3.0 * 0.0025 * 0.0025 / 20.0).epsilon(1e-4));
}

TEST_CASE("at fixed dp, larger c helps (p = c)") {
  const double dp = 0.02;
  double prev = 1.0;
  for (double c : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double e = infidelity(GateFamily::Fermion, c, c, dp);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("infidelity depends only on ratios") {
  const double base = infidelity(GateFamily::Boson, 1.3, 0.9, 0.07);
  for (double s : {1e-3, 0.5, 7.0, 1e4})
    CHECK(std::abs(infidelity(GateFamily::Boson, 1.3 * s, 0.9 * s, 0.07 * s) - base) < 1e-10);
}

TEST_CASE("spread preconditions") {
  const CollisionConfig cfg(0.5, 0.5, Coupling::finite(1.0));
  CHECK_THROWS_AS(spread_averaged_gate(cfg, 0.3, GateFamily::Boson), ValidationError);
  CHECK_THROWS_AS(spread_averaged_gate(cfg, 0.5, GateFamily::Boson), ValidationError);
  CHECK_THROWS_AS(spread_averaged_gate(cfg, -0.1, GateFamily::Boson), ValidationError);
  CHECK_THROWS_AS(spread_averaged_gate(cfg, 0.1, GateFamily::Boson, 1), ValidationError);
  // A rule far too short for the spread is caught by the doubling check.
  CHECK_THROWS_AS(spread_averaged_gate(CollisionConfig(0.5, 0.5, Coupling::finite(0.05)), 0.25, GateFamily::Boson, 4),
                  NumericalError);
  CHECK(spread_averaged_gate(CollisionConfig(0.5, 0.5, Coupling::infinite()), 0.1, GateFamily::Boson).infidelity == 0.0);
}
