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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "flyqubit/error.hpp"
#include "flyqubit/oracle.hpp"

namespace flyqubit {

namespace {

inline complex mul(complex a, complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// (1 + i dt H / 2) psi(t + dt) = (1 - i dt H / 2) psi(t), with
// H = -d^2/dx^2 + V on the lattice and Dirichlet walls. The left-hand matrix
// is constant, so its Thomas factorization is computed once.
class CrankNicolson {
 public:
  CrankNicolson(const GridSpec& grid, std::span<const double> potential) : n_(grid.n_points) {
    const double h = grid.spacing();
    const double half_dt = 0.5 * grid.dt;
    off_ = complex(0.0, -half_dt / (h * h));
    rhs_diag_.resize(n_);
    cprime_.resize(n_);
    inv_denom_.resize(n_);
    scratch_.resize(n_);
    complex prev_c = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = 2.0 / (h * h) + potential[j];
      rhs_diag_[j] = complex(1.0, -half_dt * d);
      const complex lhs_diag(1.0, half_dt * d);
      const complex denom = lhs_diag - off_ * prev_c;
      inv_denom_[j] = 1.0 / denom;
      cprime_[j] = off_ * inv_denom_[j];
      prev_c = cprime_[j];
    }
  }

  void step(std::span<complex> psi) {
    // rhs_j = B_jj psi_j - off (psi_{j-1} + psi_{j+1}); forward sweep in place
    complex prev_psi = 0.0;
    complex prev_d = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const complex next_psi = j + 1 < n_ ? psi[j + 1] : complex(0.0);
      const complex rhs = mul(rhs_diag_[j], psi[j]) - mul(off_, prev_psi + next_psi);
      prev_psi = psi[j];
      const complex d = mul(rhs - mul(off_, prev_d), inv_denom_[j]);
      scratch_[j] = d;
      prev_d = d;
    }
    complex next = 0.0;
    for (std::size_t j = n_; j-- > 0;) {
      next = scratch_[j] - mul(cprime_[j], next);
      psi[j] = next;
    }
  }

 private:
  std::size_t n_;
  complex off_;
  std::vector<complex> rhs_diag_;
  std::vector<complex> cprime_;
  std::vector<complex> inv_denom_;
  std::vector<complex> scratch_;
};

double norm_sq(std::span<const complex> psi, double h) {
  double s = 0.0;
  for (const complex& z : psi) s += std::norm(z);
  return s * h;
}

double boundary_probability(std::span<const complex> psi, double h) {
  const std::size_t guard = std::min(kBoundaryGuardPoints, psi.size() / 2);
  double s = 0.0;
  for (std::size_t j = 0; j < guard; ++j) s += std::norm(psi[j]) + std::norm(psi[psi.size() - 1 - j]);
  return s * h;
}

void check_boundary(std::span<const complex> psi, double h, std::size_t step) {
  const double p = boundary_probability(psi, h);
  if (p > kBoundaryProbabilityLimit) {
    std::ostringstream os;
    os << "wavepacket reached the grid boundary at step " << step << " (probability " << p
       << " within " << kBoundaryGuardPoints << " points of a wall); enlarge the domain";
    throw NumericalError(os.str());
  }
}

double gaussian_sigma_from_fwhm(double fwhm) { return fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2)); }

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    throw ValidationError("grid: need finite x_min < x_max");
  if (n_points < 4096) throw ValidationError("grid: n_points must be >= 4096");
  if (n_points % 2 != 0) throw ValidationError("grid: n_points must be even");
  if (std::abs(x_min + x_max) > 1e-12 * (x_max - x_min))
    throw ValidationError("grid: the domain must be symmetric about the barrier at x = 0");
  if (!std::isfinite(dt) || !(dt > 0.0)) throw ValidationError("grid: dt must be > 0");
  if (n_steps == 0) throw ValidationError("grid: n_steps must be >= 1");
}

void WavepacketSpec::validate() const {
  if (!std::isfinite(x0) || !std::isfinite(k0) || !std::isfinite(sigma_x))
    throw ValidationError("wavepacket: parameters must be finite");
  if (!(k0 > 0.0)) throw ValidationError("wavepacket: k0 must be > 0");
  if (!(sigma_x > 0.0)) throw ValidationError("wavepacket: sigma_x must be > 0");
  if (!(x0 < 0.0)) throw ValidationError("wavepacket: x0 must be on the negative side of the barrier");
  if (!(k0 * sigma_x > 10.0)) throw ValidationError("wavepacket: need k0 * sigma_x > 10");
  if (!(std::abs(x0) > 5.0 * sigma_x)) throw ValidationError("wavepacket: need |x0| > 5 sigma_x");
}

std::string to_string(BarrierShape shape) { return shape == BarrierShape::Square ? "square" : "gaussian"; }

BarrierShape parse_barrier_shape(const std::string& tag) {
  if (tag == "square") return BarrierShape::Square;
  if (tag == "gaussian") return BarrierShape::Gaussian;
  throw ValidationError("unknown barrier shape '" + tag + "' (expected square or gaussian)");
}

std::vector<double> discretize(const BarrierSpec& barrier, const GridSpec& grid) {
  if (!std::isfinite(barrier.strength) || barrier.strength < 0.0)
    throw ValidationError("barrier: strength must be >= 0");
  if (!std::isfinite(barrier.width) || !(barrier.width > 0.0)) throw ValidationError("barrier: width must be > 0");
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  std::vector<double> v(n, 0.0);
  if (barrier.strength == 0.0) return v;
  const double centre = 0.5 * (grid.x_min + grid.x_max);
  if (barrier.shape == BarrierShape::Square) {
    // Even number of cells, symmetric about the centre of an even grid.
    const auto cells = static_cast<std::size_t>(2 * std::llround(barrier.width / (2.0 * h)));
    if (cells < 2 || cells > n) throw ValidationError("barrier: square width not representable on this grid");
    const std::size_t first = n / 2 - cells / 2;
    for (std::size_t j = first; j < first + cells; ++j) v[j] = 1.0;
  } else {
    const double s = gaussian_sigma_from_fwhm(barrier.width);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = grid.position(j) - centre;
      if (std::abs(x) <= 7.0 * s) v[j] = std::exp(-0.5 * x * x / (s * s));
    }
  }
  double area = 0.0;
  for (double x : v) area += x;
  area *= h;
  for (double& x : v) x *= barrier.strength / area;
  return v;
}

double effective_width(std::span<const double> potential, const GridSpec& grid) {
  const double centre = 0.5 * (grid.x_min + grid.x_max);
  double m0 = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < potential.size(); ++j) {
    const double x = grid.position(j) - centre;
    m0 += potential[j];
    m2 += potential[j] * x * x;
  }
  if (!(m0 > 0.0)) throw ValidationError("effective_width: barrier has zero area");
  return std::sqrt(12.0 * m2 / m0);
}

std::vector<complex> initial_state(const GridSpec& grid, const WavepacketSpec& packet, Symmetry symmetry) {
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  const double centre = 0.5 * (grid.x_min + grid.x_max);
  auto g = [&](double x) {
    const double u = x - packet.x0;
    return std::polar(std::exp(-u * u / (4.0 * packet.sigma_x * packet.sigma_x)), packet.k0 * x);
  };
  std::vector<complex> psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.position(j) - centre;
    switch (symmetry) {
      case Symmetry::None: psi[j] = g(x); break;
      case Symmetry::Even: psi[j] = g(x) + g(-x); break;
      case Symmetry::Odd: psi[j] = g(x) - g(-x); break;
    }
  }
  const double norm = std::sqrt(norm_sq(psi, h));
  for (complex& z : psi) z /= norm;
  return psi;
}

Wavefunction propagate(const GridSpec& grid, std::span<const double> potential, std::vector<complex> initial) {
  grid.validate();
  if (potential.size() != grid.n_points || initial.size() != grid.n_points)
    throw ValidationError("propagate: potential and state must have n_points entries");
  const double h = grid.spacing();
  check_boundary(initial, h, 0);
  const double norm0 = norm_sq(initial, h);

  CrankNicolson cn(grid, potential);
  const std::size_t check_every = std::max<std::size_t>(1, grid.n_steps / 32);
  for (std::size_t s = 1; s <= grid.n_steps; ++s) {
    cn.step(initial);
    if (s % check_every == 0 || s == grid.n_steps) check_boundary(initial, h, s);
  }

  Wavefunction wf{grid, std::move(initial), 0.0};
  wf.norm_drift = std::abs(std::sqrt(norm_sq(wf.psi, h)) - std::sqrt(norm0));
  if (wf.norm_drift > kNormDriftLimit) {
    std::ostringstream os;
    os << "norm drift " << wf.norm_drift << " exceeds " << kNormDriftLimit;
    throw NumericalError(os.str());
  }
  return wf;
}

Wavefunction propagate(const GridSpec& grid, const WavepacketSpec& packet, const BarrierSpec& barrier,
                       Symmetry symmetry) {
  grid.validate();
  packet.validate();
  const double h = grid.spacing();
  const double k_hi = packet.k0 + 8.0 * packet.momentum_spread();
  if (!(grid.dt * k_hi * k_hi < 0.5))
    throw ValidationError("grid: dt * k_hi^2 must be < 0.5 for the packet's momentum content");
  if (barrier.width * packet.k0 > 1.0 / 20.0 + 1e-12)
    throw ValidationError("barrier: width must be <= 1/(20 k0) to probe the contact limit");
  if (barrier.width / h < 8.0 - 1e-9)
    throw ValidationError("barrier: width must span at least 8 grid points");
  const std::vector<double> v = discretize(barrier, grid);
  return propagate(grid, v, initial_state(grid, packet, symmetry));
}

double mean_momentum(const Wavefunction& wf) {
  static constexpr double kCoeff[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  const auto& psi = wf.psi;
  const std::size_t n = psi.size();
  const double h = wf.grid.spacing();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 4; j + 4 < n; ++j) {
    complex d = 0.0;
    for (std::size_t m = 0; m < 4; ++m) d += kCoeff[m] * (psi[j + m + 1] - psi[j - m - 1]);
    d /= h;
    // <p> = Re sum conj(psi) (-i d psi)
    num += (std::conj(psi[j]) * complex(0.0, -1.0) * d).real();
    den += std::norm(psi[j]);
  }
  return num / den;
}

double parity_asymmetry(const Wavefunction& wf, double sign) {
  const auto& psi = wf.psi;
  double worst = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) worst = std::max(worst, std::abs(psi[j] - sign * psi[psi.size() - 1 - j]));
  return worst;
}

void dump_wavefunction(const Wavefunction& wf, const std::filesystem::path& path) {
  static_assert(std::endian::native == std::endian::little, "snapshot writer assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::uint64_t count = wf.psi.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (const complex& z : wf.psi) {
    const double pair[2] = {z.real(), z.imag()};
    out.write(reinterpret_cast<const char*>(pair), sizeof pair);
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<complex> read_wavefunction_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in) throw IoError("truncated snapshot header in '" + path.string() + "'");
  std::vector<complex> psi(count);
  for (auto& z : psi) {
    double pair[2];
    in.read(reinterpret_cast<char*>(pair), sizeof pair);
    if (!in) throw IoError("truncated snapshot body in '" + path.string() + "'");
    z = {pair[0], pair[1]};
  }
  return psi;
}

}  // namespace flyqubit
