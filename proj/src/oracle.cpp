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
#include <cmath>
#include <numbers>
#include <sstream>

#include "flyqubit/error.hpp"
#include "flyqubit/oracle.hpp"

namespace flyqubit {

namespace {

struct Moments {
  double mean = 0.0;
  double rms = 0.0;
};

Moments position_moments(const Wavefunction& wf) {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < wf.psi.size(); ++j) {
    const double x = wf.grid.position(j);
    const double p = std::norm(wf.psi[j]);
    m0 += p;
    m1 += p * x;
    m2 += p * x * x;
  }
  const double mean = m1 / m0;
  return {mean, std::sqrt(std::max(0.0, m2 / m0 - mean * mean))};
}

// sum over x > 0 (positive side) or x < 0 of psi(x) exp(-i sign k x)
complex half_projection(const Wavefunction& wf, double k, bool positive_side, double sign) {
  const std::size_t n = wf.psi.size();
  const std::size_t begin = positive_side ? n / 2 : 0;
  const std::size_t end = positive_side ? n : n / 2;
  complex s = 0.0;
  for (std::size_t j = begin; j < end; ++j) s += wf.psi[j] * std::polar(1.0, -sign * k * wf.grid.position(j));
  return s;
}

complex full_projection(const Wavefunction& wf, double k) {
  return half_projection(wf, k, true, 1.0) + half_projection(wf, k, false, 1.0);
}

void check_same_grid(const Wavefunction& a, const Wavefunction& b) {
  if (a.psi.size() != b.psi.size() || a.grid.x_min != b.grid.x_min || a.grid.x_max != b.grid.x_max ||
      a.grid.n_steps != b.grid.n_steps || a.grid.dt != b.grid.dt)
    throw ValidationError("scattered state and free twin must share grid and duration");
}

// Value at w = 0 of the interpolating polynomial through (w_i, y_i).
complex neville_at_zero(std::span<const double> w, std::span<const complex> y) {
  std::vector<complex> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double wi = w[i];
      const double wj = w[i + level];
      p[i] = (-wj * p[i] + wi * p[i + 1]) / (wi - wj);
    }
  }
  return p[0];
}

bool differences_shrink(std::span<const complex> y) {
  for (std::size_t i = 2; i < y.size(); ++i)
    if (std::abs(y[i] - y[i - 1]) > std::abs(y[i - 1] - y[i - 2])) return false;
  return true;
}

double wrapped_difference(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi)); }

std::vector<WidthSample> width_samples(const OraclePlan& plan, double c, BarrierShape shape, RelativeScattering& rs) {
  std::vector<WidthSample> samples;
  samples.reserve(plan.widths.size());
  for (double w : plan.widths) {
    const BarrierSpec barrier{c, w, shape};
    const std::vector<double> v = discretize(barrier, plan.grid);
    samples.push_back({effective_width(v, plan.grid), rs.amplitudes(barrier)});
  }
  return samples;
}

}  // namespace

RelativeProblem reduce_to_relative(double c) {
  if (!std::isfinite(c) || !(c > 0.0)) throw ValidationError("reduce_to_relative: c must be > 0");
  RelativeProblem rp;
  rp.potential_strength_full = 2.0 * c;
  rp.jump_coefficient = c;
  return rp;
}

ScatteringAmplitudes delta_barrier_amplitudes(double k, double c) {
  if (!std::isfinite(k) || !(k > 0.0)) throw ValidationError("delta_barrier_amplitudes: k must be > 0");
  if (!std::isfinite(c) || c < 0.0) throw ValidationError("delta_barrier_amplitudes: c must be >= 0");
  // psi = e^{ikx} + r e^{-ikx} (x < 0), t e^{ikx} (x > 0); continuity gives
  // t = 1 + r and the jump condition ik(t - 1 + r) = c t.
  const complex d(-c, 2.0 * k);
  return {complex(0.0, 2.0 * k) / d, complex(c, 0.0) / d, k};
}

ScatteringAmplitudes extract_amplitudes(const Wavefunction& scattered, const Wavefunction& free_twin, double k) {
  check_same_grid(scattered, free_twin);
  if (!std::isfinite(k) || !(k > 0.0)) throw ValidationError("extract_amplitudes: k must be > 0");

  // Outgoing parts must have left the barrier: little probability within one
  // twin width of the origin.
  const Moments twin = position_moments(free_twin);
  const double h = scattered.grid.spacing();
  double near = 0.0;
  for (std::size_t j = 0; j < scattered.psi.size(); ++j)
    if (std::abs(scattered.grid.position(j)) < twin.rms) near += std::norm(scattered.psi[j]);
  near *= h;
  if (near > 1e-8) {
    std::ostringstream os;
    os << "scattered state still overlaps the barrier region (probability " << near << "); run longer";
    throw NumericalError(os.str());
  }

  const complex denom = full_projection(free_twin, k);
  if (std::abs(denom) * h < 1e-3) throw NumericalError("free twin has no weight at the extraction wavenumber");
  ScatteringAmplitudes amp;
  amp.k = k;
  amp.t = half_projection(scattered, k, true, 1.0) / denom;
  amp.r = half_projection(scattered, k, false, -1.0) / denom;
  if (amp.unitarity_defect() > kExtractionUnitarityLimit) {
    std::ostringstream os;
    os << "|t|^2 + |r|^2 - 1 = " << amp.unitarity_defect() << " exceeds " << kExtractionUnitarityLimit
       << "; grid or barrier width inadequate";
    throw NumericalError(os.str());
  }
  return amp;
}

ScatteringAmplitudes extract_amplitudes(const Wavefunction& scattered, const WavepacketSpec& packet) {
  packet.validate();
  const std::vector<double> zero(scattered.grid.n_points, 0.0);
  const Wavefunction twin = propagate(scattered.grid, zero, initial_state(scattered.grid, packet));
  return extract_amplitudes(scattered, twin, packet.k0);
}

WidthExtrapolation width_extrapolate(std::span<const WidthSample> samples) {
  if (samples.size() < 3) throw ValidationError("width_extrapolate: need at least three widths");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].width) || !(samples[i].width > 0.0))
      throw ValidationError("width_extrapolate: widths must be positive");
    if (i > 0 && !(samples[i].width < samples[i - 1].width))
      throw ValidationError("width_extrapolate: widths must be strictly decreasing");
  }
  std::vector<double> w;
  std::vector<complex> t;
  std::vector<complex> r;
  for (const WidthSample& s : samples) {
    w.push_back(s.width);
    t.push_back(s.amplitudes.t);
    r.push_back(s.amplitudes.r);
  }
  WidthExtrapolation out;
  out.amplitudes.k = samples.front().amplitudes.k;
  out.amplitudes.t = neville_at_zero(w, t);
  out.amplitudes.r = neville_at_zero(w, r);
  const std::span<const double> w_narrow(w.data() + 1, w.size() - 1);
  const complex t_narrow = neville_at_zero(w_narrow, std::span<const complex>(t.data() + 1, t.size() - 1));
  const complex r_narrow = neville_at_zero(w_narrow, std::span<const complex>(r.data() + 1, r.size() - 1));
  out.residual = std::max(std::abs(out.amplitudes.t - t_narrow), std::abs(out.amplitudes.r - r_narrow));
  out.monotone = differences_shrink(t) && differences_shrink(r);
  return out;
}

double even_channel_phase(const ScatteringAmplitudes& amp) {
  const complex s = amp.t + amp.r;
  if (std::abs(s) < 0.5) throw NumericalError("even_channel_phase: |t + r| < 0.5, amplitudes are inconsistent");
  return std::arg(s);
}

RelativeScattering::RelativeScattering(GridSpec grid, WavepacketSpec packet)
    : grid_(std::move(grid)), packet_(std::move(packet)) {
  grid_.validate();
  packet_.validate();
}

const Wavefunction& RelativeScattering::twin(Symmetry symmetry) {
  std::optional<Wavefunction>& slot = symmetry == Symmetry::Odd ? free_odd_ : free_;
  if (!slot) {
    const std::vector<double> zero(grid_.n_points, 0.0);
    slot = propagate(grid_, zero, initial_state(grid_, packet_, symmetry));
  }
  return *slot;
}

ScatteringAmplitudes RelativeScattering::amplitudes(const BarrierSpec& barrier) {
  const Wavefunction wf = propagate(grid_, packet_, barrier);
  return extract_amplitudes(wf, twin(Symmetry::None), packet_.k0);
}

complex RelativeScattering::odd_channel_s(const BarrierSpec& barrier) {
  const Wavefunction wf = propagate(grid_, packet_, barrier, Symmetry::Odd);
  const Wavefunction& ref = twin(Symmetry::Odd);
  const complex denom = half_projection(ref, packet_.k0, true, 1.0);
  if (std::abs(denom) * grid_.spacing() < 1e-3) throw NumericalError("odd free twin has no outgoing weight");
  return half_projection(wf, packet_.k0, true, 1.0) / denom;
}

double odd_channel_null(const GridSpec& grid, const WavepacketSpec& packet, const BarrierSpec& barrier) {
  RelativeScattering rs(grid, packet);
  return std::abs(rs.odd_channel_s(barrier) - 1.0);
}

std::string to_string(OraclePreset preset) { return preset == OraclePreset::Fast ? "fast" : "accurate"; }

OraclePreset parse_oracle_preset(const std::string& tag) {
  if (tag == "fast") return OraclePreset::Fast;
  if (tag == "accurate") return OraclePreset::Accurate;
  throw ValidationError("unknown oracle preset '" + tag + "' (expected fast or accurate)");
}

OraclePlan make_oracle_plan(OraclePreset preset, double k0, double half_width_sigmas) {
  if (!std::isfinite(k0) || !(k0 > 0.0)) throw ValidationError("oracle plan: k0 must be > 0");
  if (!std::isfinite(half_width_sigmas) || !(half_width_sigmas > 9.0))
    throw ValidationError("oracle plan: half width must exceed 9 sigma, the final packet position");

  OraclePlan plan;
  plan.packet.k0 = k0;
  plan.packet.sigma_x = 10.5 / k0;
  plan.packet.x0 = -7.0 * plan.packet.sigma_x;

  const double half = half_width_sigmas * plan.packet.sigma_x;
  plan.grid.x_min = -half;
  plan.grid.x_max = half;
  plan.grid.n_points = preset == OraclePreset::Fast ? (std::size_t{1} << 19) : (std::size_t{1} << 20);
  const double h = plan.grid.spacing();

  const double k_hi = k0 + 8.0 * plan.packet.momentum_spread();
  plan.grid.dt = 0.4 / (k_hi * k_hi);
  // Group velocity of the Crank-Nicolson lattice dispersion at k0, so the
  // transmitted packet lands at +9 sigma whatever the step size.
  const double energy = (2.0 - 2.0 * std::cos(k0 * h)) / (h * h);
  const double half_phase = 0.5 * energy * plan.grid.dt;
  const double velocity = (2.0 * std::sin(k0 * h) / h) / (1.0 + half_phase * half_phase);
  const double travel = 16.0 * plan.packet.sigma_x;
  plan.grid.n_steps = static_cast<std::size_t>(std::ceil(travel / velocity / plan.grid.dt));

  plan.widths = {0.049 / k0, 0.0245 / k0, 0.01225 / k0, 0.006125 / k0};
  if (plan.widths.back() / h < 8.0)
    throw ValidationError("oracle plan: domain too wide to resolve the narrowest barrier; lower the half width");
  return plan;
}

WidthExtrapolation extrapolated_amplitudes(const OraclePlan& plan, double c, BarrierShape shape) {
  if (!std::isfinite(c) || !(c > 0.0)) throw ValidationError("oracle: c must be > 0");
  RelativeScattering rs(plan.grid, plan.packet);
  const std::vector<WidthSample> samples = width_samples(plan, c, shape, rs);
  return width_extrapolate(samples);
}

OracleRow compare_even_phase(const OraclePlan& plan, double c_over_2k, BarrierShape shape) {
  if (!std::isfinite(c_over_2k) || !(c_over_2k > 0.0)) throw ValidationError("oracle: c/2k must be > 0");
  const double k0 = plan.packet.k0;
  const double c = 2.0 * k0 * c_over_2k;
  const WidthExtrapolation ex = extrapolated_amplitudes(plan, c, shape);
  OracleRow row;
  row.c_over_2k = c_over_2k;
  row.phase_numeric = even_channel_phase(ex.amplitudes);
  row.phase_analytic = std::arg(lieb_liniger_phase(2.0 * k0, 0.0, Coupling::finite(c)));
  row.abs_error = wrapped_difference(row.phase_numeric, row.phase_analytic);
  row.width_residual = ex.residual;
  row.unitarity_defect = ex.amplitudes.unitarity_defect();
  row.monotone = ex.monotone;
  return row;
}

OddChannelStudy odd_channel_study(const OraclePlan& plan, double c, BarrierShape shape) {
  if (!std::isfinite(c) || c < 0.0) throw ValidationError("oracle: c must be >= 0");
  RelativeScattering rs(plan.grid, plan.packet);
  OddChannelStudy study;
  std::vector<double> w_eff;
  std::vector<complex> s;
  for (double w : plan.widths) {
    const BarrierSpec barrier{c, w, shape};
    const complex s_odd = rs.odd_channel_s(barrier);
    study.widths.push_back(w);
    study.deviations.push_back(std::abs(s_odd - 1.0));
    // With c = 0 the extrapolation variable is just the nominal width.
    w_eff.push_back(c > 0.0 ? effective_width(discretize(barrier, plan.grid), plan.grid) : w);
    s.push_back(s_odd);
  }
  if (s.size() < 3) throw ValidationError("odd_channel_study: need at least three widths");
  const complex s0 = neville_at_zero(w_eff, s);
  const complex s_narrow = neville_at_zero(std::span<const double>(w_eff).subspan(1),
                                           std::span<const complex>(s).subspan(1));
  study.extrapolated_deviation = std::abs(s0 - 1.0);
  study.residual = std::abs(s0 - s_narrow);
  return study;
}

}  // namespace flyqubit
