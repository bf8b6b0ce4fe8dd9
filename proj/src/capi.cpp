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

#include "flyqubit/flyqubit.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "flyqubit/entanglement.hpp"
#include "flyqubit/error.hpp"
#include "flyqubit/oracle.hpp"
#include "flyqubit/physparams.hpp"
#include "flyqubit/table_io.hpp"

struct fq_gate {
  flyqubit::TwoQubitGate gate;
};

namespace {

using namespace flyqubit;

thread_local std::string g_last_error;

fq_status fail(fq_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body and maps exceptions onto status codes.
template <typename F>
fq_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return FQ_OK;
  } catch (const Error& e) {
    return fail(static_cast<fq_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FQ_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
void require_ptr(const T* p, const char* name) {
  if (p == nullptr) throw ValidationError(std::string(name) + " must not be NULL");
}

complex to_cpp(fq_complex z) { return {z.re, z.im}; }
fq_complex to_c(complex z) { return {z.real(), z.imag()}; }

GateFamily to_cpp(fq_family f) {
  switch (f) {
    case FQ_FAMILY_BOSON: return GateFamily::Boson;
    case FQ_FAMILY_FERMION: return GateFamily::Fermion;
  }
  throw ValidationError("unknown gate family code");
}

Coupling make_coupling(double c, int c_infinite) { return c_infinite ? Coupling::infinite() : Coupling::finite(c); }

void copy_text(const std::string& text, char* buf, std::size_t cap, std::size_t* required) {
  require_ptr(required, "required");
  *required = text.size() + 1;
  if (buf == nullptr && cap == 0) return;
  require_ptr(buf, "buf");
  if (cap < text.size() + 1) throw ValidationError("buffer too small; see *required");
  std::memcpy(buf, text.c_str(), text.size() + 1);
}

OraclePlan make_plan(const fq_oracle_config* cfg) {
  require_ptr(cfg, "config");
  OraclePreset preset;
  switch (cfg->preset) {
    case FQ_PRESET_FAST: preset = OraclePreset::Fast; break;
    case FQ_PRESET_ACCURATE: preset = OraclePreset::Accurate; break;
    default: throw ValidationError("unknown oracle preset code");
  }
  OraclePlan plan = make_oracle_plan(preset, cfg->k0, cfg->half_width_sigmas);
  if (cfg->widths != nullptr) {
    if (cfg->n_widths < 3) throw ValidationError("oracle: need at least three widths");
    plan.widths.assign(cfg->widths, cfg->widths + cfg->n_widths);
  }
  return plan;
}

BarrierShape shape_of(const fq_oracle_config* cfg) {
  require_ptr(cfg, "config");
  switch (cfg->shape) {
    case FQ_SHAPE_SQUARE: return BarrierShape::Square;
    case FQ_SHAPE_GAUSSIAN: return BarrierShape::Gaussian;
  }
  throw ValidationError("unknown barrier shape code");
}

PhysicalSetup to_cpp(const fq_setup* s) {
  require_ptr(s, "setup");
  PhysicalSetup out{s->mass_kg, s->a3d_m, s->omega_perp_rad_s, s->velocity_m_s};
  out.validate();
  return out;
}

fq_setup to_c(const PhysicalSetup& s) { return {s.mass, s.a3d, s.omega_perp, s.velocity}; }

fq_status make_gate(fq_gate** out, auto&& build) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = new fq_gate{build()};
  });
}

}  // namespace

extern "C" {

const char* fq_last_error(void) { return g_last_error.c_str(); }

const char* fq_version(void) { return FLYQUBIT_VERSION_STRING; }

fq_status fq_gate_family(fq_family family, double p_a, double p_b, double c, int c_infinite, fq_gate** out) {
  return make_gate(out, [&] { return family_gate(to_cpp(family), CollisionConfig(p_a, p_b, make_coupling(c, c_infinite))); });
}

fq_status fq_gate_spinless(double lambda0, double lambda1, double c, fq_gate** out) {
  return make_gate(out, [&] { return spinless_gate(SpinlessEncoding(lambda0, lambda1), Coupling::finite(c)); });
}

fq_status fq_gate_spinless_ideal(fq_gate** out) {
  return make_gate(out, [] { return spinless_gate_idealized(); });
}

fq_status fq_gate_from_matrix(const fq_complex matrix[16], fq_gate** out) {
  return make_gate(out, [&] {
    require_ptr(matrix, "matrix");
    Matrix4 m;
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = to_cpp(matrix[i]);
    return TwoQubitGate(m);
  });
}

void fq_gate_free(fq_gate* gate) { delete gate; }

fq_status fq_gate_matrix(const fq_gate* gate, fq_complex out[16]) {
  return guarded([&] {
    require_ptr(gate, "gate");
    require_ptr(out, "out");
    for (int i = 0; i < 16; ++i) out[i] = to_c(gate->gate(i / 4, i % 4));
  });
}

fq_status fq_gate_unitarity_residual(const fq_gate* gate, double* out) {
  return guarded([&] {
    require_ptr(gate, "gate");
    require_ptr(out, "out");
    *out = gate->gate.unitarity_residual();
  });
}

fq_status fq_gate_apply(const fq_gate* gate, const fq_complex in[4], fq_complex out[4]) {
  return guarded([&] {
    require_ptr(gate, "gate");
    require_ptr(in, "in");
    require_ptr(out, "out");
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = to_cpp(in[i]);
    const TwoQubitState s = apply(gate->gate, TwoQubitState(v));
    for (int i = 0; i < 4; ++i) out[i] = to_c(s[i]);
  });
}

fq_status fq_gate_to_json(const fq_gate* gate, char* buf, size_t cap, size_t* required) {
  return guarded([&] {
    require_ptr(gate, "gate");
    copy_text(to_json(gate->gate), buf, cap, required);
  });
}

fq_status fq_lieb_liniger_phase(double p2, double p1, double c, int c_infinite, fq_complex* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = to_c(lieb_liniger_phase(p2, p1, make_coupling(c, c_infinite)));
  });
}

fq_status fq_concurrence(const fq_complex state[4], double* out) {
  return guarded([&] {
    require_ptr(state, "state");
    require_ptr(out, "out");
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = to_cpp(state[i]);
    *out = concurrence(v);
  });
}

fq_status fq_makhlin_invariants(const fq_gate* gate, fq_makhlin* out) {
  return guarded([&] {
    require_ptr(gate, "gate");
    require_ptr(out, "out");
    const MakhlinInvariants inv = makhlin_invariants(gate->gate);
    *out = {to_c(inv.g1), inv.g2};
  });
}

fq_status fq_locally_equivalent(const fq_gate* x, const fq_gate* y, double tol, int* out) {
  return guarded([&] {
    require_ptr(x, "x");
    require_ptr(y, "y");
    require_ptr(out, "out");
    *out = locally_equivalent(x->gate, y->gate, tol) ? 1 : 0;
  });
}

fq_status fq_entangling_power(const fq_gate* gate, uint64_t samples, uint64_t seed, double* mean, double* std_error) {
  return guarded([&] {
    require_ptr(gate, "gate");
    require_ptr(mean, "mean");
    const EntanglingPower ep = entangling_power(gate->gate, samples, seed);
    *mean = ep.mean;
    if (std_error != nullptr) *std_error = ep.std_error;
  });
}

fq_status fq_optimality_sweep(const double* ratios, size_t n, uint64_t samples, uint64_t seed, fq_family family,
                              fq_sweep_row* rows) {
  return guarded([&] {
    if (n > 0) require_ptr(ratios, "ratios");
    require_ptr(rows, "rows");
    const std::vector<SweepResult> res =
        optimality_sweep(std::span<const double>(ratios, n), samples, seed, to_cpp(family));
    for (std::size_t i = 0; i < res.size(); ++i)
      rows[i] = {res[i].ratio, res[i].entangling_power, res[i].std_error, res[i].max_concurrence};
  });
}

fq_status fq_log_spaced(double lo, double hi, size_t n, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    const std::vector<double> v = log_spaced(lo, hi, n);
    std::copy(v.begin(), v.end(), out);
  });
}

void fq_oracle_config_default(fq_oracle_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = {FQ_PRESET_FAST, 1.0, kDefaultHalfWidthSigmas, nullptr, 0, FQ_SHAPE_SQUARE};
}

fq_status fq_delta_barrier(double k, double c, fq_complex* t, fq_complex* r) {
  return guarded([&] {
    require_ptr(t, "t");
    require_ptr(r, "r");
    const ScatteringAmplitudes a = delta_barrier_amplitudes(k, c);
    *t = to_c(a.t);
    *r = to_c(a.r);
  });
}

fq_status fq_oracle_even_phase(const fq_oracle_config* cfg, double c_over_2k, fq_oracle_row* out) {
  return guarded([&] {
    require_ptr(out, "out");
    const OracleRow row = compare_even_phase(make_plan(cfg), c_over_2k, shape_of(cfg));
    *out = {row.c_over_2k, row.phase_numeric,    row.phase_analytic,    row.abs_error,
            row.width_residual, row.unitarity_defect, row.monotone ? 1 : 0};
  });
}

fq_status fq_oracle_amplitudes(const fq_oracle_config* cfg, double c, fq_complex* t, fq_complex* r, double* residual) {
  return guarded([&] {
    require_ptr(t, "t");
    require_ptr(r, "r");
    const WidthExtrapolation ex = extrapolated_amplitudes(make_plan(cfg), c, shape_of(cfg));
    *t = to_c(ex.amplitudes.t);
    *r = to_c(ex.amplitudes.r);
    if (residual != nullptr) *residual = ex.residual;
  });
}

fq_status fq_oracle_odd_null(const fq_oracle_config* cfg, double c, fq_odd_study* out) {
  return guarded([&] {
    require_ptr(out, "out");
    const OraclePlan plan = make_plan(cfg);
    constexpr std::size_t kMax = sizeof(out->widths) / sizeof(out->widths[0]);
    if (plan.widths.size() > kMax) throw ValidationError("oracle: at most 16 widths");
    const OddChannelStudy s = odd_channel_study(plan, c, shape_of(cfg));
    out->extrapolated_deviation = s.extrapolated_deviation;
    out->residual = s.residual;
    out->n_widths = s.widths.size();
    std::copy(s.widths.begin(), s.widths.end(), out->widths);
    std::copy(s.deviations.begin(), s.deviations.end(), out->deviations);
  });
}

fq_status fq_spread_fidelity(fq_family family, double p_a, double p_b, double c, double delta_p,
                             unsigned quadrature_order, double* fidelity, double* infidelity) {
  return guarded([&] {
    require_ptr(fidelity, "fidelity");
    const SpreadFidelity f =
        spread_averaged_gate(CollisionConfig(p_a, p_b, Coupling::finite(c)), delta_p, to_cpp(family), quadrature_order);
    *fidelity = f.fidelity;
    if (infidelity != nullptr) *infidelity = f.infidelity;
  });
}

fq_status fq_setup_load(const char* path, fq_setup* out) {
  return guarded([&] {
    require_ptr(path, "path");
    require_ptr(out, "out");
    *out = to_c(load_setup(path));
  });
}

fq_status fq_setup_parse(const char* text, fq_setup* out) {
  return guarded([&] {
    require_ptr(text, "text");
    require_ptr(out, "out");
    *out = to_c(parse_setup(text));
  });
}

fq_status fq_setup_coupling(const fq_setup* setup, int corrected, double* c) {
  return guarded([&] {
    require_ptr(c, "c");
    *c = coupling_from_setup(to_cpp(setup), corrected ? CouplingFormula::Corrected : CouplingFormula::Uncorrected);
  });
}

fq_status fq_setup_wavenumber(const fq_setup* setup, double* p) {
  return guarded([&] {
    require_ptr(p, "p");
    *p = wavenumber_from_velocity(to_cpp(setup));
  });
}

fq_status fq_setup_optimal_velocity(const fq_setup* setup, double* v) {
  return guarded([&] {
    require_ptr(v, "v");
    *v = optimal_velocity(to_cpp(setup));
  });
}

fq_status fq_setup_report_json(const fq_setup* setup, char* buf, size_t cap, size_t* required) {
  return guarded([&] { copy_text(params_report_json(to_cpp(setup)), buf, cap, required); });
}

fq_status fq_sweep_csv(const fq_sweep_row* rows, size_t n, char* buf, size_t cap, size_t* required) {
  return guarded([&] {
    if (n > 0) require_ptr(rows, "rows");
    std::vector<SweepResult> v;
    for (std::size_t i = 0; i < n; ++i)
      v.push_back({rows[i].ratio, rows[i].entangling_power, rows[i].std_error, rows[i].max_concurrence});
    copy_text(sweep_csv(v), buf, cap, required);
  });
}

fq_status fq_oracle_csv(const fq_oracle_row* rows, size_t n, char* buf, size_t cap, size_t* required) {
  return guarded([&] {
    if (n > 0) require_ptr(rows, "rows");
    std::vector<OracleRow> v;
    for (std::size_t i = 0; i < n; ++i) {
      OracleRow r;
      r.c_over_2k = rows[i].c_over_2k;
      r.phase_numeric = rows[i].phase_numeric;
      r.phase_analytic = rows[i].phase_analytic;
      r.abs_error = rows[i].abs_error;
      r.width_residual = rows[i].width_residual;
      v.push_back(r);
    }
    copy_text(oracle_csv(v), buf, cap, required);
  });
}

fq_status fq_fidelity_csv(const fq_fidelity_row* rows, size_t n, char* buf, size_t cap, size_t* required) {
  return guarded([&] {
    if (n > 0) require_ptr(rows, "rows");
    std::vector<FidelityRow> v;
    for (std::size_t i = 0; i < n; ++i)
      v.push_back({rows[i].delta_p, rows[i].delta_p_over_c, rows[i].fidelity, rows[i].infidelity});
    copy_text(fidelity_csv(v), buf, cap, required);
  });
}

}  // extern "C"
