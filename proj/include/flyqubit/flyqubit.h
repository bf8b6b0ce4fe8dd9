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

#ifndef FLYQUBIT_FLYQUBIT_H
#define FLYQUBIT_FLYQUBIT_H

/* C interface to the flyqubit library.
 *
 * Every function returns an fq_status. On failure fq_last_error() gives a
 * message for the calling thread, valid until that thread's next call.
 * Outputs are written only on success. Natural units hbar = 2m = 1 apply
 * everywhere except the fq_setup functions, which work in SI.
 *
 * Functions that produce text take (buf, cap, required): *required receives
 * the byte count including the terminating NUL, and the text is copied only
 * if cap is large enough (FQ_ERR_VALIDATION otherwise). Passing buf = NULL
 * and cap = 0 queries the size.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(FLYQUBIT_BUILDING_LIBRARY)
#define FQ_API __attribute__((visibility("default")))
#else
#define FQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fq_status {
  FQ_OK = 0,
  FQ_ERR_INTERNAL = 1,
  FQ_ERR_VALIDATION = 2,
  FQ_ERR_NUMERICAL = 3,
  FQ_ERR_IO = 4
} fq_status;

typedef enum fq_family { FQ_FAMILY_BOSON = 0, FQ_FAMILY_FERMION = 1 } fq_family;
typedef enum fq_preset { FQ_PRESET_FAST = 0, FQ_PRESET_ACCURATE = 1 } fq_preset;
typedef enum fq_shape { FQ_SHAPE_SQUARE = 0, FQ_SHAPE_GAUSSIAN = 1 } fq_shape;

typedef struct fq_complex {
  double re;
  double im;
} fq_complex;

typedef struct fq_gate fq_gate;

FQ_API const char* fq_last_error(void);
FQ_API const char* fq_version(void);

/* ---- gates ---- */

/* Spin-carrying boson or fermion gate. c_infinite != 0 selects the hard-core
 * limit and ignores c. */
FQ_API fq_status fq_gate_family(fq_family family, double p_a, double p_b, double c, int c_infinite, fq_gate** out);
/* Exact diagonal gate of the momentum-magnitude encoding. */
FQ_API fq_status fq_gate_spinless(double lambda0, double lambda1, double c, fq_gate** out);
FQ_API fq_status fq_gate_spinless_ideal(fq_gate** out);
/* Row-major 4x4; rejected unless unitary to 1e-12. */
FQ_API fq_status fq_gate_from_matrix(const fq_complex matrix[16], fq_gate** out);
FQ_API void fq_gate_free(fq_gate* gate);

FQ_API fq_status fq_gate_matrix(const fq_gate* gate, fq_complex out[16]);
FQ_API fq_status fq_gate_unitarity_residual(const fq_gate* gate, double* out);
/* No renormalization; the input must have norm 1 to 1e-12. */
FQ_API fq_status fq_gate_apply(const fq_gate* gate, const fq_complex in[4], fq_complex out[4]);
FQ_API fq_status fq_gate_to_json(const fq_gate* gate, char* buf, size_t cap, size_t* required);

FQ_API fq_status fq_lieb_liniger_phase(double p2, double p1, double c, int c_infinite, fq_complex* out);

/* ---- entanglement ---- */

typedef struct fq_makhlin {
  fq_complex g1;
  double g2;
} fq_makhlin;

typedef struct fq_sweep_row {
  double ratio;
  double entangling_power;
  double std_error;
  double max_concurrence;
} fq_sweep_row;

FQ_API fq_status fq_concurrence(const fq_complex state[4], double* out);
FQ_API fq_status fq_makhlin_invariants(const fq_gate* gate, fq_makhlin* out);
FQ_API fq_status fq_locally_equivalent(const fq_gate* x, const fq_gate* y, double tol, int* out);
FQ_API fq_status fq_entangling_power(const fq_gate* gate, uint64_t samples, uint64_t seed, double* mean,
                                     double* std_error);
/* rows must hold n entries. */
FQ_API fq_status fq_optimality_sweep(const double* ratios, size_t n, uint64_t samples, uint64_t seed,
                                     fq_family family, fq_sweep_row* rows);
FQ_API fq_status fq_log_spaced(double lo, double hi, size_t n, double* out);

/* ---- wavepacket oracle ---- */

typedef struct fq_oracle_config {
  fq_preset preset;
  double k0;
  double half_width_sigmas;
  const double* widths; /* optional override, decreasing; NULL for the preset ladder */
  size_t n_widths;
  fq_shape shape;
} fq_oracle_config;

typedef struct fq_oracle_row {
  double c_over_2k;
  double phase_numeric;
  double phase_analytic;
  double abs_error;
  double width_residual;
  double unitarity_defect;
  int monotone;
} fq_oracle_row;

typedef struct fq_odd_study {
  double extrapolated_deviation;
  double residual;
  size_t n_widths;
  double widths[16];
  double deviations[16];
} fq_odd_study;

/* fast preset, k0 = 1, default half width, preset widths, square barriers. */
FQ_API void fq_oracle_config_default(fq_oracle_config* cfg);
/* Closed-form t and r of -psi'' + c delta psi = k^2 psi. */
FQ_API fq_status fq_delta_barrier(double k, double c, fq_complex* t, fq_complex* r);
FQ_API fq_status fq_oracle_even_phase(const fq_oracle_config* cfg, double c_over_2k, fq_oracle_row* out);
/* Width-extrapolated t and r for barrier area c. */
FQ_API fq_status fq_oracle_amplitudes(const fq_oracle_config* cfg, double c, fq_complex* t, fq_complex* r,
                                      double* residual);
FQ_API fq_status fq_oracle_odd_null(const fq_oracle_config* cfg, double c, fq_odd_study* out);

/* ---- momentum spread ---- */

FQ_API fq_status fq_spread_fidelity(fq_family family, double p_a, double p_b, double c, double delta_p,
                                    unsigned quadrature_order, double* fidelity, double* infidelity);

typedef struct fq_fidelity_row {
  double delta_p;
  double delta_p_over_c;
  double fidelity;
  double infidelity;
} fq_fidelity_row;

/* ---- laboratory parameters (SI) ---- */

typedef struct fq_setup {
  double mass_kg;
  double a3d_m;
  double omega_perp_rad_s;
  double velocity_m_s;
} fq_setup;

FQ_API fq_status fq_setup_load(const char* path, fq_setup* out);
FQ_API fq_status fq_setup_parse(const char* text, fq_setup* out);
/* corrected != 0 applies the confinement correction. Result in 1/m. */
FQ_API fq_status fq_setup_coupling(const fq_setup* setup, int corrected, double* c);
/* Per-atom wavenumber m v / hbar in 1/m. */
FQ_API fq_status fq_setup_wavenumber(const fq_setup* setup, double* p);
FQ_API fq_status fq_setup_optimal_velocity(const fq_setup* setup, double* v);
FQ_API fq_status fq_setup_report_json(const fq_setup* setup, char* buf, size_t cap, size_t* required);

/* ---- tables ---- */

FQ_API fq_status fq_sweep_csv(const fq_sweep_row* rows, size_t n, char* buf, size_t cap, size_t* required);
FQ_API fq_status fq_oracle_csv(const fq_oracle_row* rows, size_t n, char* buf, size_t cap, size_t* required);
FQ_API fq_status fq_fidelity_csv(const fq_fidelity_row* rows, size_t n, char* buf, size_t cap, size_t* required);

#ifdef __cplusplus
}
#endif

#endif /* FLYQUBIT_FLYQUBIT_H */
