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

// flyqubit command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flyqubit/flyqubit.h"

namespace {

using nlohmann::json;

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// Carries a status code up to main.
struct CommandFailure {
  int code;
  std::string message;
};

void check(fq_status s) {
  if (s != FQ_OK) throw CommandFailure{static_cast<int>(s), fq_last_error()};
}

[[noreturn]] void usage_error(const std::string& msg) { throw CommandFailure{kExitUsage, msg}; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::string& command, const json& parameters, std::uint64_t seed) {
  return {{"command", command},
          {"parameters", parameters},
          {"seed", seed},
          {"tool_version", fq_version()},
          {"timestamp", utc_timestamp()}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CommandFailure{kExitIo, "cannot open '" + path + "' for writing"};
  out << content;
  out.close();
  if (!out) throw CommandFailure{kExitIo, "failed writing '" + path + "'"};
}

// JSON results embed the manifest.
void emit_json(json body, const json& man, const std::string& output) {
  body["manifest"] = man;
  const std::string text = body.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    write_file(output, text);
}

// CSV results get a <path>.manifest.json sidecar.
void emit_csv(const std::string& csv, const json& man, const std::string& output) {
  if (output.empty()) {
    std::cout << csv;
    return;
  }
  write_file(output, csv);
  write_file(output + ".manifest.json", man.dump(2) + "\n");
}

template <typename Fn>
std::string buffered(Fn&& fn) {
  std::size_t need = 0;
  check(fn(nullptr, 0, &need));
  std::string buf(need, '\0');
  check(fn(buf.data(), buf.size(), &need));
  buf.resize(need - 1);
  return buf;
}

json complex_json(fq_complex z) { return json::array({z.re, z.im}); }

fq_family family_from(const std::string& tag) {
  if (tag == "boson") return FQ_FAMILY_BOSON;
  if (tag == "fermion") return FQ_FAMILY_FERMION;
  usage_error("unknown family '" + tag + "' (expected boson or fermion)");
}

// ---- gate ----

struct GateArgs {
  std::string kind;
  double pa = 0.5;
  double pb = 0.5;
  double c = 1.0;
  bool c_infinite = false;
  double lambda0 = 0.001;
  double lambda1 = 1000.0;
  std::string output;
};

int run_gate(const GateArgs& a) {
  fq_gate* gate = nullptr;
  json params = {{"kind", a.kind}};
  if (a.kind == "boson" || a.kind == "fermion") {
    check(fq_gate_family(family_from(a.kind), a.pa, a.pb, a.c, a.c_infinite ? 1 : 0, &gate));
    params["pa"] = a.pa;
    params["pb"] = a.pb;
    params["c"] = a.c_infinite ? json("inf") : json(a.c);
  } else if (a.kind == "spinless") {
    check(fq_gate_spinless(a.lambda0, a.lambda1, a.c, &gate));
    params["lambda0"] = a.lambda0;
    params["lambda1"] = a.lambda1;
    params["c"] = a.c;
  } else if (a.kind == "spinless-ideal") {
    check(fq_gate_spinless_ideal(&gate));
  } else {
    usage_error("unknown gate kind '" + a.kind + "' (expected boson, fermion, spinless or spinless-ideal)");
  }
  std::unique_ptr<fq_gate, decltype(&fq_gate_free)> owner(gate, fq_gate_free);

  fq_complex m[16];
  check(fq_gate_matrix(gate, m));
  double residual = 0.0;
  check(fq_gate_unitarity_residual(gate, &residual));
  fq_makhlin inv{};
  check(fq_makhlin_invariants(gate, &inv));

  json matrix = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(complex_json(m[4 * r + c]));
    matrix.push_back(row);
  }
  static const char* kLabels[4] = {"00", "01", "10", "11"};
  json outputs = json::array();
  for (int b = 0; b < 4; ++b) {
    fq_complex in[4] = {};
    in[b] = {1.0, 0.0};
    fq_complex out[4];
    check(fq_gate_apply(gate, in, out));
    double conc = 0.0;
    check(fq_concurrence(out, &conc));
    json amps = json::array();
    for (const fq_complex& z : out) amps.push_back(complex_json(z));
    outputs.push_back({{"input", kLabels[b]}, {"output", amps}, {"concurrence", conc}});
  }
  json body = {{"basis_order", "00,01,10,11 (qubit A first; 0 = up, 1 = down)"},
               {"matrix", matrix},
               {"makhlin", {{"g1", complex_json(inv.g1)}, {"g2", inv.g2}}},
               {"unitarity_residual", residual},
               {"basis_outputs", outputs}};
  emit_json(body, manifest("gate", params, 0), a.output);
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::string family;
  double ratio_min = 0.01;
  double ratio_max = 100.0;
  std::size_t points = 41;
  std::vector<double> ratios;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string output;
};

int run_sweep(const SweepArgs& a) {
  const fq_family fam = family_from(a.family);
  std::vector<double> ratios = a.ratios;
  if (ratios.empty()) {
    if (a.points == 0) usage_error("empty ratio range");
    if (a.points == 1) {
      if (a.ratio_min != a.ratio_max) usage_error("a single point needs --ratio-min equal to --ratio-max");
      ratios = {a.ratio_min};
    } else {
      ratios.resize(a.points);
      check(fq_log_spaced(a.ratio_min, a.ratio_max, a.points, ratios.data()));
    }
  }
  std::vector<fq_sweep_row> rows(ratios.size());
  check(fq_optimality_sweep(ratios.data(), ratios.size(), a.samples, a.seed, fam, rows.data()));
  const std::string csv =
      buffered([&](char* b, std::size_t cap, std::size_t* need) { return fq_sweep_csv(rows.data(), rows.size(), b, cap, need); });
  const json params = {{"family", a.family}, {"ratios", ratios}, {"samples", a.samples}};
  emit_csv(csv, manifest("sweep", params, a.seed), a.output);
  return 0;
}

// ---- oracle ----

struct OracleArgs {
  std::vector<double> ratios;
  std::vector<double> widths;
  std::string preset = "fast";
  std::string shape = "square";
  double k0 = 1.0;
  double half_width_sigmas = 0.0;
  std::string output;
};

int run_oracle(const OracleArgs& a) {
  fq_oracle_config cfg;
  fq_oracle_config_default(&cfg);
  if (a.preset == "fast")
    cfg.preset = FQ_PRESET_FAST;
  else if (a.preset == "accurate")
    cfg.preset = FQ_PRESET_ACCURATE;
  else
    usage_error("unknown preset '" + a.preset + "' (expected fast or accurate)");
  if (a.shape == "square")
    cfg.shape = FQ_SHAPE_SQUARE;
  else if (a.shape == "gaussian")
    cfg.shape = FQ_SHAPE_GAUSSIAN;
  else
    usage_error("unknown shape '" + a.shape + "' (expected square or gaussian)");
  cfg.k0 = a.k0;
  if (a.half_width_sigmas > 0.0) cfg.half_width_sigmas = a.half_width_sigmas;
  if (!a.widths.empty()) {
    cfg.widths = a.widths.data();
    cfg.n_widths = a.widths.size();
  }
  std::vector<double> ratios = a.ratios;
  if (ratios.empty()) {
    ratios.resize(8);
    check(fq_log_spaced(0.1, 10.0, 8, ratios.data()));
  }

  std::vector<fq_oracle_row> rows(ratios.size());
  double worst_unitarity = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    check(fq_oracle_even_phase(&cfg, ratios[i], &rows[i]));
    worst_unitarity = std::max(worst_unitarity, rows[i].unitarity_defect);
    if (!rows[i].monotone)
      std::cerr << "warning: width convergence not monotone at c/2k = " << ratios[i] << "\n";
  }
  const std::string csv = buffered(
      [&](char* b, std::size_t cap, std::size_t* need) { return fq_oracle_csv(rows.data(), rows.size(), b, cap, need); });
  json params = {{"ratios", ratios},   {"preset", a.preset}, {"shape", a.shape},
                 {"k0", cfg.k0},       {"half_width_sigmas", cfg.half_width_sigmas}};
  params["widths"] = a.widths.empty() ? json("preset") : json(a.widths);
  emit_csv(csv, manifest("oracle", params, 0), a.output);
  if (worst_unitarity > 1e-6) {
    std::cerr << "error: extrapolated |t|^2 + |r|^2 misses 1 by " << worst_unitarity << "\n";
    return kExitNumerical;
  }
  return 0;
}

// ---- fidelity ----

struct FidelityArgs {
  std::string family;
  double ratio = 1.0;
  double c = 1.0;
  std::vector<double> dp_over_c = {0.01, 0.02, 0.04};
  unsigned order = 48;
  std::string output;
};

int run_fidelity(const FidelityArgs& a) {
  const fq_family fam = family_from(a.family);
  if (a.dp_over_c.empty()) usage_error("empty delta-p list");
  const double p = a.ratio * a.c;
  std::vector<fq_fidelity_row> rows;
  for (double x : a.dp_over_c) {
    fq_fidelity_row row{x * a.c, x, 0.0, 0.0};
    check(fq_spread_fidelity(fam, 0.5 * p, 0.5 * p, a.c, row.delta_p, a.order, &row.fidelity, &row.infidelity));
    rows.push_back(row);
  }
  const std::string csv = buffered(
      [&](char* b, std::size_t cap, std::size_t* need) { return fq_fidelity_csv(rows.data(), rows.size(), b, cap, need); });
  const json params = {{"family", a.family}, {"ratio", a.ratio}, {"c", a.c}, {"delta_p_over_c", a.dp_over_c},
                       {"quadrature_order", a.order}};
  emit_csv(csv, manifest("fidelity", params, 0), a.output);
  return 0;
}

// ---- params ----

struct ParamsArgs {
  std::string config;
  std::string output;
};

int run_params(const ParamsArgs& a) {
  fq_setup setup{};
  check(fq_setup_load(a.config.c_str(), &setup));
  const std::string report = buffered(
      [&](char* b, std::size_t cap, std::size_t* need) { return fq_setup_report_json(&setup, b, cap, need); });
  const json params = {{"config", a.config}};
  emit_json(json::parse(report), manifest("params", params, 0), a.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flyqubit: two-qubit gates from 1D contact scattering"};
  app.set_version_flag("--version", std::string(fq_version()));
  app.require_subcommand(1);

  GateArgs gate;
  auto* g = app.add_subcommand("gate", "Dump a gate, its invariants and basis-input concurrences (JSON)");
  g->add_option("kind", gate.kind, "boson | fermion | spinless | spinless-ideal")->required();
  g->add_option("--pa", gate.pa, "right-mover wavenumber");
  g->add_option("--pb", gate.pb, "left-mover wavenumber");
  g->add_option("--c", gate.c, "contact coupling");
  g->add_flag("--c-inf", gate.c_infinite, "hard-core limit");
  g->add_option("--lambda0", gate.lambda0, "spinless encoding |0> wavenumber");
  g->add_option("--lambda1", gate.lambda1, "spinless encoding |1> wavenumber");
  g->add_option("--output", gate.output, "write JSON here instead of stdout");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Entangling power along (p_a + p_b) / c (CSV)");
  s->add_option("family", sweep.family, "boson | fermion")->required();
  s->add_option("--ratio-min", sweep.ratio_min);
  s->add_option("--ratio-max", sweep.ratio_max);
  s->add_option("--points", sweep.points, "log-spaced points between min and max");
  s->add_option("--ratios", sweep.ratios, "explicit increasing list")->delimiter(',');
  s->add_option("--samples", sweep.samples, "Monte-Carlo samples per point");
  s->add_option("--seed", sweep.seed);
  s->add_option("--output", sweep.output);

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Wavepacket check of the two-body phase (CSV)");
  o->add_option("--ratios", oracle.ratios, "c/2k values")->delimiter(',');
  o->add_option("--widths", oracle.widths, "decreasing barrier widths")->delimiter(',');
  o->add_option("--preset", oracle.preset, "fast | accurate");
  o->add_option("--shape", oracle.shape, "square | gaussian");
  o->add_option("--k0", oracle.k0, "packet wavenumber");
  o->add_option("--half-width-sigmas", oracle.half_width_sigmas, "domain half width in packet widths");
  o->add_option("--output", oracle.output);

  FidelityArgs fid;
  auto* f = app.add_subcommand("fidelity", "Gate fidelity under a Gaussian momentum spread (CSV)");
  f->add_option("family", fid.family, "boson | fermion")->required();
  f->add_option("--ratio", fid.ratio, "(p_a + p_b) / c");
  f->add_option("--c", fid.c);
  f->add_option("--delta-p-over-c", fid.dp_over_c)->delimiter(',');
  f->add_option("--order", fid.order, "Gauss-Hermite order");
  f->add_option("--output", fid.output);

  ParamsArgs par;
  auto* p = app.add_subcommand("params", "Coupling and wavenumbers from lab parameters (JSON)");
  p->add_option("config", par.config, "key=value setup file")->required();
  p->add_option("--output", par.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (g->parsed()) return run_gate(gate);
    if (s->parsed()) return run_sweep(sweep);
    if (o->parsed()) return run_oracle(oracle);
    if (f->parsed()) return run_fidelity(fid);
    if (p->parsed()) return run_params(par);
  } catch (const CommandFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code == 0 ? kExitInternal : e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
