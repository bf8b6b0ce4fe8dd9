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

#include "flyqubit/table_io.hpp"

#include <cstdio>
#include <fstream>

#include "flyqubit/error.hpp"

namespace flyqubit {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

template <typename... T>
void append_row(std::string& out, T... values) {
  bool first = true;
  ((out += (first ? "" : ","), out += format_double(values), first = false), ...);
  out += '\n';
}

}  // namespace

std::string sweep_csv(std::span<const SweepResult> rows) {
  std::string out = "ratio,entangling_power,stderr,max_concurrence\n";
  for (const SweepResult& r : rows) append_row(out, r.ratio, r.entangling_power, r.std_error, r.max_concurrence);
  return out;
}

std::string oracle_csv(std::span<const OracleRow> rows) {
  std::string out = "c_over_2k,phase_numeric,phase_analytic,abs_error,width_residual\n";
  for (const OracleRow& r : rows)
    append_row(out, r.c_over_2k, r.phase_numeric, r.phase_analytic, r.abs_error, r.width_residual);
  return out;
}

std::string fidelity_csv(std::span<const FidelityRow> rows) {
  std::string out = "delta_p,delta_p_over_c,fidelity,infidelity\n";
  for (const FidelityRow& r : rows) append_row(out, r.delta_p, r.delta_p_over_c, r.fidelity, r.infidelity);
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace flyqubit
