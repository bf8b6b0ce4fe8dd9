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

// Fixed-format CSV tables: fixed column order, %.17g numbers, LF endings.

#include <filesystem>
#include <span>
#include <string>

#include "flyqubit/entanglement.hpp"
#include "flyqubit/oracle.hpp"

namespace flyqubit {

struct FidelityRow {
  double delta_p = 0.0;
  double delta_p_over_c = 0.0;
  double fidelity = 1.0;
  double infidelity = 0.0;
};

/// %.17g, enough to round-trip a double.
std::string format_double(double x);

std::string sweep_csv(std::span<const SweepResult> rows);
std::string oracle_csv(std::span<const OracleRow> rows);
std::string fidelity_csv(std::span<const FidelityRow> rows);

/// Writes bytes as-is; throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace flyqubit
