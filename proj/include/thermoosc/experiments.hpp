// Copyright 2026 The thermoosc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef THERMOOSC_EXPERIMENTS_HPP
#define THERMOOSC_EXPERIMENTS_HPP

#include <string>
#include <vector>

// Batch experiments behind the command-line tool. Each takes a JSON config
// and returns its data section (CSV or JSON) plus an optional JSON summary.
namespace thermoosc::experiments {

enum class Units { natural, si_display };

/// Throws ConfigError for anything but "natural" / "si-display".
Units parse_units(const std::string& name);

struct Result {
  std::string format;   ///< "csv" or "json"
  std::string data;
  std::string summary;  ///< JSON object text, empty when there is none
};

const std::vector<std::string>& experiment_names();

/// Throws ConfigError on unknown names or malformed configs; numerical
/// failures propagate as the library's error types.
Result run(const std::string& name, const std::string& config_text, Units units);

/// 17 significant digits, the C locale's shortest round-trip-safe form.
std::string format_double(double v);

// Natural-unit scales for display, with the energy unit taken as 1 eV.
inline constexpr double kPowerUnitWatt = 2.4341348e-4;      // eV^2 / hbar
inline constexpr double kRateUnitPerSecond = 1.5192674e15;  // eV / hbar
inline constexpr double kTimeUnitSecond = 6.582119569e-16;  // hbar / eV
inline constexpr double kVoltPerKelvin = 8.617333262e-5;    // k_B / e

}  // namespace thermoosc::experiments

#endif  // THERMOOSC_EXPERIMENTS_HPP
