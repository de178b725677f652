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

// thermoosc-cli <experiment> --config <path> [--output <path>] [--units natural|si-display]
//
// Writes the data section to <output> (stdout when omitted). With --output,
// the summary goes to <output>.summary.json and run metadata (config echo,
// version, wall time) to <output>.meta.json. Nothing is written on failure.
//
// Exit codes: 0 success, 2 validation error, 3 numerical error, 1 internal.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermoosc/thermoosc.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInternal = 1;

int report(int code, const std::string& kind, const std::string& message) {
  json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << '\n';
  return code;
}

int exit_code_for(tosc_status s) {
  switch (s) {
    case TOSC_OK: return 0;
    case TOSC_ERR_NUMERICAL:
    case TOSC_ERR_DEGENERATE: return kExitNumerical;
    case TOSC_ERR_INTERNAL: return kExitInternal;
    default: return kExitValidation;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return static_cast<bool>(in) || in.eof();
}

// Writes through a temporary sibling and renames, so readers never see a
// partial file.
bool write_atomically(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out) return false;
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> experiments = {"iv-sweep", "power-compare", "thermalize",
                                                "plasma", "perturb-check"};
  CLI::App app{"thermoelectric self-oscillation simulations"};
  app.set_version_flag("--version", std::string(tosc_version()));
  std::string experiment;
  std::string config_path;
  std::string output_path;
  std::string units = "natural";
  app.add_option("experiment", experiment, "iv-sweep | power-compare | thermalize | plasma | perturb-check")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--output", output_path, "data file (stdout when omitted)");
  app.add_option("--units", units, "natural | si-display")
      ->check(CLI::IsMember({"natural", "si-display"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(kExitValidation, "usage_error", e.what());
  }

  if (std::find(experiments.begin(), experiments.end(), experiment) == experiments.end()) {
    return report(kExitValidation, "config_error", "unknown experiment '" + experiment + "'");
  }
  std::string config_text;
  if (!read_file(config_path, config_text)) {
    return report(kExitValidation, "config_error", "cannot read config file '" + config_path + "'");
  }
  if (!output_path.empty()) {
    const fs::path parent = fs::absolute(fs::path(output_path)).parent_path();
    std::error_code ec;
    if (!fs::is_directory(parent, ec)) {
      return report(kExitValidation, "config_error",
                    "output directory '" + parent.string() + "' does not exist");
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  tosc_result* res = nullptr;
  const tosc_status st = tosc_run(experiment.c_str(), config_text.c_str(), units.c_str(), &res);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (st != TOSC_OK) {
    return report(exit_code_for(st), tosc_status_name(st), tosc_last_error());
  }
  const std::string data = tosc_result_data(res);
  const std::string summary = tosc_result_summary(res);
  const std::string format = tosc_result_format(res);
  tosc_result_destroy(res);

  if (output_path.empty()) {
    std::cout << data;
    return 0;
  }

  json meta{{"experiment", experiment},
            {"config", config_text},
            {"config_path", config_path},
            {"units", units},
            {"format", format},
            {"version", tosc_version()},
            {"wall_time_s", wall}};
  const fs::path out(output_path);
  fs::path meta_path = out;
  meta_path += ".meta.json";
  fs::path summary_path = out;
  summary_path += ".summary.json";
  if (!write_atomically(out, data)) {
    return report(kExitValidation, "io_error", "cannot write '" + output_path + "'");
  }
  if (!summary.empty() && !write_atomically(summary_path, summary)) {
    return report(kExitValidation, "io_error", "cannot write '" + summary_path.string() + "'");
  }
  if (!write_atomically(meta_path, meta.dump(2) + "\n")) {
    return report(kExitValidation, "io_error", "cannot write '" + meta_path.string() + "'");
  }
  return 0;
}
