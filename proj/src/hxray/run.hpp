#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hxray::run {

struct Options {
  std::string out_dir;  // empty keeps the config value
  bool has_seed = false;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 keeps the config value
  bool emit_matrices = false;
  bool write_files = true;
};

struct Outcome {
  int exit_code = 2;
  std::string report;      // JSON text; empty on config/usage errors
  std::string diagnostic;  // reason: message
  std::string report_path;
};

const std::vector<std::string> &subcommands();
// exit 0: all assertions pass, 1: some assertion failed, 2: config or usage error.
Outcome run(const std::string &subcommand, const std::string &config_text, const Options &opt);

}  // namespace hxray::run
