#include "hxray/hxray.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char **argv) {
  CLI::App app{"X-ray transform toolkit for H-type groups"};
  app.require_subcommand(1, 1);
  std::string config, out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  bool emit = false, quiet = false;
  const char *names[] = {"selftest", "geodesic", "xray", "spectrum", "verify-slice", "reconstruct", "support-map"};
  const char *help[] = {"quick consistency checks",
                        "geodesic flow properties",
                        "X-ray transform, periodization and L1 bounds",
                        "averaged normal operator eigenvalues",
                        "Fourier slice identity",
                        "recovery of Fourier data from X-ray data",
                        "charge-frequency coverage maps"};
  for (int i = 0; i < 7; ++i) {
    CLI::App *sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config,-c", config, "JSON config file")->required();
    sub->add_option("--out,-o", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "RNG seed (overrides experiment.seed)");
    sub->add_option("--threads,-j", threads, "worker threads (overrides experiment.threads)")
        ->check(CLI::Range(1, 1024));
    sub->add_flag("--emit-matrices", emit, "write CSV artifacts");
    sub->add_flag("--quiet,-q", quiet, "only print the exit status line");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  CLI::App *sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  std::ifstream in(config, std::ios::binary);
  if (!in) {
    std::cerr << "hxray: io_error: cannot read " << config << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();

  hx_run_options opt;
  hx_run_options_init(&opt);
  if (!out_dir.empty()) opt.out_dir = out_dir.c_str();
  if (sub->count("--seed")) {
    opt.has_seed = 1;
    opt.seed = seed;
  }
  opt.threads = threads;
  opt.emit_matrices = emit ? 1 : 0;

  char *report = nullptr;
  int exit_code = 2;
  const hx_status st = hx_run(name.c_str(), ss.str().c_str(), &opt, &report, &exit_code);
  if (st != HX_OK) {
    std::cerr << "hxray: " << hx_last_error() << "\n";
    hx_string_free(report);
    return 2;
  }
  if (report && !quiet) std::cout << report;
  hx_string_free(report);
  if (exit_code != 0) std::cerr << "hxray: " << hx_last_error() << "\n";
  std::cerr << "hxray " << name << ": " << (exit_code == 0 ? "pass" : "fail") << " (exit " << exit_code << ")\n";
  return exit_code;
}
