#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "whi/config.hpp"
#include "whi/summary.hpp"
#include "whi/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;
constexpr int kNotConverged = 3;

constexpr const char* kOutEnv = "WAVEHOLTZ_OUT_DIR";

struct Options {
  std::string config;
  std::string out;
  int threads = 1;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::vector<std::string> csvs;
};

fs::path output_dir(const Options& o, const whi::RunConfig& c) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return c.output.dir;
}

whi::RunConfig load(const Options& o) {
  if (o.config.empty()) throw whi::ConfigError("--config is required");
  auto c = whi::RunConfig::load(o.config);
  if (o.seed) c.filter.seed = *o.seed;
  return c;
}

int run(const Options& o, bool single) {
  const auto config = load(o);
  if (single && config.sweep.omegas.size() != 1)
    throw whi::ConfigError("solve takes exactly one frequency; use sweep for several");
  const auto rows = whi::run_points(config, o.threads);
  const auto dir = output_dir(o, config);
  const auto files = whi::write_sweep(config, rows, dir, single || config.output.fields);

  bool all_converged = true;
  for (const auto& r : rows) {
    all_converged = all_converged && r.converged;
    std::printf("omega=%-10.6g %-11s n=%-6d iters=%-6d applications=%-7zu residual=%.3e %s%s%s\n", r.omega,
                whi::to_string(r.method).c_str(), r.n, r.iters, r.applications, r.final_residual,
                r.converged ? "converged" : "NOT CONVERGED", r.error.empty() ? "" : ": ", r.error.c_str());
  }
  std::printf("wrote %s\n", files.csv.string().c_str());
  return o.strict && !all_converged ? kNotConverged : kOk;
}

int report(const Options& o) {
  std::vector<fs::path> csvs(o.csvs.begin(), o.csvs.end());
  if (csvs.empty()) {
    const auto config = load(o);
    csvs.push_back(output_dir(o, config) / (config.sweep.name + ".csv"));
  }
  whi::report_summary(csvs, std::cout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WaveHoltz Helmholtz solver"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "run configuration (INI)");
  app.add_option("--out", o.out, std::string("output directory (overrides ") + kOutEnv + " and [output] dir)");
  app.add_option("--threads", o.threads, "worker threads for sweep points")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for the filter optimizer");
  app.add_flag("--strict", o.strict, "exit with 3 when any run does not converge");

  auto* solve = app.add_subcommand("solve", "solve at the single frequency of the config");
  auto* sweep = app.add_subcommand("sweep", "solve at every frequency of the config");
  auto* summary = app.add_subcommand("report", "summarize sweep CSVs");
  summary->add_option("csv", o.csvs, "CSV files (default: the sweep CSV of --config)");
  for (auto* sub : {solve, sweep, summary}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve) return run(o, true);
    if (*sweep) return run(o, false);
    return report(o);
  } catch (const whi::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
}
