#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace curvetrends {

// Command implementations behind the CLI binary. Each returns the process
// exit code: 0 success, 1 degraded simulate run (< 90% replications
// succeeded), 2 bad configuration or malformed input.

struct SimulateOptions {
  std::string config_path;
  std::optional<std::string> out_dir;  // overrides the config key
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int run_simulate_command(const SimulateOptions& options, std::ostream& log);

struct FitOptions {
  std::string input_path;
  std::string out_dir = ".";
  std::string mode = "fpca";          // fpca | panic
  std::string q = "auto";             // auto | nonnegative integer
  int basis_dimension = 51;
  int min_observations = 200;
  std::string rank_criterion = "bic";  // bic | hq (panic mode only)
  std::optional<std::uint64_t> seed;   // accepted for interface uniformity
  std::optional<int> threads;
};

int run_fit_command(const FitOptions& options, std::ostream& log);

struct RegressOptions {
  std::string trends_path;
  std::string factors_path;
  std::string out_dir = ".";
  bool difference_trends = true;  // regress trend increments (default pipeline)
};

int run_regress_command(const RegressOptions& options, std::ostream& log);

}  // namespace curvetrends
