#pragma once

// Subcommands of the `halfline` tool. Each returns a process exit code:
// 0 success, 1 check failed (or computation failed), 2 usage or I/O error.
// Diagnostics go to `err` as a single line.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfline/data.hpp"

namespace halfline::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KernelArgs {
  double alpha = -0.5;
  double delta = 0.455;
  double omega = 0.7;
};

/// Parses "WxHxD" (lon count x lat count x day count).
data::GridSpec parse_grid(const std::string& text);

/// "name=lo:hi:n" with an optional ":log" suffix for geometric spacing.
struct AxisSpec {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  bool log_spaced = false;

  std::vector<double> values() const;
};
AxisSpec parse_axis(const std::string& text);

/// Flat key=value configuration. Recognised keys: alpha, delta, omega,
/// spatial_shape, spatial_length_scale, noise_variance, train_days. Blank lines
/// and lines starting with '#' are ignored; unknown keys are rejected.
struct Config {
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<double> omega;
  std::optional<double> spatial_shape;
  std::optional<double> spatial_length_scale;
  std::optional<double> noise_variance;
  std::optional<int> train_days;
};
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// Where observations come from: a CSV file, or the synthetic generator when
/// path == "synthetic".
struct DataSource {
  std::string path = "synthetic";
  data::GridSpec grid{};
  std::uint64_t seed = 42;
  double noise_sigma = 0.1;
};
data::GriddedData load_source(const DataSource& source);

struct KernelSliceOptions {
  KernelArgs kernel;
  double s = 1.0;
  double t_min = 0.0;
  double t_max = 10.0;
  int count = 101;
  std::string out;
};
int cmd_kernel_slice(const KernelSliceOptions& opt, std::ostream& out, std::ostream& err);

struct EigenCheckOptions {
  KernelArgs kernel;
  int max_order = 10;
};
int cmd_eigen_check(const EigenCheckOptions& opt, std::ostream& out, std::ostream& err);

struct OracleCheckOptions {
  KernelArgs kernel;
  double box_max = 20.0;
  int grid = 20;
  int max_terms = 50000;
};
int cmd_oracle_check(const OracleCheckOptions& opt, std::ostream& out, std::ostream& err);

struct FitPredictOptions {
  DataSource source;
  std::string config;
  std::string out;
};
int cmd_fit_predict(const FitPredictOptions& opt, std::ostream& out, std::ostream& err);

struct SweepOptions {
  DataSource source;
  std::string mode;  // "alpha-omega" or "delta-omega"
  std::vector<std::string> axes;
  std::string config;  // optional: spatial_shape, noise_variance, train_days
  std::string out;
};
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

struct SynthOptions {
  data::GridSpec grid{};
  std::uint64_t seed = 42;
  double noise_sigma = 0.1;
  std::string out;
};
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace halfline::cli
