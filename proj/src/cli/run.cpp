#include <CLI11.hpp>
#include <ostream>

#include "halfline/cli/commands.hpp"

namespace halfline::cli {

namespace {

void add_kernel_flags(CLI::App* app, KernelArgs& k) {
  app->add_option("--alpha", k.alpha, "Laguerre order alpha > -1")->capture_default_str();
  app->add_option("--delta", k.delta, "decay parameter in [0, 1/2)")->capture_default_str();
  app->add_option("--omega", k.omega, "eigenvalue ratio in (0, 1)")->capture_default_str();
}

// --data, --grid, --seed, --noise describe where observations come from.
void add_source_flags(CLI::App* app, DataSource& src, std::string& grid_text) {
  app->add_option("--data", src.path, "CSV path, or 'synthetic'")->capture_default_str();
  app->add_option("--grid", grid_text, "synthetic grid WxHxD (lon x lat x days)");
  app->add_option("--seed", src.seed, "synthetic seed")->capture_default_str();
  app->add_option("--noise", src.noise_sigma, "synthetic noise sigma")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Half-line Mercer kernels and space-time kriging", "halfline"};
  app.require_subcommand(1);

  KernelSliceOptions slice;
  auto* c_slice = app.add_subcommand("kernel-slice", "write K(t, s) for t on a uniform grid");
  add_kernel_flags(c_slice, slice.kernel);
  c_slice->add_option("--s", slice.s)->capture_default_str();
  c_slice->add_option("--t-min", slice.t_min)->capture_default_str();
  c_slice->add_option("--t-max", slice.t_max)->capture_default_str();
  c_slice->add_option("--count", slice.count)->capture_default_str();
  c_slice->add_option("--out", slice.out)->required();

  EigenCheckOptions eig;
  auto* c_eig = app.add_subcommand("eigen-check", "orthonormality residuals of the eigenfunctions");
  add_kernel_flags(c_eig, eig.kernel);
  c_eig->add_option("--max-order", eig.max_order)->capture_default_str();

  OracleCheckOptions oracle;
  auto* c_oracle = app.add_subcommand("oracle-check", "closed form against the Mercer series");
  add_kernel_flags(c_oracle, oracle.kernel);
  c_oracle->add_option("--box-max", oracle.box_max)->capture_default_str();
  c_oracle->add_option("--grid", oracle.grid, "lattice points per axis")->capture_default_str();
  c_oracle->add_option("--max-terms", oracle.max_terms)->capture_default_str();

  FitPredictOptions fitp;
  std::string fit_grid;
  auto* c_fit = app.add_subcommand("fit-predict", "fit on the training days, predict the rest");
  add_source_flags(c_fit, fitp.source, fit_grid);
  c_fit->add_option("--config", fitp.config)->required();
  c_fit->add_option("--out", fitp.out)->required();

  SweepOptions sweep;
  std::string sweep_grid;
  auto* c_sweep = app.add_subcommand("sweep", "RMSE over a parameter lattice");
  add_source_flags(c_sweep, sweep.source, sweep_grid);
  c_sweep->add_option("--mode", sweep.mode, "alpha-omega or delta-omega")->required();
  c_sweep->add_option("--axis", sweep.axes, "axis override name=lo:hi:n[:log]");
  c_sweep->add_option("--config", sweep.config);
  c_sweep->add_option("--out", sweep.out)->required();

  SynthOptions synth;
  std::string synth_grid;
  auto* c_synth = app.add_subcommand("synth", "write a synthetic dataset");
  c_synth->add_option("--grid", synth_grid, "WxHxD (lon x lat x days)");
  c_synth->add_option("--seed", synth.seed)->capture_default_str();
  c_synth->add_option("--noise", synth.noise_sigma)->capture_default_str();
  c_synth->add_option("--lon0", synth.grid.lon0)->capture_default_str();
  c_synth->add_option("--lat0", synth.grid.lat0)->capture_default_str();
  c_synth->add_option("--step", synth.grid.step)->capture_default_str();
  c_synth->add_option("--out", synth.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*c_slice) return cmd_kernel_slice(slice, out, err);
    if (*c_eig) return cmd_eigen_check(eig, out, err);
    if (*c_oracle) return cmd_oracle_check(oracle, out, err);
    if (*c_fit) {
      if (!fit_grid.empty()) fitp.source.grid = parse_grid(fit_grid);
      return cmd_fit_predict(fitp, out, err);
    }
    if (*c_sweep) {
      if (!sweep_grid.empty()) sweep.source.grid = parse_grid(sweep_grid);
      return cmd_sweep(sweep, out, err);
    }
    if (*c_synth) {
      if (!synth_grid.empty()) {
        const auto g = parse_grid(synth_grid);
        synth.grid.lon_count = g.lon_count;
        synth.grid.lat_count = g.lat_count;
        synth.grid.day_count = g.day_count;
      }
      return cmd_synth(synth, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace halfline::cli
