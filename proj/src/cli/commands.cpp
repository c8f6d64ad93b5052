#include "halfline/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "halfline/gp.hpp"
#include "halfline/kernel.hpp"
#include "halfline/mercer.hpp"
#include "halfline/quadrature.hpp"

namespace halfline::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("invalid " + what + " '" + s + "'");
  }
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("invalid " + what + " '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

HalfLineParams make_params(const KernelArgs& k) {
  try {
    return HalfLineParams(k.alpha, k.delta, k.omega);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw UsageError("--out is required");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write '" + path + "'");
  return f;
}

// Runs a command body, mapping exceptions onto the exit-code contract.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const data::CsvError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const linalg::FactorizationError& e) {
    err << "error: " << e.what() << "; try a larger noise_variance\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

GaussianParams spatial_from(const Config& c, double fallback_shape) {
  if (c.spatial_shape && c.spatial_length_scale) {
    throw UsageError("config sets both spatial_shape and spatial_length_scale");
  }
  if (c.spatial_length_scale) return GaussianParams::from_length_scale(*c.spatial_length_scale);
  return GaussianParams(c.spatial_shape.value_or(fallback_shape));
}

struct FitOutcome {
  std::size_t train_size = 0;
  std::vector<double> predicted;
  std::vector<double> observed;
  double rmse;
};

FitOutcome fit_and_score(const ProductKernelParams& kernel, const data::GriddedData& gd,
                         int train_days, double noise) {
  const int days = gd.grid.day_count;
  if (train_days < 1 || train_days > days) {
    throw UsageError("train_days must be in [1, " + std::to_string(days) + "], got " +
                     std::to_string(train_days));
  }
  Dataset train;
  Dataset test;
  if (train_days == days) {
    // No held-out day: score the interpolation of the training data itself.
    train = gd.data;
    test = gd.data;
  } else {
    auto split = data::split_by_day(gd.grid, gd.data, {train_days, days - train_days});
    train = std::move(split.train);
    test = std::move(split.test);
  }
  FitOutcome out;
  out.train_size = train.size();
  const auto model = fit(kernel, std::move(train), noise);
  out.predicted = predict_mean(model, test.points);
  out.observed = test.values;
  out.rmse = rmse(out.predicted, out.observed);
  return out;
}

}  // namespace

data::GridSpec parse_grid(const std::string& text) {
  data::GridSpec g;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == 'x' || c == 'X') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw UsageError("grid must look like WxHxD, got '" + text + "'");
  g.lon_count = to_int(parts[0], "grid width");
  g.lat_count = to_int(parts[1], "grid height");
  g.day_count = to_int(parts[2], "grid days");
  if (g.lon_count < 1 || g.lat_count < 1 || g.day_count < 1) {
    throw UsageError("grid counts must be >= 1, got '" + text + "'");
  }
  return g;
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    v[i] = log_spaced ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  if (count > 1) v.back() = hi;
  return v;
}

AxisSpec parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("axis must look like name=lo:hi:n, got '" + text + "'");
  AxisSpec a;
  a.name = text.substr(0, eq);
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 4 && parts[3] == "log") {
    a.log_spaced = true;
    parts.pop_back();
  }
  if (parts.size() != 3) throw UsageError("axis must look like name=lo:hi:n[:log], got '" + text + "'");
  a.lo = to_double(parts[0], "axis lower bound");
  a.hi = to_double(parts[1], "axis upper bound");
  a.count = to_int(parts[2], "axis count");
  if (a.count < 1) throw UsageError("axis count must be >= 1");
  if (a.count > 1 && !(a.lo < a.hi)) throw UsageError("axis '" + a.name + "' needs lo < hi");
  if (a.log_spaced && !(a.lo > 0.0)) throw UsageError("log-spaced axis needs lo > 0");
  return a;
}

Config parse_config(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "alpha") c.alpha = to_double(value, key);
    else if (key == "delta") c.delta = to_double(value, key);
    else if (key == "omega") c.omega = to_double(value, key);
    else if (key == "spatial_shape") c.spatial_shape = to_double(value, key);
    else if (key == "spatial_length_scale") c.spatial_length_scale = to_double(value, key);
    else if (key == "noise_variance") c.noise_variance = to_double(value, key);
    else if (key == "train_days") c.train_days = to_int(value, key);
    else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

data::GriddedData load_source(const DataSource& source) {
  if (source.path == "synthetic") {
    source.grid.validate();
    return {source.grid, data::synthesize(source.grid, source.seed, source.noise_sigma)};
  }
  return data::load_csv(source.path);
}

int cmd_kernel_slice(const KernelSliceOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto params = make_params(opt.kernel);
    if (opt.count < 2) throw UsageError("count must be >= 2");
    if (!(opt.t_min < opt.t_max)) throw UsageError("t-min must be < t-max");
    if (opt.t_min < 0.0 || opt.s < 0.0) throw UsageError("t and s must be >= 0");
    auto f = open_output(opt.out);
    f << "t,K\n";
    for (int i = 0; i < opt.count; ++i) {
      const double t = i + 1 == opt.count
                           ? opt.t_max
                           : opt.t_min + (opt.t_max - opt.t_min) * i / (opt.count - 1);
      f << fmt(t) << ',' << fmt(kernel_value(params, t, opt.s)) << '\n';
    }
    out << "wrote " << opt.count << " rows to " << opt.out << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_eigen_check(const EigenCheckOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto params = make_params(opt.kernel);
    if (opt.max_order < 0) throw UsageError("max-order must be >= 0");
    const auto r = orthonormality_residuals(params, opt.max_order);
    const int m = opt.max_order + 1;
    double worst = 0.0;
    out << std::scientific << std::setprecision(3);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const double v = r[a * m + b];
        worst = std::max(worst, std::abs(v));
        out << (b ? " " : "") << std::setw(10) << v;
      }
      out << '\n';
    }
    out << "max |residual| = " << worst << '\n';
    out << std::defaultfloat;
    return static_cast<int>(worst <= 1e-6 ? kSuccess : kCheckFailed);
  });
}

int cmd_oracle_check(const OracleCheckOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto params = make_params(opt.kernel);
    if (!(opt.box_max > 0.0 && opt.box_max <= 50.0)) throw UsageError("box-max must be in (0, 50]");
    if (opt.grid < 1) throw UsageError("grid must be >= 1");
    const MercerTruncation trunc(opt.max_terms, 1e-14, TailMode::relative);
    std::vector<double> ts(opt.grid);
    for (int i = 0; i < opt.grid; ++i) {
      ts[i] = opt.grid == 1 ? 0.0 : opt.box_max * i / (opt.grid - 1);
    }
    double worst = 0.0;
    int failures = 0;
    for (double t : ts) {
      for (double s : ts) {
        const auto m = kernel_mercer_extended(params, trunc, t, s);
        if (!m.converged) {
          ++failures;
          err << "oracle did not converge at t=" << fmt(t) << " s=" << fmt(s) << " after "
              << m.terms_used << " terms\n";
          continue;
        }
        const double rel = std::abs(std::expm1(kernel_log_value(params, t, s) - m.log_value));
        worst = std::max(worst, rel);
      }
    }
    out << "points " << ts.size() * ts.size() << ", max relative error " << std::scientific
        << std::setprecision(3) << worst << std::defaultfloat << '\n';
    return static_cast<int>(failures == 0 && worst <= 1e-8 ? kSuccess : kCheckFailed);
  });
}

int cmd_fit_predict(const FitPredictOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.config.empty()) throw UsageError("--config is required");
    const Config cfg = load_config(opt.config);
    for (const auto& [key, present] :
         {std::pair{"alpha", cfg.alpha.has_value()}, {"delta", cfg.delta.has_value()},
          {"omega", cfg.omega.has_value()},
          {"spatial_shape", cfg.spatial_shape.has_value() || cfg.spatial_length_scale.has_value()},
          {"train_days", cfg.train_days.has_value()}}) {
      if (!present) throw UsageError(std::string("config is missing required key '") + key + "'");
    }
    const auto temporal = make_params({*cfg.alpha, *cfg.delta, *cfg.omega});
    const ProductKernelParams kernel{spatial_from(cfg, 0.01), temporal};
    const double noise = cfg.noise_variance.value_or(1e-8);
    auto f = open_output(opt.out);

    const auto gd = load_source(opt.source);
    const auto result = fit_and_score(kernel, gd, *cfg.train_days, noise);

    // Test points are the trailing days (or everything when training on all days).
    const std::size_t first = gd.data.size() - result.observed.size();
    f << "lon,lat,day,observed,predicted\n";
    for (std::size_t i = 0; i < result.observed.size(); ++i) {
      const auto& p = gd.data.points[first + i];
      f << fmt(p.x[0]) << ',' << fmt(p.x[1]) << ',' << static_cast<long long>(p.t) << ','
        << fmt(result.observed[i]) << ',' << fmt(result.predicted[i]) << '\n';
    }
    out << "rmse " << fmt(result.rmse) << " (train " << result.train_size << " points, test "
        << result.observed.size() << " points)\n";
    return static_cast<int>(kSuccess);
  });
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.mode != "alpha-omega" && opt.mode != "delta-omega") {
      throw UsageError("mode must be alpha-omega or delta-omega, got '" + opt.mode + "'");
    }
    const bool alpha_mode = opt.mode == "alpha-omega";
    AxisSpec first = alpha_mode ? AxisSpec{"alpha", -0.9, 3.0, 8, false}
                                : AxisSpec{"delta", 0.01, 0.49, 8, false};
    AxisSpec omega{"omega", 0.1, 0.95, 10, true};
    for (const auto& text : opt.axes) {
      const auto a = parse_axis(text);
      if (a.name == "omega") omega = a;
      else if (a.name == first.name) first = a;
      else throw UsageError("axis '" + a.name + "' is not swept in " + opt.mode + " mode");
    }

    // Every lattice cell is validated before any fitting.
    struct Cell {
      double p1;
      double p2;
      HalfLineParams params;
    };
    std::vector<Cell> cells;
    for (double v : first.values()) {
      for (double w : omega.values()) {
        const KernelArgs k = alpha_mode ? KernelArgs{v, HalfLineParams::balanced_delta(w), w}
                                        : KernelArgs{0.0, v, w};
        cells.push_back({v, w, make_params(k)});
      }
    }

    Config cfg;
    if (!opt.config.empty()) cfg = load_config(opt.config);
    const GaussianParams spatial = spatial_from(cfg, 0.01);
    const double noise = cfg.noise_variance.value_or(1e-8);
    auto f = open_output(opt.out);
    const auto gd = load_source(opt.source);
    const int train_days = cfg.train_days.value_or(std::max(1, gd.grid.day_count - 1));

    f << "p1,p2,rmse\n";
    int failed = 0;
    for (const auto& c : cells) {
      std::string cell;
      try {
        const auto r = fit_and_score({spatial, c.params}, gd, train_days, noise);
        cell = std::isfinite(r.rmse) ? fmt(r.rmse) : "failed";
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        cell = "failed";
        err << "cell " << first.name << "=" << fmt(c.p1) << " omega=" << fmt(c.p2)
            << " failed: " << e.what() << '\n';
      }
      failed += cell == "failed";
      f << fmt(c.p1) << ',' << fmt(c.p2) << ',' << cell << '\n';
    }
    out << "swept " << cells.size() << " cells (" << failed << " failed) into " << opt.out << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    opt.grid.validate();
    auto f = open_output(opt.out);
    const auto d = data::synthesize(opt.grid, opt.seed, opt.noise_sigma);
    f << data::format_csv(d);
    out << "wrote " << d.size() << " rows to " << opt.out << '\n';
    return static_cast<int>(kSuccess);
  });
}

}  // namespace halfline::cli
