#include "halfline/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string_view>
#include <tuple>
#include <vector>

namespace halfline::data {

void GridSpec::validate() const {
  if (lon_count < 1 || lat_count < 1 || day_count < 1) {
    throw std::invalid_argument("grid counts must all be >= 1");
  }
  if (!(std::isfinite(step) && step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  if (!std::isfinite(lon0) || !std::isfinite(lat0)) {
    throw std::invalid_argument("grid origin must be finite");
  }
}

CsvError::CsvError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

constexpr std::string_view kHeader = "lon,lat,day,value";

struct Row {
  double lon;
  double lat;
  long long day;
  double value;
  std::size_t line;
};

double parse_double(std::string_view field, std::size_t line, const char* name) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw CsvError(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
  }
  return v;
}

long long parse_day(std::string_view field, std::size_t line) {
  long long v = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw CsvError(line, "day must be an integer, got '" + std::string(field) + "'");
  }
  if (v < 0) throw CsvError(line, "negative day " + std::to_string(v));
  return v;
}

// Uniform spacing of sorted unique coordinates; 0 when there is one value.
double infer_step(const std::vector<double>& u, const char* axis) {
  if (u.size() < 2) return 0.0;
  const double step = (u.back() - u.front()) / static_cast<double>(u.size() - 1);
  for (std::size_t i = 1; i < u.size(); ++i) {
    const double d = u[i] - u[i - 1];
    if (std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(step))) {
      throw CsvError(0, std::string("non-rectangular grid: irregular ") + axis + " spacing");
    }
  }
  return step;
}

std::vector<double> unique_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

GriddedData parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw CsvError(1, "missing header");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw CsvError(1, "expected header '" + std::string(kHeader) + "', got '" + line + "'");
  }

  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view sv(line);
    std::string_view fields[4];
    int nf = 0;
    for (;;) {
      const auto comma = sv.find(',');
      if (nf == 4) throw CsvError(lineno, "expected 4 fields");
      fields[nf++] = sv.substr(0, comma);
      if (comma == std::string_view::npos) break;
      sv.remove_prefix(comma + 1);
    }
    if (nf != 4) throw CsvError(lineno, "expected 4 fields, got " + std::to_string(nf));
    rows.push_back({parse_double(fields[0], lineno, "lon"), parse_double(fields[1], lineno, "lat"),
                    parse_day(fields[2], lineno), parse_double(fields[3], lineno, "value"),
                    lineno});
  }
  if (rows.empty()) throw CsvError(lineno, "no data rows");

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.day, a.lat, a.lon) < std::tie(b.day, b.lat, b.lon);
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (a.day == b.day && a.lat == b.lat && a.lon == b.lon) {
      throw CsvError(b.line, "duplicate observation for lon=" + format_double(b.lon) +
                                 " lat=" + format_double(b.lat) + " day=" + std::to_string(b.day));
    }
  }

  std::vector<double> lons, lats, days;
  for (const auto& r : rows) {
    lons.push_back(r.lon);
    lats.push_back(r.lat);
    days.push_back(static_cast<double>(r.day));
  }
  lons = unique_sorted(std::move(lons));
  lats = unique_sorted(std::move(lats));
  days = unique_sorted(std::move(days));
  if (lons.size() * lats.size() * days.size() != rows.size()) {
    throw CsvError(0, "non-rectangular grid: " + std::to_string(rows.size()) + " rows for " +
                          std::to_string(lons.size()) + " lon x " + std::to_string(lats.size()) +
                          " lat x " + std::to_string(days.size()) + " day cells");
  }
  for (std::size_t k = 1; k < days.size(); ++k) {
    if (days[k] != days[0] + static_cast<double>(k)) {
      throw CsvError(0, "days are not contiguous");
    }
  }
  const double lon_step = infer_step(lons, "lon");
  const double lat_step = infer_step(lats, "lat");
  if (lon_step > 0.0 && lat_step > 0.0 &&
      std::abs(lon_step - lat_step) > 1e-9 * std::max(1.0, lon_step)) {
    throw CsvError(0, "non-rectangular grid: lon step " + format_double(lon_step) +
                          " differs from lat step " + format_double(lat_step));
  }

  GriddedData out;
  out.grid.lon_count = static_cast<int>(lons.size());
  out.grid.lat_count = static_cast<int>(lats.size());
  out.grid.day_count = static_cast<int>(days.size());
  out.grid.lon0 = lons.front();
  out.grid.lat0 = lats.front();
  out.grid.step = lon_step > 0.0 ? lon_step : (lat_step > 0.0 ? lat_step : 1.0);

  const long long day0 = rows.front().day;
  out.data.points.reserve(rows.size());
  out.data.values.reserve(rows.size());
  for (const auto& r : rows) {
    out.data.points.push_back({{r.lon, r.lat}, static_cast<double>(r.day - day0)});
    out.data.values.push_back(r.value);
  }
  return out;
}

GriddedData load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(0, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::string format_csv(const Dataset& data) {
  std::string out(kHeader);
  out += '\n';
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    const auto& p = data.points[i];
    if (p.x.size() != 2) throw std::invalid_argument("CSV output needs 2 spatial coordinates");
    if (p.t != std::floor(p.t) || p.t < 0.0) {
      throw std::invalid_argument("CSV output needs nonnegative integer times");
    }
    out += format_double(p.x[0]);
    out += ',';
    out += format_double(p.x[1]);
    out += ',';
    out += std::to_string(static_cast<long long>(p.t));
    out += ',';
    out += format_double(data.values[i]);
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  const std::string text = format_csv(data);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Split split_by_day(const GridSpec& grid, const Dataset& data, const SplitSpec& split) {
  grid.validate();
  if (split.train_days < 1 || split.test_days < 1) {
    throw std::invalid_argument("split needs at least one training day and one test day");
  }
  if (split.train_days + split.test_days != grid.day_count) {
    throw std::invalid_argument("split " + std::to_string(split.train_days) + "+" +
                                std::to_string(split.test_days) + " days does not match the grid's " +
                                std::to_string(grid.day_count) + " days");
  }
  if (data.size() != grid.total_points() || data.values.size() != data.points.size()) {
    throw std::invalid_argument("dataset size " + std::to_string(data.size()) +
                                " does not match the grid (" + std::to_string(grid.total_points()) +
                                " points)");
  }
  Split out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    Dataset& part = data.points[i].t < split.train_days ? out.train : out.test;
    part.points.push_back(data.points[i]);
    part.values.push_back(data.values[i]);
  }
  const std::size_t per_day = grid.cells_per_day();
  if (out.train.size() != per_day * split.train_days || out.test.size() != per_day * split.test_days) {
    throw std::invalid_argument("dataset days do not match the grid's day indices");
  }
  return out;
}

namespace {

// Uniform on [0, 1) from the top 53 bits; unlike std::uniform_real_distribution
// this is identical on every standard library.
double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

SyntheticField SyntheticField::from_seed(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  SyntheticField f{};
  f.amplitude = 5.0 + 10.0 * uniform01(g);
  f.lon_freq = 0.1 + 0.3 * uniform01(g);
  f.lat_freq = 0.1 + 0.3 * uniform01(g);
  f.lon_phase = 2.0 * std::numbers::pi * uniform01(g);
  f.lat_phase = 2.0 * std::numbers::pi * uniform01(g);
  f.trend = -0.5 + uniform01(g);
  f.offset = 270.0 + 30.0 * uniform01(g);
  return f;
}

double SyntheticField::operator()(double lon, double lat, double day) const {
  return amplitude * std::sin(lon_freq * lon + lon_phase) * std::cos(lat_freq * lat + lat_phase) +
         trend * day + offset;
}

Dataset synthesize(const GridSpec& grid, std::uint64_t seed, double noise_sigma) {
  grid.validate();
  if (!(std::isfinite(noise_sigma) && noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise sigma must be finite and >= 0");
  }
  const SyntheticField field = SyntheticField::from_seed(seed);
  // Noise continues the stream after the seven field constants.
  std::mt19937_64 g(seed);
  g.discard(7);
  bool have_spare = false;
  double spare = 0.0;
  auto normal = [&]() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u1 = 1.0 - uniform01(g);  // (0, 1]
    const double u2 = uniform01(g);
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  };

  Dataset out;
  out.points.reserve(grid.total_points());
  out.values.reserve(grid.total_points());
  for (int d = 0; d < grid.day_count; ++d) {
    for (int j = 0; j < grid.lat_count; ++j) {
      const double lat = grid.lat0 + j * grid.step;
      for (int i = 0; i < grid.lon_count; ++i) {
        const double lon = grid.lon0 + i * grid.step;
        double v = field(lon, lat, d);
        if (noise_sigma > 0.0) v += noise_sigma * normal();
        out.points.push_back({{lon, lat}, static_cast<double>(d)});
        out.values.push_back(v);
      }
    }
  }
  return out;
}

}  // namespace halfline::data
