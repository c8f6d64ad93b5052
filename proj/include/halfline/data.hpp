#pragma once

// Gridded daily observations: CSV ingest/emit, train/test split by day, and a
// seeded synthetic field standing in for real surface-temperature data.
//
// CSV dialect: header `lon,lat,day,value`, one observation per row, `.` as the
// decimal point, `day` a nonnegative integer. Rows may come in any order;
// ingest sorts them by (day, lat, lon) and maps day to t = day - min(day).

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "halfline/gp.hpp"

namespace halfline::data {

struct GridSpec {
  int lon_count = 28;
  int lat_count = 29;
  double lon0 = -125.0;
  double lat0 = 31.0;
  double step = 1.0;
  int day_count = 8;

  std::size_t cells_per_day() const {
    return static_cast<std::size_t>(lon_count) * static_cast<std::size_t>(lat_count);
  }
  std::size_t total_points() const { return cells_per_day() * static_cast<std::size_t>(day_count); }

  /// Throws std::invalid_argument unless counts >= 1 and step > 0.
  void validate() const;
};

struct SplitSpec {
  int train_days = 7;
  int test_days = 1;
};

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& message);
  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct GriddedData {
  GridSpec grid;
  Dataset data;
};

GriddedData load_csv(const std::filesystem::path& path);
GriddedData parse_csv(const std::string& text);

/// Writes a dataset with two spatial coordinates and integer times. Values and
/// coordinates are printed in shortest round-trip form.
void write_csv(const std::filesystem::path& path, const Dataset& data);
std::string format_csv(const Dataset& data);

struct Split {
  Dataset train;
  Dataset test;
};

/// Points with day index < train_days go to train, the rest to test; order is
/// preserved within each part.
Split split_by_day(const GridSpec& grid, const Dataset& data, const SplitSpec& split);

/// value(lon, lat, day) = A sin(a lon + phi1) cos(b lat + phi2) + B day + C.
struct SyntheticField {
  double amplitude;
  double lon_freq;
  double lat_freq;
  double lon_phase;
  double lat_phase;
  double trend;
  double offset;

  /// Constants drawn from std::mt19937_64 seeded with `seed`.
  static SyntheticField from_seed(std::uint64_t seed);
  double operator()(double lon, double lat, double day) const;
};

/// Field from SyntheticField::from_seed(seed) sampled on the grid in
/// (day, lat, lon) order, plus N(0, noise_sigma^2) noise. The noise stream is
/// the same mt19937_64 engine continued after the constants, with Box-Muller
/// normals, so output depends only on (grid, seed, noise_sigma).
Dataset synthesize(const GridSpec& grid, std::uint64_t seed, double noise_sigma = 0.1);

}  // namespace halfline::data
