#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spincat/phase_point.hpp"

namespace spincat {

enum class Quadrature { q1 = 0, p1 = 1, q2 = 2, p2 = 3 };

std::string_view to_string(Quadrature q);
Quadrature parse_quadrature(std::string_view name);

struct GridAxis {
  Quadrature variable = Quadrature::q1;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double value(int i) const;
};

/// One or two swept quadratures; the others take the `fixed` values
/// (indexed q1, p1, q2, p2). Points are enumerated row-major: the first axis
/// is the outer loop.
struct GridSpec {
  std::vector<GridAxis> axes;
  std::array<double, 4> fixed{0.0, 0.0, 0.0, 0.0};

  /// A degenerate zero-axis grid holding exactly one point.
  static GridSpec single_point(std::array<double, 4> coordinates);

  void validate() const;
  std::size_t size() const;
  std::array<double, 4> coordinates(std::size_t index) const;
  PhasePoint point(std::size_t index) const;

 private:
  bool single_ = false;
};

struct SweepRecord {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
  double w = 0.0;
  double w2 = 0.0;
  double skew = 0.0;
  double budget = 0.0;
};

/// Records plus an echo of the full input configuration.
struct SweepResult {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<SweepRecord> records;
};

nlohmann::ordered_json grid_to_json(const GridSpec& grid);

}  // namespace spincat
