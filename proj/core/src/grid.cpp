#include "spincat/grid.hpp"

#include <cmath>

#include "spincat/errors.hpp"

namespace spincat {

std::string_view to_string(Quadrature q) {
  switch (q) {
    case Quadrature::q1: return "q1";
    case Quadrature::p1: return "p1";
    case Quadrature::q2: return "q2";
    case Quadrature::p2: return "p2";
  }
  return "?";
}

Quadrature parse_quadrature(std::string_view name) {
  if (name == "q1") return Quadrature::q1;
  if (name == "p1") return Quadrature::p1;
  if (name == "q2") return Quadrature::q2;
  if (name == "p2") return Quadrature::p2;
  throw InvalidArgument("unknown quadrature '" + std::string(name) + "' (expected q1, p1, q2, p2)");
}

double GridAxis::value(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

GridSpec GridSpec::single_point(std::array<double, 4> coordinates) {
  GridSpec g;
  g.fixed = coordinates;
  g.single_ = true;
  return g;
}

void GridSpec::validate() const {
  if (single_) {
    if (!axes.empty()) throw InvalidArgument("GridSpec: single-point grid cannot have axes");
  } else if (axes.empty() || axes.size() > 2) {
    throw InvalidArgument("GridSpec: need one or two swept axes");
  }
  for (const auto& a : axes) {
    if (a.count < 2) throw InvalidArgument("GridSpec: each axis needs count >= 2");
    if (!(a.min < a.max)) throw InvalidArgument("GridSpec: axis min must be < max");
  }
  if (axes.size() == 2 && axes[0].variable == axes[1].variable) {
    throw InvalidArgument("GridSpec: the two axes must sweep different quadratures");
  }
  for (double f : fixed)
    if (!std::isfinite(f)) throw InvalidArgument("GridSpec: non-finite fixed value");
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::array<double, 4> GridSpec::coordinates(std::size_t index) const {
  std::array<double, 4> c = fixed;
  if (axes.size() == 1) {
    c[static_cast<int>(axes[0].variable)] = axes[0].value(static_cast<int>(index));
  } else if (axes.size() == 2) {
    const auto inner = static_cast<std::size_t>(axes[1].count);
    c[static_cast<int>(axes[0].variable)] = axes[0].value(static_cast<int>(index / inner));
    c[static_cast<int>(axes[1].variable)] = axes[1].value(static_cast<int>(index % inner));
  }
  return c;
}

PhasePoint GridSpec::point(std::size_t index) const {
  const auto c = coordinates(index);
  return PhasePoint::from_quadratures(c[0], c[1], c[2], c[3]);
}

nlohmann::ordered_json grid_to_json(const GridSpec& grid) {
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const auto& a : grid.axes) {
    axes.push_back({{"variable", std::string(to_string(a.variable))},
                    {"min", a.min},
                    {"max", a.max},
                    {"count", a.count}});
  }
  return {{"axes", axes},
          {"fixed",
           {{"q1", grid.fixed[0]}, {"p1", grid.fixed[1]}, {"q2", grid.fixed[2]}, {"p2", grid.fixed[3]}}}};
}

}  // namespace spincat
