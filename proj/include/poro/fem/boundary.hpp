#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <map>

namespace poro::fem {

using ScalarField = std::function<double(double x, double y)>;
using VectorField = std::function<std::array<double, 2>(double x, double y)>;
/// Traction t(x, n) given the point and the outward unit normal.
using TractionField = std::function<std::array<double, 2>(double x, double y, double nx, double ny)>;

enum class DisplacementCondition { Fixed, Traction };
enum class PressureCondition { Dirichlet, Robin, NoFlux };

/// Conditions on one boundary marker.
struct MarkerCondition {
  DisplacementCondition displacement = DisplacementCondition::Fixed;
  /// Dirichlet value for Fixed; zero when empty.
  VectorField displacement_value;
  /// Traction for Traction; zero when empty.
  TractionField traction;

  PressureCondition pressure = PressureCondition::NoFlux;
  /// Dirichlet value for Dirichlet; zero when empty.
  ScalarField pressure_value;
  /// Robin: (kappa/nu) grad p . n = conductance (exterior - p).
  double conductance = 0.0;
  double exterior_pressure = 0.0;
};

struct BoundarySpec {
  std::map<int, MarkerCondition> markers;

  /// Throws ConfigError for an unknown marker.
  const MarkerCondition& at(int marker) const;
  /// The same condition on every listed marker.
  static BoundarySpec uniform(const std::initializer_list<int>& markers, const MarkerCondition& c);
};

}  // namespace poro::fem
