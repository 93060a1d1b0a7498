#pragma once

#include <vector>

namespace poro::fem {

/// Point in barycentric coordinates; weights sum to one (scale by the area).
struct TriangleQuadPoint {
  double l0, l1, l2;
  double weight;
};

/// Symmetric six-point rule, exact for polynomials of degree <= 4.
const std::vector<TriangleQuadPoint>& triangle_rule_degree4();

/// Collapsed (Duffy) tensor Gauss rule with n x n points, exact for degree
/// <= 2n - 2. Used for error norms.
std::vector<TriangleQuadPoint> triangle_rule_collapsed(int n);

struct LineQuadPoint {
  double s;  // in [0, 1]
  double weight;  // sums to one
};

/// n-point Gauss-Legendre on [0, 1].
std::vector<LineQuadPoint> gauss_legendre(int n);

}  // namespace poro::fem
