#include "poro/fem/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "poro/error.hpp"

namespace poro::fem {

const std::vector<TriangleQuadPoint>& triangle_rule_degree4() {
  static const std::vector<TriangleQuadPoint> rule = [] {
    const double a = 0.445948490915965, b = 1.0 - 2.0 * a, wa = 0.223381589678011;
    const double c = 0.091576213509771, d = 1.0 - 2.0 * c, wc = 0.109951743655322;
    return std::vector<TriangleQuadPoint>{{a, a, b, wa}, {a, b, a, wa}, {b, a, a, wa},
                                          {c, c, d, wc}, {c, d, c, wc}, {d, c, c, wc}};
  }();
  return rule;
}

std::vector<LineQuadPoint> gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: n must be positive");
  std::vector<LineQuadPoint> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    pts[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
  }
  return pts;
}

std::vector<TriangleQuadPoint> triangle_rule_collapsed(int n) {
  const auto g = gauss_legendre(n);
  std::vector<TriangleQuadPoint> rule;
  rule.reserve(g.size() * g.size());
  for (const auto& gx : g) {
    for (const auto& gy : g) {
      const double x = gx.s;
      const double y = gy.s * (1.0 - x);
      // Reference area 1/2, Jacobian (1 - x); weights normalized to sum one.
      rule.push_back({1.0 - x - y, x, y, 2.0 * gx.weight * gy.weight * (1.0 - x)});
    }
  }
  return rule;
}

}  // namespace poro::fem
