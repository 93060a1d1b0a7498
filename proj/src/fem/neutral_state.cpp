#include "poro/fem/neutral_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/direct.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::fem {

using namespace poro::linalg;

std::pair<Vector, Vector> neutral_state(const model::PoroSystem& sys) {
  const std::size_t np = sys.n_p();
  if (np > 0) {
    const Vector ones(np, 1.0);
    const Vector b1 = spmv(sys.b, ones);
    double m = 0.0;
    for (double v : b1) m = std::max(m, std::abs(v));
    if (m <= 1e-10 * sys.b.max_abs()) {
      throw SingularSystemError("neutral state: pressure problem has no Dirichlet or Robin data");
    }
  }
  Vector p0;
  try {
    p0 = ldl_solve(sys.b, sys.g.at(0.0));
  } catch (const FactorizationError& e) {
    throw SingularSystemError(std::string("neutral state: ") + e.what());
  }
  Vector rhs = sys.f.at(0.0);
  axpy(1.0, spmv_transpose(sys.d, p0), rhs);
  Vector u0 = ldl_solve(sys.a, rhs);
  return {std::move(u0), std::move(p0)};
}

void apply_neutral_state(model::PoroSystem& sys) {
  auto [u0, p0] = neutral_state(sys);
  sys.u0 = std::move(u0);
  sys.p0 = std::move(p0);
}

}  // namespace poro::fem
