#pragma once

#include <utility>

#include "poro/model/poro_system.hpp"

namespace poro::fem {

using linalg::Vector;

/// Stationary state under the data at t = 0: B p0 = g(0), then
/// u0 = A^{-1}(f(0) + D^T p0). Throws SingularSystemError when B annihilates
/// constants (no Dirichlet or Robin pressure data anywhere).
std::pair<Vector, Vector> neutral_state(const model::PoroSystem& sys);

/// Replaces sys.u0, sys.p0 by the neutral state.
void apply_neutral_state(model::PoroSystem& sys);

}  // namespace poro::fem
