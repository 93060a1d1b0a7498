#pragma once

#include "poro/model/poro_system.hpp"

namespace poro::model {

/// Three displacement and one pressure unknown:
///   A = (2 - sqrt 2)^{-1} tridiag(-1, 2, -1),  B = C = [1],
///   D = sqrt(omega_tilde) / 3 [2 1 2],  f(t) = (1, 1, 1),  g(t) = sin t,
///   p0 = 1,  u0 = A^{-1}(f(0) + D^T p0).
PoroSystem make_model_problem(double omega_tilde);

}  // namespace poro::model
