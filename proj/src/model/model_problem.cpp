#include "poro/model/model_problem.hpp"

#include <cmath>

#include "poro/error.hpp"

namespace poro::model {

PoroSystem make_model_problem(double omega_tilde) {
  if (!(omega_tilde > 0.0)) throw ConfigError("model problem: omega_tilde must be positive");
  const double s = 1.0 / (2.0 - std::sqrt(2.0));
  PoroSystem sys;
  sys.a = SparseMatrix::from_triplets(3, 3,
                                      std::vector<linalg::Triplet>{{0, 0, 2 * s},
                                       {0, 1, -s},
                                       {1, 0, -s},
                                       {1, 1, 2 * s},
                                       {1, 2, -s},
                                       {2, 1, -s},
                                       {2, 2, 2 * s}})
              .with_symmetric_flag(true);
  sys.b = SparseMatrix::identity(1);
  sys.c = SparseMatrix::identity(1);
  const double w = std::sqrt(omega_tilde) / 3.0;
  sys.d = SparseMatrix::from_triplets(
      1, 3, std::vector<linalg::Triplet>{{0, 0, 2 * w}, {0, 1, w}, {0, 2, 2 * w}});
  sys.f = Load(3);
  sys.f.add({1.0, 1.0, 1.0}, TimeFunction::constant(1.0));
  sys.g = Load(1);
  sys.g.add({1.0}, TimeFunction::sine(1.0, 1.0));
  sys.p0 = {1.0};
  make_consistent(sys);
  return sys;
}

}  // namespace poro::model
