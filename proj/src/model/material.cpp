#include "poro/model/material.hpp"

#include <cmath>
#include <sstream>

#include "poro/error.hpp"

namespace poro::model {

void MaterialParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(lambda) && finite(mu) && finite(alpha) && finite(biot_modulus) &&
        finite(permeability) && finite(viscosity))) {
    throw ConfigError("material parameters must be finite");
  }
  if (!(mu > 0.0)) throw ConfigError("material: mu must be positive");
  if (!(lambda + mu > 0.0)) throw ConfigError("material: lambda + mu must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("material: alpha must lie in (0, 1]");
  if (!(biot_modulus > 0.0)) throw ConfigError("material: Biot modulus must be positive");
  if (!(permeability > 0.0)) throw ConfigError("material: permeability must be positive");
  if (!(viscosity > 0.0)) throw ConfigError("material: viscosity must be positive");
}

namespace materials {

MaterialParams westerly_granite() { return {1.5e10, 1.5e10, 0.47, 7.64e10, 4.0e-16, 1.0}; }
MaterialParams shale() { return {1.0e10, 1.0e10, 0.92, 9.5e10, 5.8e-14, 1.0}; }
MaterialParams brain_matter() { return {5.4e4, 5.5e2, 1.0, 2.6e3, 1.6e-9, 1.0}; }
MaterialParams brain_tissue() { return {7.8e3, 3.3e3, 1.0, 2.2e4, 1.3e-15, 8.9e-4}; }

}  // namespace materials

std::string describe(const MaterialParams& p) {
  std::ostringstream ss;
  ss << "lambda=" << p.lambda << " mu=" << p.mu << " alpha=" << p.alpha
     << " M=" << p.biot_modulus << " kappa=" << p.permeability << " nu=" << p.viscosity;
  return ss.str();
}

}  // namespace poro::model
