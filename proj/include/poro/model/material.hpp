#pragma once

#include <string>

namespace poro::model {

/// Material constants in SI units.
struct MaterialParams {
  double lambda = 1.0;        // N/m^2
  double mu = 1.0;            // N/m^2
  double alpha = 1.0;         // Biot-Willis coefficient
  double biot_modulus = 1.0;  // M, N/m^2
  double permeability = 1.0;  // kappa, m^2
  double viscosity = 1.0;     // nu, N s/m^2

  /// Throws ConfigError unless mu > 0, lambda + mu > 0, alpha in (0, 1],
  /// M > 0, kappa > 0, nu > 0.
  void validate() const;
  double mobility() const { return permeability / viscosity; }
};

/// Named parameter sets. Where only kappa/nu is known the viscosity is 1.
namespace materials {
MaterialParams westerly_granite();
MaterialParams shale();
MaterialParams brain_matter();
/// Tissue set used for the annulus surrogate.
MaterialParams brain_tissue();
}  // namespace materials

std::string describe(const MaterialParams& p);

}  // namespace poro::model
