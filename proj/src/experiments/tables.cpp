#include "poro/experiments/tables.hpp"

#include <cmath>
#include <utility>

#include "poro/model/coupling.hpp"
#include "poro/model/material.hpp"

namespace poro::experiments {

CsvTable material_table() {
  CsvTable t({"material", "lambda", "mu", "alpha", "biot_modulus", "mobility", "omega"});
  const std::pair<const char*, model::MaterialParams> rows[] = {
      {"westerly_granite", model::materials::westerly_granite()},
      {"shale", model::materials::shale()},
      {"brain_matter", model::materials::brain_matter()},
  };
  for (const auto& [name, m] : rows) {
    t.add_row({std::string(name), m.lambda, m.mu, m.alpha, m.biot_modulus, m.mobility(),
               model::coupling_parameter(m)});
  }
  return t;
}

CsvTable threshold_table(std::size_t k_max) {
  CsvTable t({"K", "omega_threshold", "omega_threshold_2dp", "closed_form_k"});
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = model::iteration_threshold(k);
    t.add_row({static_cast<std::int64_t>(k), w, std::floor(w * 100.0 + 1e-9) / 100.0,
               model::iteration_bound_closed_form(w)});
  }
  return t;
}

}  // namespace poro::experiments
