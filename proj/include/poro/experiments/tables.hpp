#pragma once

#include "poro/experiments/csv.hpp"

namespace poro::experiments {

/// material, lambda, mu, alpha, biot_modulus, mobility, omega
CsvTable material_table();

/// K, omega_threshold (root of K log w = (K-1) log(2 + w)),
/// omega_threshold_2dp (the root truncated to two decimals), closed_form_k
/// (1 + log w / log((w + 2) / w) at the root, equal to K).
CsvTable threshold_table(std::size_t k_max = 10);

}  // namespace poro::experiments
