#pragma once

#include <cstddef>
#include <vector>

#include "poro/experiments/csv.hpp"

namespace poro::experiments {

/// Final-time errors below this are classified stable.
inline constexpr double kStableError = 1e-2;

struct SharpnessPoint {
  double omega = 0.0;
  std::size_t k = 0;
  /// |(u, p) - (u_ie, p_ie)|_2 at the final time against implicit Euler with
  /// the same step; the guard value when the run diverged.
  double error = 0.0;
  /// error / |(u_ie, p_ie)|_2
  double relative_error = 0.0;
  bool diverged = false;
  bool stable() const { return !diverged && error < kStableError; }
};

struct SharpnessOptions {
  double tau = 1.0 / 300.0;
  double t_end = 1.0;
  double guard = 1e12;
};

/// Damped scheme with K sweeps and gamma = 2 / (2 + omega) on the model
/// problem with coupling omega.
SharpnessPoint sharpness_point(double omega, std::size_t k, const SharpnessOptions& options = {});

/// All grid points, evaluated concurrently and sorted by (K, omega).
std::vector<SharpnessPoint> run_sharpness(const std::vector<double>& omegas,
                                          const std::vector<std::size_t>& ks,
                                          const SharpnessOptions& options = {});

/// omega, K, error, relative_error, diverged, stable, guard
CsvTable sharpness_table(const std::vector<SharpnessPoint>& points, double guard);

struct ThresholdResult {
  std::size_t k = 0;
  /// Largest omega found stable, to within `resolution`.
  double experimental = 0.0;
  /// First omega found unstable.
  double unstable = 0.0;
  /// Root of K log w = (K-1) log(2 + w).
  double proven = 0.0;
  std::size_t evaluations = 0;
};

/// Brackets the stability edge upwards from the proven bound in steps of
/// one (or in [0, proven] when the bound itself is unstable), then bisects
/// down to `resolution`. Assumes stability is monotone in omega.
ThresholdResult stability_threshold(std::size_t k, double resolution = 0.05,
                                    const SharpnessOptions& options = {});

std::vector<ThresholdResult> run_thresholds(const std::vector<std::size_t>& ks,
                                            double resolution = 0.05,
                                            const SharpnessOptions& options = {});

/// K, proven_bound, experimental_threshold, first_unstable, evaluations
CsvTable threshold_results_table(const std::vector<ThresholdResult>& results);

}  // namespace poro::experiments
