#pragma once

#include <filesystem>
#include <iosfwd>

#include "poro/steppers/simulation.hpp"

namespace poro::steppers {

/// One row per recorded state:
///   t,u_norm_a,p_norm_c,p_norm_b,inner_residuals,wall_time
/// inner_residuals is the semicolon-joined list of the step's sweeps.
void write_trace_csv(std::ostream& out, const PoroSystem& sys, const SimulationTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const PoroSystem& sys,
                     const SimulationTrace& trace);

}  // namespace poro::steppers
