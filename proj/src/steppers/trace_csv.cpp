#include "poro/steppers/trace_csv.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::steppers {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const PoroSystem& sys, const SimulationTrace& trace) {
  out << "t,u_norm_a,p_norm_c,p_norm_b,inner_residuals,wall_time\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << sci(trace.times[i]) << ',' << sci(linalg::weighted_norm(sys.a, trace.u_states[i]))
        << ',' << sci(linalg::weighted_norm(sys.c, trace.p_states[i])) << ','
        << sci(linalg::weighted_norm(sys.b, trace.p_states[i])) << ',';
    const auto& res = trace.inner_residuals[i];
    for (std::size_t k = 0; k < res.size(); ++k) out << (k ? ";" : "") << sci(res[k]);
    out << ',' << sci(trace.wall_time_per_step[i]) << '\n';
  }
  if (!out) throw IoError("trace csv: write failed");
}

void write_trace_csv(const std::filesystem::path& path, const PoroSystem& sys,
                     const SimulationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_trace_csv(out, sys, trace);
}

}  // namespace poro::steppers
