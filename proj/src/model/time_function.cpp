#include "poro/model/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poro/error.hpp"

namespace poro::model {

TimeFunction TimeFunction::constant(double value) {
  return {TimeFunctionKind::Constant, value, 0.0};
}

TimeFunction TimeFunction::sine(double amplitude, double frequency) {
  return {TimeFunctionKind::Sine, amplitude, frequency};
}

TimeFunction TimeFunction::ramp(double scale, double t_ramp) {
  if (!(t_ramp > 0.0)) throw ConfigError("ramp: duration must be positive");
  return {TimeFunctionKind::Ramp, scale, t_ramp};
}

TimeFunction TimeFunction::indicator(double scale, double t_on) {
  return {TimeFunctionKind::Indicator, scale, t_on};
}

TimeFunction TimeFunction::from_id(std::string_view id, double a, double b) {
  if (id == "constant") return constant(a);
  if (id == "sine") return sine(a, b);
  if (id == "ramp") return ramp(a, b);
  if (id == "indicator") return indicator(a, b);
  throw ConfigError("unknown time function '" + std::string(id) + "'");
}

double TimeFunction::value(double t) const {
  switch (kind_) {
    case TimeFunctionKind::Constant: return a_;
    case TimeFunctionKind::Sine: return a_ * std::sin(b_ * t);
    case TimeFunctionKind::Ramp: return a_ * std::min(t / b_, 1.0);
    case TimeFunctionKind::Indicator: return t >= b_ ? a_ : 0.0;
  }
  return 0.0;
}

double TimeFunction::derivative(double t) const {
  switch (kind_) {
    case TimeFunctionKind::Constant: return 0.0;
    case TimeFunctionKind::Sine: return a_ * b_ * std::cos(b_ * t);
    case TimeFunctionKind::Ramp: return t < b_ ? a_ / b_ : 0.0;
    case TimeFunctionKind::Indicator: return 0.0;
  }
  return 0.0;
}

std::string_view TimeFunction::id() const {
  switch (kind_) {
    case TimeFunctionKind::Constant: return "constant";
    case TimeFunctionKind::Sine: return "sine";
    case TimeFunctionKind::Ramp: return "ramp";
    case TimeFunctionKind::Indicator: return "indicator";
  }
  return "constant";
}

Load Load::constant(std::span<const double> value) {
  Load l(value.size());
  l.add(Vector(value.begin(), value.end()), TimeFunction::constant(1.0));
  return l;
}

void Load::add(Vector shape, TimeFunction profile) {
  if (shape.size() != dim_) throw DimensionError("load term has the wrong length");
  terms_.push_back({std::move(shape), profile});
}

Vector Load::at(double t) const {
  Vector out(dim_, 0.0);
  for (const auto& term : terms_) {
    const double s = term.profile.value(t);
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < dim_; ++i) out[i] += s * term.shape[i];
  }
  return out;
}

Vector Load::derivative_at(double t) const {
  Vector out(dim_, 0.0);
  for (const auto& term : terms_) {
    const double s = term.profile.derivative(t);
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < dim_; ++i) out[i] += s * term.shape[i];
  }
  return out;
}

}  // namespace poro::model
