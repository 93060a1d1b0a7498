#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poro/linalg/sparse_matrix.hpp"

namespace poro::model {

using linalg::Vector;

enum class TimeFunctionKind { Constant, Sine, Ramp, Indicator };

/// Scalar time profile from a fixed registry, with its analytic derivative.
///   constant  : a
///   sine      : a sin(b t)
///   ramp      : a min(t / b, 1)        (b > 0)
///   indicator : a [t >= b]
class TimeFunction {
 public:
  static TimeFunction constant(double value);
  static TimeFunction sine(double amplitude, double frequency);
  static TimeFunction ramp(double scale, double t_ramp);
  static TimeFunction indicator(double scale, double t_on);
  /// Registry lookup by id ("constant", "sine", "ramp", "indicator").
  static TimeFunction from_id(std::string_view id, double a, double b);

  double value(double t) const;
  double derivative(double t) const;

  TimeFunctionKind kind() const { return kind_; }
  std::string_view id() const;
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  TimeFunction(TimeFunctionKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  TimeFunctionKind kind_;
  double a_;
  double b_;
};

struct LoadTerm {
  Vector shape;
  TimeFunction profile;
};

/// Time-dependent load l(t) = sum_i profile_i(t) shape_i.
class Load {
 public:
  Load() = default;
  explicit Load(std::size_t dim) : dim_(dim) {}
  static Load constant(std::span<const double> value);

  void add(Vector shape, TimeFunction profile);

  Vector at(double t) const;
  Vector derivative_at(double t) const;
  std::size_t dim() const { return dim_; }
  const std::vector<LoadTerm>& terms() const { return terms_; }

 private:
  std::size_t dim_ = 0;
  std::vector<LoadTerm> terms_;
};

}  // namespace poro::model
