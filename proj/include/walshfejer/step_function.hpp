#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "walshfejer/dyadic.hpp"
#include "walshfejer/rational.hpp"

namespace walshfejer {

/// A function on G that is constant on the 2^M cells of resolution M, with
/// exact rational values. Entry b holds the value on the cell whose
/// coordinates satisfy b = sum_k x_k 2^k.
class StepFunction {
 public:
  StepFunction() : StepFunction(0) {}
  /// The zero function at resolution M.
  explicit StepFunction(int resolution);
  StepFunction(int resolution, std::vector<Rational> values);

  static StepFunction constant(int resolution, const Rational& c);
  /// values[b] = scale * ints[b].
  static StepFunction from_integers(int resolution, std::span<const std::int64_t> ints,
                                    const Rational& scale = Rational(1));

  int resolution() const { return resolution_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](Index cell) const { return values_[cell]; }
  const Rational& at(const DyadicPoint& x) const;
  std::span<const Rational> values() const { return values_; }

  /// Same function at a finer resolution M' >= M.
  StepFunction refine(int resolution) const;
  /// Same function at a coarser resolution; the function must be constant on
  /// the coarser cells.
  StepFunction coarsen(int resolution) const;

  StepFunction abs() const;
  bool is_zero() const;
  Rational max_abs() const;

  StepFunction& operator+=(const StepFunction& other);
  StepFunction& operator-=(const StepFunction& other);
  StepFunction& operator*=(const Rational& c);
  friend StepFunction operator+(StepFunction a, const StepFunction& b) { return a += b; }
  friend StepFunction operator-(StepFunction a, const StepFunction& b) { return a -= b; }
  friend StepFunction operator*(StepFunction a, const Rational& c) { return a *= c; }
  friend StepFunction operator*(const Rational& c, StepFunction a) { return a *= c; }
  /// Pointwise product.
  friend StepFunction operator*(const StepFunction& a, const StepFunction& b);

  /// Equality as functions on G (resolutions may differ).
  friend bool operator==(const StepFunction& a, const StepFunction& b);

 private:
  int resolution_;
  std::vector<Rational> values_;
};

/// Result of a (quasi)norm evaluation. `exact` is present when every step of
/// the computation stays rational; `value` is always filled.
struct QuasinormValue {
  std::optional<Rational> exact;
  Real value = 0;

  bool is_exact() const { return exact.has_value(); }
};

Rational integrate(const StepFunction& f);

/// int |f|^p dmu, i.e. ||f||_p^p.
QuasinormValue lp_integral(const StepFunction& f, const Rational& p);

/// ||f||_p = (int |f|^p dmu)^(1/p).
QuasinormValue lp_quasinorm(const StepFunction& f, const Rational& p);

/// ||f||_{L_{p,inf}} = sup_{lambda>0} lambda * mu(|f| > lambda)^(1/p). For a
/// step function the supremum is the left limit at one of the attained values
/// v of |f|, where it equals v * mu(|f| >= v)^(1/p).
QuasinormValue weak_lp_quasinorm(const StepFunction& f, const Rational& p);

/// (f * g)(x) = int f(x + t) g(t) dmu(t), evaluated by direct summation.
StepFunction dyadic_convolve(const StepFunction& f, const StepFunction& g);

/// E_n f: averages of f over the intervals I_n(x). Resolution is preserved.
StepFunction conditional_expectation(const StepFunction& f, int n);

StepFunction indicator(const DyadicInterval& interval, int resolution);

/// Plain-text form: `M=<resolution>` followed by 2^M lines `<num>/<den>`.
void write_step_function(std::ostream& out, const StepFunction& f);
StepFunction read_step_function(std::istream& in);

}  // namespace walshfejer
