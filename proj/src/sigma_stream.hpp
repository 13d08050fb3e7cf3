#pragma once

// Fejer means of a fixed spectrum, streamed in increasing n and handed out as
// long doubles. Exact streams run on 64-bit integers after rescaling by the
// common denominator D, or on rationals when that would overflow.

#include <span>
#include <variant>
#include <vector>

#include "walshfejer/rational.hpp"
#include "walshfejer/sweep.hpp"

namespace walshfejer::detail {

class SigmaStream {
 public:
  /// `n_max` bounds the n the stream will reach; it sizes the overflow check.
  static SigmaStream exact(int resolution, std::span<const Rational> spectrum, Index n_max);
  static SigmaStream floating(int resolution, std::vector<Real> spectrum);

  Index position() const;
  void advance_to(Index n);

  /// sigma_{position+d} cellwise. Returns true when every value is exactly 0
  /// (floating streams: exactly 0.0).
  bool sigma_ahead(Index d, std::vector<Real>& out) const;
  bool sigma(std::vector<Real>& out) const { return sigma_ahead(0, out); }

 private:
  using Sweeps = std::variant<FejerSweep<std::int64_t>, FejerSweep<Real>, FejerSweep<Rational>>;
  explicit SigmaStream(Sweeps sweep, Real denominator) : sweep_(std::move(sweep)), denominator_(denominator) {}

  Sweeps sweep_;
  Real denominator_;
};

}  // namespace walshfejer::detail
