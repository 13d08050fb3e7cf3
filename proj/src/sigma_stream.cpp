#include "sigma_stream.hpp"

#include "int_scaling.hpp"

namespace walshfejer::detail {

SigmaStream SigmaStream::exact(int resolution, std::span<const Rational> spectrum, Index n_max) {
  if (auto ints = scale_to_int64(spectrum, 2 * (n_max + 1))) {
    return SigmaStream(FejerSweep<std::int64_t>(resolution, std::move(ints->values)), to_real(Rational(ints->denominator)));
  }
  return SigmaStream(FejerSweep<Rational>(resolution, std::vector<Rational>(spectrum.begin(), spectrum.end())), 1);
}

SigmaStream SigmaStream::floating(int resolution, std::vector<Real> spectrum) {
  return SigmaStream(FejerSweep<Real>(resolution, std::move(spectrum)), 1);
}

Index SigmaStream::position() const {
  return std::visit([](const auto& s) { return s.position(); }, sweep_);
}

void SigmaStream::advance_to(Index n) {
  std::visit([n](auto& s) { s.advance_to(n); }, sweep_);
}

bool SigmaStream::sigma_ahead(Index d, std::vector<Real>& out) const {
  return std::visit(
      [&](const auto& s) {
        using Scalar = typename std::decay_t<decltype(s.cesaro_sums())>::value_type;
        const Index n = s.position() + d;
        if (n == 0) throw std::invalid_argument("sigma_0 is undefined");
        std::vector<std::remove_const_t<Scalar>> T;
        s.cesaro_sums_ahead(d, T);
        out.resize(T.size());
        const Real scale = 1 / (denominator_ * static_cast<Real>(n));
        bool zero = true;
        for (std::size_t b = 0; b < T.size(); ++b) {
          if constexpr (std::is_same_v<std::remove_const_t<Scalar>, Rational>) {
            if (sgn(T[b]) != 0) zero = false;
            out[b] = to_real(T[b]) * scale;
          } else {
            if (T[b] != 0) zero = false;
            out[b] = static_cast<Real>(T[b]) * scale;
          }
        }
        return zero;
      },
      sweep_);
}

}  // namespace walshfejer::detail
