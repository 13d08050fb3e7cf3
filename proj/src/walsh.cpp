#include "walshfejer/walsh.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "int_scaling.hpp"

namespace walshfejer {

namespace {

void require_fits(Index n, int resolution, const char* what) {
  if (resolution < 0 || resolution > 30)
    throw std::out_of_range(std::string(what) + ": resolution out of range");
  if (n > (Index{1} << resolution))
    throw std::invalid_argument(std::string(what) + ": index " + std::to_string(n) +
                                " exceeds 2^" + std::to_string(resolution));
}

// Synthesis on rationals, through 64-bit integers when the values allow it.
std::vector<Rational> synthesize_values(std::span<const Rational> coeffs) {
  if (auto ints = detail::scale_to_int64(coeffs)) {
    walsh_hadamard_inplace(std::span<std::int64_t>(ints->values));
    Rational inv(Integer(1), ints->denominator);
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (auto v : ints->values) out.push_back(detail::from_int64(v) * inv);
    return out;
  }
  std::vector<Rational> out(coeffs.begin(), coeffs.end());
  walsh_hadamard_inplace(std::span<Rational>(out));
  return out;
}

}  // namespace

WalshSpectrum::WalshSpectrum(int resolution, std::vector<Rational> coeffs)
    : resolution_(resolution), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != (std::size_t{1} << resolution))
    throw std::invalid_argument("spectrum size does not match resolution");
}

WalshSpectrum fwht(const StepFunction& f) {
  auto values = synthesize_values(f.values());  // the butterfly is symmetric
  Rational cell = pow2(-f.resolution());
  for (auto& v : values) v *= cell;
  return WalshSpectrum(f.resolution(), std::move(values));
}

StepFunction inverse_fwht(const WalshSpectrum& spectrum) {
  return StepFunction(spectrum.resolution(), synthesize_values(spectrum.coeffs()));
}

StepFunction synthesize(int resolution, std::span<const Rational> coeffs) {
  if (coeffs.size() != (std::size_t{1} << resolution))
    throw std::invalid_argument("coefficient count does not match resolution");
  return StepFunction(resolution, synthesize_values(coeffs));
}

std::vector<std::int64_t> synthesize_integers(int resolution, std::span<const std::int64_t> coeffs) {
  if (coeffs.size() != (std::size_t{1} << resolution))
    throw std::invalid_argument("coefficient count does not match resolution");
  unsigned __int128 total = 0;
  for (auto c : coeffs) total += static_cast<unsigned __int128>(c < 0 ? -static_cast<__int128>(c) : c);
  if (total >= (static_cast<unsigned __int128>(1) << 62))
    throw std::overflow_error("integer synthesis would overflow 64 bits");
  std::vector<std::int64_t> out(coeffs.begin(), coeffs.end());
  walsh_hadamard_inplace(std::span<std::int64_t>(out));
  return out;
}

StepFunction rademacher(int k, int resolution) {
  if (k < 0 || k >= resolution)
    throw std::out_of_range("r_" + std::to_string(k) + " needs resolution > " + std::to_string(k));
  std::vector<Rational> values(std::size_t{1} << resolution);
  for (Index b = 0; b < values.size(); ++b) values[b] = ((b >> k) & 1u) ? -1 : 1;
  return StepFunction(resolution, std::move(values));
}

StepFunction walsh(Index n, int resolution) {
  if (resolution > 30 || n >= (Index{1} << resolution))
    throw std::out_of_range("w_" + std::to_string(n) + " needs n < 2^" + std::to_string(resolution));
  std::vector<Rational> values(std::size_t{1} << resolution);
  for (Index b = 0; b < values.size(); ++b) values[b] = walsh_sign(n, b);
  return StepFunction(resolution, std::move(values));
}

int kernel_resolution(Index n) {
  if (n == 0) throw std::invalid_argument("kernel index must be >= 1");
  return order(n) + 1;
}

std::vector<std::int64_t> dirichlet_values(Index n, int resolution) {
  if (n == 0) throw std::invalid_argument("D_n needs n >= 1");
  require_fits(n, resolution, "dirichlet");
  std::vector<std::int64_t> coeffs(std::size_t{1} << resolution, 0);
  for (Index k = 0; k < n; ++k) coeffs[k] = 1;
  return synthesize_integers(resolution, coeffs);
}

StepFunction dirichlet(Index n, int resolution) {
  auto values = dirichlet_values(n, resolution);
  return StepFunction::from_integers(resolution, values);
}

StepFunction dirichlet(Index n) { return dirichlet(n, kernel_resolution(n)); }

std::vector<std::int64_t> scaled_fejer_values(Index n, int resolution) {
  if (n == 0) throw std::invalid_argument("K_n needs n >= 1");
  require_fits(n, resolution, "fejer_kernel");
  // n K_n = sum_{k=1}^n D_k = sum_{j<n} (n - j) w_j.
  std::vector<std::int64_t> coeffs(std::size_t{1} << resolution, 0);
  for (Index j = 0; j < n; ++j) coeffs[j] = static_cast<std::int64_t>(n - j);
  return synthesize_integers(resolution, coeffs);
}

StepFunction fejer_kernel(Index n, int resolution) {
  auto values = scaled_fejer_values(n, resolution);
  return StepFunction::from_integers(resolution, values, Rational(1, static_cast<unsigned long>(n)));
}

StepFunction fejer_kernel(Index n) { return fejer_kernel(n, kernel_resolution(n)); }

std::int64_t dirichlet_power_at(int k, Index cell) {
  Index low = cell & ((Index{1} << k) - 1);
  return low == 0 ? (std::int64_t{1} << k) : 0;
}

std::int64_t scaled_fejer_power_at(int k, Index cell) {
  Index low = cell & ((Index{1} << k) - 1);
  if (low == 0) return (std::int64_t{1} << k) * ((std::int64_t{1} << k) + 1) / 2;
  if (std::popcount(low) == 1) {
    int t = std::countr_zero(low);
    return std::int64_t{1} << (k + t - 1);  // t < k, so k + t - 1 >= 0
  }
  return 0;
}

StepFunction fejer_closed_form(int n, int resolution) {
  if (n < 0 || n >= resolution)
    throw std::invalid_argument("fejer_closed_form needs 0 <= n < M");
  std::vector<std::int64_t> values(std::size_t{1} << resolution);
  for (Index b = 0; b < values.size(); ++b) values[b] = scaled_fejer_power_at(n, b);
  return StepFunction::from_integers(resolution, values, pow2(-n));
}

StepFunction kernel_decomposition_residual(Index n) {
  int resolution = kernel_resolution(n);
  auto bits = set_bits(n);
  const std::size_t s = bits.size();
  std::vector<Index> above(s, 0);  // above[r] = sum_{j>r} 2^{n_j}
  for (std::size_t r = s; r-- > 1;) above[r - 1] = above[r] | (Index{1} << bits[r]);
  std::vector<std::int64_t> prefix(s, 0);  // prefix[t] = n^(t+1)
  for (std::size_t t = 1; t < s; ++t) prefix[t] = prefix[t - 1] + (std::int64_t{1} << bits[t - 1]);

  auto residual = scaled_fejer_values(n, resolution);
  for (Index b = 0; b < residual.size(); ++b) {
    std::int64_t rhs = 0;
    for (std::size_t r = 0; r < s; ++r) {
      int sign = walsh_sign(above[r], b);
      rhs += sign * scaled_fejer_power_at(bits[r], b);
      if (r >= 1) rhs += sign * prefix[r] * dirichlet_power_at(bits[r], b);
    }
    residual[b] -= rhs;
  }
  return StepFunction::from_integers(resolution, residual);
}

StepFunction shift_identity_residual(Index j, int m) {
  if (m < 0 || m > 29) throw std::out_of_range("shift identity exponent out of range");
  if (j < 1 || j >= (Index{1} << m))
    throw std::invalid_argument("shift identity needs 1 <= j < 2^m");
  int resolution = m + 1;
  auto shifted = dirichlet_values(j + (Index{1} << m), resolution);
  auto base = dirichlet_values(j, resolution);
  for (Index b = 0; b < shifted.size(); ++b)
    shifted[b] -= dirichlet_power_at(m, b) + walsh_sign(Index{1} << m, b) * base[b];
  return StepFunction::from_integers(resolution, shifted);
}

StepFunction partial_sum(const StepFunction& f, Index n) {
  if (n == 0) return StepFunction(f.resolution());
  if (n >= f.size()) return f;
  WalshSpectrum spec = fwht(f);
  std::vector<Rational> coeffs(spec.coeffs().begin(), spec.coeffs().end());
  for (Index k = n; k < coeffs.size(); ++k) coeffs[k] = 0;
  return synthesize(f.resolution(), coeffs);
}

StepFunction fejer_mean(const StepFunction& f, Index n) {
  if (n == 0) throw std::invalid_argument("fejer_mean needs n >= 1");
  WalshSpectrum spec = fwht(f);
  std::vector<Rational> coeffs(spec.coeffs().begin(), spec.coeffs().end());
  Rational inv(1, static_cast<unsigned long>(n));
  for (Index k = 0; k < coeffs.size(); ++k) {
    if (k >= n) {
      coeffs[k] = 0;
    } else if (k > 0) {
      coeffs[k] *= Rational(static_cast<unsigned long>(n - k)) * inv;
    }
  }
  return synthesize(f.resolution(), coeffs);
}

StepFunction conjugate_transform(const StepFunction& f, const DyadicPoint& t) {
  const int m = f.resolution();
  if (t.resolution() < m)
    throw std::invalid_argument("conjugate transform needs t at resolution >= " + std::to_string(m));
  StepFunction out(m);
  StepFunction previous(m);
  for (int n = 0; n <= m; ++n) {
    StepFunction level = conditional_expectation(f, n);
    StepFunction difference = level - previous;
    if (t.coord(n)) {
      out -= difference;
    } else {
      out += difference;
    }
    previous = std::move(level);
  }
  return out;
}

}  // namespace walshfejer
