#include "walshfejer/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "int_scaling.hpp"

namespace walshfejer {

namespace detail {

std::optional<ScaledIntegers> scale_to_int64(std::span<const Rational> q, std::uint64_t headroom) {
  Integer lcm(1);
  for (const auto& v : q) {
    if (v.get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    if (mpz_sizeinbase(lcm.get_mpz_t(), 2) > 62) return std::nullopt;
  }
  Integer total(0);
  ScaledIntegers out{lcm, {}};
  out.values.reserve(q.size());
  Integer limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 2, 62);
  for (const auto& v : q) {
    Integer scaled = v.get_num() * (lcm / v.get_den());
    total += abs(scaled);
    if (total * headroom >= limit) return std::nullopt;
    out.values.push_back(scaled.get_si());
  }
  return out;
}

Integer from_int128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

}  // namespace detail

namespace {

void check_resolution(int resolution) {
  if (resolution < 0 || resolution > 30)
    throw std::out_of_range("step function resolution " + std::to_string(resolution) +
                            " outside [0, 30]");
}

}  // namespace

StepFunction::StepFunction(int resolution) : resolution_(resolution) {
  check_resolution(resolution);
  values_.assign(std::size_t{1} << resolution, Rational(0));
}

StepFunction::StepFunction(int resolution, std::vector<Rational> values)
    : resolution_(resolution), values_(std::move(values)) {
  check_resolution(resolution);
  if (values_.size() != (std::size_t{1} << resolution))
    throw std::invalid_argument("step function at resolution " + std::to_string(resolution) +
                                " needs " + std::to_string(std::size_t{1} << resolution) +
                                " values, got " + std::to_string(values_.size()));
  for (auto& v : values_) v.canonicalize();
}

StepFunction StepFunction::constant(int resolution, const Rational& c) {
  StepFunction f(resolution);
  std::fill(f.values_.begin(), f.values_.end(), c);
  return f;
}

StepFunction StepFunction::from_integers(int resolution, std::span<const std::int64_t> ints,
                                         const Rational& scale) {
  std::vector<Rational> values;
  values.reserve(ints.size());
  for (auto v : ints) values.push_back(detail::from_int64(v) * scale);
  return StepFunction(resolution, std::move(values));
}

const Rational& StepFunction::at(const DyadicPoint& x) const {
  Index mask = (Index{1} << resolution_) - 1;
  if (x.resolution() < resolution_)
    throw std::invalid_argument("point resolution below function resolution");
  return values_[x.cell() & mask];
}

StepFunction StepFunction::refine(int resolution) const {
  if (resolution < resolution_) throw std::invalid_argument("refine: target resolution is coarser");
  if (resolution == resolution_) return *this;
  StepFunction out(resolution);
  Index mask = (Index{1} << resolution_) - 1;
  for (Index b = 0; b < out.size(); ++b) out.values_[b] = values_[b & mask];
  return out;
}

StepFunction StepFunction::coarsen(int resolution) const {
  if (resolution > resolution_) throw std::invalid_argument("coarsen: target resolution is finer");
  if (resolution == resolution_) return *this;
  StepFunction out(resolution);
  Index mask = (Index{1} << resolution) - 1;
  for (Index b = 0; b < size(); ++b) {
    if (b <= mask) {
      out.values_[b] = values_[b];
    } else if (values_[b] != values_[b & mask]) {
      throw std::invalid_argument("coarsen: function is not constant on resolution-" +
                                  std::to_string(resolution) + " cells");
    }
  }
  return out;
}

StepFunction StepFunction::abs() const {
  StepFunction out = *this;
  for (auto& v : out.values_) v = ::abs(v);
  return out;
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

Rational StepFunction::max_abs() const {
  Rational m(0);
  for (const auto& v : values_)
    if (::abs(v) > m) m = ::abs(v);
  return m;
}

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  if (other.resolution_ > resolution_) *this = refine(other.resolution_);
  Index mask = (Index{1} << other.resolution_) - 1;
  for (Index b = 0; b < size(); ++b) values_[b] += other.values_[b & mask];
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& other) {
  if (other.resolution_ > resolution_) *this = refine(other.resolution_);
  Index mask = (Index{1} << other.resolution_) - 1;
  for (Index b = 0; b < size(); ++b) values_[b] -= other.values_[b & mask];
  return *this;
}

StepFunction& StepFunction::operator*=(const Rational& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

StepFunction operator*(const StepFunction& a, const StepFunction& b) {
  int m = std::max(a.resolution_, b.resolution_);
  StepFunction out(m);
  Index ma = (Index{1} << a.resolution_) - 1;
  Index mb = (Index{1} << b.resolution_) - 1;
  for (Index c = 0; c < out.size(); ++c) out.values_[c] = a.values_[c & ma] * b.values_[c & mb];
  return out;
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  int m = std::max(a.resolution_, b.resolution_);
  Index ma = (Index{1} << a.resolution_) - 1;
  Index mb = (Index{1} << b.resolution_) - 1;
  for (Index c = 0; c < (Index{1} << m); ++c)
    if (a.values_[c & ma] != b.values_[c & mb]) return false;
  return true;
}

Rational integrate(const StepFunction& f) {
  if (auto ints = detail::scale_to_int64(f.values())) {
    std::int64_t sum = 0;
    for (auto v : ints->values) sum += v;
    return Rational(detail::from_int64(sum) / Rational(ints->denominator)) * pow2(-f.resolution());
  }
  Rational sum(0);
  for (const auto& v : f.values()) sum += v;
  return sum * pow2(-f.resolution());
}

namespace {

// |value| -> number of cells, over the distinct absolute values of f.
std::map<Rational, Index> abs_histogram(const StepFunction& f) {
  std::map<Rational, Index> hist;
  for (const auto& v : f.values()) ++hist[abs(v)];
  return hist;
}

void require_positive(const Rational& p) {
  if (sgn(p) <= 0) throw std::invalid_argument("exponent p must be positive");
}

}  // namespace

QuasinormValue lp_integral(const StepFunction& f, const Rational& p) {
  require_positive(p);
  auto hist = abs_histogram(f);
  Rational cell = pow2(-f.resolution());
  Rational exact_sum(0);
  bool exact = true;
  Real numeric = 0;
  for (const auto& [v, count] : hist) {
    Rational weight = Rational(static_cast<unsigned long>(count)) * cell;
    if (exact) {
      if (auto pw = exact_pow(v, p)) {
        exact_sum += *pw * weight;
      } else {
        exact = false;
      }
    }
    numeric += real_pow(v, p) * to_real(weight);
  }
  QuasinormValue out;
  if (exact) {
    out.exact = exact_sum;
    out.value = to_real(exact_sum);
  } else {
    out.value = numeric;
  }
  return out;
}

QuasinormValue lp_quasinorm(const StepFunction& f, const Rational& p) {
  QuasinormValue integral = lp_integral(f, p);
  Rational inv = Rational(1) / p;
  QuasinormValue out;
  if (integral.exact) {
    if (auto root = exact_pow(*integral.exact, inv)) {
      out.exact = *root;
      out.value = to_real(*root);
      return out;
    }
    out.value = real_pow(*integral.exact, inv);
    return out;
  }
  // A single nonzero level v on a set of measure mu has norm v * mu^{1/p}.
  auto hist = abs_histogram(f);
  hist.erase(Rational(0));
  if (hist.size() == 1) {
    const auto& [v, count] = *hist.begin();
    Rational mu = Rational(static_cast<unsigned long>(count)) * pow2(-f.resolution());
    if (auto scale = exact_pow(mu, inv)) {
      out.exact = v * *scale;
      out.value = to_real(*out.exact);
      return out;
    }
  }
  out.value = std::pow(integral.value, to_real(inv));
  return out;
}

QuasinormValue weak_lp_quasinorm(const StepFunction& f, const Rational& p) {
  require_positive(p);
  auto hist = abs_histogram(f);
  Rational inv = Rational(1) / p;
  Rational cell = pow2(-f.resolution());
  Index at_least = 0;
  bool exact = true;
  Rational best_exact(0);
  Real best = 0;
  // Descending over distinct values; at_least counts cells with |f| >= v.
  for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
    const Rational& v = it->first;
    at_least += it->second;
    if (sgn(v) == 0) break;
    Rational measure = Rational(static_cast<unsigned long>(at_least)) * cell;
    if (exact) {
      if (auto pw = exact_pow(measure, inv)) {
        Rational cand = v * *pw;
        if (cand > best_exact) best_exact = cand;
      } else {
        exact = false;
      }
    }
    Real cand = to_real(v) * real_pow(measure, inv);
    if (cand > best) best = cand;
  }
  QuasinormValue out;
  if (exact) {
    out.exact = best_exact;
    out.value = to_real(best_exact);
  } else {
    out.value = best;
  }
  return out;
}

StepFunction dyadic_convolve(const StepFunction& f0, const StepFunction& g0) {
  int m = std::max(f0.resolution(), g0.resolution());
  StepFunction f = f0.refine(m);
  StepFunction g = g0.refine(m);
  Index n = f.size();
  std::vector<Rational> out(n);
  auto fi = detail::scale_to_int64(f.values());
  auto gi = detail::scale_to_int64(g.values());
  if (fi && gi) {
    Rational scale = Rational(1) / Rational(fi->denominator * gi->denominator) * pow2(-m);
    for (Index x = 0; x < n; ++x) {
      __int128 acc = 0;
      for (Index t = 0; t < n; ++t)
        acc += static_cast<__int128>(fi->values[x ^ t]) * gi->values[t];
      out[x] = Rational(detail::from_int128(acc)) * scale;
    }
  } else {
    Rational cell = pow2(-m);
    for (Index x = 0; x < n; ++x) {
      Rational acc(0);
      for (Index t = 0; t < n; ++t) acc += f[x ^ t] * g[t];
      out[x] = acc * cell;
    }
  }
  return StepFunction(m, std::move(out));
}

StepFunction conditional_expectation(const StepFunction& f, int n) {
  if (n < 0 || n > f.resolution())
    throw std::out_of_range("conditional expectation level " + std::to_string(n) +
                            " outside [0, " + std::to_string(f.resolution()) + "]");
  if (n == f.resolution()) return f;
  Index classes = Index{1} << n;
  std::vector<Rational> sums(classes, Rational(0));
  for (Index b = 0; b < f.size(); ++b) sums[b & (classes - 1)] += f[b];
  Rational scale = pow2(n - f.resolution());
  for (auto& s : sums) s *= scale;
  std::vector<Rational> out(f.size());
  for (Index b = 0; b < f.size(); ++b) out[b] = sums[b & (classes - 1)];
  return StepFunction(f.resolution(), std::move(out));
}

StepFunction indicator(const DyadicInterval& interval, int resolution) {
  StepFunction out(resolution);
  std::vector<Rational> values(out.size(), Rational(0));
  for (Index c : interval.cells(resolution)) values[c] = 1;
  return StepFunction(resolution, std::move(values));
}

void write_step_function(std::ostream& out, const StepFunction& f) {
  out << "M=" << f.resolution() << '\n';
  for (const auto& v : f.values()) out << to_fraction_string(v) << '\n';
}

StepFunction read_step_function(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("M=", 0) != 0)
    throw std::invalid_argument("step function file must start with 'M=<resolution>'");
  int m = 0;
  try {
    m = std::stoi(line.substr(2));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad resolution line '" + line + "'");
  }
  check_resolution(m);
  std::vector<Rational> values;
  values.reserve(std::size_t{1} << m);
  while (values.size() < (std::size_t{1} << m) && std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    values.push_back(parse_rational(line));
  }
  if (values.size() != (std::size_t{1} << m))
    throw std::invalid_argument("step function file ended after " + std::to_string(values.size()) +
                                " of " + std::to_string(std::size_t{1} << m) + " values");
  return StepFunction(m, std::move(values));
}

}  // namespace walshfejer
