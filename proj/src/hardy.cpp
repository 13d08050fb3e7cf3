#include "walshfejer/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "walshfejer/sweep.hpp"

namespace walshfejer {

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

Index parse_index(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("expected a nonnegative integer, got '" + text + "'");
  return std::stoull(text);
}

}  // namespace

DyadicMartingale::DyadicMartingale(StepFunction terminal) : terminal_(std::move(terminal)) {}

StepFunction DyadicMartingale::level(int n) const {
  if (n < 0) throw std::invalid_argument("martingale level must be nonnegative");
  if (n >= resolution()) return terminal_;
  return conditional_expectation(terminal_, n);
}

Rational DyadicMartingale::coefficient(Index k) const {
  if (k >= terminal_.size()) return Rational(0);
  Rational sum = 0;
  for (Index b = 0; b < terminal_.size(); ++b) {
    if (walsh_sign(k, b) > 0) {
      sum += terminal_[b];
    } else {
      sum -= terminal_[b];
    }
  }
  return sum * pow2(-resolution());
}

StepFunction maximal_function(const DyadicMartingale& F) {
  const int M = F.resolution();
  // averages[n][key]: value of E_n f on the interval with low bits `key`.
  std::vector<std::vector<Rational>> averages(M + 1);
  averages[M].assign(F.terminal().values().begin(), F.terminal().values().end());
  for (int n = M - 1; n >= 0; --n) {
    const Index half = Index{1} << n;
    averages[n].resize(half);
    for (Index key = 0; key < half; ++key)
      averages[n][key] = (averages[n + 1][key] + averages[n + 1][key + half]) / 2;
  }
  std::vector<Rational> out(F.terminal().size());
  for (Index b = 0; b < out.size(); ++b) {
    Rational best = 0;
    for (int n = 0; n <= M; ++n) {
      Rational v = ::abs(averages[n][b & ((Index{1} << n) - 1)]);
      if (v > best) best = v;
    }
    out[b] = best;
  }
  return StepFunction(M, std::move(out));
}

StepFunction maximal_function_by_averages(const StepFunction& f) {
  const int M = f.resolution();
  std::vector<Rational> out(f.size());
  for (Index x = 0; x < f.size(); ++x) {
    DyadicPoint point(M, x);
    Rational best = 0;
    for (int n = 0; n <= M; ++n) {
      DyadicInterval I(n, point);
      Rational integral = 0;
      for (Index c = 0; c < f.size(); ++c)
        if (I.contains_cell(c)) integral += f[c];
      integral *= pow2(-M);
      Rational average = ::abs(integral) / I.measure();
      if (average > best) best = average;
    }
    out[x] = best;
  }
  return StepFunction(M, std::move(out));
}

QuasinormValue hp_quasinorm(const DyadicMartingale& F, const Rational& p) {
  if (sgn(p) <= 0) throw std::invalid_argument("H_p needs p > 0");
  return lp_quasinorm(maximal_function(F), p);
}

PAtom validate_atom(const StepFunction& a, const DyadicInterval& I, const Rational& p) {
  if (sgn(p) <= 0 || p > 1) throw std::invalid_argument("p-atoms need 0 < p <= 1");
  const int R = std::max(a.resolution(), I.depth());
  StepFunction fine = a.refine(R);

  Rational mean = 0;
  for (Index b = 0; b < fine.size(); ++b)
    if (I.contains_cell(b)) mean += fine[b];
  if (sgn(mean) != 0)
    throw AtomViolation('a', "clause (a): integral over I is " + to_fraction_string(mean * pow2(-R)) +
                                 ", not 0");

  // |a| <= 2^{N/p} with p = u/v  <=>  num^u <= 2^{N v} den^u.
  Rational top = fine.max_abs();
  const unsigned long u = p.get_num().get_ui();
  const unsigned long v = p.get_den().get_ui();
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), top.get_num_mpz_t(), u);
  mpz_pow_ui(rhs.get_mpz_t(), top.get_den_mpz_t(), u);
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(I.depth()) * v);
  if (lhs > rhs)
    throw AtomViolation('b', "clause (b): sup |a| = " + to_fraction_string(top) + " exceeds mu(I)^(-1/p) = 2^(" +
                                 std::to_string(I.depth()) + "/" + p.get_str() + ")");

  for (Index b = 0; b < fine.size(); ++b)
    if (!I.contains_cell(b) && sgn(fine[b]) != 0)
      throw AtomViolation('c', "clause (c): a is nonzero at cell " + std::to_string(b) + " outside I");

  return PAtom{I, p, a};
}

PAtom haar_atom(int depth, const Rational& p) {
  if (depth < 0 || depth >= 30) throw std::out_of_range("atom depth out of range");
  if (sgn(p) <= 0 || p > 1) throw std::invalid_argument("p-atoms need 0 < p <= 1");
  auto scale = exact_pow(Rational(2), Rational(depth) * (1 / p - 1));
  if (!scale) throw std::invalid_argument("2^{N(1/p-1)} is not rational for p = " + p.get_str());
  const int R = depth + 1;
  StepFunction fn = dirichlet(Index{1} << (depth + 1), R) - dirichlet(Index{1} << depth, R);
  fn *= *scale;
  return validate_atom(fn, DyadicInterval(depth, DyadicPoint(R, 0)), p);
}

DyadicMartingale atomic_martingale(const std::vector<std::pair<Rational, PAtom>>& terms, int resolution) {
  StepFunction terminal(resolution);
  for (const auto& [mu, atom] : terms) {
    StepFunction part = atom.fn.resolution() > resolution
                            ? conditional_expectation(atom.fn, resolution).coarsen(resolution)
                            : atom.fn.refine(resolution);
    terminal += part * mu;
  }
  return DyadicMartingale(std::move(terminal));
}

WeightFunction WeightFunction::parse(std::string_view text) {
  std::string t = trim(text);
  WeightFunction w;
  if (t == "one") {
    w.kind_ = Kind::one;
  } else if (t == "log2sq") {
    w.kind_ = Kind::log2sq;
  } else if (t.rfind("pow:", 0) == 0) {
    w.kind_ = Kind::power;
    w.exponent_ = parse_rational(t.substr(4));
    if (sgn(w.exponent_) < 0) throw std::invalid_argument("pow weight needs a nonnegative exponent");
  } else {
    throw std::invalid_argument("unknown weight '" + t + "' (expected one, log2sq or pow:<r>)");
  }
  return w;
}

std::string WeightFunction::name() const {
  switch (kind_) {
    case Kind::one:
      return "one";
    case Kind::log2sq:
      return "log2sq";
    case Kind::power:
      return "pow:" + exponent_.get_str();
  }
  return {};
}

std::optional<Rational> WeightFunction::exact_power(Index n, const Rational& q) const {
  if (n == 0) throw std::invalid_argument("weights are defined for n >= 1");
  switch (kind_) {
    case Kind::one:
      return Rational(1);
    case Kind::log2sq: {
      if (n <= 2) return Rational(1);
      if (std::has_single_bit(n)) {
        const long L = order(n);
        return walshfejer::exact_pow(Rational(L * L), q);
      }
      return std::nullopt;
    }
    case Kind::power:
      return walshfejer::exact_pow(Rational(static_cast<unsigned long>(n)), exponent_ * q);
  }
  return std::nullopt;
}

Real WeightFunction::power(Index n, const Rational& q) const {
  if (auto e = exact_power(n, q)) return to_real(*e);
  if (kind_ == Kind::log2sq) {
    const Real L = std::log2(static_cast<Real>(n));
    return std::pow(std::max<Real>(1, L * L), to_real(q));
  }
  return real_pow(Rational(static_cast<unsigned long>(n)), exponent_ * q);
}

CounterexampleSpec CounterexampleSpec::parse(std::istream& in) {
  CounterexampleSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "p") {
      spec.p = parse_rational(value);
    } else if (key == "phi") {
      spec.phi = WeightFunction::parse(value);
    } else if (key == "alpha") {
      spec.alphas.clear();
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) spec.alphas.push_back(parse_index(trim(item)));
    } else {
      throw std::invalid_argument("spec line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

CounterexampleSpec CounterexampleSpec::default_spec() {
  CounterexampleSpec spec;
  spec.p = Rational(1, 4);
  spec.phi = WeightFunction::parse("log2sq");
  // The smallest element of A_{0,2} with a given order: 5 for order 2, 2^L + 5 above.
  for (int order : {2, 4, 8, 16}) spec.alphas.push_back(order == 2 ? 5 : (Index{1} << order) + 5);
  return spec;
}

std::vector<int> CounterexampleSpec::orders() const {
  std::vector<int> out;
  out.reserve(alphas.size());
  for (Index a : alphas) out.push_back(order(a));
  return out;
}

int CounterexampleSpec::resolution() const {
  if (alphas.empty()) throw std::invalid_argument("spec has no alphas");
  return order(alphas.back()) + 1;
}

std::optional<Rational> CounterexampleSpec::exact_height(std::size_t k) const {
  return phi.exact_power(Index{2} << order(alphas.at(k)), 1 / (2 * p));
}

Real CounterexampleSpec::height(std::size_t k) const {
  return phi.power(Index{2} << order(alphas.at(k)), 1 / (2 * p));
}

Real CounterexampleSpec::lambda(std::size_t k) const {
  const int L = order(alphas.at(k));
  return height(k) / real_pow(Rational(2), Rational(L) * (1 / p - 1));
}

Real CounterexampleSpec::summability() const {
  Real sum = 0;
  for (Index a : alphas) {
    const int L = order(a);
    sum += phi.power(Index{2} << L, Rational(1, 2)) / real_pow(Rational(2), Rational(L) * (1 - p));
  }
  return sum;
}

void CounterexampleSpec::validate(int max_resolution) const {
  if (sgn(p) <= 0 || p > 1) throw std::invalid_argument("spec: p must lie in (0, 1]");
  if (alphas.empty()) throw std::invalid_argument("spec: alpha list is empty");
  int previous = -1;
  for (Index a : alphas) {
    if (a == 0) throw std::invalid_argument("spec: alpha_k must be positive");
    const int L = order(a);
    if (L < 2) throw std::invalid_argument("spec: |alpha_k| must be at least 2");
    if (L <= previous) throw std::invalid_argument("spec: |alpha_k| must be strictly increasing");
    previous = L;
  }
  if (resolution() > max_resolution)
    throw std::invalid_argument("spec: resolution " + std::to_string(resolution()) + " exceeds the cap " +
                                std::to_string(max_resolution));
}

DyadicMartingale build_counterexample_1b(const CounterexampleSpec& spec, int max_resolution) {
  spec.validate(max_resolution);
  const int R = spec.resolution();
  std::vector<Rational> coeffs(std::size_t{1} << R);
  for (std::size_t k = 0; k < spec.alphas.size(); ++k) {
    auto h = spec.exact_height(k);
    if (!h) throw std::invalid_argument("block height Phi^{1/2p} is not rational; use float mode");
    const Index lo = Index{1} << order(spec.alphas[k]);
    for (Index j = lo; j < 2 * lo; ++j) coeffs[j] = *h;
  }
  return DyadicMartingale(synthesize(R, coeffs));
}

DyadicMartingale build_theorem2_martingale(int m, int resolution) {
  if (m < 0 || resolution < m + 1) throw std::invalid_argument("theorem 2 martingale needs M >= m + 1");
  StepFunction f = dirichlet(Index{2} << m, resolution) - dirichlet(Index{1} << m, resolution);
  f *= pow2(m);
  return DyadicMartingale(std::move(f));
}

StepFunction sigma_identity_16b_residual(int m, Index n) {
  if (m < 1 || m > 29 || n == 0 || n >= (Index{1} << m))
    throw std::invalid_argument("identity needs 0 < n < 2^m");
  const int R = m + 1;
  const Index shift = Index{1} << m;
  StepFunction lhs = fejer_mean(build_theorem2_martingale(m, R).terminal(), n + shift).abs();
  std::vector<std::int64_t> scaled = scaled_fejer_values(n, R);
  for (auto& v : scaled) v = std::llabs(v);
  Rational ratio(static_cast<unsigned long>(shift), static_cast<unsigned long>(n + shift));
  ratio.canonicalize();
  StepFunction rhs = StepFunction::from_integers(R, scaled, ratio);
  return lhs - rhs;
}

Rational sigma_identity_16b_max_residual(int m) {
  if (m < 1 || m > 20) throw std::invalid_argument("integer sweep supports 1 <= m <= 20");
  const int R = m + 1;
  const Index shift = Index{1} << m;
  std::vector<std::int64_t> spectrum(std::size_t{1} << R, 0);
  for (Index j = shift; j < 2 * shift; ++j) spectrum[j] = static_cast<std::int64_t>(shift);
  FejerSweep<std::int64_t> sigma(R, spectrum);
  FejerSweep<std::int64_t> kernel(R, std::vector<std::int64_t>(std::size_t{1} << R, 1));
  sigma.advance_to(shift);
  Rational worst = 0;
  for (Index n = 1; n < shift; ++n) {
    sigma.step();
    kernel.step();
    auto T = sigma.cesaro_sums();
    auto K = kernel.cesaro_sums();
    std::int64_t largest = 0;
    for (std::size_t b = 0; b < T.size(); ++b) {
      std::int64_t diff = std::llabs(T[b]) - static_cast<std::int64_t>(shift) * std::llabs(K[b]);
      largest = std::max<std::int64_t>(largest, std::llabs(diff));
    }
    Rational r(static_cast<long>(largest), static_cast<unsigned long>(n + shift));
    r.canonicalize();
    if (r > worst) worst = r;
  }
  return worst;
}

}  // namespace walshfejer
