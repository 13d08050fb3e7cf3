#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walshfejer/dyadic.hpp"
#include "walshfejer/step_function.hpp"
#include "walshfejer/walsh.hpp"

namespace walshfejer {

/// A finite dyadic martingale F_n = E_n f, n = 0..M, stored through its
/// terminal function f = F_M.
class DyadicMartingale {
 public:
  DyadicMartingale() : DyadicMartingale(StepFunction(0)) {}
  explicit DyadicMartingale(StepFunction terminal);

  int resolution() const { return terminal_.resolution(); }
  const StepFunction& terminal() const { return terminal_; }

  /// F_n = E_n f. Levels past M return the terminal function.
  StepFunction level(int n) const;

  /// F^(k); zero for k >= 2^M.
  Rational coefficient(Index k) const;
  WalshSpectrum spectrum() const { return fwht(terminal_); }

 private:
  StepFunction terminal_;
};

/// F* = max_{0<=n<=M} |F_n|.
StepFunction maximal_function(const DyadicMartingale& F);

/// f*(x) = max_n |int_{I_n(x)} f dmu| / mu(I_n(x)), from the integrals over
/// each interval directly. Cost O(M 4^M); meant as a cross-check.
StepFunction maximal_function_by_averages(const StepFunction& f);

/// ||F||_{H_p} = ||F*||_p.
QuasinormValue hp_quasinorm(const DyadicMartingale& F, const Rational& p);

struct PAtom {
  DyadicInterval support;
  Rational p;
  StepFunction fn;
};

/// A violated p-atom clause: 'a' (mean), 'b' (sup bound) or 'c' (support).
class AtomViolation : public std::invalid_argument {
 public:
  AtomViolation(char clause, const std::string& what) : std::invalid_argument(what), clause_(clause) {}
  char clause() const { return clause_; }

 private:
  char clause_;
};

/// Checks int_I a = 0, |a| <= mu(I)^{-1/p} and supp a in I, for 0 < p <= 1.
PAtom validate_atom(const StepFunction& a, const DyadicInterval& I, const Rational& p);

/// 2^{N(1/p-1)} (D_{2^{N+1}} - D_{2^N}) on I_N(0), at resolution N + 1.
/// The coefficient must be rational (e.g. 1/p an integer).
PAtom haar_atom(int depth, const Rational& p);

/// Terminal sum_k mu_k S_{2^M} a_k. An empty list gives the zero martingale.
DyadicMartingale atomic_martingale(const std::vector<std::pair<Rational, PAtom>>& terms,
                                   int resolution);

/// Weight Phi(n) >= 1: `one`, `log2sq` (max(1, log2^2 n)) or `pow:<r>` (n^r, r >= 0).
class WeightFunction {
 public:
  enum class Kind { one, log2sq, power };

  WeightFunction() = default;
  static WeightFunction parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::string name() const;

  /// Phi(n)^q when it is rational.
  std::optional<Rational> exact_power(Index n, const Rational& q) const;
  Real power(Index n, const Rational& q) const;
  Real operator()(Index n) const { return power(n, Rational(1)); }

 private:
  Kind kind_ = Kind::one;
  Rational exponent_ = 0;
};

/// Parameters of the divergence construction: F = sum_k lambda_k a_k with
/// a_k the Haar atom of depth |alpha_k|.
struct CounterexampleSpec {
  Rational p = Rational(1, 4);
  WeightFunction phi;
  std::vector<Index> alphas;

  /// Reads `p=`, `alpha=` and `phi=` lines; blank lines and `#` comments are
  /// ignored. Missing keys keep the defaults.
  static CounterexampleSpec parse(std::istream& in);
  /// p = 1/4, Phi = log2sq, |alpha_k| = 2, 4, 8, 16 with alpha_k = 2^{|alpha_k|} + 5.
  static CounterexampleSpec default_spec();

  /// |alpha_k| for every k.
  std::vector<int> orders() const;
  /// |alpha_last| + 1.
  int resolution() const;

  /// Phi^{1/2p}(2^{|alpha_k|+1}), the spectral height on block k.
  std::optional<Rational> exact_height(std::size_t k) const;
  Real height(std::size_t k) const;
  /// lambda_k = Phi^{1/2p}(2^{|alpha_k|+1}) / 2^{|alpha_k|(1/p-1)}.
  Real lambda(std::size_t k) const;
  /// sum_k Phi^{1/2}(2^{|alpha_k|+1}) / 2^{|alpha_k|(1-p)}.
  Real summability() const;

  /// Rejects p outside (0, 1], an empty list, |alpha_k| < 2, non-increasing
  /// orders and resolutions above max_resolution.
  void validate(int max_resolution) const;
};

/// The truncated martingale of the spec at resolution |alpha_last| + 1.
/// Requires every block height to be rational.
DyadicMartingale build_counterexample_1b(const CounterexampleSpec& spec, int max_resolution = 17);

/// F_m = 2^m (D_{2^{m+1}} - D_{2^m}) at resolution M >= m + 1.
DyadicMartingale build_theorem2_martingale(int m, int resolution);

/// |sigma_{n+2^m} F_m| - (2^m/(n+2^m)) n |K_n| at resolution m + 1, for 0 < n < 2^m.
StepFunction sigma_identity_16b_residual(int m, Index n);

/// Largest |residual| of the identity above over all 0 < n < 2^m, computed
/// with integer sweeps.
Rational sigma_identity_16b_max_residual(int m);

}  // namespace walshfejer
