#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "walshfejer/dyadic.hpp"
#include "walshfejer/step_function.hpp"

namespace walshfejer {

/// w_n at the cell with index b: (-1)^popcount(n & b).
inline int walsh_sign(Index n, Index cell) { return (std::popcount(n & cell) & 1) ? -1 : 1; }

/// Unnormalized Walsh-Hadamard butterfly in natural (Paley) order:
/// a[k] <- sum_b a[b] (-1)^popcount(k & b). Self-inverse up to a factor 2^M.
template <class T>
void walsh_hadamard_inplace(std::span<T> a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        T x = a[j];
        T y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

/// The 2^M Walsh-Paley coefficients f^(k) = int f w_k dmu of a step function.
class WalshSpectrum {
 public:
  WalshSpectrum(int resolution, std::vector<Rational> coeffs);

  int resolution() const { return resolution_; }
  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](Index k) const { return coeffs_[k]; }
  std::span<const Rational> coeffs() const { return coeffs_; }

 private:
  int resolution_;
  std::vector<Rational> coeffs_;
};

WalshSpectrum fwht(const StepFunction& f);
StepFunction inverse_fwht(const WalshSpectrum& spectrum);

/// sum_k coeffs[k] w_k at resolution M (coeffs.size() == 2^M).
StepFunction synthesize(int resolution, std::span<const Rational> coeffs);

/// Same synthesis for integer coefficients, in 64-bit arithmetic.
std::vector<std::int64_t> synthesize_integers(int resolution, std::span<const std::int64_t> coeffs);

StepFunction rademacher(int k, int resolution);
StepFunction walsh(Index n, int resolution);

/// Default resolution |n| + 1 on which D_n and K_n are constant.
int kernel_resolution(Index n);

/// D_n = sum_{k<n} w_k. Requires n <= 2^M.
StepFunction dirichlet(Index n, int resolution);
StepFunction dirichlet(Index n);
std::vector<std::int64_t> dirichlet_values(Index n, int resolution);

/// K_n = (1/n) sum_{k=1}^n D_k. Requires 1 <= n <= 2^M.
StepFunction fejer_kernel(Index n, int resolution);
StepFunction fejer_kernel(Index n);
/// n K_n, which is integer valued.
std::vector<std::int64_t> scaled_fejer_values(Index n, int resolution);

/// D_{2^k} from its closed form: 2^k on I_k, 0 elsewhere.
std::int64_t dirichlet_power_at(int k, Index cell);
/// 2^k K_{2^k} from its closed form: 2^k (2^k + 1)/2 on I_k, 2^{k+t-1} on
/// I_k(e_t) for t < k, 0 elsewhere. Integer valued.
std::int64_t scaled_fejer_power_at(int k, Index cell);

/// K_{2^n} built from the case formula, without summation. Requires n < M.
StepFunction fejer_closed_form(int n, int resolution);

/// n K_n minus the right-hand side of the product decomposition
///   n K_n = sum_r (prod_{j>r} w_{2^{n_j}}) 2^{n_r} K_{2^{n_r}}
///         + sum_{t>=2} (prod_{j>t} w_{2^{n_j}}) n^(t) D_{2^{n_t}},
/// at resolution |n| + 1. Identically zero when the identity holds.
StepFunction kernel_decomposition_residual(Index n);

/// D_{j+2^m} - D_{2^m} - w_{2^m} D_j at resolution m + 1, for 1 <= j < 2^m.
StepFunction shift_identity_residual(Index j, int m);

/// S_n f = sum_{k<n} f^(k) w_k; S_0 f = 0. Any n >= 0 is accepted (the
/// spectrum vanishes from 2^M on, so S_n f = f for n >= 2^M).
StepFunction partial_sum(const StepFunction& f, Index n);

/// sigma_n f = (1/n) sum_{k=1}^n S_k f, for n >= 1.
StepFunction fejer_mean(const StepFunction& f, Index n);

/// sum_{n=0}^{M} r_n(t) (E_n f - E_{n-1} f) with E_{-1} f = 0.
StepFunction conjugate_transform(const StepFunction& f, const DyadicPoint& t);

// ---------------------------------------------------------------------------
// Kernel estimates.
// ---------------------------------------------------------------------------

/// Empirical constant of the two integral bounds for int_{I_M} |K_n(x+t)| dt.
struct Lemma2Value {
  bool pair_branch;   // x in I_{l+1}(e_k + e_l); otherwise x in I_M(e_k)
  int k;
  int l;              // -1 on the single branch
  Rational integral;  // int_{I_M} |K_n(x + t)| dmu(t)
  Rational bound_factor;  // 2^{l+k}/(n 2^M) or 2^k/2^M
  Rational ratio;     // integral / bound_factor
};

/// Requires n > 2^M and x outside I_M (resolution of x at least M).
Lemma2Value lemma2_ratio(Index n, int M, const DyadicPoint& x);

/// lemma2_ratio for every resolution-M cell of G \ I_M (cells 1..2^M - 1).
std::vector<Lemma2Value> lemma2_profile(Index n, int M);

struct Lemma3Row {
  int block;            // 1-based block index i
  Block bits;           // (l_i, m_i)
  bool skipped;         // l_i = 0: the interval I_{l_i+1}(e_{l_i-1} + e_{l_i}) is undefined
  std::int64_t min_value;  // min of n|K_n| over I_{l_i+1}(e_{l_i-1} + e_{l_i})
  Rational bound;       // 2^{2 l_i}/16
  bool pass;
};

std::vector<Lemma3Row> lemma3_check(Index n);

/// The three terms of the lower-bound argument for block i (l_i >= 2),
/// maximized over the cells of I_{l_i+1}(e_{l_i-1}+e_{l_i}).
struct Lemma3Chain {
  int block;
  int l;
  Rational term1;          // |2^l K_{2^l}(x)|, constant on the interval
  Rational term1_expected; // 2^{2l}/4
  Rational term2_max;
  Rational term2_bound;    // 2^{2l}/24 + 2^l/4 - 2/3
  Rational term3_max;
  Rational term3_bound;    // 2^{2l}/12 - 1/3
  Rational min_difference; // min over x of n|K_n(x)| - (I - II - III)(x)
  bool pass;
};

/// Requires block i (1-based) of n to have l_i >= 2.
Lemma3Chain lemma3_proof_chain(Index n, int block);

}  // namespace walshfejer
