#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walshfejer/hardy.hpp"
#include "walshfejer/report.hpp"

namespace walshfejer {

enum class NumericMode { exact, floating };
enum class LogBase { two, natural };

std::string to_string(NumericMode mode);
std::string to_string(LogBase base);

/// Resolution caps. Going past them is an error, never a silent downgrade.
inline constexpr int kExactResolutionCap = 17;
inline constexpr int kFloatResolutionCap = 24;

/// Throws std::invalid_argument when `resolution` exceeds the cap of `mode`.
void check_resolution_cap(int resolution, NumericMode mode);

/// (1/N) sum_b m_b^p for magnitudes m_b >= 0.
Real lp_power(std::span<const Real> magnitudes, Real p);

/// ||g||_{L_{p,inf}}^p = max_v v^p mu(|g| >= v) for |g| given cellwise, each
/// cell of measure 1/N. Sorts only the magnitude octaves that can hold the
/// maximum.
Real weak_lp_power(std::span<const Real> magnitudes, Real p);

struct Theorem1aOptions {
  Rational p = Rational(1, 2);
  Index n_max = 4096;
  LogBase log = LogBase::two;
  NumericMode mode = NumericMode::exact;
  /// When the source is a p-atom on I_N, checks sigma_n F = 0 for n <= 2^N.
  std::optional<int> atom_depth;
};

/// Weighted sums W(n) = (1/log^{[1/2+p]} n) sum_{m<=n} ||sigma_m F||^p / m^{2-2p},
/// with the L_p quasinorm (primary) and the H_p quasinorm (secondary). The log
/// factor is clamped to at least 1.
ExperimentReport run_theorem1a(const DyadicMartingale& F, const Theorem1aOptions& options);

struct Theorem1bOptions {
  CounterexampleSpec spec = CounterexampleSpec::default_spec();
  NumericMode mode = NumericMode::exact;
};

/// Per block k: sum of ||sigma_n F||_{L_{p,inf}}^p / Phi(n) over n in A_{0,2}
/// with 2^{|alpha_k|} < n < 2^{|alpha_k|+1}, plus the pointwise checks on
/// I_2(e_0 + e_1).
ExperimentReport run_theorem1b(const Theorem1bOptions& options);

struct Theorem2Options {
  int m_min = 4;
  int m_max = 10;
  NumericMode mode = NumericMode::exact;
};

/// min over 1 <= m <= m_max, 0 < n < 2^m of
/// (2^m/(n+2^m))^{1/2} int |n K_n|^{1/2} / V(n), from kernel sweeps only.
Real theorem2_chain_constant(int m_max);

/// B_m = 2^{-(m+1)} sum_{k=2^m+1}^{2^{m+1}-1} ||sigma_k F_m||_{1/2}^{1/2}.
ExperimentReport run_theorem2(const Theorem2Options& options);

/// sum_{k<=n} V(k) and block counts against n log n, at powers of two up to n_max.
ExperimentReport run_fine_average(Index n_max);

struct KernelScanOptions {
  Index fejer_n_max = Index{1} << 14;
  Index dirichlet_n_max = Index{1} << 12;
  int lemma2_max_resolution = 6;
  Index lemma3_n_max = 2048;
  Index atom_tail_n_max = Index{1} << 12;
};

/// One report per scan: fejer_l1, dirichlet_sandwich, lemma2, lemma3,
/// lemma3_chain, atom_tail.
std::vector<ExperimentReport> run_kernel_scans(const KernelScanOptions& options);

}  // namespace walshfejer
