#include "walshfejer/walsh.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "int_scaling.hpp"

namespace walshfejer {

namespace {

// Sum of |n K_n| over each class of cells agreeing on coordinates 0..M-1.
std::vector<std::int64_t> class_sums(Index n, int M, int resolution) {
  auto scaled = scaled_fejer_values(n, resolution);
  std::vector<std::int64_t> sums(std::size_t{1} << M, 0);
  const Index mask = (Index{1} << M) - 1;
  for (Index b = 0; b < scaled.size(); ++b) sums[b & mask] += std::llabs(scaled[b]);
  return sums;
}

Lemma2Value classify(Index n, int M, int resolution, Index key, std::int64_t sum) {
  Lemma2Value out{};
  // int_{I_M(x)} |K_n| dmu = sum |n K_n| / (n 2^R).
  out.integral = Rational(static_cast<long>(sum)) / Rational(static_cast<unsigned long>(n)) *
                 pow2(-resolution);
  out.k = std::countr_zero(key);
  Index rest = key & (key - 1);
  if (rest == 0) {
    out.pair_branch = false;
    out.l = -1;
    out.bound_factor = pow2(out.k - M);
  } else {
    out.pair_branch = true;
    out.l = std::countr_zero(rest);
    out.bound_factor = pow2(out.l + out.k - M) / Rational(static_cast<unsigned long>(n));
  }
  out.ratio = out.integral / out.bound_factor;
  return out;
}

void check_lemma2_args(Index n, int M) {
  if (M < 1 || M > 28) throw std::out_of_range("lemma2 depth out of range");
  if (n <= (Index{1} << M))
    throw std::invalid_argument("lemma2 needs n > 2^M (n=" + std::to_string(n) +
                                ", M=" + std::to_string(M) + ")");
}

}  // namespace

Lemma2Value lemma2_ratio(Index n, int M, const DyadicPoint& x) {
  check_lemma2_args(n, M);
  if (x.resolution() < M) throw std::invalid_argument("lemma2: point resolution below M");
  const Index key = x.cell() & ((Index{1} << M) - 1);
  if (key == 0) throw std::invalid_argument("lemma2: x lies in I_M");
  const int resolution = kernel_resolution(n);
  auto sums = class_sums(n, M, resolution);
  return classify(n, M, resolution, key, sums[key]);
}

std::vector<Lemma2Value> lemma2_profile(Index n, int M) {
  check_lemma2_args(n, M);
  const int resolution = kernel_resolution(n);
  auto sums = class_sums(n, M, resolution);
  std::vector<Lemma2Value> out;
  out.reserve(sums.size() - 1);
  for (Index key = 1; key < sums.size(); ++key) out.push_back(classify(n, M, resolution, key, sums[key]));
  return out;
}

namespace {

// Cells of I_{l+1}(e_{l-1} + e_l) at the given resolution.
std::vector<Index> lemma3_cells(int l, int resolution) {
  DyadicInterval interval(l + 1, DyadicPoint(l + 1, (Index{1} << (l - 1)) | (Index{1} << l)));
  return interval.cells(resolution);
}

}  // namespace

std::vector<Lemma3Row> lemma3_check(Index n) {
  const int resolution = kernel_resolution(n);
  auto blocks = block_decomposition(n);
  auto scaled = scaled_fejer_values(n, resolution);
  std::vector<Lemma3Row> rows;
  rows.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Lemma3Row row{static_cast<int>(i) + 1, blocks[i], false, 0, pow2(2 * blocks[i].low - 4), false};
    if (blocks[i].low == 0) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    std::int64_t lowest = std::numeric_limits<std::int64_t>::max();
    for (Index c : lemma3_cells(blocks[i].low, resolution)) lowest = std::min<std::int64_t>(lowest, std::llabs(scaled[c]));
    row.min_value = lowest;
    row.pass = Rational(static_cast<long>(lowest)) >= row.bound;
    rows.push_back(row);
  }
  return rows;
}

Lemma3Chain lemma3_proof_chain(Index n, int block) {
  auto blocks = block_decomposition(n);
  if (block < 1 || block > static_cast<int>(blocks.size()))
    throw std::out_of_range("lemma3_proof_chain: no block " + std::to_string(block));
  const int l = blocks[block - 1].low;
  if (l < 2) throw std::invalid_argument("lemma3_proof_chain needs l_i >= 2");
  const int resolution = kernel_resolution(n);
  auto scaled = scaled_fejer_values(n, resolution);

  Lemma3Chain out{};
  out.block = block;
  out.l = l;
  out.term1_expected = pow2(2 * l - 2);
  out.term2_bound = pow2(2 * l) / 24 + pow2(l) / 4 - Rational(2, 3);
  out.term3_bound = pow2(2 * l) / 12 - Rational(1, 3);
  bool first = true;
  bool term1_constant = true;
  std::int64_t term2_max = 0;
  std::int64_t term3_max = 0;
  std::int64_t min_difference = 0;
  for (Index x : lemma3_cells(l, resolution)) {
    std::int64_t t1 = std::llabs(scaled_fejer_power_at(l, x));
    std::int64_t t2 = 0;
    std::int64_t t3 = 0;
    for (int r = 0; r + 1 < block; ++r) {
      for (int k = blocks[r].low; k <= blocks[r].high; ++k) {
        t2 += std::llabs(scaled_fejer_power_at(k, x));
        t3 += (std::int64_t{1} << k) * std::llabs(dirichlet_power_at(k, x));
      }
    }
    std::int64_t difference = std::llabs(scaled[x]) - (t1 - t2 - t3);
    if (first) {
      out.term1 = Rational(static_cast<long>(t1));
      min_difference = difference;
      first = false;
    } else {
      if (Rational(static_cast<long>(t1)) != out.term1) term1_constant = false;
      min_difference = std::min(min_difference, difference);
    }
    term2_max = std::max(term2_max, t2);
    term3_max = std::max(term3_max, t3);
  }
  out.term2_max = Rational(static_cast<long>(term2_max));
  out.term3_max = Rational(static_cast<long>(term3_max));
  out.min_difference = Rational(static_cast<long>(min_difference));
  out.pass = term1_constant && out.term1 == out.term1_expected && out.term2_max <= out.term2_bound &&
             out.term3_max <= out.term3_bound && sgn(out.min_difference) >= 0;
  return out;
}

}  // namespace walshfejer
