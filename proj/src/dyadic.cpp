#include "walshfejer/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace walshfejer {

int order(Index n) {
  if (n == 0) throw std::invalid_argument("order of 0 is undefined");
  return 63 - std::countl_zero(n);
}

int variation(Index n) {
  if (n == 0) return 0;
  int v = static_cast<int>(n & 1u);
  // The sum runs one step past the top bit, where the expansion drops to 0.
  for (int k = 1; k <= order(n) + 1; ++k) {
    int hi = k < 64 ? static_cast<int>((n >> k) & 1u) : 0;
    int lo = static_cast<int>((n >> (k - 1)) & 1u);
    v += hi != lo ? 1 : 0;
  }
  return v;
}

BlockDecomposition block_decomposition(Index n) {
  if (n == 0) throw std::invalid_argument("block decomposition of 0 is undefined");
  BlockDecomposition out;
  int k = 0;
  while (k < 64) {
    if (((n >> k) & 1u) == 0) {
      ++k;
      continue;
    }
    int low = k;
    while (k < 64 && ((n >> k) & 1u)) ++k;
    out.push_back({low, k - 1});
  }
  return out;
}

std::vector<int> set_bits(Index n) {
  std::vector<int> out;
  for (int k = 0; k < 64; ++k)
    if ((n >> k) & 1u) out.push_back(k);
  return out;
}

Index prefix_part(Index n, int i) {
  auto bits = set_bits(n);
  int s = static_cast<int>(bits.size());
  if (i < 2 || i > s)
    throw std::out_of_range("prefix_part: i=" + std::to_string(i) + " outside [2, " +
                            std::to_string(s) + "]");
  Index out = 0;
  for (int j = 0; j < i - 1; ++j) out += Index{1} << bits[j];
  return out;
}

bool in_A02(Index n) { return (n & 7u) == 5u; }

BitIndex::BitIndex(Index n)
    : n_(n), order_(walshfejer::order(n)), variation_(walshfejer::variation(n)),
      blocks_(block_decomposition(n)) {}

std::vector<int> BitIndex::bits() const {
  std::vector<int> out(static_cast<std::size_t>(order_) + 1);
  for (int k = 0; k <= order_; ++k) out[k] = bit(k);
  return out;
}

DyadicPoint::DyadicPoint(int resolution, Index cell) : resolution_(resolution), cell_(cell) {
  if (resolution < 0 || resolution > kMaxResolution)
    throw std::out_of_range("resolution " + std::to_string(resolution) + " out of range");
  if (resolution < 64 && (cell >> resolution) != 0)
    throw std::out_of_range("cell index " + std::to_string(cell) + " exceeds resolution " +
                            std::to_string(resolution));
}

DyadicPoint DyadicPoint::unit(int k, int resolution) {
  if (k < 0 || k >= resolution)
    throw std::out_of_range("e_" + std::to_string(k) + " needs resolution > " + std::to_string(k));
  return DyadicPoint(resolution, Index{1} << k);
}

int DyadicPoint::coord(int k) const {
  if (k < 0) throw std::out_of_range("negative coordinate");
  if (k >= resolution_) return 0;
  return static_cast<int>((cell_ >> k) & 1u);
}

DyadicPoint operator+(const DyadicPoint& a, const DyadicPoint& b) {
  return DyadicPoint(std::max(a.resolution_, b.resolution_), a.cell_ ^ b.cell_);
}

DyadicInterval::DyadicInterval(int depth, const DyadicPoint& anchor) : depth_(depth), key_(0) {
  if (depth < 0 || depth > kMaxResolution) throw std::out_of_range("interval depth out of range");
  if (depth > anchor.resolution())
    throw std::invalid_argument("anchor resolution " + std::to_string(anchor.resolution()) +
                                " is below interval depth " + std::to_string(depth));
  key_ = anchor.cell() & mask();
}

bool DyadicInterval::contains(const DyadicPoint& x) const {
  for (int k = 0; k < depth_; ++k)
    if (x.coord(k) != static_cast<int>((key_ >> k) & 1u)) return false;
  return true;
}

std::vector<Index> DyadicInterval::cells(int resolution) const {
  if (resolution < depth_) throw std::invalid_argument("resolution below interval depth");
  Index count = Index{1} << (resolution - depth_);
  std::vector<Index> out;
  out.reserve(count);
  for (Index j = 0; j < count; ++j) out.push_back(key_ | (j << depth_));
  return out;
}

std::vector<DyadicInterval> complement_partition(int M) {
  if (M < 1) throw std::invalid_argument("complement_partition needs M >= 1");
  std::vector<DyadicInterval> out;
  out.reserve(static_cast<std::size_t>(M) * (M - 1) / 2 + M);
  for (int k = 0; k + 2 <= M; ++k)
    for (int l = k + 1; l < M; ++l)
      out.emplace_back(l + 1, DyadicPoint(l + 1, (Index{1} << k) | (Index{1} << l)));
  for (int k = 0; k < M; ++k) out.emplace_back(M, DyadicPoint::unit(k, M));
  return out;
}

}  // namespace walshfejer
