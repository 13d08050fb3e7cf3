#pragma once

#include <cstdint>
#include <vector>

#include "walshfejer/rational.hpp"

namespace walshfejer {

using Index = std::uint64_t;

/// Largest resolution a truncated point can carry (cell indices are 64-bit).
inline constexpr int kMaxResolution = 62;

// ---------------------------------------------------------------------------
// Bit combinatorics of nonnegative integers.
// ---------------------------------------------------------------------------

/// |n|: position of the highest set bit. Rejects n = 0.
int order(Index n);

/// V(n) = n_0 + sum_{k>=1} |n_k - n_{k-1}|, with V(0) = 0.
int variation(Index n);

/// A maximal run of set bits, positions low..high inclusive.
struct Block {
  int low;
  int high;
  friend bool operator==(const Block&, const Block&) = default;
};

using BlockDecomposition = std::vector<Block>;

/// Runs of 1-bits in increasing position order. Rejects n = 0.
BlockDecomposition block_decomposition(Index n);

/// n^(i): the sum of the i-1 lowest set bits of n, for 2 <= i <= popcount(n).
Index prefix_part(Index n, int i);

/// n = 2^0 + 2^2 + (bits at positions >= 3); the tail may be empty.
bool in_A02(Index n);

/// Set-bit positions n_1 < n_2 < ... < n_s.
std::vector<int> set_bits(Index n);

/// A positive integer together with its binary data.
class BitIndex {
 public:
  explicit BitIndex(Index n);

  Index value() const { return n_; }
  int bit(int k) const { return k < 64 ? static_cast<int>((n_ >> k) & 1u) : 0; }
  std::vector<int> bits() const;
  int order() const { return order_; }
  int variation() const { return variation_; }
  const BlockDecomposition& blocks() const { return blocks_; }

 private:
  Index n_;
  int order_;
  int variation_;
  BlockDecomposition blocks_;
};

// ---------------------------------------------------------------------------
// Geometry of the dyadic group at finite resolution.
// ---------------------------------------------------------------------------

/// A point of G truncated to its first `resolution` coordinates. Coordinate k
/// is bit k of the cell index. Coordinates past the resolution read as 0.
class DyadicPoint {
 public:
  DyadicPoint() = default;
  DyadicPoint(int resolution, Index cell);

  /// e_k at the given resolution.
  static DyadicPoint unit(int k, int resolution);

  int resolution() const { return resolution_; }
  Index cell() const { return cell_; }
  int coord(int k) const;
  Rational cell_measure() const { return pow2(-resolution_); }

  /// Coordinatewise addition mod 2; the result has the larger resolution.
  friend DyadicPoint operator+(const DyadicPoint& a, const DyadicPoint& b);
  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  int resolution_ = 0;
  Index cell_ = 0;
};

/// I_N(x): the points agreeing with the anchor on coordinates 0..N-1.
class DyadicInterval {
 public:
  DyadicInterval(int depth, const DyadicPoint& anchor);

  int depth() const { return depth_; }
  /// Anchor coordinates 0..depth-1 packed into an integer.
  Index key() const { return key_; }
  Rational measure() const { return pow2(-depth_); }
  bool contains(const DyadicPoint& x) const;
  bool contains_cell(Index cell) const { return (cell & mask()) == key_; }
  /// Cell indices of the interval at resolution M >= depth, increasing.
  std::vector<Index> cells(int resolution) const;
  Index mask() const { return depth_ == 0 ? 0 : ((Index{1} << depth_) - 1); }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

 private:
  int depth_;
  Index key_;
};

/// G \ I_M written as the disjoint union
///   (U_{k<l<M} I_{l+1}(e_k + e_l))  U  (U_{k<M} I_M(e_k)),
/// listed with the pair terms first (k outer, l inner) and then the singles.
std::vector<DyadicInterval> complement_partition(int M);

}  // namespace walshfejer
