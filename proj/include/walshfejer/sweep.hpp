#pragma once

#include <algorithm>
#include <bit>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "walshfejer/walsh.hpp"

namespace walshfejer {

/// Incremental Fejer sweep over a fixed Walsh spectrum c_0..c_{2^R - 1}.
///
/// Keeps S_n = sum_{j<n} c_j w_j and T_n = sum_{k=1}^n S_k = n sigma_n on the
/// 2^R cells and moves n forward in aligned dyadic chunks: for a chunk
/// [a, a + L) with a a multiple of 2^s >= L, w_{a+r} = w_a w_r and w_r only
/// sees the low s coordinates, so the chunk collapses to two tables of size
/// 2^s and one pass over the cells.
///
/// Scalar is std::int64_t (exact, caller guards overflow), long double, or
/// Rational.
template <class Scalar>
class FejerSweep {
 public:
  FejerSweep(int resolution, std::vector<Scalar> spectrum)
      : resolution_(resolution), spectrum_(std::move(spectrum)),
        partial_(spectrum_.size(), Scalar(0)), cesaro_(spectrum_.size(), Scalar(0)) {
    if (resolution < 0 || resolution > 30 || spectrum_.size() != (std::size_t{1} << resolution))
      throw std::invalid_argument("FejerSweep: spectrum size does not match resolution");
  }

  int resolution() const { return resolution_; }
  Index position() const { return position_; }
  /// S_n at the current position n.
  std::span<const Scalar> partial_sums() const { return partial_; }
  /// T_n = n sigma_n at the current position n.
  std::span<const Scalar> cesaro_sums() const { return cesaro_; }

  void advance_to(Index target) {
    if (target < position_) throw std::invalid_argument("FejerSweep cannot move backwards");
    while (position_ < target) {
      Index remaining = target - position_;
      int level = 63 - std::countl_zero(remaining);
      if (position_ != 0) level = std::min(level, std::countr_zero(position_));
      apply(Index{1} << level, level, nullptr);
      position_ += Index{1} << level;
    }
  }

  void step() { advance_to(position_ + 1); }

  /// T_{n+d} for the current n, without moving. Cheapest when n is a
  /// multiple of the power of two at or above d.
  void cesaro_sums_ahead(Index d, std::vector<Scalar>& out) const {
    if (d == 0) {
      out.assign(cesaro_.begin(), cesaro_.end());
      return;
    }
    int level = d == 1 ? 0 : 64 - std::countl_zero(d - 1);
    if (position_ != 0 && std::countr_zero(position_) < level) {
      FejerSweep copy = *this;
      copy.advance_to(position_ + d);
      out.assign(copy.cesaro_.begin(), copy.cesaro_.end());
      return;
    }
    out.resize(cesaro_.size());
    const_cast<FejerSweep*>(this)->apply(d, level, &out);
  }

 private:
  static Scalar from_count(Index v) {
    if constexpr (std::is_arithmetic_v<Scalar>) {
      return static_cast<Scalar>(v);
    } else {
      return Scalar(static_cast<unsigned long>(v));
    }
  }

  // Adds the chunk [position_, position_ + len) with table level `level`
  // (position_ is a multiple of 2^level or zero, len <= 2^level). With
  // `ahead` set, writes T_{position_+len} there and leaves the state alone.
  void apply(Index len, int level, std::vector<Scalar>* ahead) {
    const Index cells = spectrum_.size();
    const Scalar len_s = from_count(len);
    if (position_ >= cells) {
      for (Index b = 0; b < cells; ++b) {
        if (ahead) {
          (*ahead)[b] = cesaro_[b] + len_s * partial_[b];
        } else {
          cesaro_[b] += len_s * partial_[b];
        }
      }
      return;
    }
    const int table_level = std::min(level, resolution_);
    const Index table_size = Index{1} << table_level;
    const Index used = std::min<Index>(len, cells - position_);
    std::vector<Scalar> g1(table_size, Scalar(0));
    std::vector<Scalar> g2(table_size, Scalar(0));
    for (Index r = 0; r < used; ++r) {
      g1[r] = spectrum_[position_ + r];
      g2[r] = from_count(len - r) * spectrum_[position_ + r];
    }
    walsh_hadamard_inplace(std::span<Scalar>(g1));
    walsh_hadamard_inplace(std::span<Scalar>(g2));
    const Index mask = table_size - 1;
    for (Index b = 0; b < cells; ++b) {
      const bool negative = (std::popcount(position_ & b) & 1) != 0;
      const Index t = b & mask;
      if (ahead) {
        Scalar v = cesaro_[b] + len_s * partial_[b];
        if (negative) {
          v -= g2[t];
        } else {
          v += g2[t];
        }
        (*ahead)[b] = v;
      } else {
        cesaro_[b] += len_s * partial_[b];
        if (negative) {
          cesaro_[b] -= g2[t];
          partial_[b] -= g1[t];
        } else {
          cesaro_[b] += g2[t];
          partial_[b] += g1[t];
        }
      }
    }
  }

  int resolution_;
  std::vector<Scalar> spectrum_;
  std::vector<Scalar> partial_;
  std::vector<Scalar> cesaro_;
  Index position_ = 0;
};

}  // namespace walshfejer
