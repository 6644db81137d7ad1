#pragma once

#include <cstddef>
#include <vector>

#include "setnim/game.hpp"

namespace setnim {

// The position box [0,limit_0] x ... x [0,limit_{n-1}] with mixed-radix
// indexing; the last coordinate varies fastest, so every option of a
// position has a smaller index than the position itself.
class Box {
 public:
  explicit Box(std::vector<Height> limits);
  static Box cube(int n, Height bound) { return Box(std::vector<Height>(n, bound)); }
  // The box below `pos`, which holds every position reachable from it.
  static Box below(const Position& pos) { return Box(pos.heights); }

  int rank() const { return static_cast<int>(limits_.size()); }
  std::size_t size() const { return size_; }
  Height limit(int i) const { return limits_[i]; }
  std::size_t stride(int i) const { return strides_[i]; }

  bool contains(const Position& pos) const;
  std::size_t index(const Position& pos) const;
  Position position(std::size_t index) const;
  // Leading coordinate of an index; sweeps are chunked on it.
  Height leading(std::size_t index) const { return static_cast<Height>(index / strides_[0]); }

 private:
  std::vector<Height> limits_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Number of positions in the box, saturating at SIZE_MAX.
std::size_t box_volume(const std::vector<Height>& limits);

}  // namespace setnim
