#include "setnim/box.hpp"

#include <limits>

#include "setnim/error.hpp"

namespace setnim {

std::size_t box_volume(const std::vector<Height>& limits) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t volume = 1;
  for (Height h : limits) {
    const auto side = static_cast<std::size_t>(h) + 1;
    if (volume > kMax / side) return kMax;
    volume *= side;
  }
  return volume;
}

Box::Box(std::vector<Height> limits) : limits_(std::move(limits)), strides_(limits_.size(), 1) {
  for (Height h : limits_)
    if (h < 0) fail(ErrorCode::NegativeHeight, "box limits must be non-negative");
  size_ = box_volume(limits_);
  if (size_ > (std::size_t{1} << 40)) fail(ErrorCode::BudgetExceeded, "position box too large");
  for (int i = rank() - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(limits_[i + 1] + 1);
}

bool Box::contains(const Position& pos) const {
  if (pos.size() != rank()) return false;
  for (int i = 0; i < rank(); ++i)
    if (pos[i] < 0 || pos[i] > limits_[i]) return false;
  return true;
}

std::size_t Box::index(const Position& pos) const {
  std::size_t idx = 0;
  for (int i = 0; i < rank(); ++i) idx += static_cast<std::size_t>(pos[i]) * strides_[i];
  return idx;
}

Position Box::position(std::size_t index) const {
  Position pos = Position::zeros(rank());
  for (int i = 0; i < rank(); ++i) {
    pos[i] = static_cast<Height>(index / strides_[i]);
    index %= strides_[i];
  }
  return pos;
}

}  // namespace setnim
