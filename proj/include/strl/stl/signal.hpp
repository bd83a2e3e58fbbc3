#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "strl/error.hpp"

namespace strl::stl {

/// Finite discrete-time signal of fixed-dimension points. Reads outside the
/// sampled range return the first or last sample.
class Signal {
 public:
  Signal() = default;

  explicit Signal(std::size_t dimension) : dim_(dimension) {}

  Signal(std::initializer_list<std::vector<double>> points) {
    for (const auto& p : points) push_back(p);
  }

  explicit Signal(const std::vector<std::vector<double>>& points) {
    for (const auto& p : points) push_back(p);
  }

  void push_back(std::span<const double> point) {
    if (empty() && dim_ == 0) dim_ = point.size();
    if (point.size() != dim_) {
      throw EvaluationError("sample of dimension " + std::to_string(point.size()) +
                            " in signal of dimension " + std::to_string(dim_));
    }
    data_.insert(data_.end(), point.begin(), point.end());
    ++length_;
  }

  void push_back(const std::vector<double>& point) { push_back(std::span<const double>(point)); }

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::size_t dimension() const noexcept { return dim_; }

  /// Padded access.
  std::span<const double> at(std::ptrdiff_t t) const {
    if (empty()) throw EvaluationError("cannot index an empty signal");
    const auto last = static_cast<std::ptrdiff_t>(length_) - 1;
    const auto i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(t, 0, last));
    return {data_.data() + i * dim_, dim_};
  }

  std::span<const double> operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  /// Samples [begin, begin + count), padded.
  Signal slice(std::ptrdiff_t begin, std::size_t count) const {
    Signal out(dim_);
    for (std::size_t k = 0; k < count; ++k) out.push_back(at(begin + static_cast<std::ptrdiff_t>(k)));
    return out;
  }

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> data_;
  std::size_t dim_ = 0;
  std::size_t length_ = 0;
};

}  // namespace strl::stl
