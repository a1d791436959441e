// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace conebessel {

/// Integer partition lambda_1 >= lambda_2 >= ... > 0. Trailing zeros are
/// stripped on construction, so () is the empty partition.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  int weight() const noexcept { return weight_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }

  /// lambda_i for 0-based i; zero past the length.
  int operator[](int i) const noexcept {
    return i < length() ? parts_[static_cast<std::size_t>(i)] : 0;
  }
  const std::vector<int>& parts() const noexcept { return parts_; }

  /// Conjugate partition lambda'.
  Partition conjugate() const;

  std::string to_string() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of weight 0..k_max with at most max_parts parts, grouped by
/// weight, reverse-lexicographic inside each weight.
std::vector<Partition> partitions_up_to(int k_max, int max_parts);

/// Partitions of exactly k with at most max_parts parts, reverse-lexicographic.
std::vector<Partition> partitions_of(int k, int max_parts);

}  // namespace conebessel
