// SPDX-License-Identifier: Apache-2.0
#include "conebessel/partition.hpp"

#include <algorithm>
#include <sstream>

#include "conebessel/errors.hpp"

namespace conebessel {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0)
      throw ValidationError("partition parts must be positive (zeros only as trailing padding)");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw ValidationError("partition parts must be non-increasing");
    weight_ += parts_[i];
  }
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::vector<Partition> partitions_of(int k, int max_parts) {
  if (k < 0 || max_parts < 1) throw ValidationError("partitions_of: need k >= 0 and max_parts >= 1");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int v = std::min(remaining, cap); v >= 1; --v) {
      cur.push_back(v);
      self(self, remaining - v, v);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

std::vector<Partition> partitions_up_to(int k_max, int max_parts) {
  if (k_max < 0 || max_parts < 1)
    throw ValidationError("partitions_up_to: need k_max >= 0 and max_parts >= 1");
  std::vector<Partition> out;
  for (int k = 0; k <= k_max; ++k) {
    auto layer = partitions_of(k, max_parts);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

}  // namespace conebessel
