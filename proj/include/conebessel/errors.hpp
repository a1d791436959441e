// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace conebessel {

/// Malformed input: wrong shape, non-Hermitian matrix, bad parameter.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematically valid call outside the domain where the quantity exists.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Generalized Pochhammer symbol vanished for a partition reached by a series.
class IndexPole : public DomainError {
 public:
  IndexPole(const std::string& partition, const std::string& detail)
      : DomainError("Pochhammer pole at partition " + partition + ": " + detail),
        partition_(partition) {}

  const std::string& partition() const noexcept { return partition_; }

 private:
  std::string partition_;
};

}  // namespace conebessel
