#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dss {

// Raised when an enumeration or search would exceed its configured budget.
// Domain violations use std::invalid_argument / std::out_of_range instead.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"),
        budget_(budget) {}

  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

}  // namespace dss
