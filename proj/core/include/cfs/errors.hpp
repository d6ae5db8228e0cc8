#pragma once

#include <stdexcept>

namespace cfs {

// Configured resource ceiling hit (state budget, covering-count budget, ...).
// CLI maps this to exit code 2.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cfs
