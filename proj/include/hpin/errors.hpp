#ifndef HPIN_ERRORS_HPP
#define HPIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hpin {

// Requested system size exceeds a configured cap (exact DP, enumeration, dense matrices).
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantity is infinite for the requested parameters (non-summable correlations,
// annealed model ill-defined for kappa >= 1/2).
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hpin

#endif
