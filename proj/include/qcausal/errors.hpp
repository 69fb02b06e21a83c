#pragma once

#include <stdexcept>
#include <string>

namespace qcausal {

// Eigensolver breakdown, NaN propagation, out-of-tolerance clamps.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcausal
