#pragma once

#include <vector>

namespace qcausal {

// Nonnegative array over discrete supports, row-major, summing to 1.
class JointPMF {
 public:
  JointPMF() = default;
  JointPMF(std::vector<int> supports, std::vector<double> probs);

  const std::vector<int>& supports() const { return supports_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t rank() const { return supports_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  double at(int x, int y) const { return probs_[x * supports_[1] + y]; }
  double at(int x, int y, int z) const {
    return probs_[(x * supports_[1] + y) * supports_[2] + z];
  }

  // Sum out every axis not listed; kept axes stay in original order.
  JointPMF marginal(const std::vector<int>& keep) const;

 private:
  std::vector<int> supports_;
  std::vector<double> probs_;
};

}  // namespace qcausal
