#include "qcausal/pmf.hpp"

#include <cmath>
#include <stdexcept>

namespace qcausal {

JointPMF::JointPMF(std::vector<int> supports, std::vector<double> probs)
    : supports_(std::move(supports)), probs_(std::move(probs)) {
  std::size_t total = 1;
  for (int s : supports_) {
    if (s < 1) throw std::invalid_argument("JointPMF: support size must be >= 1");
    total *= static_cast<std::size_t>(s);
  }
  if (supports_.empty() || total != probs_.size())
    throw std::invalid_argument("JointPMF: probability count does not match supports");
  double sum = 0.0;
  for (double v : probs_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("JointPMF: negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("JointPMF: probabilities do not sum to 1");
}

JointPMF JointPMF::marginal(const std::vector<int>& keep) const {
  const std::size_t k = supports_.size();
  std::vector<bool> kept(k, false);
  std::vector<int> out_sup;
  for (int a : keep) {
    if (a < 0 || a >= static_cast<int>(k) || kept[a]) throw std::invalid_argument("JointPMF::marginal: bad axis");
    kept[a] = true;
  }
  for (std::size_t a = 0; a < k; ++a)
    if (kept[a]) out_sup.push_back(supports_[a]);
  std::size_t out_n = 1;
  for (int s : out_sup) out_n *= s;
  std::vector<double> out(out_n, 0.0);
  std::vector<int> idx(k, 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t a = 0; a < k; ++a)
      if (kept[a]) o = o * supports_[a] + idx[a];
    out[o] += probs_[flat];
    for (int a = static_cast<int>(k) - 1; a >= 0; --a) {
      if (++idx[a] < supports_[a]) break;
      idx[a] = 0;
    }
  }
  JointPMF r;
  r.supports_ = out_sup;
  r.probs_ = out;
  return r;
}

}  // namespace qcausal
