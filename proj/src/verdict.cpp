#include "qcausal/verdict.hpp"

#include <limits>
#include <stdexcept>

namespace qcausal {

const char* to_string(VerdictKind k) {
  return k == VerdictKind::kLatent ? "Latent" : "TriangleOrDirect";
}

Verdict decide(const std::vector<BetaRun>& runs, double threshold, double alpha,
               double entropy_x, double entropy_y) {
  Verdict v;
  v.per_beta = runs;
  v.threshold = threshold;
  v.alpha = alpha;
  v.theta = alpha * std::min(entropy_x, entropy_y);
  v.min_entropy_z = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].cmi <= threshold) {
      v.qualifying.push_back(static_cast<int>(i));
      if (v.qualifying.size() == 1 || runs[i].entropy_z < v.min_entropy_z) v.min_entropy_z = runs[i].entropy_z;
    }
  }
  // equality goes to the Latent branch
  bool latent = !v.qualifying.empty() && !(v.min_entropy_z > v.theta);
  v.kind = latent ? VerdictKind::kLatent : VerdictKind::kTriangleOrDirect;
  return v;
}

std::vector<double> linspace_open(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("beta count must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("beta interval must satisfy lo < hi");
  std::vector<double> out;
  out.reserve(count);
  double step = (hi - lo) / (count + 1);
  for (int i = 1; i <= count; ++i) out.push_back(lo + step * i);
  return out;
}

namespace {
std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          std::uint64_t d) {
  std::uint64_t h = splitmix(master);
  for (std::uint64_t v : {a, b, c, d}) h = splitmix(h ^ splitmix(v + 0x51ed270b27ULL));
  return h;
}

}  // namespace qcausal
