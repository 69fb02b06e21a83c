#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcausal {

enum class VerdictKind { kLatent, kTriangleOrDirect };

const char* to_string(VerdictKind k);

struct BetaRun {
  double beta = 0.0;
  double cmi = 0.0;      // I(X;Y|Z) of the final iterate, bits
  double entropy_z = 0.0;  // H(Z) or S(Z), bits
};

struct Verdict {
  VerdictKind kind = VerdictKind::kTriangleOrDirect;
  double min_entropy_z = 0.0;     // NaN when the qualifying set is empty
  std::vector<int> qualifying;    // indices into per_beta with cmi <= threshold
  std::vector<BetaRun> per_beta;
  double theta = 0.0;
  double threshold = 0.0;
  double alpha = 0.0;
};
using QuantumVerdict = Verdict;

// Decision rule shared by the classical and quantum searches:
// Latent iff some run has cmi <= threshold and the smallest entropy among
// those runs is <= alpha * min(entropy_x, entropy_y).
Verdict decide(const std::vector<BetaRun>& runs, double threshold, double alpha,
               double entropy_x, double entropy_y);

std::vector<double> linspace_open(double lo, double hi, int count);

// Mix a master seed with grid coordinates.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0, std::uint64_t d = 0);

}  // namespace qcausal
