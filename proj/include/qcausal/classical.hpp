#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qcausal/pmf.hpp"
#include "qcausal/verdict.hpp"

namespace qcausal {

double shannon_entropy(const std::vector<double>& p);
double shannon_entropy(const JointPMF& p);
double classical_mi(const JointPMF& pxy);
double classical_cmi(const JointPMF& qxyz);

struct SearchParams {
  double beta = 0.05;
  int iterations = 500;
  std::uint64_t seed = 0;
  int dim_z = 4;
};

// q(z|x,y) stored row-major over (x, y, z).
using ConditionalTable = std::vector<double>;
using ClassicalObserver = std::function<void(int iteration, const ConditionalTable&)>;

ConditionalTable random_conditional_table(int r, int m, int n, std::uint64_t seed);

// Apply one update of the alternating minimization to q(z|x,y).
ConditionalTable latent_update(const JointPMF& pxy, const ConditionalTable& cond, int n, double beta);

// The observer sees the initial table (iteration 0) and each update (1..N).
JointPMF latent_search(const JointPMF& pxy, const SearchParams& params,
                       const std::optional<ConditionalTable>& init = std::nullopt,
                       const ClassicalObserver& observer = nullptr);

struct InferOptions {
  double threshold = 0.001;
  double alpha = 0.8;
  std::vector<double> betas;
  int iterations = 500;
  int dim_z = 4;
  std::uint64_t seed = 0;
  int restarts = 1;
  int workers = 1;
};

BetaRun classical_beta_run(const JointPMF& pxy, const InferOptions& opt, int k);
std::vector<BetaRun> classical_beta_runs(const JointPMF& pxy, const InferOptions& opt);
Verdict infer_graph(const JointPMF& pxy, const InferOptions& opt);

}  // namespace qcausal
