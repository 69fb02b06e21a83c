#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcausal/states.hpp"
#include "qcausal/verdict.hpp"

namespace qcausal {

// How the three update factors are combined into the next conditional.
//   kProduct: (I⊗ρ_Z^{β−1})·ρ(Z|X)·ρ(Z|Y) as printed, then hermitize + clip.
//   kSymmetrized: ρ_Z^{(β−1)/2} sandwich of ½(ρ(Z|X)ρ(Z|Y) + ρ(Z|Y)ρ(Z|X)).
//   kLogDomain: exp(log ρ(Z|X) + log ρ(Z|Y) + (β−1)·log ρ_Z).
// All three coincide when the factors commute (diagonal inputs).
enum class UpdateRule { kProduct, kSymmetrized, kLogDomain };

const char* to_string(UpdateRule r);
UpdateRule parse_update_rule(const std::string& s);

struct QuantumSearchParams {
  double beta = 0.75;
  int iterations = 500;
  int dim_z = 2;
  std::uint64_t seed = 0;
  double eig_floor = kEigFloor;
  UpdateRule rule = UpdateRule::kSymmetrized;
};

struct LossValue {
  double loss = 0.0;
  double loss_expanded = 0.0;
};

// Both forms of I_Q(X;Y|Z) + βS(Z); the expanded one goes through
// S(Z|X) + S(Z|Y) − S(Z|X,Y) + (β−1)S(Z) + I_Q(X;Y).
LossValue q_loss(const DensityMatrix& rho_xyz, double beta);

ConditionalState normalize_conditional(const CMatrix& m, const SystemLayout& xyz,
                                       double floor = kEigFloor);
ConditionalState random_conditional_init(const SystemLayout& xyz, std::uint64_t seed);

// Layout of the search space: the two factors of ρ_XY followed by "Z".
SystemLayout search_layout(const SystemLayout& xy, int dim_z);

// ρ_XYZ = (ρ_XY^{1/2}⊗I_Z) C (ρ_XY^{1/2}⊗I_Z)
CMatrix assemble_joint(const CMatrix& sqrt_xy, const CMatrix& cond, int dim_z);

// One update of the conditional (returns the normalized next conditional).
CMatrix q_latent_update(const CMatrix& sqrt_xy, const CMatrix& cond, const SystemLayout& xyz,
                        double beta, UpdateRule rule, double floor = kEigFloor);

using QuantumObserver = std::function<void(int iteration, const CMatrix& conditional)>;

// The observer sees the initial conditional (iteration 0) and each update.
DensityMatrix q_latent_search(const DensityMatrix& rho_xy, const QuantumSearchParams& params,
                              const std::optional<ConditionalState>& init = std::nullopt,
                              const QuantumObserver& observer = nullptr);

struct QInferOptions {
  double threshold = 0.05;
  double alpha = 0.8;
  std::vector<double> betas;
  int iterations = 500;
  int dim_z = 2;
  std::uint64_t seed = 0;
  int restarts = 1;
  int workers = 1;
  UpdateRule rule = UpdateRule::kSymmetrized;
};

// One β run (best of opt.restarts, by loss), seeded from (opt.seed, k).
BetaRun quantum_beta_run(const DensityMatrix& rho_xy, const QInferOptions& opt, int k);
std::vector<BetaRun> quantum_beta_runs(const DensityMatrix& rho_xy, const QInferOptions& opt);
QuantumVerdict q_infer_graph(const DensityMatrix& rho_xy, const QInferOptions& opt);

// min over the two marginal entropies of a two-factor state
std::pair<double, double> marginal_entropies(const DensityMatrix& rho_xy);

}  // namespace qcausal
