#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qcausal/classical.hpp"
#include "qcausal/models.hpp"
#include "qcausal/quantum.hpp"

namespace qcausal {

enum class ModelKind { kBsc2Latent, kBsc2Direct, kGqscLatent, kGqscDirect, kDepolLatent, kDepolDirect };
enum class Engine { kQuantum, kClassical, kRotateClassical };

const char* to_string(ModelKind m);
const char* to_string(Engine e);
ModelKind parse_model(const std::string& s);
Engine parse_engine(const std::string& s);
bool is_latent_model(ModelKind m);

struct ModelParams {
  double q = 0.4;
  // Mixture components; component 0 carries weight q. gqsc uses only the
  // first entry, bsc2 none.
  std::vector<Amplitudes> amps;
};

ModelParams default_params(ModelKind m);

struct GeneratedState {
  std::optional<JointPMF> pxy;  // bsc2 models only
  std::optional<JointPMF> pxyz; // bsc2-latent only
  DensityMatrix rho_xy;
  std::optional<DensityMatrix> rho_zxy;
};

GeneratedState generate(ModelKind m, const ModelParams& params, double p1, double p2);

struct SweepConfig {
  ModelKind model = ModelKind::kDepolLatent;
  Engine engine = Engine::kQuantum;
  std::vector<double> p_grid;
  std::vector<double> alphas;
  double beta_lo = 0.7;
  double beta_hi = 0.8;
  int beta_count = 50;
  int iterations = 500;
  double threshold = 0.05;
  int dim_z = 2;
  std::uint64_t seed = 1;
  int restarts = 1;
  int workers = 0;
  UpdateRule rule = UpdateRule::kSymmetrized;
  ModelParams params;
};

std::vector<double> full_p_grid();
std::vector<double> fast_p_grid();

// Defaults for a model/engine pair: dim Z, β count, threshold, grid.
SweepConfig default_sweep_config(ModelKind m, Engine e);
// The CI profile: 20 β values, 200 iterations, 5×5 grid.
void apply_fast_profile(SweepConfig& c);

struct CellResult {
  int row = 0;
  int col = 0;
  double p1 = 0.0;  // NaN for direct models
  double p2 = 0.0;  // p for direct models
  double entropy_x = 0.0;
  double entropy_y = 0.0;
  std::vector<BetaRun> runs;
  std::string error;  // non-empty when the cell failed numerically
};

struct VerdictGrid {
  SweepConfig config;
  std::vector<double> rows;  // p1 values; a single NaN row for direct models
  std::vector<double> cols;
  std::vector<CellResult> cells;  // row-major
  std::string timestamp;          // optional, left out of the file when empty

  const CellResult& cell(int r, int c) const { return cells[r * cols.size() + c]; }
};

VerdictGrid run_sweep(const SweepConfig& config);
std::optional<Verdict> cell_verdict(const VerdictGrid& g, const CellResult& cell, double alpha);

// "T" when the verdict matches the model's ground truth (Latent for latent
// models, TriangleOrDirect for direct ones), "F" otherwise, "E" on failure.
std::string render_table(const VerdictGrid& g);
nlohmann::json grid_to_json(const VerdictGrid& g);
nlohmann::json config_to_json(const SweepConfig& c);

// Single-state inference dispatch used by the CLI.
struct InferInput {
  std::optional<DensityMatrix> rho_xy;
  std::optional<JointPMF> pxy;
};
Verdict run_inference(const InferInput& in, Engine engine, const std::vector<double>& betas, double threshold,
                      double alpha, int iterations, int dim_z, std::uint64_t seed, int restarts, int workers,
                      UpdateRule rule);

struct TradeoffPoint {
  double beta;
  double cmi;
  double entropy_z;
};
std::vector<TradeoffPoint> tradeoff_curve(const DensityMatrix& rho_xy, const std::vector<double>& betas,
                                          int iterations, int dim_z, std::uint64_t seed, int restarts,
                                          int workers, UpdateRule rule);
std::string tradeoff_csv(const std::vector<TradeoffPoint>& pts);

}  // namespace qcausal
