#include "qcausal/sweep.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "qcausal/io.hpp"
#include "qcausal/pool.hpp"

namespace qcausal {

using nlohmann::json;

namespace {

struct ModelName {
  ModelKind kind;
  const char* name;
};
constexpr ModelName kModels[] = {
    {ModelKind::kBsc2Latent, "bsc2-latent"},   {ModelKind::kBsc2Direct, "bsc2-direct"},
    {ModelKind::kGqscLatent, "gqsc-latent"},   {ModelKind::kGqscDirect, "gqsc-direct"},
    {ModelKind::kDepolLatent, "depol-latent"}, {ModelKind::kDepolDirect, "depol-direct"},
};

bool is_bsc2(ModelKind m) { return m == ModelKind::kBsc2Latent || m == ModelKind::kBsc2Direct; }

}  // namespace

const char* to_string(ModelKind m) {
  for (const auto& e : kModels)
    if (e.kind == m) return e.name;
  return "?";
}

const char* to_string(Engine e) {
  switch (e) {
    case Engine::kQuantum: return "quantum";
    case Engine::kClassical: return "classical";
    case Engine::kRotateClassical: return "rotate-then-classical";
  }
  return "?";
}

ModelKind parse_model(const std::string& s) {
  for (const auto& e : kModels)
    if (s == e.name) return e.kind;
  throw std::invalid_argument("unknown model '" + s + "'");
}

Engine parse_engine(const std::string& s) {
  if (s == "quantum") return Engine::kQuantum;
  if (s == "classical") return Engine::kClassical;
  if (s == "rotate-then-classical" || s == "rotate") return Engine::kRotateClassical;
  throw std::invalid_argument("unknown engine '" + s + "'");
}

bool is_latent_model(ModelKind m) {
  return m == ModelKind::kBsc2Latent || m == ModelKind::kGqscLatent || m == ModelKind::kDepolLatent;
}

ModelParams default_params(ModelKind m) {
  ModelParams p;
  p.q = 0.4;
  const double h = 1.0 / std::sqrt(2.0);
  if (m == ModelKind::kDepolLatent || m == ModelKind::kDepolDirect)
    p.amps = {{0.6, 0.8}, {h, h}};  // 0.4·(0.6,0.8) + 0.6·(1/√2,1/√2)
  else if (m == ModelKind::kGqscLatent || m == ModelKind::kGqscDirect)
    p.amps = {{h, h}};
  return p;
}

GeneratedState generate(ModelKind m, const ModelParams& params, double p1, double p2) {
  auto need = [&](std::size_t k) {
    if (params.amps.size() < k)
      throw std::invalid_argument(std::string(to_string(m)) + " needs " + std::to_string(k) + " amplitude pair(s)");
  };
  switch (m) {
    case ModelKind::kBsc2Latent: {
      auto c = bsc2_latent(params.q, p1, p2);
      return {c.pxy, c.pxyz, c.rho_xy, std::nullopt};
    }
    case ModelKind::kBsc2Direct: {
      auto c = bsc2_direct(params.q, p2);
      return {c.pxy, std::nullopt, c.rho_xy, std::nullopt};
    }
    case ModelKind::kGqscLatent: {
      need(1);
      auto s = gqsc_latent(params.amps[0], params.q, p1, p2);
      return {std::nullopt, std::nullopt, s.rho_xy, s.rho_zxy};
    }
    case ModelKind::kGqscDirect:
      need(1);
      return {std::nullopt, std::nullopt, gqsc_direct(params.amps[0], params.q, p2), std::nullopt};
    case ModelKind::kDepolLatent: {
      need(2);
      auto s = depolarizing_latent(params.amps[0], params.amps[1], params.q, p1, p2);
      return {std::nullopt, std::nullopt, s.rho_xy, s.rho_zxy};
    }
    case ModelKind::kDepolDirect:
      need(2);
      return {std::nullopt, std::nullopt, depolarizing_direct(params.amps[0], params.amps[1], params.q, p2),
              std::nullopt};
  }
  throw std::invalid_argument("unknown model");
}

std::vector<double> full_p_grid() { return {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}; }
std::vector<double> fast_p_grid() { return {0.01, 0.3, 0.5, 0.7, 0.99}; }

SweepConfig default_sweep_config(ModelKind m, Engine e) {
  SweepConfig c;
  c.model = m;
  c.engine = e;
  c.p_grid = full_p_grid();
  c.alphas = {0.8};
  c.params = default_params(m);
  c.dim_z = is_bsc2(m) && e != Engine::kRotateClassical ? 4 : 2;
  c.beta_count = is_bsc2(m) && e == Engine::kQuantum ? 100 : 50;
  c.threshold = e == Engine::kQuantum ? 0.05 : 0.001;
  return c;
}

void apply_fast_profile(SweepConfig& c) {
  c.beta_count = 20;
  c.iterations = 200;
  c.p_grid = fast_p_grid();
}

namespace {

// Either the density matrix or a PMF, depending on the engine.
struct PreparedCell {
  std::optional<DensityMatrix> rho;
  std::optional<JointPMF> pmf;
};

PreparedCell prepare(const GeneratedState& s, Engine e) {
  PreparedCell p;
  switch (e) {
    case Engine::kQuantum: p.rho = s.rho_xy; break;
    case Engine::kClassical:
      if (!s.pxy) throw std::invalid_argument("the classical engine needs a model with a joint PMF (bsc2-*)");
      p.pmf = *s.pxy;
      break;
    case Engine::kRotateClassical: p.pmf = rotate_to_pmf(s.rho_xy).pmf; break;
  }
  return p;
}

std::pair<double, double> prepared_entropies(const PreparedCell& p) {
  if (p.rho) return marginal_entropies(*p.rho);
  return {shannon_entropy(p.pmf->marginal({0})), shannon_entropy(p.pmf->marginal({1}))};
}

BetaRun run_one(const PreparedCell& p, const std::vector<double>& betas, int k, double threshold, int iterations,
                int dim_z, std::uint64_t seed, int restarts, UpdateRule rule) {
  if (p.rho) {
    QInferOptions o;
    o.threshold = threshold;
    o.betas = betas;
    o.iterations = iterations;
    o.dim_z = dim_z;
    o.seed = seed;
    o.restarts = restarts;
    o.rule = rule;
    return quantum_beta_run(*p.rho, o, k);
  }
  InferOptions o;
  o.threshold = threshold;
  o.betas = betas;
  o.iterations = iterations;
  o.dim_z = dim_z;
  o.seed = seed;
  o.restarts = restarts;
  return classical_beta_run(*p.pmf, o, k);
}

}  // namespace

VerdictGrid run_sweep(const SweepConfig& config) {
  if (config.p_grid.empty()) throw std::invalid_argument("sweep: p grid is empty");
  if (config.alphas.empty()) throw std::invalid_argument("sweep: alpha list is empty");
  const auto betas = linspace_open(config.beta_lo, config.beta_hi, config.beta_count);
  VerdictGrid g;
  g.config = config;
  g.cols = config.p_grid;
  const bool latent = is_latent_model(config.model);
  g.rows = latent ? config.p_grid : std::vector<double>{std::numeric_limits<double>::quiet_NaN()};

  std::vector<PreparedCell> prepared;
  for (std::size_t r = 0; r < g.rows.size(); ++r)
    for (std::size_t c = 0; c < g.cols.size(); ++c) {
      CellResult cell;
      cell.row = static_cast<int>(r);
      cell.col = static_cast<int>(c);
      cell.p1 = g.rows[r];
      cell.p2 = g.cols[c];
      PreparedCell pc;
      try {
        pc = prepare(generate(config.model, config.params, latent ? cell.p1 : 0.0, cell.p2), config.engine);
        std::tie(cell.entropy_x, cell.entropy_y) = prepared_entropies(pc);
        cell.runs.resize(betas.size());
      } catch (const NumericError& e) {
        cell.error = e.what();
      }
      g.cells.push_back(cell);
      prepared.push_back(std::move(pc));
    }

  const int nb = static_cast<int>(betas.size());
  const int tasks = static_cast<int>(g.cells.size()) * nb;
  std::mutex mu;
  parallel_for(tasks, config.workers, [&](int t) {
    const int ci = t / nb, k = t % nb;
    CellResult& cell = g.cells[ci];
    {
      std::lock_guard<std::mutex> lk(mu);
      if (!cell.error.empty()) return;
    }
    try {
      std::uint64_t seed = derive_seed(config.seed, cell.row, cell.col);
      cell.runs[k] = run_one(prepared[ci], betas, k, config.threshold, config.iterations, config.dim_z, seed,
                             config.restarts, config.rule);
    } catch (const NumericError& e) {
      std::lock_guard<std::mutex> lk(mu);
      if (cell.error.empty()) cell.error = "beta " + std::to_string(k) + ": " + e.what();
    }
  });
  return g;
}

std::optional<Verdict> cell_verdict(const VerdictGrid& g, const CellResult& cell, double alpha) {
  if (!cell.error.empty()) return std::nullopt;
  return decide(cell.runs, g.config.threshold, alpha, cell.entropy_x, cell.entropy_y);
}

namespace {

std::string fmt_p(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string mark(const VerdictGrid& g, const CellResult& cell, double alpha) {
  auto v = cell_verdict(g, cell, alpha);
  if (!v) return "E";
  bool want_latent = is_latent_model(g.config.model);
  return (v->kind == VerdictKind::kLatent) == want_latent ? "T" : "F";
}

}  // namespace

std::string render_table(const VerdictGrid& g) {
  std::ostringstream os;
  const int w = 6;
  os << "model " << to_string(g.config.model) << ", engine " << to_string(g.config.engine) << "\n";
  if (is_latent_model(g.config.model)) {
    for (double a : g.config.alphas) {
      os << "alpha = " << fmt_p(a) << " (rows p1, columns p2)\n";
      os << std::setw(w) << "p1\\p2";
      for (double c : g.cols) os << std::setw(w) << fmt_p(c);
      os << "\n";
      for (std::size_t r = 0; r < g.rows.size(); ++r) {
        os << std::setw(w) << fmt_p(g.rows[r]);
        for (std::size_t c = 0; c < g.cols.size(); ++c) os << std::setw(w) << mark(g, g.cell(r, c), a);
        os << "\n";
      }
    }
  } else {
    os << std::setw(w) << "a\\p";
    for (double c : g.cols) os << std::setw(w) << fmt_p(c);
    os << "\n";
    for (double a : g.config.alphas) {
      os << std::setw(w) << fmt_p(a);
      for (std::size_t c = 0; c < g.cols.size(); ++c) os << std::setw(w) << mark(g, g.cell(0, c), a);
      os << "\n";
    }
  }
  return os.str();
}

json config_to_json(const SweepConfig& c) {
  json amps = json::array();
  for (const auto& a : c.params.amps) amps.push_back({{"gamma", a.gamma}, {"lambda", a.lambda}});
  return {{"model", to_string(c.model)},
          {"engine", to_string(c.engine)},
          {"p_grid", c.p_grid},
          {"alphas", c.alphas},
          {"beta_lo", c.beta_lo},
          {"beta_hi", c.beta_hi},
          {"beta_count", c.beta_count},
          {"iterations", c.iterations},
          {"threshold", c.threshold},
          {"dim_z", c.dim_z},
          {"seed", c.seed},
          {"restarts", c.restarts},
          {"update_rule", to_string(c.rule)},
          {"q", c.params.q},
          {"amplitudes", amps}};
}

json grid_to_json(const VerdictGrid& g) {
  json cells = json::array();
  for (const auto& cell : g.cells) {
    json jc = {{"row", cell.row}, {"col", cell.col}};
    if (std::isfinite(cell.p1)) jc["p1"] = cell.p1;
    jc["p2"] = cell.p2;
    if (!cell.error.empty()) {
      jc["error"] = cell.error;
    } else {
      jc["entropy_x"] = cell.entropy_x;
      jc["entropy_y"] = cell.entropy_y;
      json verdicts = json::array();
      for (double a : g.config.alphas) {
        Verdict v = *cell_verdict(g, cell, a);
        json qual = json::array();
        for (int i : v.qualifying) qual.push_back(v.per_beta[i].beta);
        verdicts.push_back({{"alpha", a},
                            {"verdict", to_string(v.kind)},
                            {"theta", v.theta},
                            {"min_entropy_z", std::isfinite(v.min_entropy_z) ? json(v.min_entropy_z) : json()},
                            {"qualifying_betas", qual}});
      }
      jc["verdicts"] = verdicts;
      json runs = json::array();
      for (const auto& r : cell.runs) runs.push_back({r.beta, r.cmi, r.entropy_z});
      jc["per_beta"] = runs;  // [beta, cmi, entropy_z]
    }
    cells.push_back(jc);
  }
  json out = {{"schema", kGridSchema}, {"config", config_to_json(g.config)}};
  if (!g.timestamp.empty()) out["timestamp"] = g.timestamp;
  out["rows"] = is_latent_model(g.config.model) ? json(g.rows) : json::array();
  out["cols"] = g.cols;
  out["cells"] = cells;
  return out;
}

Verdict run_inference(const InferInput& in, Engine engine, const std::vector<double>& betas, double threshold,
                      double alpha, int iterations, int dim_z, std::uint64_t seed, int restarts, int workers,
                      UpdateRule rule) {
  PreparedCell p;
  switch (engine) {
    case Engine::kQuantum:
      if (!in.rho_xy) throw std::invalid_argument("the quantum engine needs a density-matrix input");
      p.rho = in.rho_xy;
      break;
    case Engine::kClassical:
      if (in.pxy)
        p.pmf = in.pxy;
      else
        throw std::invalid_argument("the classical engine needs a PMF input");
      break;
    case Engine::kRotateClassical:
      if (!in.rho_xy) throw std::invalid_argument("rotation needs a density-matrix input");
      p.pmf = rotate_to_pmf(*in.rho_xy).pmf;
      break;
  }
  if (betas.empty()) throw std::invalid_argument("beta list is empty");
  std::vector<BetaRun> runs(betas.size());
  parallel_for(static_cast<int>(betas.size()), workers, [&](int k) {
    runs[k] = run_one(p, betas, k, threshold, iterations, dim_z, seed, restarts, rule);
  });
  auto [ex, ey] = prepared_entropies(p);
  return decide(runs, threshold, alpha, ex, ey);
}

std::vector<TradeoffPoint> tradeoff_curve(const DensityMatrix& rho_xy, const std::vector<double>& betas,
                                          int iterations, int dim_z, std::uint64_t seed, int restarts,
                                          int workers, UpdateRule rule) {
  QInferOptions o;
  o.betas = betas;
  o.iterations = iterations;
  o.dim_z = dim_z;
  o.seed = seed;
  o.restarts = restarts;
  o.workers = workers;
  o.rule = rule;
  std::vector<TradeoffPoint> out;
  for (const auto& r : quantum_beta_runs(rho_xy, o)) out.push_back({r.beta, r.cmi, r.entropy_z});
  return out;
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& pts) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "beta,cmi,entropy_z\n";
  for (const auto& p : pts) os << p.beta << "," << p.cmi << "," << p.entropy_z << "\n";
  return os.str();
}

}  // namespace qcausal
