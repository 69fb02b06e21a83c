// qcausal command-line driver: channel, infer, sweep, tradeoff, rotate.
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcausal/io.hpp"
#include "qcausal/sweep.hpp"

using namespace qcausal;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kIo = 3 };

struct SearchFlags {
  double beta_lo = 0.7;
  double beta_hi = 0.8;
  std::optional<int> beta_count;
  std::optional<int> iters;
  std::optional<int> dim_z;
  std::optional<double> threshold;
  std::uint64_t seed = 1;
  int workers = 0;
  int restarts = 1;
  std::string update = to_string(UpdateRule::kSymmetrized);
};

void add_search_flags(CLI::App* app, SearchFlags& f) {
  app->add_option("--beta-lo", f.beta_lo, "lower end of the open beta interval");
  app->add_option("--beta-hi", f.beta_hi, "upper end of the open beta interval");
  app->add_option("--beta-count", f.beta_count, "number of beta values")->check(CLI::PositiveNumber);
  app->add_option("--iters", f.iters, "iterations per search run")->check(CLI::PositiveNumber);
  app->add_option("--dim-z", f.dim_z, "dimension of the latent system")->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--workers", f.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app->add_option("--restarts", f.restarts, "random restarts per beta")->check(CLI::PositiveNumber);
  app->add_option("--update", f.update, "quantum update rule: symmetrized | log-domain | product");
}

struct ModelFlags {
  std::string model;
  std::optional<double> q;
  double p = 0.1;
  double p1 = 0.1;
  double p2 = 0.1;
  std::vector<double> gammas;
  std::vector<double> lambdas;
};

ModelParams model_params(ModelKind kind, const ModelFlags& f) {
  ModelParams p = default_params(kind);
  if (f.q) p.q = *f.q;
  if (f.gammas.size() != f.lambdas.size())
    throw std::invalid_argument("--gamma and --lambda must be given the same number of times");
  if (!f.gammas.empty()) {
    p.amps.clear();
    for (std::size_t i = 0; i < f.gammas.size(); ++i) p.amps.push_back({f.gammas[i], f.lambdas[i]});
  }
  return p;
}

std::string now_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

InferInput load_input(const std::string& path) {
  auto j = read_json_file(path);
  InferInput in;
  std::string schema = j.is_object() && j.contains("schema") && j["schema"].is_string() ? j["schema"].get<std::string>() : "";
  if (schema == kDensitySchema)
    in.rho_xy = density_from_json(j);
  else if (schema == kPmfSchema)
    in.pxy = pmf_from_json(j);
  else
    throw IoError("'" + path + "' is neither a density-matrix nor a PMF document");
  if (in.rho_xy && in.rho_xy->layout().size() != 2)
    throw std::invalid_argument("expected a two-factor state (X,Y)");
  if (in.pxy && in.pxy->rank() != 2) throw std::invalid_argument("expected a two-way PMF p(x,y)");
  return in;
}

int input_dim(const InferInput& in) {
  if (in.rho_xy) return std::max(in.rho_xy->layout().dims()[0], in.rho_xy->layout().dims()[1]);
  return std::max(in.pxy->supports()[0], in.pxy->supports()[1]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic latent-confounder discovery on classical and quantum data"};
  app.require_subcommand(1);

  // channel
  ModelFlags cm;
  std::string channel_out = ".";
  auto* channel = app.add_subcommand("channel", "generate the model state files");
  channel->add_option("--model", cm.model, "bsc2-latent | bsc2-direct | gqsc-latent | gqsc-direct | depol-latent | depol-direct")->required();
  channel->add_option("--q", cm.q, "mixture weight");
  channel->add_option("--p", cm.p, "error probability (direct models)");
  channel->add_option("--p1", cm.p1, "error probability on X (latent models)");
  channel->add_option("--p2", cm.p2, "error probability on Y (latent models)");
  channel->add_option("--gamma", cm.gammas, "amplitude of |0>, repeatable");
  channel->add_option("--lambda", cm.lambdas, "amplitude of |1>, repeatable");
  channel->add_option("--out", channel_out, "output directory");

  // infer
  std::string infer_in, infer_out, infer_engine = "quantum";
  double infer_alpha = 0.8;
  SearchFlags inf;
  auto* infer = app.add_subcommand("infer", "run the inference on one state or PMF file");
  infer->add_option("input", infer_in, "density-matrix or PMF file")->required();
  infer->add_option("--engine", infer_engine, "quantum | classical | rotate-then-classical");
  infer->add_option("--alpha", infer_alpha, "entropy threshold scale");
  infer->add_option("--threshold", inf.threshold, "conditional mutual information threshold");
  infer->add_option("--out", infer_out, "verdict record path (default stdout)");
  add_search_flags(infer, inf);

  // sweep
  ModelFlags sm;
  std::string sweep_engine = "quantum", sweep_out;
  std::vector<double> sweep_alphas, sweep_grid;
  bool fast = false, full = false, stamp = false;
  SearchFlags sw;
  auto* sweep = app.add_subcommand("sweep", "sweep the error-probability grid into a verdict table");
  sweep->add_option("--model", sm.model, "model name")->required();
  sweep->add_option("--engine", sweep_engine, "quantum | classical | rotate-then-classical");
  sweep->add_option("--q", sm.q, "mixture weight");
  sweep->add_option("--gamma", sm.gammas, "amplitude of |0>, repeatable");
  sweep->add_option("--lambda", sm.lambdas, "amplitude of |1>, repeatable");
  sweep->add_option("--alpha", sweep_alphas, "entropy threshold scale, repeatable");
  sweep->add_option("--p-grid", sweep_grid, "error probabilities (overrides the profile grid)");
  sweep->add_option("--threshold", sw.threshold, "conditional mutual information threshold");
  sweep->add_option("--out", sweep_out, "grid file path; the T/F table goes to <out>.txt");
  auto* fast_flag = sweep->add_flag("--fast", fast, "20 betas, 200 iterations, 5x5 grid");
  sweep->add_flag("--full", full, "full grid and beta counts (default)")->excludes(fast_flag);
  sweep->add_flag("--timestamp", stamp, "record the wall-clock time in the grid file");
  add_search_flags(sweep, sw);

  // tradeoff
  std::string trade_in, trade_out;
  SearchFlags tr;
  auto* tradeoff = app.add_subcommand("tradeoff", "emit the (beta, I, S) curve of one state as CSV");
  tradeoff->add_option("input", trade_in, "density-matrix file")->required();
  tradeoff->add_option("--out", trade_out, "CSV path (default stdout)");
  add_search_flags(tradeoff, tr);

  // rotate
  std::string rot_in, rot_out;
  auto* rotate = app.add_subcommand("rotate", "rotate a two-factor state into a joint PMF");
  rotate->add_option("input", rot_in, "density-matrix file")->required();
  rotate->add_option("--out", rot_out, "PMF path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*channel) {
      ModelKind kind = parse_model(cm.model);
      bool latent = is_latent_model(kind);
      GeneratedState s = generate(kind, model_params(kind, cm), latent ? cm.p1 : 0.0, latent ? cm.p2 : cm.p);
      std::filesystem::path dir(channel_out);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError("cannot create '" + channel_out + "': " + ec.message());
      write_density((dir / "rho_xy.json").string(), s.rho_xy);
      std::cout << (dir / "rho_xy.json").string() << "\n";
      if (s.rho_zxy) {
        write_density((dir / "rho_zxy.json").string(), *s.rho_zxy);
        std::cout << (dir / "rho_zxy.json").string() << "\n";
      }
      if (s.pxy) {
        write_pmf((dir / "pxy.json").string(), *s.pxy);
        std::cout << (dir / "pxy.json").string() << "\n";
      }
      return kOk;
    }

    if (*infer) {
      Engine engine = parse_engine(infer_engine);
      InferInput in = load_input(infer_in);
      double thr = inf.threshold.value_or(engine == Engine::kQuantum ? 0.05 : 0.001);
      auto betas = linspace_open(inf.beta_lo, inf.beta_hi, inf.beta_count.value_or(50));
      Verdict v = run_inference(in, engine, betas, thr, infer_alpha, inf.iters.value_or(500),
                                inf.dim_z.value_or(input_dim(in)), inf.seed, inf.restarts, inf.workers,
                                parse_update_rule(inf.update));
      emit(infer_out, dump_json(verdict_to_json(v)));
      return kOk;
    }

    if (*sweep) {
      ModelKind kind = parse_model(sm.model);
      Engine engine = parse_engine(sweep_engine);
      SweepConfig c = default_sweep_config(kind, engine);
      if (fast) apply_fast_profile(c);
      c.params = model_params(kind, sm);
      if (!sweep_alphas.empty()) c.alphas = sweep_alphas;
      if (!sweep_grid.empty()) c.p_grid = sweep_grid;
      c.beta_lo = sw.beta_lo;
      c.beta_hi = sw.beta_hi;
      if (sw.beta_count) c.beta_count = *sw.beta_count;
      if (sw.iters) c.iterations = *sw.iters;
      if (sw.dim_z) c.dim_z = *sw.dim_z;
      if (sw.threshold) c.threshold = *sw.threshold;
      c.seed = sw.seed;
      c.workers = sw.workers;
      c.restarts = sw.restarts;
      c.rule = parse_update_rule(sw.update);
      VerdictGrid g = run_sweep(c);
      if (stamp) g.timestamp = now_utc();
      std::string table = render_table(g);
      std::cout << table;
      if (!sweep_out.empty()) {
        write_text_file(sweep_out, dump_json(grid_to_json(g)));
        write_text_file(sweep_out + ".txt", table);
      }
      int failed = 0;
      for (const auto& cell : g.cells) failed += !cell.error.empty();
      if (failed) std::cerr << failed << " cell(s) failed numerically; see the grid file\n";
      return kOk;
    }

    if (*tradeoff) {
      DensityMatrix rho = read_density(trade_in);
      if (rho.layout().size() != 2) throw std::invalid_argument("expected a two-factor state (X,Y)");
      auto betas = linspace_open(tr.beta_lo, tr.beta_hi, tr.beta_count.value_or(50));
      InferInput in{rho, std::nullopt};
      auto pts = tradeoff_curve(rho, betas, tr.iters.value_or(500), tr.dim_z.value_or(input_dim(in)), tr.seed,
                                tr.restarts, tr.workers, parse_update_rule(tr.update));
      emit(trade_out, tradeoff_csv(pts));
      return kOk;
    }

    if (*rotate) {
      DensityMatrix rho = read_density(rot_in);
      Rotation r = rotate_to_pmf(rho);
      if (r.degenerate)
        std::cerr << "warning: a marginal spectrum is degenerate; the rotated basis is not unique\n";
      emit(rot_out, dump_json(pmf_to_json(r.pmf)));
      return kOk;
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const IoError& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
