#include "qcausal/classical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qcausal/errors.hpp"
#include "qcausal/pool.hpp"

namespace qcausal {

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double shannon_entropy(const JointPMF& p) { return shannon_entropy(p.probs()); }

double classical_mi(const JointPMF& pxy) {
  if (pxy.rank() != 2) throw std::invalid_argument("classical_mi: two-way PMF required");
  return shannon_entropy(pxy.marginal({0})) + shannon_entropy(pxy.marginal({1})) - shannon_entropy(pxy);
}

double classical_cmi(const JointPMF& q) {
  if (q.rank() != 3) throw std::invalid_argument("classical_cmi: three-way PMF required");
  return shannon_entropy(q.marginal({0, 2})) + shannon_entropy(q.marginal({1, 2})) -
         shannon_entropy(q.marginal({2})) - shannon_entropy(q);
}

ConditionalTable random_conditional_table(int r, int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ConditionalTable t(static_cast<std::size_t>(r) * m * n);
  for (int c = 0; c < r * m; ++c) {
    double s = 0.0;
    for (int z = 0; z < n; ++z) s += (t[c * n + z] = u(rng));
    for (int z = 0; z < n; ++z) t[c * n + z] /= s;
  }
  return t;
}

namespace {

void check_pxy(const JointPMF& pxy) {
  if (pxy.rank() != 2) throw std::invalid_argument("latent_search: p(x,y) must be two-way");
}

JointPMF form_joint(const JointPMF& pxy, const ConditionalTable& cond, int n) {
  const int r = pxy.supports()[0], m = pxy.supports()[1];
  std::vector<double> q(static_cast<std::size_t>(r) * m * n);
  for (int c = 0; c < r * m; ++c)
    for (int z = 0; z < n; ++z) q[c * n + z] = cond[c * n + z] * pxy[c];
  return JointPMF({r, m, n}, std::move(q));
}

}  // namespace

ConditionalTable latent_update(const JointPMF& pxy, const ConditionalTable& cond, int n, double beta) {
  check_pxy(pxy);
  const int r = pxy.supports()[0], m = pxy.supports()[1];
  std::vector<double> px(r, 0.0), py(m, 0.0), qz(n, 0.0);
  std::vector<double> qzx(static_cast<std::size_t>(r) * n, 0.0), qzy(static_cast<std::size_t>(m) * n, 0.0);
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < m; ++y) {
      double p = pxy.at(x, y);
      px[x] += p;
      py[y] += p;
      for (int z = 0; z < n; ++z) {
        double j = cond[(x * m + y) * n + z] * p;
        qzx[x * n + z] += j;
        qzy[y * n + z] += j;
        qz[z] += j;
      }
    }
  for (int x = 0; x < r; ++x)
    for (int z = 0; z < n; ++z) qzx[x * n + z] = px[x] > 0.0 ? qzx[x * n + z] / px[x] : 0.0;
  for (int y = 0; y < m; ++y)
    for (int z = 0; z < n; ++z) qzy[y * n + z] = py[y] > 0.0 ? qzy[y * n + z] / py[y] : 0.0;
  std::vector<double> denom(n);
  for (int z = 0; z < n; ++z) denom[z] = std::max(std::pow(qz[z], 1.0 - beta), 1e-300);

  ConditionalTable next(cond.size());
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < m; ++y) {
      const int c = x * m + y;
      if (pxy.at(x, y) <= 0.0) {
        for (int z = 0; z < n; ++z) next[c * n + z] = 1.0 / n;
        continue;
      }
      double f = 0.0;
      for (int z = 0; z < n; ++z) f += (next[c * n + z] = qzx[x * n + z] * qzy[y * n + z] / denom[z]);
      if (!(f > 0.0) || !std::isfinite(f)) throw NumericError("latent_search: degenerate normalizer");
      for (int z = 0; z < n; ++z) next[c * n + z] /= f;
    }
  return next;
}

JointPMF latent_search(const JointPMF& pxy, const SearchParams& params,
                       const std::optional<ConditionalTable>& init, const ClassicalObserver& observer) {
  check_pxy(pxy);
  if (params.iterations < 1 || params.dim_z < 1 || !std::isfinite(params.beta))
    throw std::invalid_argument("latent_search: invalid search parameters");
  const int r = pxy.supports()[0], m = pxy.supports()[1], n = params.dim_z;
  ConditionalTable cond;
  if (init) {
    if (init->size() != static_cast<std::size_t>(r) * m * n)
      throw std::invalid_argument("latent_search: init has the wrong size");
    cond = *init;
  } else {
    cond = random_conditional_table(r, m, n, params.seed);
  }
  for (int c = 0; c < r * m; ++c)
    if (pxy[c] <= 0.0)
      for (int z = 0; z < n; ++z) cond[c * n + z] = 1.0 / n;
  if (observer) observer(0, cond);
  for (int it = 1; it <= params.iterations; ++it) {
    cond = latent_update(pxy, cond, n, params.beta);
    if (observer) observer(it, cond);
  }
  return form_joint(pxy, cond, n);
}

BetaRun classical_beta_run(const JointPMF& pxy, const InferOptions& opt, int k) {
  if (opt.restarts < 1) throw std::invalid_argument("infer_graph: restarts must be >= 1");
  BetaRun best;
  double best_loss = 0.0;
  for (int rs = 0; rs < opt.restarts; ++rs) {
    SearchParams sp{opt.betas[k], opt.iterations, derive_seed(opt.seed, k, rs), opt.dim_z};
    JointPMF q = latent_search(pxy, sp);
    BetaRun run{opt.betas[k], classical_cmi(q), shannon_entropy(q.marginal({2}))};
    double loss = run.cmi + run.beta * run.entropy_z;
    if (rs == 0 || loss < best_loss) {
      best = run;
      best_loss = loss;
    }
  }
  return best;
}

std::vector<BetaRun> classical_beta_runs(const JointPMF& pxy, const InferOptions& opt) {
  if (opt.betas.empty()) throw std::invalid_argument("infer_graph: beta list is empty");
  std::vector<BetaRun> runs(opt.betas.size());
  parallel_for(static_cast<int>(opt.betas.size()), opt.workers,
               [&](int k) { runs[k] = classical_beta_run(pxy, opt, k); });
  return runs;
}

Verdict infer_graph(const JointPMF& pxy, const InferOptions& opt) {
  check_pxy(pxy);
  auto runs = classical_beta_runs(pxy, opt);
  return decide(runs, opt.threshold, opt.alpha, shannon_entropy(pxy.marginal({0})),
                shannon_entropy(pxy.marginal({1})));
}

}  // namespace qcausal
