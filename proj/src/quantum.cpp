#include "qcausal/quantum.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qcausal/pool.hpp"

namespace qcausal {

const char* to_string(UpdateRule r) {
  switch (r) {
    case UpdateRule::kProduct: return "product";
    case UpdateRule::kSymmetrized: return "symmetrized";
    case UpdateRule::kLogDomain: return "log-domain";
  }
  return "?";
}

UpdateRule parse_update_rule(const std::string& s) {
  if (s == "product") return UpdateRule::kProduct;
  if (s == "symmetrized") return UpdateRule::kSymmetrized;
  if (s == "log-domain") return UpdateRule::kLogDomain;
  throw std::invalid_argument("unknown update rule '" + s + "' (product|symmetrized|log-domain)");
}

LossValue q_loss(const DensityMatrix& rho, double beta) {
  const auto& lay = rho.layout();
  if (lay.size() != 3) throw std::invalid_argument("q_loss: three-factor state required");
  const auto labels = lay.labels();
  const auto& x = labels[0];
  const auto& y = labels[1];
  const auto& z = labels[2];
  const auto& m = rho.mat();
  LossValue out;
  double sz = entropy_bits(reduce_to(m, lay, {z}).first);
  out.loss = qcmi(rho) + beta * sz;

  double s_x = entropy_bits(reduce_to(m, lay, {x}).first);
  double s_y = entropy_bits(reduce_to(m, lay, {y}).first);
  double s_xy = entropy_bits(reduce_to(m, lay, {x, y}).first);
  double s_xz = entropy_bits(reduce_to(m, lay, {x, z}).first);
  double s_yz = entropy_bits(reduce_to(m, lay, {y, z}).first);
  double s_xyz = entropy_bits(m);
  double z_given_x = s_xz - s_x;
  double z_given_y = s_yz - s_y;
  double z_given_xy = s_xyz - s_xy;
  double mi_xy = s_x + s_y - s_xy;
  out.loss_expanded = z_given_x + z_given_y - z_given_xy + (beta - 1.0) * sz + mi_xy;
  return out;
}

SystemLayout search_layout(const SystemLayout& xy, int dim_z) {
  if (xy.size() != 2) throw std::invalid_argument("search needs a two-factor state");
  if (xy.has("Z")) throw std::invalid_argument("observed factors must not be labelled 'Z'");
  if (dim_z < 1) throw std::invalid_argument("dim_z must be >= 1");
  return SystemLayout({xy.factors()[0], xy.factors()[1], {"Z", dim_z}});
}

ConditionalState normalize_conditional(const CMatrix& m, const SystemLayout& xyz, double floor) {
  if (xyz.size() != 3) throw std::invalid_argument("normalize_conditional: layout must be (X,Y,Z)");
  const auto labels = xyz.labels();
  const int n = xyz.factors()[2].dim;
  CMatrix w = hermitize(reduce_to(m, xyz, {labels[0], labels[1]}).first);
  Spectrum s = eig_hermitian(w);
  double top = s.values.size() ? s.values(0) : 0.0;
  if (!(top > 0.0)) throw NumericError("normalize_conditional: Tr_Z of the operator vanishes");
  RVector f(s.values.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    f(i) = s.values(i) <= floor * top ? 0.0 : 1.0 / std::sqrt(s.values(i));
  CMatrix side = kron(s.vectors * f.asDiagonal() * s.vectors.adjoint(), identity(n));
  return {hermitize(side * m * side), xyz, {labels[0], labels[1]}};
}

ConditionalState random_conditional_init(const SystemLayout& xyz, std::uint64_t seed) {
  const int d = xyz.total_dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMatrix gm(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double re = g(rng);
      double im = g(rng);
      gm(i, j) = cplx(re, im);
    }
  return normalize_conditional(hermitize(gm * gm.adjoint()), xyz);
}

CMatrix assemble_joint(const CMatrix& sqrt_xy, const CMatrix& cond, int dim_z) {
  CMatrix side = kron(sqrt_xy, identity(dim_z));
  return hermitize(side * cond * side);
}

namespace {

CMatrix sandwich_small(const CMatrix& marg_xz, const CMatrix& inv_sqrt, int n) {
  CMatrix side = kron(inv_sqrt, identity(n));
  return hermitize(side * marg_xz * side);
}

CMatrix log_psd(const CMatrix& m, double floor) {
  Spectrum s = eig_hermitian(m);
  RVector l(s.values.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = std::log(std::max(s.values(i), floor));
  return s.vectors * l.asDiagonal() * s.vectors.adjoint();
}

CMatrix clip_negative(const CMatrix& m) {
  Spectrum s = eig_hermitian(m);
  RVector w = s.values.cwiseMax(0.0);
  return hermitize(s.vectors * w.asDiagonal() * s.vectors.adjoint());
}

}  // namespace

CMatrix q_latent_update(const CMatrix& sqrt_xy, const CMatrix& cond, const SystemLayout& xyz,
                        double beta, UpdateRule rule, double floor) {
  const auto labels = xyz.labels();
  const std::string& x = labels[0];
  const std::string& y = labels[1];
  const std::string& z = labels[2];
  const int dx = xyz.factors()[0].dim, dy = xyz.factors()[1].dim, n = xyz.factors()[2].dim;
  const SystemLayout lxz({xyz.factors()[0], xyz.factors()[2]});
  const SystemLayout lyz({xyz.factors()[1], xyz.factors()[2]});

  CMatrix r = assemble_joint(sqrt_xy, cond, n);
  CMatrix r_xz = hermitize(reduce_to(r, xyz, {x, z}).first);
  CMatrix r_yz = hermitize(reduce_to(r, xyz, {y, z}).first);
  CMatrix r_x = hermitize(reduce_to(r_xz, lxz, {x}).first);
  CMatrix r_y = hermitize(reduce_to(r_yz, lyz, {y}).first);
  CMatrix r_z = hermitize(reduce_to(r, xyz, {z}).first);

  auto inv_sqrt = [](double v) { return 1.0 / std::sqrt(v); };
  // conditionals on the small spaces; embedding commutes with the sandwich
  CMatrix c_zx = sandwich_small(r_xz, spectral_fn(r_x, inv_sqrt, floor), n);
  CMatrix c_zy = sandwich_small(r_yz, spectral_fn(r_y, inv_sqrt, floor), n);
  const CMatrix id_xy = identity(dx * dy);

  CMatrix m;
  switch (rule) {
    case UpdateRule::kProduct: {
      CMatrix zpow = kron(id_xy, spectral_fn(r_z, [beta](double v) { return std::pow(v, beta - 1.0); }, floor));
      m = zpow * embed_identity(c_zx, lxz, xyz) * embed_identity(c_zy, lyz, xyz);
      m = clip_negative(hermitize(m));
      break;
    }
    case UpdateRule::kSymmetrized: {
      CMatrix zhalf =
          kron(id_xy, spectral_fn(r_z, [beta](double v) { return std::pow(v, 0.5 * (beta - 1.0)); }, floor));
      CMatrix a = embed_identity(c_zx, lxz, xyz);
      CMatrix b = embed_identity(c_zy, lyz, xyz);
      m = zhalf * ((a * b + b * a) * 0.5) * zhalf;
      m = clip_negative(hermitize(m));
      break;
    }
    case UpdateRule::kLogDomain: {
      CMatrix h = embed_identity(log_psd(c_zx, floor), lxz, xyz) + embed_identity(log_psd(c_zy, floor), lyz, xyz) +
                  kron(id_xy, (beta - 1.0) * log_psd(r_z, floor));
      Spectrum s = eig_hermitian(hermitize(h));
      RVector e = (s.values.array() - s.values(0)).exp().matrix();
      m = hermitize(s.vectors * e.asDiagonal() * s.vectors.adjoint());
      break;
    }
  }
  require_finite(m, "q_latent_update");
  return normalize_conditional(m, xyz, floor).mat;
}

DensityMatrix q_latent_search(const DensityMatrix& rho_xy, const QuantumSearchParams& params,
                              const std::optional<ConditionalState>& init, const QuantumObserver& observer) {
  if (params.iterations < 1 || params.dim_z < 1 || params.eig_floor < 0.0 || !std::isfinite(params.beta))
    throw std::invalid_argument("q_latent_search: invalid search parameters");
  const SystemLayout xyz = search_layout(rho_xy.layout(), params.dim_z);
  CMatrix sqrt_xy = spectral_fn(rho_xy.mat(), [](double v) { return std::sqrt(v); }, 0.0);
  CMatrix cond;
  if (init) {
    if (init->mat.rows() != xyz.total_dim() || init->mat.cols() != xyz.total_dim())
      throw std::invalid_argument("q_latent_search: init has the wrong dimension");
    cond = init->mat;
  } else {
    cond = random_conditional_init(xyz, params.seed).mat;
  }
  if (observer) observer(0, cond);
  for (int it = 1; it <= params.iterations; ++it) {
    try {
      cond = q_latent_update(sqrt_xy, cond, xyz, params.beta, params.rule, params.eig_floor);
    } catch (const NumericError& e) {
      throw NumericError("q_latent_search: iteration " + std::to_string(it) + ": " + e.what());
    }
    if (observer) observer(it, cond);
  }
  return DensityMatrix(assemble_joint(sqrt_xy, cond, params.dim_z), xyz);
}

std::pair<double, double> marginal_entropies(const DensityMatrix& rho_xy) {
  const auto& lay = rho_xy.layout();
  if (lay.size() != 2) throw std::invalid_argument("two-factor state required");
  return {entropy_bits(reduce_to(rho_xy.mat(), lay, {lay.factors()[0].label}).first),
          entropy_bits(reduce_to(rho_xy.mat(), lay, {lay.factors()[1].label}).first)};
}

BetaRun quantum_beta_run(const DensityMatrix& rho_xy, const QInferOptions& opt, int k) {
  if (opt.restarts < 1) throw std::invalid_argument("q_infer_graph: restarts must be >= 1");
  BetaRun best;
  double best_loss = 0.0;
  for (int rs = 0; rs < opt.restarts; ++rs) {
    QuantumSearchParams qp{opt.betas[k], opt.iterations, opt.dim_z, derive_seed(opt.seed, k, rs), kEigFloor,
                           opt.rule};
    DensityMatrix r = q_latent_search(rho_xy, qp);
    BetaRun run{opt.betas[k], qcmi(r), entropy_bits(reduce_to(r.mat(), r.layout(), {"Z"}).first)};
    double loss = run.cmi + run.beta * run.entropy_z;
    if (rs == 0 || loss < best_loss) {
      best = run;
      best_loss = loss;
    }
  }
  return best;
}

std::vector<BetaRun> quantum_beta_runs(const DensityMatrix& rho_xy, const QInferOptions& opt) {
  if (opt.betas.empty()) throw std::invalid_argument("q_infer_graph: beta list is empty");
  std::vector<BetaRun> runs(opt.betas.size());
  parallel_for(static_cast<int>(opt.betas.size()), opt.workers,
               [&](int k) { runs[k] = quantum_beta_run(rho_xy, opt, k); });
  return runs;
}

QuantumVerdict q_infer_graph(const DensityMatrix& rho_xy, const QInferOptions& opt) {
  auto runs = quantum_beta_runs(rho_xy, opt);
  auto [sx, sy] = marginal_entropies(rho_xy);
  return decide(runs, opt.threshold, opt.alpha, sx, sy);
}

}  // namespace qcausal
