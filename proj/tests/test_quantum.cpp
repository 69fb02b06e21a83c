#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcausal/classical.hpp"
#include "qcausal/models.hpp"
#include "qcausal/quantum.hpp"

using namespace qcausal;

namespace {

const SystemLayout kXY({{"X", 2}, {"Y", 2}});
const SystemLayout kXYZ({{"X", 2}, {"Y", 2}, {"Z", 2}});
const UpdateRule kRules[] = {UpdateRule::kLogDomain, UpdateRule::kProduct, UpdateRule::kSymmetrized};

ConditionalState diagonal_conditional(const ConditionalTable& t, const SystemLayout& xyz) {
  CMatrix m = CMatrix::Zero(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) m(i, i) = t[i];
  return {m, xyz, {"X", "Y"}};
}

CMatrix sqrt_of(const DensityMatrix& r) {
  return spectral_fn(r.mat(), [](double x) { return std::sqrt(x); }, 0.0);
}

}  // namespace

TEST(QLoss, ProductWithPureLatentIsZero) {
  std::mt19937_64 rng(41);
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  CMatrix m = kron(kron(oracle::random_density(2, rng), oracle::random_density(2, rng)), z);
  auto l = q_loss(DensityMatrix(m, kXYZ), 0.5);
  EXPECT_NEAR(l.loss, 0.0, 1e-10);
  EXPECT_NEAR(l.loss_expanded, 0.0, 1e-10);
}

TEST(QLoss, ClassicalEmbedding) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    auto p = oracle::random_pmf(8, rng);
    auto l = q_loss(from_pmf_diagonal(JointPMF({2, 2, 2}, p), kXYZ), 0.7);
    std::vector<double> pz(2, 0.0);
    for (int i = 0; i < 8; ++i) pz[i % 2] += p[i];
    EXPECT_NEAR(l.loss, oracle::cmi_sum(p, 2, 2, 2) + 0.7 * oracle::entropy_sum(pz), 1e-10);
  }
}

TEST(QLoss, BetaZeroIsConditionalMutualInformation) {
  std::mt19937_64 rng(43);
  DensityMatrix r(oracle::random_density(8, rng), kXYZ);
  EXPECT_EQ(q_loss(r, 0.0).loss, qcmi(r));
}

TEST(QLoss, FormsAgreeOnRandomStates) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 50; ++t) {
    DensityMatrix r(oracle::random_density(8, rng, t % 8 + 1), kXYZ);
    auto l = q_loss(r, 0.1 * (t % 10));
    EXPECT_LT(std::abs(l.loss - l.loss_expanded), 1e-6);
  }
}

TEST(RandomConditionalInit, DeterministicAndNormalized) {
  auto a = random_conditional_init(kXYZ, 5);
  auto b = random_conditional_init(kXYZ, 5);
  EXPECT_EQ(a.mat, b.mat);
  EXPECT_LT(oracle::max_abs(oracle::trace_second(a.mat, 4, 2) - identity(4)), 1e-10);
  Spectrum s = eig_hermitian(a.mat);
  EXPECT_GE(s.values(s.values.size() - 1), -1e-12);
  EXPECT_NE(a.mat, random_conditional_init(kXYZ, 6).mat);
}

TEST(RandomConditionalInit, OneDimensionalLatentIsIdentity) {
  auto c = random_conditional_init(SystemLayout({{"X", 2}, {"Y", 2}, {"Z", 1}}), 3);
  EXPECT_LT(oracle::max_abs(c.mat - identity(4)), 1e-10);
}

TEST(NormalizeConditional, Idempotent) {
  auto c = random_conditional_init(kXYZ, 7);
  EXPECT_LT(oracle::max_abs(normalize_conditional(c.mat, kXYZ).mat - c.mat), 1e-10);
}

TEST(NormalizeConditional, ScaleInvariant) {
  auto c = random_conditional_init(kXYZ, 8);
  EXPECT_LT(oracle::max_abs(normalize_conditional(c.mat * 37.5, kXYZ).mat - c.mat), 1e-10);
}

TEST(NormalizeConditional, DiagonalDividesByCellSums) {
  std::vector<double> w = {1, 3, 2, 2, 0.5, 0.5, 4, 1};
  CMatrix m = CMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) m(i, i) = w[i];
  CMatrix r = normalize_conditional(m, kXYZ).mat;
  for (int cell = 0; cell < 4; ++cell) {
    double f = w[2 * cell] + w[2 * cell + 1];
    for (int z = 0; z < 2; ++z) EXPECT_NEAR(r(2 * cell + z, 2 * cell + z).real(), w[2 * cell + z] / f, 1e-14);
  }
}

TEST(NormalizeConditional, ZeroOperatorThrows) {
  EXPECT_THROW(normalize_conditional(CMatrix::Zero(8, 8), kXYZ), NumericError);
}

class ProductStateSearch : public ::testing::TestWithParam<UpdateRule> {};

TEST_P(ProductStateSearch, FindsTrivialConfounder) {
  std::mt19937_64 rng(45);
  DensityMatrix r(kron(oracle::random_density(2, rng), oracle::random_density(2, rng)), kXY);
  bool found = false;
  for (std::uint64_t seed = 0; seed < 5 && !found; ++seed) {
    QuantumSearchParams p{0.75, 500, 2, seed};
    p.rule = GetParam();
    DensityMatrix out = q_latent_search(r, p);
    double sz = entropy_bits(reduce_to(out.mat(), out.layout(), {"Z"}).first);
    found = qcmi(out) <= 1e-4 && sz <= 1e-3;
  }
  EXPECT_TRUE(found);
}

INSTANTIATE_TEST_SUITE_P(Rules, ProductStateSearch, ::testing::ValuesIn(kRules),
                         [](const auto& info) {
                           std::string n = to_string(info.param);
                           std::erase(n, '-');
                           return n;
                         });

TEST(QLatentSearch, DiagonalTrajectoryMatchesClassical) {
  auto m = bsc2_latent(0.4, 0.1, 0.1);
  const SystemLayout xyz({{"X", 4}, {"Y", 4}, {"Z", 4}});
  ConditionalTable init = random_conditional_table(4, 4, 4, 11);
  std::vector<ConditionalTable> classical;
  latent_search(m.pxy, {0.75, 25, 0, 4}, init, [&](int, const ConditionalTable& c) { classical.push_back(c); });
  for (UpdateRule rule : kRules) {
    double worst = 0.0;
    int seen = 0;
    q_latent_search(m.rho_xy, {0.75, 25, 4, 0, kEigFloor, rule}, diagonal_conditional(init, xyz),
                    [&](int it, const CMatrix& c) {
                      ++seen;
                      for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(c(i, i) - classical[it][i]));
                      worst = std::max(worst, oracle::max_abs(c - CMatrix(c.diagonal().asDiagonal())));
                    });
    EXPECT_EQ(seen, 26);
    EXPECT_LT(worst, 1e-8) << to_string(rule);
  }
}

TEST(QLatentSearch, PartialTraceOverLatentRecoversInputEveryIteration) {
  std::mt19937_64 rng(46);
  for (UpdateRule rule : kRules)
    for (int rank : {1, 2, 4}) {
      DensityMatrix r(oracle::random_density(4, rng, rank), kXY);
      CMatrix s = sqrt_of(r);
      double worst = 0.0;
      DensityMatrix out = q_latent_search(r, {0.72, 60, 2, 3, kEigFloor, rule}, std::nullopt,
                                          [&](int, const CMatrix& c) {
                                            CMatrix j = assemble_joint(s, c, 2);
                                            worst = std::max(worst, oracle::max_abs(oracle::trace_second(j, 4, 2) - r.mat()));
                                          });
      EXPECT_LT(worst, 1e-8) << to_string(rule) << " rank " << rank;
      EXPECT_LT(oracle::max_abs(oracle::trace_second(out.mat(), 4, 2) - r.mat()), 1e-8);
    }
}

TEST(QLatentSearch, ReportedQuantitiesInRange) {
  std::mt19937_64 rng(47);
  for (UpdateRule rule : kRules)
    for (int t = 0; t < 4; ++t) {
      DensityMatrix r(oracle::random_density(4, rng), kXY);
      DensityMatrix out = q_latent_search(r, {0.7 + 0.02 * t, 80, 2, std::uint64_t(t), kEigFloor, rule});
      double sz = entropy_bits(reduce_to(out.mat(), out.layout(), {"Z"}).first);
      EXPECT_GE(qcmi(out), -1e-6);
      EXPECT_GE(sz, -1e-12);
      EXPECT_LE(sz, 1.0 + 1e-8);
    }
}

TEST(QLatentSearch, LossFormsAgreeOnIterates) {
  auto s = gqsc_latent({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, 0.4, 0.2, 0.3);
  CMatrix sq = sqrt_of(s.rho_xy);
  int checked = 0;
  q_latent_search(s.rho_xy, {0.75, 40, 2, 5}, std::nullopt, [&](int it, const CMatrix& c) {
    if (it % 5) return;
    DensityMatrix j(assemble_joint(sq, c, 2), kXYZ, Repair::kNo);
    auto l = q_loss(j, 0.75);
    EXPECT_LT(std::abs(l.loss - l.loss_expanded), 1e-6);
    ++checked;
  });
  EXPECT_EQ(checked, 9);
}

TEST(QLatentSearch, Deterministic) {
  auto s = depolarizing_latent({0.6, 0.8}, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, 0.4, 0.3, 0.2);
  for (UpdateRule rule : kRules) {
    QuantumSearchParams p{0.75, 50, 2, 99, kEigFloor, rule};
    EXPECT_EQ(q_latent_search(s.rho_xy, p).mat(), q_latent_search(s.rho_xy, p).mat());
  }
}

TEST(QLatentSearch, RunsExactlyNIterations) {
  auto s = gqsc_direct({0.6, 0.8}, 0.4, 0.2);
  int last = -1, count = 0;
  q_latent_search(s, {0.75, 17, 2, 1}, std::nullopt, [&](int it, const CMatrix&) {
    last = it;
    ++count;
  });
  EXPECT_EQ(last, 17);
  EXPECT_EQ(count, 18);
}

TEST(QLatentSearch, ModelThreeLatentReachesLowEntropy) {
  const double h = 1 / std::sqrt(2.0);
  auto s = gqsc_latent({h, h}, 0.4, 0.2, 0.3);
  auto [sx, sy] = marginal_entropies(s.rho_xy);
  double theta = 0.8 * std::min(sx, sy);
  QInferOptions o;
  o.betas = linspace_open(0.7, 0.8, 10);
  bool found = false;
  for (const auto& r : quantum_beta_runs(s.rho_xy, o)) found |= r.cmi <= 0.05 && r.entropy_z < theta;
  EXPECT_TRUE(found);
}

TEST(QInferGraph, DepolarizingLatentCenterIsLatent) {
  const double h = 1 / std::sqrt(2.0);
  auto s = depolarizing_latent({0.6, 0.8}, {h, h}, 0.4, 0.5, 0.5);
  QInferOptions o;
  o.betas = linspace_open(0.7, 0.8, 10);
  EXPECT_EQ(q_infer_graph(s.rho_xy, o).kind, VerdictKind::kLatent);
}

TEST(QInferGraph, ModelOneCenterAndCorner) {
  QInferOptions o;
  o.betas = linspace_open(0.7, 0.8, 6);
  o.iterations = 200;
  o.dim_z = 4;
  for (double a : {0.7, 0.8}) {
    o.alpha = a;
    EXPECT_EQ(q_infer_graph(bsc2_latent(0.4, 0.5, 0.5).rho_xy, o).kind, VerdictKind::kLatent) << a;
    EXPECT_EQ(q_infer_graph(bsc2_latent(0.4, 0.01, 0.01).rho_xy, o).kind, VerdictKind::kTriangleOrDirect) << a;
  }
}

TEST(QInferGraph, SingleBeta) {
  auto s = gqsc_direct({0.6, 0.8}, 0.4, 0.3);
  QInferOptions o;
  o.betas = {0.75};
  auto v = q_infer_graph(s, o);
  EXPECT_EQ(v.per_beta.size(), 1u);
}

TEST(UpdateRule, ParseRoundTrip) {
  for (UpdateRule r : kRules) EXPECT_EQ(parse_update_rule(to_string(r)), r);
  EXPECT_THROW(parse_update_rule("nope"), std::invalid_argument);
}
