#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcausal/models.hpp"
#include "qcausal/states.hpp"

using namespace qcausal;

namespace {

const SystemLayout kXY({{"X", 2}, {"Y", 2}});
const SystemLayout kXYZ({{"X", 2}, {"Y", 2}, {"Z", 2}});

DensityMatrix bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(v * v.adjoint(), kXY);
}

DensityMatrix diag_state(const std::vector<double>& p, const SystemLayout& l) {
  return from_pmf_diagonal(JointPMF(l.dims(), p), l);
}

}  // namespace

TEST(DensityMatrix, ValidatesInvariants) {
  CMatrix m = CMatrix::Identity(4, 4) * 0.3;
  EXPECT_THROW(DensityMatrix(m, kXY), std::invalid_argument);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix(neg, SystemLayout({{"X", 2}})), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(CMatrix::Identity(4, 4) * 0.25, SystemLayout({{"X", 2}})), std::invalid_argument);
}

TEST(DensityMatrix, RepairIsExplicit) {
  CMatrix m = CMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = 1e-7;
  m(1, 1) -= 1e-7;
  EXPECT_THROW(DensityMatrix(m, SystemLayout({{"X", 2}})), std::invalid_argument);
  DensityMatrix r(m, SystemLayout({{"X", 2}}), Repair::kYes);
  EXPECT_LT(hermitian_defect(r.mat()), 1e-15);
  EXPECT_NEAR(r.mat().trace().real(), 1.0, 1e-14);
}

TEST(FromPmfDiagonal, UniformIsMaximallyMixed) {
  auto r = diag_state({0.25, 0.25, 0.25, 0.25}, kXY);
  EXPECT_LT(oracle::max_abs(r.mat() - CMatrix::Identity(4, 4) * 0.25), 1e-16);
}

TEST(FromPmfDiagonal, PointMassIsPure) {
  auto r = diag_state({0, 0, 1, 0}, kXY);
  EXPECT_NEAR(vn_entropy(r), 0.0, 1e-15);
  EXPECT_NEAR((r.mat() * r.mat() - r.mat()).norm(), 0.0, 1e-15);
}

TEST(FromPmfDiagonal, ModelOneEntropyMatchesShannon) {
  auto m = bsc2_latent(0.4, 0.1, 0.1);
  EXPECT_NEAR(vn_entropy(m.rho_xy), oracle::entropy_sum(m.pxy.probs()), 1e-12);
}

TEST(FromPmfDiagonal, SizeMismatchThrows) {
  EXPECT_THROW(from_pmf_diagonal(JointPMF({3}, {0.2, 0.3, 0.5}), kXY), std::invalid_argument);
}

TEST(VnEntropy, Examples) {
  EXPECT_NEAR(vn_entropy(bell()), 0.0, 1e-12);
  EXPECT_NEAR(vn_entropy(DensityMatrix(CMatrix::Identity(2, 2) * 0.5, SystemLayout({{"X", 2}}))), 1.0, 1e-15);
  EXPECT_NEAR(vn_entropy(diag_state({0.4, 0.6}, SystemLayout({{"X", 2}}))), oracle::h2(0.4), 1e-14);
  EXPECT_NEAR(oracle::h2(0.4), 0.97095, 1e-5);
}

TEST(VnEntropy, Bounds) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    DensityMatrix r(oracle::random_density(6, rng), SystemLayout({{"A", 6}}));
    double s = vn_entropy(r);
    EXPECT_GE(s, -1e-12);
    EXPECT_LE(s, std::log2(6.0) + 1e-12);
  }
}

TEST(VnEntropy, AdditiveOnProducts) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    CMatrix a = oracle::random_density(2, rng), b = oracle::random_density(3, rng);
    double sab = entropy_bits(kron(a, b));
    EXPECT_NEAR(sab, entropy_bits(a) + entropy_bits(b), 1e-10);
  }
}

TEST(ConditionalState, ProductGivesMarginalTimesIdentity) {
  std::mt19937_64 rng(23);
  CMatrix a = oracle::random_density(2, rng), b = oracle::random_density(2, rng);
  auto c = conditional_state(DensityMatrix(kron(a, b), kXY), "Y");
  EXPECT_LT(oracle::max_abs(c.mat - kron(a, identity(2))), 1e-10);
  EXPECT_EQ(c.conditioned, std::vector<std::string>{"Y"});
}

TEST(ConditionalState, ClassicalDivision) {
  std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  auto c = conditional_state(diag_state(p, kXY), "Y");
  double py[2] = {p[0] + p[2], p[1] + p[3]};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) EXPECT_NEAR(c.mat(x * 2 + y, x * 2 + y).real(), p[x * 2 + y] / py[y], 1e-14);
  EXPECT_LT(oracle::max_abs(c.mat - CMatrix(c.mat.diagonal().asDiagonal())), 1e-15);
}

TEST(ConditionalState, BellInvariant) {
  auto c = conditional_state(bell(), "Y");
  EXPECT_LT(oracle::max_abs(oracle::trace_first(c.mat, 2, 2) - identity(2)), 1e-8);
}

TEST(ConditionalState, SandwichRecoversJointOnSupport) {
  std::mt19937_64 rng(24);
  for (int rank : {1, 2, 4}) {
    DensityMatrix r(oracle::random_density(4, rng, rank), kXY);
    auto c = conditional_state(r, "Y");
    CMatrix ry = oracle::trace_first(r.mat(), 2, 2);
    CMatrix s = kron(identity(2), spectral_fn(ry, [](double x) { return std::sqrt(x); }, 0));
    EXPECT_LT(oracle::max_abs(s * c.mat * s - r.mat()), 1e-8) << rank;
    CMatrix proj = spectral_fn(ry, [](double) { return 1.0; });
    EXPECT_LT(oracle::max_abs(oracle::trace_first(c.mat, 2, 2) - proj), 1e-8);
  }
}

TEST(ConditionalState, UnknownLabelThrows) {
  EXPECT_THROW(conditional_state(bell(), "Q"), std::invalid_argument);
}

TEST(InstanceConditional, ClassicalBayes) {
  std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  CVector y0 = CVector::Zero(2);
  y0(0) = 1.0;
  auto r = instance_conditional(diag_state(p, kXY), KetVector(y0));
  EXPECT_NEAR(r.mat()(0, 0).real(), 0.1 / 0.4, 1e-14);
  EXPECT_NEAR(r.mat()(1, 1).real(), 0.3 / 0.4, 1e-14);
  EXPECT_NEAR(std::abs(r.mat()(0, 1)), 0.0, 1e-15);
}

TEST(InstanceConditional, ProductGivesMarginal) {
  std::mt19937_64 rng(25);
  CMatrix a = oracle::random_density(2, rng), b = oracle::random_density(2, rng);
  CVector y(2);
  y << cplx(0.6, 0.0), cplx(0.0, 0.8);
  auto r = instance_conditional(DensityMatrix(kron(a, b), kXY), KetVector(y));
  EXPECT_LT(oracle::max_abs(r.mat() - a), 1e-12);
}

TEST(InstanceConditional, BellGivesBasisState) {
  CVector y0 = CVector::Zero(2);
  y0(0) = 1.0;
  auto r = instance_conditional(bell(), KetVector(y0));
  CMatrix want = CMatrix::Zero(2, 2);
  want(0, 0) = 1.0;
  EXPECT_LT(oracle::max_abs(r.mat() - want), 1e-14);
}

TEST(InstanceConditional, ZeroProbabilityThrows) {
  CVector y1 = CVector::Zero(2);
  y1(1) = 1.0;
  EXPECT_THROW(instance_conditional(diag_state({0.5, 0, 0.5, 0}, kXY), KetVector(y1)), NumericError);
}

TEST(Qcmi, ProductStateIsZero) {
  std::mt19937_64 rng(26);
  CMatrix m = kron(kron(oracle::random_density(2, rng), oracle::random_density(2, rng)), oracle::random_density(2, rng));
  EXPECT_NEAR(qcmi(DensityMatrix(m, kXYZ)), 0.0, 1e-8);
}

TEST(Qcmi, GhzMixtureIsZero) {
  std::vector<double> p(8, 0.0);
  p[0] = p[7] = 0.5;
  EXPECT_NEAR(qcmi(diag_state(p, kXYZ)), 0.0, 1e-8);
}

TEST(Qcmi, MatchesClassicalOnRandomDiagonals) {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 120; ++t) {
    auto p = oracle::random_pmf(8, rng);
    EXPECT_NEAR(qcmi(diag_state(p, kXYZ)), oracle::cmi_sum(p, 2, 2, 2), 1e-10);
  }
}

TEST(Qcmi, StrongSubadditivityOnRandomStates) {
  std::mt19937_64 rng(28);
  for (int t = 0; t < 200; ++t) {
    DensityMatrix r(oracle::random_density(8, rng, t % 8 + 1), kXYZ);
    EXPECT_GE(qcmi(r), -1e-6);
  }
}

TEST(Qcmi, LayoutMismatchThrows) { EXPECT_THROW(qcmi(bell()), std::invalid_argument); }

TEST(QuantumMi, Examples) {
  std::mt19937_64 rng(29);
  EXPECT_NEAR(quantum_mi(DensityMatrix(kron(oracle::random_density(2, rng), oracle::random_density(2, rng)), kXY)),
              0.0, 1e-10);
  EXPECT_NEAR(quantum_mi(bell()), 2.0, 1e-12);
  for (int t = 0; t < 20; ++t) {
    auto p = oracle::random_pmf(4, rng);
    EXPECT_NEAR(quantum_mi(diag_state(p, kXY)), oracle::mi_sum(p, 2, 2), 1e-10);
  }
}
