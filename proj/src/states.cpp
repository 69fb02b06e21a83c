#include "qcausal/states.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qcausal {

std::string density_violation(const CMatrix& mat, const SystemLayout& layout, double tol) {
  if (mat.rows() != mat.cols()) return "matrix is not square";
  if (mat.rows() != layout.total_dim()) return "layout " + layout.to_string() + " does not match dimension";
  if (!mat.allFinite()) return "non-finite entry";
  if (hermitian_defect(mat) > tol) return "not Hermitian";
  if (std::abs(mat.trace() - cplx(1.0, 0.0)) > tol) return "trace differs from 1";
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(mat), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return "eigensolver failure";
  if (es.eigenvalues().size() && es.eigenvalues().minCoeff() < -tol) return "negative eigenvalue";
  return "";
}

DensityMatrix::DensityMatrix(CMatrix mat, SystemLayout layout, Repair repair)
    : mat_(std::move(mat)), layout_(std::move(layout)) {
  if (repair == Repair::kYes && mat_.rows() == mat_.cols() && mat_.allFinite()) {
    Spectrum s = eig_hermitian(hermitize(mat_));
    RVector w = s.values.cwiseMax(0.0);
    double tr = w.sum();
    if (tr <= 0.0) throw NumericError("DensityMatrix repair: zero trace after clipping");
    mat_ = hermitize(s.vectors * (w / tr).asDiagonal() * s.vectors.adjoint());
  }
  std::string why = density_violation(mat_, layout_);
  if (!why.empty()) throw std::invalid_argument("invalid density matrix: " + why);
}

DensityMatrix DensityMatrix::marginal(const std::vector<std::string>& kept) const {
  auto [m, l] = reduce_to(mat_, layout_, kept);
  return DensityMatrix(hermitize(m), l);
}

KetVector::KetVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0 || std::abs(amps_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("KetVector: amplitudes must have unit norm");
}

DensityMatrix from_pmf_diagonal(const JointPMF& p, const SystemLayout& layout) {
  if (p.supports() != layout.dims())
    throw std::invalid_argument("from_pmf_diagonal: supports do not match layout dims");
  const int n = layout.total_dim();
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = p[i];
  return DensityMatrix(m, layout);
}

double entropy_bits(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("entropy: eigensolver did not converge");
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double vn_entropy(const DensityMatrix& rho) { return entropy_bits(rho.mat()); }

ConditionalState conditional_state(const DensityMatrix& rho, const std::string& given) {
  const auto& layout = rho.layout();
  if (!layout.has(given)) throw std::invalid_argument("conditional_state: unknown label '" + given + "'");
  auto [marg, ml] = reduce_to(rho.mat(), layout, {given});
  CMatrix inv_sqrt = spectral_fn(hermitize(marg), [](double x) { return 1.0 / std::sqrt(x); });
  CMatrix side = embed_identity(inv_sqrt, ml, layout);
  return {hermitize(side * rho.mat() * side), layout, {given}};
}

DensityMatrix instance_conditional(const DensityMatrix& rho_xy, const KetVector& y) {
  const auto& layout = rho_xy.layout();
  if (layout.size() != 2) throw std::invalid_argument("instance_conditional: two-factor state required");
  const Factor& fy = layout.factors()[1];
  if (y.dim() != fy.dim) throw std::invalid_argument("instance_conditional: ket dimension mismatch");
  // (|y><y|)^{1/2} equals the projector itself
  CMatrix side = kron(identity(layout.factors()[0].dim), y.projector());
  CMatrix proj = side * rho_xy.mat() * side;
  double tr = proj.trace().real();
  if (tr < 1e-12) throw NumericError("instance_conditional: zero-probability instance");
  auto [mx, lx] = partial_trace(proj, layout, {fy.label});
  return DensityMatrix(hermitize(mx / tr), lx);
}

double qcmi(const DensityMatrix& rho, const std::vector<std::string>& labels) {
  if (labels.size() != 3 || rho.layout().size() != 3)
    throw std::invalid_argument("qcmi: three-factor layout required");
  for (const auto& l : labels)
    if (!rho.layout().has(l)) throw std::invalid_argument("qcmi: unknown label '" + l + "'");
  const auto& m = rho.mat();
  const auto& lay = rho.layout();
  double sxz = entropy_bits(reduce_to(m, lay, {labels[0], labels[2]}).first);
  double syz = entropy_bits(reduce_to(m, lay, {labels[1], labels[2]}).first);
  double sz = entropy_bits(reduce_to(m, lay, {labels[2]}).first);
  double sxyz = entropy_bits(m);
  return sxz + syz - sz - sxyz;
}

double qcmi(const DensityMatrix& rho) { return qcmi(rho, rho.layout().labels()); }

double quantum_mi(const DensityMatrix& rho_xy) {
  const auto& lay = rho_xy.layout();
  if (lay.size() != 2) throw std::invalid_argument("quantum_mi: two-factor layout required");
  double sx = entropy_bits(reduce_to(rho_xy.mat(), lay, {lay.factors()[0].label}).first);
  double sy = entropy_bits(reduce_to(rho_xy.mat(), lay, {lay.factors()[1].label}).first);
  return sx + sy - entropy_bits(rho_xy.mat());
}

}  // namespace qcausal
