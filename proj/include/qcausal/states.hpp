#pragma once

#include <string>
#include <vector>

#include "qcausal/pmf.hpp"
#include "qcausal/qmath.hpp"

namespace qcausal {

enum class Repair { kNo, kYes };

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates at 1e-10. With Repair::kYes the input is hermitized,
  // negative eigenvalues clipped and the trace renormalized first.
  DensityMatrix(CMatrix mat, SystemLayout layout, Repair repair = Repair::kNo);

  const CMatrix& mat() const { return mat_; }
  const SystemLayout& layout() const { return layout_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  DensityMatrix marginal(const std::vector<std::string>& kept) const;

 private:
  CMatrix mat_;
  SystemLayout layout_;
};

struct ConditionalState {
  CMatrix mat;
  SystemLayout layout;
  std::vector<std::string> conditioned;
};

class KetVector {
 public:
  explicit KetVector(CVector amplitudes);
  const CVector& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

// Checks used by the validating constructor; return a message or "".
std::string density_violation(const CMatrix& mat, const SystemLayout& layout, double tol = 1e-10);

DensityMatrix from_pmf_diagonal(const JointPMF& p, const SystemLayout& layout);

// Entropy in bits of the spectrum of a Hermitian PSD operator.
double entropy_bits(const CMatrix& m);
double vn_entropy(const DensityMatrix& rho);

ConditionalState conditional_state(const DensityMatrix& rho, const std::string& given);
DensityMatrix instance_conditional(const DensityMatrix& rho_xy, const KetVector& y);

double qcmi(const DensityMatrix& rho, const std::vector<std::string>& labels);
double qcmi(const DensityMatrix& rho);
double quantum_mi(const DensityMatrix& rho_xy);

}  // namespace qcausal
