#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcausal/errors.hpp"

namespace qcausal {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RVector = Eigen::VectorXd;

constexpr double kHermitianTol = 1e-10;
constexpr double kEigFloor = 1e-12;

struct Factor {
  std::string label;
  int dim = 0;
  bool operator==(const Factor&) const = default;
};

// Ordered tensor factors; leftmost factor is the most significant index.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Factor> factors);
  SystemLayout(std::initializer_list<Factor> factors)
      : SystemLayout(std::vector<Factor>(factors)) {}

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  int total_dim() const;
  int dim(const std::string& label) const;
  int index_of(const std::string& label) const;  // -1 when absent
  bool has(const std::string& label) const { return index_of(label) >= 0; }
  std::vector<std::string> labels() const;
  std::vector<int> dims() const;
  std::string to_string() const;

  bool operator==(const SystemLayout&) const = default;

 private:
  std::vector<Factor> factors_;
};

struct Spectrum {
  RVector values;   // descending
  CMatrix vectors;  // columns
};

void require_square(const CMatrix& m, const char* what);
void require_finite(const CMatrix& m, const char* what);
double hermitian_defect(const CMatrix& m);

CMatrix hermitize(const CMatrix& m);
Spectrum eig_hermitian(const CMatrix& m);
CMatrix spectral_fn(const CMatrix& m, const std::function<double(double)>& f,
                    double floor = kEigFloor);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix identity(int n);

std::pair<CMatrix, SystemLayout> partial_trace(const CMatrix& m, const SystemLayout& layout,
                                               const std::vector<std::string>& traced);
// Keep only the listed labels (in layout order).
std::pair<CMatrix, SystemLayout> reduce_to(const CMatrix& m, const SystemLayout& layout,
                                           const std::vector<std::string>& kept);
std::pair<CMatrix, SystemLayout> permute_axes(const CMatrix& m, const SystemLayout& layout,
                                              const std::vector<std::string>& order);
CMatrix embed_identity(const CMatrix& m, const SystemLayout& layout_m, const SystemLayout& full);

}  // namespace qcausal
