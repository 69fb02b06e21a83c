#include "qcausal/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qcausal {

SystemLayout::SystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw std::invalid_argument("layout factor '" + f.label + "' has dim < 1");
    if (!seen.insert(f.label).second)
      throw std::invalid_argument("duplicate layout label '" + f.label + "'");
  }
}

int SystemLayout::total_dim() const {
  int d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

int SystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return static_cast<int>(i);
  return -1;
}

int SystemLayout::dim(const std::string& label) const {
  int i = index_of(label);
  if (i < 0) throw std::invalid_argument("unknown layout label '" + label + "'");
  return factors_[i].dim;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

std::vector<int> SystemLayout::dims() const {
  std::vector<int> out;
  for (const auto& f : factors_) out.push_back(f.dim);
  return out;
}

std::string SystemLayout::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < factors_.size(); ++i)
    os << (i ? "," : "") << factors_[i].label << ":" << factors_[i].dim;
  os << ")";
  return os.str();
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + ": non-finite entry");
}

double hermitian_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitize(const CMatrix& m) {
  require_square(m, "hermitize");
  CMatrix h = (m + m.adjoint()) * 0.5;
  // force exact symmetry of the stored entries
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    h(i, i) = cplx(h(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < h.cols(); ++j) h(j, i) = std::conj(h(i, j));
  }
  return h;
}

Spectrum eig_hermitian(const CMatrix& m) {
  require_square(m, "eig_hermitian");
  require_finite(m, "eig_hermitian");
  double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (hermitian_defect(m) > kHermitianTol * scale)
    throw std::invalid_argument("eig_hermitian: input is not Hermitian within tolerance");
  const Eigen::Index n = m.rows();
  Spectrum s;
  if (n == 0) return s;
  Eigen::MatrixXcd h = hermitize(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericError("eig_hermitian: eigensolver did not converge");
  s.values.resize(n);
  s.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index src = n - 1 - k;
    s.values(k) = es.eigenvalues()(src);
    CVector v = es.eigenvectors().col(src);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double a = std::abs(v(i));
      if (a > best + 1e-14) {
        best = a;
        arg = i;
      }
    }
    if (best > 0.0) v *= std::conj(v(arg)) / best;
    v(arg) = cplx(std::abs(v(arg)), 0.0);
    s.vectors.col(k) = v;
  }
  if (!s.values.allFinite() || !s.vectors.allFinite())
    throw NumericError("eig_hermitian: non-finite spectrum");
  return s;
}

CMatrix spectral_fn(const CMatrix& m, const std::function<double(double)>& f, double floor) {
  if (floor < 0.0) throw std::invalid_argument("spectral_fn: floor must be >= 0");
  Spectrum s = eig_hermitian(m);
  RVector fv(s.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i)
    fv(i) = s.values(i) <= floor ? 0.0 : f(s.values(i));
  CMatrix out = s.vectors * fv.asDiagonal() * s.vectors.adjoint();
  return hermitize(out);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

namespace {

// Flat index map: new position -> old position, for an axis reordering.
std::vector<int> permutation_map(const std::vector<int>& old_dims, const std::vector<int>& order) {
  const std::size_t k = old_dims.size();
  std::vector<int> old_strides(k, 1);
  for (int i = static_cast<int>(k) - 2; i >= 0; --i) old_strides[i] = old_strides[i + 1] * old_dims[i + 1];
  std::vector<int> new_dims(k);
  for (std::size_t i = 0; i < k; ++i) new_dims[i] = old_dims[order[i]];
  int total = 1;
  for (int d : old_dims) total *= d;
  std::vector<int> map(total);
  std::vector<int> idx(k, 0);
  for (int flat = 0; flat < total; ++flat) {
    int old = 0;
    for (std::size_t i = 0; i < k; ++i) old += idx[i] * old_strides[order[i]];
    map[flat] = old;
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
      if (++idx[i] < new_dims[i]) break;
      idx[i] = 0;
    }
  }
  return map;
}

}  // namespace

std::pair<CMatrix, SystemLayout> permute_axes(const CMatrix& m, const SystemLayout& layout,
                                              const std::vector<std::string>& order) {
  require_square(m, "permute_axes");
  if (m.rows() != layout.total_dim())
    throw std::invalid_argument("permute_axes: layout does not match matrix dimension");
  if (order.size() != layout.size())
    throw std::invalid_argument("permute_axes: order is not a permutation of the layout");
  std::vector<int> pos;
  std::vector<Factor> nf;
  std::set<int> used;
  for (const auto& lab : order) {
    int i = layout.index_of(lab);
    if (i < 0 || !used.insert(i).second)
      throw std::invalid_argument("permute_axes: invalid permutation label '" + lab + "'");
    pos.push_back(i);
    nf.push_back(layout.factors()[i]);
  }
  auto map = permutation_map(layout.dims(), pos);
  const int n = static_cast<int>(map.size());
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  return {out, SystemLayout(nf)};
}

std::pair<CMatrix, SystemLayout> partial_trace(const CMatrix& m, const SystemLayout& layout,
                                               const std::vector<std::string>& traced) {
  require_square(m, "partial_trace");
  if (m.rows() != layout.total_dim())
    throw std::invalid_argument("partial_trace: layout does not match matrix dimension");
  std::set<std::string> tr;
  for (const auto& lab : traced) {
    if (!layout.has(lab)) throw std::invalid_argument("partial_trace: unknown label '" + lab + "'");
    tr.insert(lab);
  }
  std::vector<std::string> order;
  std::vector<Factor> kept;
  int dk = 1, dt = 1;
  for (const auto& f : layout.factors())
    if (!tr.count(f.label)) {
      order.push_back(f.label);
      kept.push_back(f);
      dk *= f.dim;
    }
  for (const auto& f : layout.factors())
    if (tr.count(f.label)) {
      order.push_back(f.label);
      dt *= f.dim;
    }
  CMatrix p = m;
  if (order != layout.labels()) p = permute_axes(m, layout, order).first;
  CMatrix out = CMatrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += p(a * dt + t, b * dt + t);
      out(a, b) = acc;
    }
  return {out, SystemLayout(kept)};
}

std::pair<CMatrix, SystemLayout> reduce_to(const CMatrix& m, const SystemLayout& layout,
                                           const std::vector<std::string>& kept) {
  std::set<std::string> keep(kept.begin(), kept.end());
  for (const auto& lab : kept)
    if (!layout.has(lab)) throw std::invalid_argument("reduce_to: unknown label '" + lab + "'");
  std::vector<std::string> traced;
  for (const auto& f : layout.factors())
    if (!keep.count(f.label)) traced.push_back(f.label);
  return partial_trace(m, layout, traced);
}

CMatrix embed_identity(const CMatrix& m, const SystemLayout& layout_m, const SystemLayout& full) {
  require_square(m, "embed_identity");
  if (m.rows() != layout_m.total_dim())
    throw std::invalid_argument("embed_identity: layout does not match matrix dimension");
  std::vector<Factor> ext = layout_m.factors();
  int missing = 1;
  for (const auto& f : layout_m.factors()) {
    int i = full.index_of(f.label);
    if (i < 0 || full.factors()[i].dim != f.dim)
      throw std::invalid_argument("embed_identity: factor '" + f.label + "' not in target layout");
  }
  for (const auto& f : full.factors())
    if (!layout_m.has(f.label)) {
      ext.push_back(f);
      missing *= f.dim;
    }
  CMatrix big = missing == 1 ? m : kron(m, identity(missing));
  SystemLayout ext_layout(ext);
  if (ext_layout.labels() == full.labels()) return big;
  return permute_axes(big, ext_layout, full.labels()).first;
}

}  // namespace qcausal
