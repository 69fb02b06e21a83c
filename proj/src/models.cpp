#include "qcausal/models.hpp"

#include <cmath>
#include <stdexcept>

namespace qcausal {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

void check_amplitudes(const Amplitudes& a) {
  if (std::abs(a.gamma * a.gamma + a.lambda * a.lambda - 1.0) > 1e-12)
    throw std::invalid_argument("amplitudes must satisfy gamma^2 + lambda^2 = 1");
}

CVector qubit_ket(const Amplitudes& a) {
  check_amplitudes(a);
  CVector v(2);
  v << a.gamma, a.lambda;
  return v;
}

CMatrix qubit_op(QubitOpTag tag) {
  CMatrix m(2, 2);
  switch (tag) {
    case QubitOpTag::kIdentity: m << 1, 0, 0, 1; break;
    case QubitOpTag::kPhaseFlip: m << 1, 0, 0, -1; break;
    case QubitOpTag::kBitFlip: m << 0, 1, 1, 0; break;
    case QubitOpTag::kBitPhaseFlip: m << 0, -1, 1, 0; break;  // X·Z
  }
  return m;
}

namespace {

double bit_channel(int a, int b, double flip) {
  double w = 1.0;
  for (int bit = 0; bit < 2; ++bit) w *= (((a >> bit) & 1) != ((b >> bit) & 1)) ? flip : 1.0 - flip;
  return w;
}

double bit_prior(int v, double q) {
  double w = 1.0;
  for (int bit = 0; bit < 2; ++bit) w *= ((v >> bit) & 1) ? q : 1.0 - q;
  return w;
}

const SystemLayout& xy_bits() {
  static const SystemLayout l({{"X", 4}, {"Y", 4}});
  return l;
}

const SystemLayout& xy_qubits() {
  static const SystemLayout l({{"X", 2}, {"Y", 2}});
  return l;
}

const SystemLayout& zxy_qubits() {
  static const SystemLayout l({{"Z", 2}, {"X", 2}, {"Y", 2}});
  return l;
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

ClassicalModel bsc2_latent(double q, double p1, double p2) {
  check_probability(q, "q");
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  std::vector<double> full(64, 0.0), xy(16, 0.0);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) {
        double w = bit_prior(z, q) * bit_channel(z, x, p1) * bit_channel(z, y, p2);
        full[(x * 4 + y) * 4 + z] = w;
        xy[x * 4 + y] += w;
      }
  JointPMF pxy({4, 4}, xy);
  return {pxy, JointPMF({4, 4, 4}, full), from_pmf_diagonal(pxy, xy_bits())};
}

ClassicalModel bsc2_direct(double q, double p) {
  check_probability(q, "q");
  check_probability(p, "p");
  std::vector<double> xy(16, 0.0);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) xy[x * 4 + y] = bit_prior(x, q) * bit_channel(x, y, p);
  JointPMF pxy({4, 4}, xy);
  return {pxy, JointPMF(), from_pmf_diagonal(pxy, xy_bits())};
}

LatentState gqsc_latent(const Amplitudes& a, double q, double p1, double p2) {
  check_probability(q, "q");
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  const CVector s1 = qubit_ket(a);
  const CVector s2 = qubit_ket({a.gamma, -a.lambda});
  struct Branch {
    double w;
    const CVector *z, *x, *y;
  };
  const Branch branches[] = {
      {q * (1 - p1) * (1 - p2), &s1, &s1, &s1}, {q * (1 - p1) * p2, &s1, &s1, &s2},
      {q * p1 * (1 - p2), &s1, &s2, &s1},       {q * p1 * p2, &s1, &s2, &s2},
      {(1 - q) * p1 * p2, &s2, &s1, &s1},       {(1 - q) * p1 * (1 - p2), &s2, &s1, &s2},
      {(1 - q) * (1 - p1) * p2, &s2, &s2, &s1}, {(1 - q) * (1 - p1) * (1 - p2), &s2, &s2, &s2},
  };
  CMatrix rho = CMatrix::Zero(8, 8);
  for (const auto& b : branches) rho += b.w * projector(kron_vec(kron_vec(*b.z, *b.x), *b.y));
  DensityMatrix zxy(hermitize(rho), zxy_qubits());
  return {zxy, zxy.marginal({"X", "Y"})};
}

DensityMatrix gqsc_direct(const Amplitudes& a, double q, double p) {
  check_probability(q, "q");
  check_probability(p, "p");
  const CVector s1 = qubit_ket(a);
  const CVector s2 = qubit_ket({a.gamma, -a.lambda});
  CMatrix rho = q * (1 - p) * projector(kron_vec(s1, s1)) + q * p * projector(kron_vec(s1, s2)) +
                (1 - q) * p * projector(kron_vec(s2, s1)) + (1 - q) * (1 - p) * projector(kron_vec(s2, s2));
  return DensityMatrix(hermitize(rho), xy_qubits());
}

DensityMatrix depolarize_qubit(const DensityMatrix& rho, const std::string& target, double p) {
  check_probability(p, "p");
  const auto& lay = rho.layout();
  if (lay.dim(target) != 2) throw std::invalid_argument("depolarize_qubit: target factor must have dim 2");
  const SystemLayout single({{target, 2}});
  CMatrix out = (1.0 - p) * rho.mat();
  for (QubitOpTag tag : {QubitOpTag::kPhaseFlip, QubitOpTag::kBitFlip, QubitOpTag::kBitPhaseFlip}) {
    CMatrix u = embed_identity(qubit_op(tag), single, lay);
    out += (p / 3.0) * (u * rho.mat() * u.adjoint());
  }
  return DensityMatrix(hermitize(out), lay);
}

namespace {

DensityMatrix depolarized_triple(const Amplitudes& a, double p1, double p2) {
  CVector v = qubit_ket(a);
  DensityMatrix pure(projector(kron_vec(kron_vec(v, v), v)), zxy_qubits());
  return depolarize_qubit(depolarize_qubit(pure, "X", p1), "Y", p2);
}

DensityMatrix depolarized_pair(const Amplitudes& a, double p) {
  CVector v = qubit_ket(a);
  DensityMatrix pure(projector(kron_vec(v, v)), xy_qubits());
  return depolarize_qubit(pure, "Y", p);
}

}  // namespace

LatentState depolarizing_latent(const Amplitudes& first, const Amplitudes& second, double q, double p1,
                                double p2) {
  check_probability(q, "q");
  CMatrix rho = q * depolarized_triple(first, p1, p2).mat() + (1 - q) * depolarized_triple(second, p1, p2).mat();
  DensityMatrix zxy(hermitize(rho), zxy_qubits());
  return {zxy, zxy.marginal({"X", "Y"})};
}

DensityMatrix depolarizing_direct(const Amplitudes& first, const Amplitudes& second, double q, double p) {
  check_probability(q, "q");
  CMatrix rho = q * depolarized_pair(first, p).mat() + (1 - q) * depolarized_pair(second, p).mat();
  return DensityMatrix(hermitize(rho), xy_qubits());
}

Rotation rotate_to_pmf(const DensityMatrix& rho_xy) {
  const auto& lay = rho_xy.layout();
  if (lay.size() != 2) throw std::invalid_argument("rotate_to_pmf: two-factor state required");
  Spectrum sx = eig_hermitian(rho_xy.marginal({lay.factors()[0].label}).mat());
  Spectrum sy = eig_hermitian(rho_xy.marginal({lay.factors()[1].label}).mat());
  Rotation out;
  for (const Spectrum* s : {&sx, &sy})
    for (Eigen::Index i = 1; i < s->values.size(); ++i)
      if (std::abs(s->values(i - 1) - s->values(i)) < 1e-10) out.degenerate = true;
  CMatrix u = kron(sx.vectors, sy.vectors);
  CMatrix rot = u.adjoint() * rho_xy.mat() * u;
  std::vector<double> probs(rot.rows());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rot.rows(); ++i) {
    double v = rot(i, i).real();
    if (v < -1e-8) throw NumericError("rotate_to_pmf: negative diagonal entry beyond tolerance");
    probs[i] = std::max(v, 0.0);
    sum += probs[i];
  }
  for (double& v : probs) v /= sum;
  out.pmf = JointPMF(lay.dims(), probs);
  return out;
}

}  // namespace qcausal
