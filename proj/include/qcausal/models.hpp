#pragma once

#include <string>
#include <utility>

#include "qcausal/pmf.hpp"
#include "qcausal/states.hpp"

namespace qcausal {

struct Amplitudes {
  double gamma = 1.0;
  double lambda = 0.0;
};

void check_probability(double p, const char* name);
void check_amplitudes(const Amplitudes& a);

// gamma|0> + lambda|1>
CVector qubit_ket(const Amplitudes& a);

enum class QubitOpTag { kIdentity, kPhaseFlip, kBitFlip, kBitPhaseFlip };
CMatrix qubit_op(QubitOpTag tag);

struct ClassicalModel {
  JointPMF pxy;
  JointPMF pxyz;  // (x, y, z) order; empty for the direct model
  DensityMatrix rho_xy;
};

struct LatentState {
  DensityMatrix rho_zxy;
  DensityMatrix rho_xy;
};

// Two-bit symmetric channels; bit patterns are indexed as 2*b1 + b0.
ClassicalModel bsc2_latent(double q, double p1, double p2);
ClassicalModel bsc2_direct(double q, double p);

LatentState gqsc_latent(const Amplitudes& a, double q, double p1, double p2);
DensityMatrix gqsc_direct(const Amplitudes& a, double q, double p);

DensityMatrix depolarize_qubit(const DensityMatrix& rho, const std::string& target, double p);
LatentState depolarizing_latent(const Amplitudes& first, const Amplitudes& second, double q, double p1,
                                double p2);
DensityMatrix depolarizing_direct(const Amplitudes& first, const Amplitudes& second, double q, double p);

struct Rotation {
  JointPMF pmf;
  bool degenerate = false;  // a marginal spectrum has a repeated eigenvalue
};

Rotation rotate_to_pmf(const DensityMatrix& rho_xy);

}  // namespace qcausal
