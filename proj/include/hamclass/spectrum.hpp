// Copyright 2026 The hamclass authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAMCLASS_SPECTRUM_HPP
#define HAMCLASS_SPECTRUM_HPP

#include <optional>
#include <string>

#include "hamclass/instance.hpp"

namespace hamclass {

inline constexpr double kEigTolFactor = 1e-9;  // EIG_TOL = factor * |H|
inline constexpr double kGapMinFactor = 1e-6;  // GAP_MIN = factor * |H|

struct EigenSystem {
  Eigen::VectorXd values;          // ascending
  Matrix vectors;                  // orthonormal columns, one per value
  Eigen::VectorXd residual_norms;  // |H v - lambda v| per pair
};

// k lowest eigenpairs. Dense solve up to kDenseMax, Krylov beyond.
EigenSystem eigensystem(const AssembledOperator& op, int k);

// Krylov-subspace solver with full reorthogonalization and thick restarts;
// exposed separately so the iterative path can be exercised at any size.
EigenSystem lanczos_lowest(const AssembledOperator& op, int k, int max_matvecs = 4000);

struct GroundResult {
  double energy = 0.0;
  std::string verdict;  // "at_most_a" | "at_least_b" | "violates_promise" | ""
};

GroundResult ground_energy(const HamiltonianInstance& inst);

struct LowEnergyBlock {
  double cutoff = 0.0;
  Matrix basis;       // orthonormal columns spanning eigenvectors below cutoff
  Matrix restricted;  // H in that basis (diagonal by construction)
};

LowEnergyBlock low_energy_block(const Matrix& h, double cutoff);
LowEnergyBlock low_energy_block(const AssembledOperator& op, double cutoff);

// Operator norm of (restriction of op_tilde below cutoff, embedded in the full
// space) minus the prediction. The comparison is projector-based; individual
// eigenvector phases never enter.
double effective_distance(const Matrix& h_tilde, double cutoff, const Matrix& predicted);
double effective_distance(const AssembledOperator& op_tilde, double cutoff,
                          const Matrix& predicted);

struct SelfEnergy {
  Matrix basis;  // low-block basis (eigenvectors of H below cutoff)
  Matrix sigma;  // Sigma_-(z) in that basis; Hermitian for real z
};

// Closed form H_- + V_- + V_-+ G_+ (I - V_+ G_+)^{-1} V_+-, not a truncation.
SelfEnergy self_energy(Complex z, const Matrix& h, const Matrix& v, double cutoff);

// Order-m truncation of the self-energy series, for tail-bound comparisons.
Matrix self_energy_series(Complex z, const Matrix& h, const Matrix& v, double cutoff, int order);

double spectral_norm(const Matrix& m);

}  // namespace hamclass

#endif  // HAMCLASS_SPECTRUM_HPP
