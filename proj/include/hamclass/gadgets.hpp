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

#ifndef HAMCLASS_GADGETS_HPP
#define HAMCLASS_GADGETS_HPP

#include <string>
#include <vector>

#include "hamclass/instance.hpp"
#include "hamclass/spectrum.hpp"

namespace hamclass {

enum class GadgetKind {
  PinSubspace,
  QubitPin,
  Mediator,
  EncodeHeisenberg,
  EncodeXY,
  EncodeXZSkew,
  ReduceXXAYY,
  ReduceXYZ,
  ExtractLocal,
  AncillaX,
  TimRewrite,
  ForceBasis,
};
const char* gadget_kind_name(GadgetKind kind);

struct LogicalEmbedding {
  std::string description;
  Matrix isometry;  // (physical dim) x (logical dim), orthonormal columns
};

// One instance rewrite: heavy terms added at strength delta, together with the
// predicted effective Hamiltonian on the logical space and an error bound.
struct GadgetStep {
  GadgetKind kind = GadgetKind::PinSubspace;
  double delta = 0.0;
  std::vector<PlacedTerm> added_terms;
  Catalog added_interactions;
  int new_qubits = 0;
  HamiltonianInstance predicted_effective;
  double predicted_offset = 0.0;  // identity part of the prediction
  double predicted_error = 0.0;
  LogicalEmbedding embedding;
};

HamiltonianInstance apply_step(const HamiltonianInstance& base, const GadgetStep& step);

struct StepCheck {
  double measured_distance = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// First-order pins: full-space norm |H_{<delta/2} - W (predicted + offset) W^dag|.
// Mediator steps: the same low block compressed through the ideal embedding,
// |W^dag H_{<delta/2} W - predicted|; the sqrt(Delta)-sized local dressing
// makes the raw full-space norm stall at O(1) however large delta is.
StepCheck verify_step(const Matrix& h_dense, const GadgetStep& step);

// The compressed-frame distance used for mediator verification.
double logical_frame_distance(const Matrix& h_dense, double cutoff, const Matrix& embedding,
                              const Matrix& predicted_logical);

struct GadgetPlan {
  GadgetKind kind = GadgetKind::EncodeHeisenberg;
  std::vector<GadgetStep> steps;          // strongest pinning first
  HamiltonianInstance physical;           // the fully rewritten instance
  int total_qubits = 0;
  double composed_error = 0.0;            // sum of per-step bounds
  double logical_offset = 0.0;            // identity shift carried by the encoding
  // The physical instance is uniformly rescaled so every weight respects
  // kWeightMax; true energies are (measured / energy_scale).
  double energy_scale = 1.0;
  LogicalEmbedding total_embedding;       // logical space -> physical space
};

// ---- first-order pinning ----

// Adds delta_eff * H0 with delta_eff = delta * max(1, |V|)^2; H0 must have
// lowest eigenvalue 0 and spectral gap >= 1 (the caller rescales). The default
// overload derives the logical basis from the heavy term's null space; the
// second fixes it explicitly (columns must span that null space).
GadgetStep pin_subspace(const HamiltonianInstance& inst, const HamiltonianInstance& heavy,
                        double delta);
GadgetStep pin_subspace(const HamiltonianInstance& inst, const HamiltonianInstance& heavy,
                        double delta, const Matrix& logical_basis);

GadgetStep qubit_pin(const HamiltonianInstance& inst, int qubit, const Eigen::Vector2cd& psi,
                     double delta);

// ---- second-order mediator ----

struct MediatorSpec {
  PauliTable h1{2};        // applied across (a, b)
  PauliTable h2{2};        // applied across (b, c)
  Eigen::Vector2cd psi;    // mediator pinned state
  int a = 0, b = 0, c = 0; // b must be the fresh qubit (== h_else.n)
  double delta = 1.0;      // Delta = delta^2 * max(1, |H_else|)^(3/2)
  // For parallel application: gadgets applied at once share one Delta scale,
  // referenced to the shared base Hamiltonian (0 = derive from h_else).
  double reference_norm = 0.0;
};

struct MediatorClosedForm {
  PauliTable cross{2};    // the induced 2-local interaction on (a, c)
  PauliTable first_a{1};  // first-order locals (coefficient of sqrt(Delta))
  PauliTable first_c{1};
  PauliTable local_a{1};  // second-order local corrections (the L term)
  PauliTable local_c{1};
};

MediatorClosedForm mediator_closed_form(const PauliTable& h1, const PauliTable& h2,
                                        const Eigen::Vector2cd& psi);

GadgetStep mediator_gadget(const HamiltonianInstance& h_else, const MediatorSpec& spec);

// ---- encodings (one logical qubit per 3-qubit block) ----

GadgetPlan encode_heisenberg(const HamiltonianInstance& logical, double delta = 16.0);
GadgetPlan encode_xy(const HamiltonianInstance& logical, double delta = 16.0);
GadgetPlan encode_xzskew(const HamiltonianInstance& logical, double delta = 16.0);

// ---- chain reductions ----

struct ChainReduction {
  GadgetKind kind = GadgetKind::ReduceXXAYY;
  Matrix pin_op;           // per-triple heavy operator (3 qubits)
  double ground_energy = 0.0;
  double gap = 0.0;
  Matrix basis;            // 8 x 2 ground-space basis, canonically ordered
  PauliTable eff_first{2};   // effective logical interaction of the first probe
  PauliTable eff_second{2};  // and of the second probe
};

// H = XX + alpha YY on a 3-qubit line; probes H14 and H24.
ChainReduction reduce_xx_ayy(double alpha);
// H = XX + alpha YY + beta ZZ with pin H12 - H23; probes (H24 + H35)/2 and H25,
// both rescaled by (1 + alpha^2 + beta^2)^2.
ChainReduction reduce_xyz(double alpha, double beta);

// ---- local-term extraction ----

enum class ExtractVariant { Symmetric2Axis, Skew, XXFields, XXZField, SkewFields };
const char* extract_variant_name(ExtractVariant variant);

struct ExtractParams {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  PauliTable a_local{1};  // traceless 1-qubit part, where the variant uses one
};

struct ExtractGadget {
  ExtractVariant variant = ExtractVariant::Symmetric2Axis;
  HamiltonianInstance heavy;   // the pinning structure, unit strength
  Vector ground_state;
  double ground_energy = 0.0;
  double gap = 0.0;
  int probe_qubit = 0;         // gadget qubit coupled to the fresh output qubit
  PauliTable predicted_local{1};  // effective 1-local output (identity included)
};

ExtractGadget extract_local(ExtractVariant variant, const ExtractParams& params);

// ---- exact reductions ----

// Converts 1-local terms into 2-local couplings against one fresh ancilla.
// Requires the remaining structure to be invariant under the global
// conjugation that flips the converted terms ({ZZ, X} + local Z, or
// {XX, Z} + local X).
HamiltonianInstance ancilla_x_trick(const HamiltonianInstance& inst);

// Normalizes a {ZZ + arbitrary 1-local} instance into {ZZ, X} form: per-qubit
// Z-axis rotations put every field into the X-Z plane with nonpositive X part,
// then the ancilla trick removes the local Z components.
HamiltonianInstance tim_rewrite(const HamiltonianInstance& inst);

// ---- diagonal-case basis forcing ----

struct ForceBasisResult {
  GadgetStep step;                // ancilla pin; empty added_terms on the palindrome branch
  bool unique_extremum = false;
  Eigen::Matrix4d solve_matrix;   // columns: H, row-forced, column-forced, identity
  Eigen::Vector4d zz_combo;       // coefficients reproducing diag(ZZ)
};

ForceBasisResult force_basis(const HamiltonianInstance& inst, int qubit, int bit,
                             double delta = 16.0);

}  // namespace hamclass

#endif  // HAMCLASS_GADGETS_HPP
