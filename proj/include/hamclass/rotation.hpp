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

#ifndef HAMCLASS_ROTATION_HPP
#define HAMCLASS_ROTATION_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hamclass/pauli.hpp"

namespace hamclass {

// Paired SU(2) / SO(3) rotation. The consistency convention is
//   u sigma(i) u^dag = sum_j r(j, i) sigma(j),
// so Pauli coefficient vectors transform as a -> r a.
struct LocalRotation {
  Eigen::Matrix2cd u;
  Eigen::Matrix3d r;
};

// Lifts an SO(3) matrix to SU(2); the global sign is fixed by requiring a
// non-negative real part of u(0,0), with a fixed fallback rule when that
// entry is purely imaginary.
LocalRotation su2_from_so3(const Eigen::Matrix3d& r);

// Normalizes an arbitrary unitary to SU(2) and derives its SO(3) image.
LocalRotation rotation_from_unitary(const Eigen::Matrix2cd& u);

Eigen::Matrix3d so3_from_su2(const Eigen::Matrix2cd& u);

// Coefficient-level conjugation H -> U^(x)k H U^dag(x)k; every tensor factor
// index is rotated by r.
PauliTable conjugate_local(const PauliTable& table, const LocalRotation& rot);

struct SymmetricNormalForm {
  LocalRotation rotation;
  Eigen::Vector3d alpha;  // diagonal 2-local coefficients, |a1| >= |a2| >= |a3|
  Eigen::Vector3d beta;   // shared 1-local coefficients
};

struct AntisymmetricNormalForm {
  LocalRotation rotation;
  double alpha;                // coefficient of sigma^i(x)sigma^j - sigma^j(x)sigma^i
  std::pair<int, int> axes;    // canonically (1, 3), the XZ - ZX convention
  Eigen::Vector3d beta;
};

SymmetricNormalForm normal_form_symmetric(const PauliTable& table);
AntisymmetricNormalForm normal_form_antisymmetric(const PauliTable& table);

// Witness search for diagonalizability: a traceless single-qubit A commuting with the
// operator at every site. Returns the rotation diagonalizing A when the
// conjugated table is verifiably diagonal.
std::optional<LocalRotation> test_local_diagonalizable(const PauliTable& table);
std::optional<LocalRotation> common_diagonalizer(std::span<const PauliTable> tables);

// Tests whether the 2-local parts of all tables share one product axis
// (M_i = alpha_i u u^T for a common u); returns the rotation mapping u -> e3.
std::optional<LocalRotation> tim_axis_test(std::span<const PauliTable> tables);

// True when every coefficient with a digit outside {I, Z} is below tol.
bool table_is_diagonal(const PauliTable& table, double tol = 1e-9);

}  // namespace hamclass

#endif  // HAMCLASS_ROTATION_HPP
