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

#ifndef HAMCLASS_DIAG_ORACLES_HPP
#define HAMCLASS_DIAG_ORACLES_HPP

#include <Eigen/Eigenvalues>

#include "hamclass/pauli.hpp"

// Independent of the library's witness search: the two alternative
// characterizations of diagonalizability by local unitaries, used as test
// oracles.
namespace hamclass::testing {

inline Matrix kron_pair(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// [H (x) I, I (x) H] = [H (x) I, I (x) FHF] = [FHF (x) I, I (x) H] = 0, with
// the two copies overlapping on the middle qubit of a 3-qubit register.
inline bool commutator_characterization(const PauliTable& t) {
  const Matrix h = dense_from_pauli(t);
  Matrix f = Matrix::Zero(4, 4);
  f(0, 0) = f(3, 3) = 1;
  f(1, 2) = f(2, 1) = 1;
  const Matrix fhf = f * h * f;
  const Matrix i2 = Matrix::Identity(2, 2);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  auto commutes = [&](const Matrix& left, const Matrix& right) {
    const Matrix a = kron_pair(left, i2);   // acts on qubits (1, 2)
    const Matrix b = kron_pair(i2, right);  // acts on qubits (2, 3)
    return (a * b - b * a).cwiseAbs().maxCoeff() < 1e-7 * scale * scale;
  };
  return commutes(h, h) && commutes(h, fhf) && commutes(fhf, h);
}

// H = a A (x) A + b A (x) I + c I (x) A + d I (x) I for some single-qubit A.
inline bool form_fit_characterization(const PauliTable& t) {
  const CorrelationData cd = correlation_matrix(t);
  const double scale = std::max(1.0, t.max_abs_coeff());
  const double tol = 1e-7 * scale;
  if ((cd.m - cd.m.transpose()).cwiseAbs().maxCoeff() > tol) return false;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cd.m);
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  double best = 0.0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(es.eigenvalues()(i)) > best) {
      best = std::abs(es.eigenvalues()(i));
      axis = es.eigenvectors().col(i);
    }
  if (best <= tol) {
    if (cd.v.norm() > tol)
      axis = cd.v.normalized();
    else if (cd.w.norm() > tol)
      axis = cd.w.normalized();
    else
      return true;  // proportional to the identity
  } else {
    const double alpha = axis.dot(cd.m * axis);
    if ((cd.m - alpha * axis * axis.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  }
  const Eigen::Vector3d pv = cd.v - cd.v.dot(axis) * axis;
  const Eigen::Vector3d pw = cd.w - cd.w.dot(axis) * axis;
  return pv.norm() <= tol && pw.norm() <= tol;
}

}  // namespace hamclass::testing

#endif  // HAMCLASS_DIAG_ORACLES_HPP
