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

#include "hamclass/rotation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hamclass {

namespace {

// U = w I - i (x X + y Y + z Z) for unit quaternion (w, x, y, z).
Eigen::Matrix2cd su2_from_quaternion(double w, double x, double y, double z) {
  Eigen::Matrix2cd u;
  u << Complex(w, -z), Complex(-y, -x), Complex(y, -x), Complex(w, z);
  return u;
}

void fix_su2_sign(Eigen::Matrix2cd& u) {
  double lead = u(0, 0).real();
  if (std::abs(lead) < 1e-12) {
    // Degenerate leading sign; settle on the largest-magnitude entry instead.
    const std::array<double, 3> parts = {u(0, 0).imag(), u(0, 1).imag(), u(0, 1).real()};
    for (double p : parts) {
      if (std::abs(p) > 1e-12) {
        lead = p;
        break;
      }
    }
  }
  if (lead < 0) u = -u;
}

}  // namespace

Eigen::Matrix3d so3_from_su2(const Eigen::Matrix2cd& u) {
  Eigen::Matrix3d r;
  for (int i = 1; i <= 3; ++i) {
    const Eigen::Matrix2cd rotated = u * sigma(i) * u.adjoint();
    for (int j = 1; j <= 3; ++j) r(j - 1, i - 1) = 0.5 * (sigma(j) * rotated).trace().real();
  }
  return r;
}

LocalRotation su2_from_so3(const Eigen::Matrix3d& r) {
  if ((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(r.determinant() - 1.0) > 1e-9)
    fail(Errc::NotSpecialOrthogonal, "matrix is not in SO(3) within tolerance");

  // Shepperd quaternion extraction, branching on the dominant component.
  const double t = r.trace();
  double w, x, y, z;
  if (t > std::max({r(0, 0), r(1, 1), r(2, 2)})) {
    const double s = std::sqrt(1.0 + t) * 2.0;
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    x = 0.25 * s;
    w = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = std::sqrt(1.0 - r(0, 0) + r(1, 1) - r(2, 2)) * 2.0;
    y = 0.25 * s;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 - r(0, 0) - r(1, 1) + r(2, 2)) * 2.0;
    z = 0.25 * s;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
  }
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  Eigen::Matrix2cd u = su2_from_quaternion(w / norm, x / norm, y / norm, z / norm);
  fix_su2_sign(u);

  LocalRotation rot{u, r};
  if ((so3_from_su2(u) - r).cwiseAbs().maxCoeff() > 1e-9)
    fail(Errc::Internal, "SU(2) lift failed the consistency check");
  return rot;
}

LocalRotation rotation_from_unitary(const Eigen::Matrix2cd& u_in) {
  const Complex det = u_in.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9)
    fail(Errc::NotSpecialOrthogonal, "matrix is not unitary within tolerance");
  Eigen::Matrix2cd u = u_in / std::sqrt(det);
  fix_su2_sign(u);
  return LocalRotation{u, so3_from_su2(u)};
}

PauliTable conjugate_local(const PauliTable& table, const LocalRotation& rot) {
  const int k = table.qubits();
  std::map<std::uint32_t, double> cur(table.coeffs().begin(), table.coeffs().end());
  for (int site = 0; site < k; ++site) {
    std::map<std::uint32_t, double> next;
    for (const auto& [code, c] : cur) {
      const int d = pauli_digit(code, site, k);
      if (d == 0) {
        next[code] += c;
        continue;
      }
      for (int j = 1; j <= 3; ++j) {
        const double rij = rot.r(j - 1, d - 1);
        if (rij != 0.0) next[pauli_with_digit(code, site, k, j)] += c * rij;
      }
    }
    cur = std::move(next);
  }
  PauliTable out(k);
  for (const auto& [code, c] : cur)
    if (c != 0.0) out.add(code, c);
  return out;
}

namespace {

Eigen::Matrix3d rotation_aligning(const Eigen::Vector3d& from_unit, const Eigen::Vector3d& to_unit) {
  const Eigen::Vector3d axis = from_unit.cross(to_unit);
  const double s = axis.norm();
  const double c = from_unit.dot(to_unit);
  if (s < 1e-14) {
    if (c > 0) return Eigen::Matrix3d::Identity();
    // Antiparallel: rotate by pi about the basis axis most orthogonal to `from`.
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(from_unit(i)) < std::abs(from_unit(best))) best = i;
    Eigen::Vector3d perp = Eigen::Vector3d::Unit(best);
    perp -= perp.dot(from_unit) * from_unit;
    perp.normalize();
    return 2.0 * perp * perp.transpose() - Eigen::Matrix3d::Identity();
  }
  // Rodrigues formula.
  Eigen::Matrix3d k;
  k << 0, -axis(2), axis(1), axis(2), 0, -axis(0), -axis(1), axis(0), 0;
  return Eigen::Matrix3d::Identity() + k + k * k * ((1.0 - c) / (s * s));
}

void check_traceless_2q(const PauliTable& table) {
  if (table.qubits() != 2) fail(Errc::WrongArity, "normal forms require a 2-qubit table");
}

PauliTable strip_trace(const PauliTable& table) {
  PauliTable t = table;
  t.add(std::uint32_t{0}, -t.coeff(std::uint32_t{0}));
  return t;
}

}  // namespace

SymmetricNormalForm normal_form_symmetric(const PauliTable& table) {
  check_traceless_2q(table);
  const auto [plus, minus] = swap_symmetrize(table);
  const double scale = std::max(1.0, table.max_abs_coeff());
  if (minus.max_abs_coeff() > 1e-10 * scale)
    fail(Errc::NotSymmetric, "table is not swap-symmetric");

  const CorrelationData cd = correlation_matrix(strip_trace(table));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cd.m);
  std::array<int, 3> order = {0, 1, 2};
  const Eigen::Vector3d evs = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(evs(a)) != std::abs(evs(b))) return std::abs(evs(a)) > std::abs(evs(b));
    if (evs(a) != evs(b)) return evs(a) > evs(b);
    return a < b;
  });

  Eigen::Matrix3d r;
  Eigen::Vector3d alpha;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d u = es.eigenvectors().col(order[i]);
    for (int c = 0; c < 3; ++c) {
      if (std::abs(u(c)) > 1e-12) {
        if (u(c) < 0) u = -u;
        break;
      }
    }
    r.row(i) = u.transpose();
    alpha(i) = evs(order[i]);
  }
  if (r.determinant() < 0) r.row(2) *= -1.0;

  SymmetricNormalForm nf;
  nf.rotation = su2_from_so3(r);
  nf.alpha = alpha;
  nf.beta = r * cd.v;
  return nf;
}

AntisymmetricNormalForm normal_form_antisymmetric(const PauliTable& table) {
  check_traceless_2q(table);
  const auto [plus, minus] = swap_symmetrize(table);
  const double scale = std::max(1.0, table.max_abs_coeff());
  if (plus.max_abs_coeff() > 1e-10 * scale)
    fail(Errc::NotAntisymmetric, "table is not swap-antisymmetric");

  const CorrelationData cd = correlation_matrix(strip_trace(table));
  // Axial vector of the skew correlation matrix; the canonical slot (1,3)
  // corresponds to the axis e2.
  const Eigen::Vector3d m(cd.m(2, 1), cd.m(0, 2), cd.m(1, 0));
  const double alpha = m.norm();

  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  if (alpha > 1e-14) r = rotation_aligning(m / alpha, Eigen::Vector3d::UnitY());

  AntisymmetricNormalForm nf;
  nf.rotation = su2_from_so3(r);
  nf.alpha = alpha;
  nf.axes = {1, 3};
  nf.beta = r * cd.v;
  return nf;
}

bool table_is_diagonal(const PauliTable& table, double tol) {
  const int k = table.qubits();
  for (const auto& [code, c] : table.coeffs()) {
    if (std::abs(c) <= tol) continue;
    for (int s = 0; s < k; ++s) {
      const int d = pauli_digit(code, s, k);
      if (d == 1 || d == 2) return false;
    }
  }
  return true;
}

namespace {

// Rotation sending the +1 eigenvector of a . sigma to |0>.
LocalRotation rotation_diagonalizing_axis(const Eigen::Vector3d& a) {
  Eigen::Matrix2cd op = Eigen::Matrix2cd::Zero();
  for (int i = 1; i <= 3; ++i) op += a(i - 1) * sigma(i);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(op);
  Eigen::Matrix2cd u;
  u.row(0) = es.eigenvectors().col(1).adjoint();  // +|a| eigenvector
  u.row(1) = es.eigenvectors().col(0).adjoint();
  return rotation_from_unitary(u);
}

std::optional<LocalRotation> diagonalizer_from_candidates(
    std::span<const PauliTable> tables, const std::vector<Eigen::Vector3d>& candidates) {
  for (const auto& a : candidates) {
    if (a.norm() < 1e-12) continue;
    const LocalRotation rot = rotation_diagonalizing_axis(a / a.norm());
    bool all_diag = true;
    for (const auto& t : tables) {
      const double scale = std::max(1.0, t.max_abs_coeff());
      if (!table_is_diagonal(conjugate_local(t, rot), 1e-9 * scale)) {
        all_diag = false;
        break;
      }
    }
    if (all_diag) return rot;
  }
  return std::nullopt;
}

}  // namespace

std::optional<LocalRotation> common_diagonalizer(std::span<const PauliTable> tables) {
  if (tables.empty()) return rotation_from_unitary(Eigen::Matrix2cd::Identity());

  long rows = 0;
  for (const auto& t : tables) rows += 2 * (Eigen::Index(1) << (2 * t.qubits())) * t.qubits();
  Eigen::MatrixXd sys(rows, 3);
  long row0 = 0;
  for (const auto& t : tables) {
    PauliTable tn = t;
    const double scale = tn.max_abs_coeff();
    if (scale > 0) tn *= 1.0 / scale;
    const Matrix h = dense_from_pauli(tn);
    const int k = tn.qubits();
    const auto dim = h.rows();
    for (int site = 0; site < k; ++site) {
      for (int i = 1; i <= 3; ++i) {
        const Matrix pauli = pauli_string_matrix(
            pauli_with_digit(0, site, k, i), k);
        const Matrix comm = pauli * h - h * pauli;
        for (Eigen::Index r = 0; r < dim; ++r) {
          for (Eigen::Index c = 0; c < dim; ++c) {
            sys(row0 + 2 * (r * dim + c), i - 1) = comm(r, c).real();
            sys(row0 + 2 * (r * dim + c) + 1, i - 1) = comm(r, c).imag();
          }
        }
      }
      row0 += 2 * dim * dim;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  std::vector<Eigen::Vector3d> candidates;
  if (s(0) <= 1e-12) {
    candidates = {Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY()};
  } else {
    for (int i = 2; i >= 0; --i)
      if (s(i) <= 1e-7 * s(0)) candidates.push_back(svd.matrixV().col(i));
  }
  return diagonalizer_from_candidates(tables, candidates);
}

std::optional<LocalRotation> test_local_diagonalizable(const PauliTable& table) {
  return common_diagonalizer(std::span<const PauliTable>(&table, 1));
}

std::optional<LocalRotation> tim_axis_test(std::span<const PauliTable> tables) {
  std::vector<Eigen::Matrix3d> mats;
  mats.reserve(tables.size());
  for (const auto& t : tables) {
    PauliTable tn = t;
    const double scale = tn.max_abs_coeff();
    if (scale > 0) tn *= 1.0 / scale;
    if (pauli_rank(tn) >= 2) fail(Errc::RankTooHigh, "element has Pauli rank >= 2");
    mats.push_back(correlation_matrix(tn).m);
  }

  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  bool found = false;
  for (const auto& m : mats) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU);
    if (svd.singularValues()(0) > kRankTol) {
      axis = svd.matrixU().col(0);
      found = true;
      break;
    }
  }
  if (found) {
    for (const auto& m : mats) {
      const double a = axis.dot(m * axis);
      if ((m - a * axis * axis.transpose()).cwiseAbs().maxCoeff() > kRankTol * std::max(1.0, m.cwiseAbs().maxCoeff()))
        return std::nullopt;
    }
  }
  return su2_from_so3(rotation_aligning(axis, Eigen::Vector3d::UnitZ()));
}

}  // namespace hamclass
