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

#include "hamclass/pauli.hpp"

#include <Eigen/SVD>

namespace hamclass {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongArity: return "WrongArity";
    case Errc::ArityTooLarge: return "ArityTooLarge";
    case Errc::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotAntisymmetric: return "NotAntisymmetric";
    case Errc::RankTooHigh: return "RankTooHigh";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::CutoffInsideCluster: return "CutoffInsideCluster";
    case Errc::ResolventSingular: return "ResolventSingular";
    case Errc::NotGapNormalized: return "NotGapNormalized";
    case Errc::UnsupportedLogicalTerm: return "UnsupportedLogicalTerm";
    case Errc::DegenerateAlpha: return "DegenerateAlpha";
    case Errc::BothZero: return "BothZero";
    case Errc::VariantPreconditionFailed: return "VariantPreconditionFailed";
    case Errc::SymmetryPreconditionFailed: return "SymmetryPreconditionFailed";
    case Errc::NotZZForm: return "NotZZForm";
    case Errc::NoUniqueExtremum: return "NoUniqueExtremum";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

int char_to_digit(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
  }
  fail(Errc::ParseError, std::string("invalid Pauli character '") + c + "'");
}

constexpr char kPauliChars[] = "IXYZ";

}  // namespace

std::uint32_t pauli_pack(std::string_view chars) {
  if (chars.size() > static_cast<std::size_t>(kMaxQubits))
    fail(Errc::ArityTooLarge, "Pauli string longer than " + std::to_string(kMaxQubits));
  std::uint32_t code = 0;
  for (char c : chars) code = (code << 2) | static_cast<std::uint32_t>(char_to_digit(c));
  return code;
}

std::string pauli_unpack(std::uint32_t code, int qubits) {
  std::string s(static_cast<std::size_t>(qubits), 'I');
  for (int i = 0; i < qubits; ++i) s[i] = kPauliChars[pauli_digit(code, i, qubits)];
  return s;
}

std::uint32_t pauli_with_digit(std::uint32_t code, int site, int qubits, int digit) {
  const int shift = 2 * (qubits - 1 - site);
  return (code & ~(3u << shift)) | (static_cast<std::uint32_t>(digit) << shift);
}

int pauli_weight(std::uint32_t code, int qubits) {
  int w = 0;
  for (int i = 0; i < qubits; ++i)
    if (pauli_digit(code, i, qubits) != 0) ++w;
  return w;
}

const Eigen::Matrix2cd& sigma(int i) {
  static const Eigen::Matrix2cd mats[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return mats[i];
}

PauliTable::PauliTable(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > kMaxQubits)
    fail(Errc::ArityTooLarge, "qubit count " + std::to_string(qubits) + " outside [1, " +
                                  std::to_string(kMaxQubits) + "]");
}

PauliTable PauliTable::from_terms(
    int qubits, std::initializer_list<std::pair<std::string_view, double>> terms) {
  PauliTable t(qubits);
  for (const auto& [chars, w] : terms) {
    if (chars.size() != static_cast<std::size_t>(qubits))
      fail(Errc::WrongArity, "Pauli string length mismatch");
    t.add(chars, w);
  }
  return t;
}

double PauliTable::coeff(std::uint32_t code) const {
  auto it = coeffs_.find(code);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void PauliTable::add(std::uint32_t code, double value) {
  auto [it, inserted] = coeffs_.try_emplace(code, value);
  if (!inserted) it->second += value;
  if (it->second == 0.0) coeffs_.erase(it);
}

double PauliTable::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [code, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void PauliTable::prune(double tol) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) <= tol)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

PauliTable& PauliTable::operator*=(double s) {
  if (s == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [code, c] : coeffs_) c *= s;
  return *this;
}

PauliTable& PauliTable::operator+=(const PauliTable& other) {
  if (other.qubits_ != qubits_) fail(Errc::WrongArity, "adding tables of different arity");
  for (const auto& [code, c] : other.coeffs_) add(code, c);
  return *this;
}

bool is_hermitian(const Matrix& h, double tol) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, h.cwiseAbs().maxCoeff());
}

namespace {

// Recursive fast Pauli transform: peel off qubit 0 as 2x2 blocks.
void decompose_rec(const Matrix& h, int qubits, std::uint32_t prefix, PauliTable& out) {
  if (qubits == 0) {
    const double c = h(0, 0).real();
    if (c != 0.0) out.add(prefix, c);
    return;
  }
  const auto half = h.rows() / 2;
  const Matrix a = h.topLeftCorner(half, half);
  const Matrix b = h.topRightCorner(half, half);
  const Matrix c = h.bottomLeftCorner(half, half);
  const Matrix d = h.bottomRightCorner(half, half);
  decompose_rec(0.5 * (a + d), qubits - 1, (prefix << 2) | 0u, out);
  decompose_rec(0.5 * (b + c), qubits - 1, (prefix << 2) | 1u, out);
  decompose_rec(Complex(0, 0.5) * (b - c), qubits - 1, (prefix << 2) | 2u, out);
  decompose_rec(0.5 * (a - d), qubits - 1, (prefix << 2) | 3u, out);
}

}  // namespace

PauliTable pauli_decompose(const Matrix& h, int qubits) {
  const auto dim = Eigen::Index(1) << qubits;
  if (h.rows() != dim || h.cols() != dim)
    fail(Errc::DimensionMismatch, "matrix dimension " + std::to_string(h.rows()) +
                                      " does not match 2^" + std::to_string(qubits));
  if (!is_hermitian(h))
    fail(Errc::NonHermitian, "input matrix is not Hermitian within tolerance");
  PauliTable out(qubits);
  decompose_rec(h, qubits, 0, out);
  out.prune(0.0);
  return out;
}

Matrix dense_from_pauli(const PauliTable& table) {
  const auto dim = Eigen::Index(1) << table.qubits();
  Matrix h = Matrix::Zero(dim, dim);
  const int k = table.qubits();
  for (const auto& [code, coeff] : table.coeffs()) {
    // Each Pauli string has exactly one nonzero entry per column.
    std::uint32_t flip = 0;
    for (int s = 0; s < k; ++s) {
      const int d = pauli_digit(code, s, k);
      if (d == 1 || d == 2) flip |= 1u << (k - 1 - s);
    }
    for (std::uint32_t col = 0; col < static_cast<std::uint32_t>(dim); ++col) {
      Complex amp = coeff;
      for (int s = 0; s < k; ++s) {
        const int d = pauli_digit(code, s, k);
        const int bit = (col >> (k - 1 - s)) & 1;
        if (d == 2) amp *= bit ? Complex(0, -1) : Complex(0, 1);
        if (d == 3 && bit) amp = -amp;
      }
      h(col ^ flip, col) += amp;
    }
  }
  return h;
}

Matrix pauli_string_matrix(std::uint32_t code, int qubits) {
  PauliTable t(qubits);
  t.add(code, 1.0);
  return dense_from_pauli(t);
}

void apply_pauli_string(std::uint32_t code, int qubits, Complex c, const Vector& x, Vector& y) {
  const int k = qubits;
  std::uint32_t flip = 0;
  for (int s = 0; s < k; ++s) {
    const int d = pauli_digit(code, s, k);
    if (d == 1 || d == 2) flip |= 1u << (k - 1 - s);
  }
  const auto dim = x.size();
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex amp = c;
    for (int s = 0; s < k; ++s) {
      const int d = pauli_digit(code, s, k);
      const int bit = static_cast<int>((static_cast<std::uint32_t>(col) >> (k - 1 - s)) & 1u);
      if (d == 2) amp *= bit ? Complex(0, -1) : Complex(0, 1);
      if (d == 3 && bit) amp = -amp;
    }
    y(static_cast<Eigen::Index>(static_cast<std::uint32_t>(col) ^ flip)) += amp * x(col);
  }
}

CorrelationData correlation_matrix(const PauliTable& table) {
  if (table.qubits() != 2) fail(Errc::WrongArity, "correlation matrix requires a 2-qubit table");
  CorrelationData cd;
  cd.m.setZero();
  cd.v.setZero();
  cd.w.setZero();
  cd.trace_part = table.coeff(std::uint32_t{0});
  for (int i = 1; i <= 3; ++i) {
    cd.v(i - 1) = table.coeff(static_cast<std::uint32_t>(i << 2));
    cd.w(i - 1) = table.coeff(static_cast<std::uint32_t>(i));
    for (int j = 1; j <= 3; ++j)
      cd.m(i - 1, j - 1) = table.coeff(static_cast<std::uint32_t>((i << 2) | j));
  }
  return cd;
}

int pauli_rank(const PauliTable& table) {
  const CorrelationData cd = correlation_matrix(table);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cd.m);
  const auto& s = svd.singularValues();
  if (s(0) < 1e-300) return 0;
  int rank = 0;
  for (int i = 0; i < 3; ++i)
    if (s(i) > kRankTol * s(0)) ++rank;
  return rank;
}

std::pair<PauliTable, PauliTable> swap_symmetrize(const PauliTable& table) {
  if (table.qubits() != 2) fail(Errc::WrongArity, "swap symmetrization requires a 2-qubit table");
  PauliTable plus(2), minus(2);
  for (const auto& [code, c] : table.coeffs()) {
    const std::uint32_t swapped = ((code & 3u) << 2) | (code >> 2);
    plus.add(code, 0.5 * c);
    plus.add(swapped, 0.5 * c);
    minus.add(code, 0.5 * c);
    minus.add(swapped, -0.5 * c);
  }
  plus.prune(0.0);
  minus.prune(0.0);
  return {plus, minus};
}

int locality(const PauliTable& table) {
  int w = 0;
  for (const auto& [code, c] : table.coeffs())
    if (std::abs(c) > kRankTol) w = std::max(w, pauli_weight(code, table.qubits()));
  return w;
}

}  // namespace hamclass
