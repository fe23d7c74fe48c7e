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

#ifndef HAMCLASS_PAULI_HPP
#define HAMCLASS_PAULI_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "hamclass/errors.hpp"

namespace hamclass {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 8;        // largest interaction arity handled anywhere
inline constexpr double kRankTol = 1e-9;    // relative singular-value threshold for rank decisions
inline constexpr double kHermTol = 1e-12;   // Hermiticity / round-trip tolerance

// Pauli string on k qubits packed base-4: digit 0 is qubit 0 (leftmost tensor
// factor), values 0..3 meaning I, X, Y, Z.
std::uint32_t pauli_pack(std::string_view chars);
std::string pauli_unpack(std::uint32_t code, int qubits);
inline int pauli_digit(std::uint32_t code, int site, int qubits) {
  return static_cast<int>((code >> (2 * (qubits - 1 - site))) & 3u);
}
std::uint32_t pauli_with_digit(std::uint32_t code, int site, int qubits, int digit);
int pauli_weight(std::uint32_t code, int qubits);

const Eigen::Matrix2cd& sigma(int i);  // sigma(0)=I, 1=X, 2=Y, 3=Z

// Real-coefficient expansion of a Hermitian operator over tensor products of
// Pauli matrices. Sparse; zero coefficients are not stored.
class PauliTable {
 public:
  explicit PauliTable(int qubits);

  // Builds from {"XZ": w, ...} style term lists.
  static PauliTable from_terms(int qubits,
                               std::initializer_list<std::pair<std::string_view, double>> terms);

  int qubits() const { return qubits_; }
  double coeff(std::uint32_t code) const;
  double coeff(std::string_view chars) const { return coeff(pauli_pack(chars)); }
  void add(std::uint32_t code, double value);
  void add(std::string_view chars, double value) { add(pauli_pack(chars), value); }
  const std::map<std::uint32_t, double>& coeffs() const { return coeffs_; }

  bool empty() const { return coeffs_.empty(); }
  double max_abs_coeff() const;
  // Drops entries with |c| <= tol (used after algebra that cancels terms).
  void prune(double tol = 1e-14);

  PauliTable& operator*=(double s);
  PauliTable& operator+=(const PauliTable& other);
  friend PauliTable operator*(double s, PauliTable t) { return t *= s; }
  friend PauliTable operator+(PauliTable a, const PauliTable& b) { return a += b; }
  friend PauliTable operator-(PauliTable a, const PauliTable& b) {
    PauliTable nb = b;
    nb *= -1.0;
    return a += nb;
  }

 private:
  int qubits_;
  std::map<std::uint32_t, double> coeffs_;
};

struct CorrelationData {
  Eigen::Matrix3d m;       // 2-local coefficients M_ij of sigma^i (x) sigma^j
  Eigen::Vector3d v;       // left 1-local part
  Eigen::Vector3d w;       // right 1-local part
  double trace_part;       // coefficient of I(x)I
};

bool is_hermitian(const Matrix& h, double tol = kHermTol);

// Coefficient for string s is Tr(H sigma_s) / 2^k; imaginary parts are
// discarded after the Hermiticity check.
PauliTable pauli_decompose(const Matrix& h, int qubits);
Matrix dense_from_pauli(const PauliTable& table);

CorrelationData correlation_matrix(const PauliTable& table);
int pauli_rank(const PauliTable& table);
std::pair<PauliTable, PauliTable> swap_symmetrize(const PauliTable& table);
int locality(const PauliTable& table);

// The dense matrix of a single Pauli string (dimension 2^k).
Matrix pauli_string_matrix(std::uint32_t code, int qubits);

// y += c * (sigma_s x), without forming the dense string matrix.
void apply_pauli_string(std::uint32_t code, int qubits, Complex c, const Vector& x, Vector& y);

}  // namespace hamclass

#endif  // HAMCLASS_PAULI_HPP
