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

#include "hamclass/oracles.hpp"

#include <bit>
#include <cmath>

namespace hamclass {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

PauliTable heisenberg_table() {
  return PauliTable::from_terms(2, {{"XX", 1.0}, {"YY", 1.0}, {"ZZ", 1.0}});
}

PauliTable xy_table() { return PauliTable::from_terms(2, {{"XX", 1.0}, {"YY", 1.0}}); }

void check_state_size(int qubits) {
  if (qubits < 1 || qubits > 20)
    fail(Errc::DimensionMismatch,
         "state-vector oracle limited to 20 qubits, got " + std::to_string(qubits));
}

}  // namespace

Vector dicke_state(int n, int k) {
  check_state_size(n);
  if (k < 0 || k > n) fail(Errc::DimensionMismatch, "excitation count outside [0, n]");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Vector v = Vector::Zero(dim);
  const double amp = 1.0 / std::sqrt(binomial(n, k));
  for (Eigen::Index x = 0; x < dim; ++x)
    if (std::popcount(static_cast<std::uint64_t>(x)) == k) v(x) = amp;
  return v;
}

Vector lieb_mattis_state(int n) {
  check_state_size(2 * n);
  const Eigen::Index dim = Eigen::Index(1) << (2 * n);
  Vector v = Vector::Zero(dim);
  const double norm = 1.0 / std::sqrt(n + 1.0);
  for (int k = 0; k <= n; ++k) {
    const Vector left = dicke_state(n, k);
    const Vector right = dicke_state(n, n - k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (Eigen::Index a = 0; a < left.size(); ++a) {
      if (left(a) == Complex{}) continue;
      for (Eigen::Index b = 0; b < right.size(); ++b)
        if (right(b) != Complex{}) v((a << n) | b) += sign * norm * left(a).real() * right(b).real();
    }
  }
  return v;
}

double lieb_mattis_ground_energy(int n) {
  if (n < 1) fail(Errc::DimensionMismatch, "block size must be positive");
  return -static_cast<double>(n) * (n + 2);
}

Vector swap_qubits(const Vector& state, int n_qubits, int i, int j) {
  const int si = n_qubits - 1 - i;
  const int sj = n_qubits - 1 - j;
  Vector out(state.size());
  for (Eigen::Index x = 0; x < state.size(); ++x) {
    const std::uint64_t u = static_cast<std::uint64_t>(x);
    const std::uint64_t bi = (u >> si) & 1u;
    const std::uint64_t bj = (u >> sj) & 1u;
    std::uint64_t y = u & ~((std::uint64_t{1} << si) | (std::uint64_t{1} << sj));
    y |= (bj << si) | (bi << sj);
    out(static_cast<Eigen::Index>(y)) = state(x);
  }
  return out;
}

double lieb_mattis_swap_expectation(int n, int i, int j) {
  if (i == j) fail(Errc::DimensionMismatch, "swap expectation needs two distinct qubits");
  const Vector phi = lieb_mattis_state(n);
  const Vector swapped = swap_qubits(phi, 2 * n, i, j);
  return phi.dot(swapped).real();
}

std::vector<std::pair<double, double>> complete_heisenberg_spectrum(int m) {
  if (m < 1 || m > 14) fail(Errc::DimensionMismatch, "qubit count outside [1, 14]");
  std::vector<std::pair<double, double>> levels;
  for (double s = m / 2.0; s >= -0.25; s -= 1.0)
    levels.push_back({2.0 * s * (s + 1.0) - 1.5 * m, s});
  return levels;
}

double xy_sector_eigenvalue(int n, int k) {
  if (k < 0 || k > n) fail(Errc::DimensionMismatch, "excitation count outside [0, n]");
  return 2.0 * static_cast<double>(k) * (n - k);
}

HamiltonianInstance lieb_mattis_instance(int n) {
  HamiltonianInstance inst;
  inst.n = 2 * n;
  inst.add_interaction("heis", heisenberg_table());
  for (int i = 0; i < n; ++i)
    for (int j = n; j < 2 * n; ++j) inst.add_term("heis", {i, j}, 1.0);
  return inst;
}

HamiltonianInstance complete_heisenberg_instance(int m) {
  HamiltonianInstance inst;
  inst.n = m;
  inst.add_interaction("heis", heisenberg_table());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) inst.add_term("heis", {i, j}, 1.0);
  return inst;
}

HamiltonianInstance complete_xy_instance(int n) {
  HamiltonianInstance inst;
  inst.n = n;
  inst.add_interaction("xy", xy_table());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) inst.add_term("xy", {i, j}, 1.0);
  return inst;
}

Vector apply_complete_xy(const Vector& state, int n) {
  // XX + YY summed over all pairs hops single excitations: for each basis
  // state, move one set bit to any clear position, with amplitude 2.
  const Eigen::Index dim = state.size();
  Vector out = Vector::Zero(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    if (state(x) == Complex{}) continue;
    const std::uint64_t u = static_cast<std::uint64_t>(x);
    for (int a = 0; a < n; ++a) {
      if (!((u >> a) & 1u)) continue;
      for (int b = 0; b < n; ++b) {
        if ((u >> b) & 1u) continue;
        const std::uint64_t y = (u & ~(std::uint64_t{1} << a)) | (std::uint64_t{1} << b);
        out(static_cast<Eigen::Index>(y)) += 2.0 * state(x);
      }
    }
  }
  return out;
}

}  // namespace hamclass
