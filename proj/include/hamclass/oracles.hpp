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

#ifndef HAMCLASS_ORACLES_HPP
#define HAMCLASS_ORACLES_HPP

#include <utility>
#include <vector>

#include "hamclass/instance.hpp"

namespace hamclass {

// Uniform superposition of n-bit strings of Hamming weight k.
Vector dicke_state(int n, int k);

// Ground state of the complete-bipartite Heisenberg model on two n-qubit
// blocks (qubits 0..n-1 and n..2n-1): the alternating-sign Dicke ladder.
Vector lieb_mattis_state(int n);

double lieb_mattis_ground_energy(int n);  // -n(n+2)

// Swap expectation in the Lieb-Mattis ground state, computed from the
// closed-form state vector rather than assumed. Same-block pairs give 1; the
// cross-block value comes out as -1/n (the printed -2/n is inconsistent with
// the model's own ground energy).
double lieb_mattis_swap_expectation(int n, int i, int j);

// (energy, total spin s) levels of the complete-graph Heisenberg model on m
// qubits. The energy constant follows the derivation 2s(s+1) - 3m/2; the
// printed -3m/4 does not reproduce the two-qubit spectrum.
std::vector<std::pair<double, double>> complete_heisenberg_spectrum(int m);

// Complete-graph XY eigenvalue 2k(n-k) on the Hamming-weight-k sector, with
// the uniform Dicke state as eigenvector.
double xy_sector_eigenvalue(int n, int k);

// Instance builders for the exactly solvable models above.
HamiltonianInstance lieb_mattis_instance(int n);
HamiltonianInstance complete_heisenberg_instance(int m);
HamiltonianInstance complete_xy_instance(int n);

// State-vector helpers.
Vector swap_qubits(const Vector& state, int n_qubits, int i, int j);
Vector apply_complete_xy(const Vector& state, int n);

}  // namespace hamclass

#endif  // HAMCLASS_ORACLES_HPP
