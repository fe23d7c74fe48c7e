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

#include <doctest.h>

#include "hamclass/oracles.hpp"
#include "hamclass/spectrum.hpp"
#include "test_helpers.hpp"

using namespace hamclass;
using namespace hamclass::testing;

TEST_CASE("eigensystem on small instances") {
  const EigenSystem zz = eigensystem(assemble(one_term_instance(2, table2({{"ZZ", 1.0}}), {0, 1})), 4);
  CHECK(zz.values(0) == doctest::Approx(-1.0));
  CHECK(zz.values(1) == doctest::Approx(-1.0));
  CHECK(zz.values(2) == doctest::Approx(1.0));
  CHECK(zz.values(3) == doctest::Approx(1.0));
  CHECK(zz.residual_norms.maxCoeff() < 1e-12);

  const EigenSystem heis = eigensystem(
      assemble(one_term_instance(2, table2({{"XX", 1.0}, {"YY", 1.0}, {"ZZ", 1.0}}), {0, 1})), 1);
  CHECK(heis.values(0) == doctest::Approx(-3.0));

  const EigenSystem lm = eigensystem(assemble(lieb_mattis_instance(2)), 1);
  CHECK(lm.values(0) == doctest::Approx(-8.0).epsilon(1e-12));
}

TEST_CASE("ground energy and promise verdicts") {
  HamiltonianInstance fields;
  fields.n = 3;
  fields.add_interaction("X", PauliTable::from_terms(1, {{"X", 1.0}}));
  fields.add_term("X", {0}, 1.0);
  fields.add_term("X", {1}, 2.0);
  fields.add_term("X", {2}, 3.0);
  CHECK(ground_energy(fields).energy == doctest::Approx(-6.0));

  HamiltonianInstance maxcut;
  maxcut.n = 3;
  maxcut.add_interaction("ZZ", table2({{"ZZ", 1.0}}));
  maxcut.add_term("ZZ", {0, 1}, 1.0);
  maxcut.add_term("ZZ", {1, 2}, 1.0);
  maxcut.add_term("ZZ", {0, 2}, 1.0);
  CHECK(ground_energy(maxcut).energy == doctest::Approx(-1.0));

  CHECK(ground_energy(lieb_mattis_instance(3)).energy == doctest::Approx(-15.0).epsilon(1e-12));

  maxcut.thresholds = Thresholds{-1.0, 0.0, "-1", "0"};
  CHECK(ground_energy(maxcut).verdict == "at_most_a");
  maxcut.thresholds = Thresholds{-3.0, -2.0, "-3", "-2"};
  CHECK(ground_energy(maxcut).verdict == "at_least_b");
  maxcut.thresholds = Thresholds{-2.0, 0.0, "-2", "0"};
  CHECK(ground_energy(maxcut).verdict == "violates_promise");
}

TEST_CASE("low energy block") {
  const double delta = 10.0;
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = delta;
  const LowEnergyBlock block = low_energy_block(h, delta / 2);
  CHECK(block.basis.cols() == 1);
  CHECK(std::abs(block.basis(0, 0)) == doctest::Approx(1.0));
  CHECK(block.restricted(0, 0) == Complex(0, 0));

  Matrix diag = Matrix::Zero(4, 4);
  diag.diagonal() << 0, 0, 5, 9;
  const LowEnergyBlock b2 = low_energy_block(diag, 2.0);
  CHECK(b2.basis.cols() == 2);
  CHECK(b2.restricted.cwiseAbs().maxCoeff() == 0.0);
  CHECK((b2.basis.adjoint() * b2.basis - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Matrix cluster = Matrix::Zero(3, 3);
  cluster.diagonal() << 0.0, 1.0, 1.0 + 1e-9;
  CHECK_THROWS_AS(low_energy_block(cluster, 1.0 + 0.5e-9), Error);
}

TEST_CASE("the S1 projector pins into the 4-dimensional S2 block") {
  // Heavy term Delta * Pi_S1 on 3 qubits; cutoff Delta/2 leaves the
  // mixed-symmetry subspace.
  HamiltonianInstance tri;
  tri.n = 3;
  tri.add_interaction("heis", table2({{"XX", 1.0}, {"YY", 1.0}, {"ZZ", 1.0}}));
  tri.add_interaction("shift", PauliTable::from_terms(1, {{"I", 1.0}}));
  tri.add_term("heis", {0, 1}, 1.0 / 6);
  tri.add_term("heis", {0, 2}, 1.0 / 6);
  tri.add_term("heis", {1, 2}, 1.0 / 6);
  tri.add_term("shift", {0}, 0.5);
  const double delta = 100.0;
  Matrix h = delta * assemble(tri).dense();
  const LowEnergyBlock block = low_energy_block(h, delta / 2);
  CHECK(block.basis.cols() == 4);
  CHECK(block.restricted.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("effective distance") {
  Matrix h = Matrix::Zero(4, 4);
  h.diagonal() << -1.0, 0.5, 10.0, 12.0;
  Matrix predicted = Matrix::Zero(4, 4);
  predicted.diagonal() << -1.0, 0.5, 0.0, 0.0;
  CHECK(effective_distance(h, 5.0, predicted) < 1e-14);

  // First-order pinning at its simplest: H = |1><1|, V = X, Delta = delta.
  const double delta = 64.0;
  Matrix ht = Matrix::Zero(2, 2);
  ht(1, 1) = delta;
  ht(0, 1) = ht(1, 0) = 1.0;
  Matrix vminus = Matrix::Zero(2, 2);  // <0|X|0> = 0
  const double dist = effective_distance(ht, delta / 2, vminus);
  CHECK(dist <= 41.0 / delta);
  CHECK(dist > 0.0);
}

TEST_CASE("the 41/delta pinning bound holds on random pinnings") {
  Rng rng(43);
  for (double delta : {4.0, 16.0, 64.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int qubits = 3 + (trial % 3);
      const Eigen::Index dim = Eigen::Index(1) << qubits;
      // H with nullspace and next eigenvalue exactly 1.
      const Matrix u = rng.unitary(static_cast<int>(dim));
      Eigen::VectorXd evs(dim);
      const int null_dim = 1 + rng.uniform_int(0, static_cast<int>(dim) / 2 - 1);
      for (Eigen::Index i = 0; i < dim; ++i)
        evs(i) = (i < null_dim) ? 0.0 : 1.0 + 2.0 * rng.uniform();
      evs(null_dim) = 1.0;
      const Matrix h = u * evs.asDiagonal() * u.adjoint();
      Matrix v = rng.hermitian(static_cast<int>(dim));
      v *= (1.0 + rng.uniform()) / spectral_norm(v);

      const double big = delta * std::pow(spectral_norm(v), 2);
      const Matrix ht = big * h + v;
      const Matrix pm = u.leftCols(null_dim) * u.leftCols(null_dim).adjoint();
      const Matrix vminus = pm * v * pm;
      CHECK(effective_distance(ht, big / 2, vminus) <= 41.0 / delta);
    }
  }
}

TEST_CASE("self energy closed form") {
  Rng rng(47);
  const Matrix h = [&] {
    Matrix m = Matrix::Zero(8, 8);
    m.diagonal() << 0, 0, 0, 5, 6, 7, 8, 9;
    const Matrix u = rng.unitary(8);
    return Matrix(u * m * u.adjoint());
  }();

  // V = 0 reproduces H_- at any z.
  const SelfEnergy trivial = self_energy(Complex(0.3, 0.1), h, Matrix::Zero(8, 8), 2.0);
  CHECK((trivial.sigma - trivial.basis.adjoint() * h * trivial.basis).cwiseAbs().maxCoeff() <
        1e-10);

  // Two-level pinning: Sigma_-(0) = -1/Delta.
  const double delta = 50.0;
  Matrix h2 = Matrix::Zero(2, 2);
  h2(1, 1) = delta;
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const SelfEnergy pinned = self_energy(Complex(0, 0), h2, x, delta / 2);
  CHECK(pinned.sigma.rows() == 1);
  CHECK(pinned.sigma(0, 0).real() == doctest::Approx(-1.0 / delta).epsilon(1e-12));

  Matrix resonant = x;
  CHECK_THROWS_AS(self_energy(Complex(delta, 0), h2, resonant, delta / 2), Error);
}

TEST_CASE("self energy truncation obeys the geometric tail bound") {
  Rng rng(53);
  const int dim = 8;
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) h(i, i) = (i < 3) ? 0.0 : 100.0 + i;
  Matrix v = rng.hermitian(dim);
  v *= 1.0 / spectral_norm(v);  // |V| = 1, |V|/Delta = 0.01 regime
  const double cutoff = 50.0;

  const SelfEnergy closed = self_energy(Complex(0, 0), h, v, cutoff);
  for (int order : {2, 3, 4}) {
    const Matrix truncated = self_energy_series(Complex(0, 0), h, v, cutoff, order);
    const double diff = spectral_norm(closed.sigma - truncated);
    // Tail sum_{i > order-1} |V|^{i+1} |G+|^i with |G+| <= 1/100.
    double tail = 0.0;
    for (int i = order; i < 60; ++i) tail += std::pow(1.0 / 100.0, i);
    CHECK(diff <= tail * 1.001 + 1e-15);
  }
}

TEST_CASE("spectra are invariant under conjugating the whole catalog") {
  Rng rng(59);
  HamiltonianInstance inst;
  inst.n = 3;
  inst.add_interaction("a", random_table(rng, 2));
  inst.add_interaction("b", random_table(rng, 1));
  inst.add_term("a", {0, 1}, 0.8);
  inst.add_term("a", {1, 2}, -0.6);
  inst.add_term("b", {2}, 1.7);

  for (int trial = 0; trial < 10; ++trial) {
    const LocalRotation rot = random_rotation(rng);
    HamiltonianInstance conj = inst;
    Catalog rotated;
    for (const auto& [name, inter] : conj.interactions)
      rotated.emplace(name, Interaction(name, conjugate_local(inter.table, rot)));
    conj.interactions = std::move(rotated);
    const Eigen::VectorXd before = eigenvalues_of(assemble(inst).dense());
    const Eigen::VectorXd after = eigenvalues_of(assemble(conj).dense());
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("krylov solver agrees with the dense path") {
  HamiltonianInstance tim;
  tim.n = 10;
  tim.add_interaction("ZZ", table2({{"ZZ", 1.0}}));
  tim.add_interaction("X", PauliTable::from_terms(1, {{"X", 1.0}}));
  Rng rng(61);
  for (int i = 0; i + 1 < tim.n; ++i) tim.add_term("ZZ", {i, i + 1}, rng.uniform(-1, 1));
  for (int i = 0; i < tim.n; ++i) tim.add_term("X", {i}, rng.uniform(-1, 1));
  const AssembledOperator op = assemble(tim);

  const EigenSystem dense = eigensystem(op, 3);
  const EigenSystem krylov = lanczos_lowest(op, 3);
  for (int i = 0; i < 3; ++i)
    CHECK(krylov.values(i) == doctest::Approx(dense.values(i)).epsilon(1e-9));
  CHECK(krylov.residual_norms.maxCoeff() < 1e-7);
}

TEST_CASE("krylov solver handles a 15-qubit operator") {
  HamiltonianInstance tim;
  tim.n = 15;
  tim.add_interaction("ZZ", table2({{"ZZ", 1.0}}));
  tim.add_interaction("X", PauliTable::from_terms(1, {{"X", 1.0}}));
  for (int i = 0; i + 1 < tim.n; ++i) tim.add_term("ZZ", {i, i + 1}, -1.0);
  for (int i = 0; i < tim.n; ++i) tim.add_term("X", {i}, -0.5);
  const AssembledOperator op = assemble(tim);
  const EigenSystem sys = lanczos_lowest(op, 1);
  // Residual-verified lowest eigenpair; the ferromagnetic chain with a small
  // transverse field sits just below the classical minimum -(n-1).
  CHECK(sys.residual_norms(0) < 1e-7);
  CHECK(sys.values(0) < -(tim.n - 1));
  CHECK(sys.values(0) > -(tim.n - 1) - 0.5 * tim.n);
}
