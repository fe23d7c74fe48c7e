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

#include "diag_oracles.hpp"
#include "hamclass/rotation.hpp"
#include "test_helpers.hpp"

using namespace hamclass;
using namespace hamclass::testing;

namespace {

double consistency_residual(const LocalRotation& rot) {
  double worst = 0.0;
  for (int i = 1; i <= 3; ++i) {
    Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
    for (int j = 1; j <= 3; ++j) expected += rot.r(j - 1, i - 1) * sigma(j);
    worst = std::max(worst,
                     (rot.u * sigma(i) * rot.u.adjoint() - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("su2_from_so3 basics") {
  const LocalRotation id = su2_from_so3(Eigen::Matrix3d::Identity());
  CHECK((id.u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  // pi rotation about z: X -> -X, Z -> Z.
  Eigen::Matrix3d rz = Eigen::Matrix3d::Identity();
  rz(0, 0) = rz(1, 1) = -1;
  const LocalRotation rot = su2_from_so3(rz);
  CHECK((rot.u * sigma(1) * rot.u.adjoint() + sigma(1)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((rot.u * sigma(3) * rot.u.adjoint() - sigma(3)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(std::abs(rot.u(0, 0)) - 1.0) < 1e-12);  // diagonal up to phase
  CHECK(std::abs(rot.u(0, 1)) < 1e-12);

  // Axis permutation x -> z -> y -> x.
  Eigen::Matrix3d perm;
  perm << 0, 1, 0, 0, 0, 1, 1, 0, 0;  // columns: e3, e1, e2
  const LocalRotation cyc = su2_from_so3(perm);
  CHECK((cyc.u * sigma(1) * cyc.u.adjoint() - sigma(3)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((cyc.u * sigma(2) * cyc.u.adjoint() - sigma(1)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((cyc.u * sigma(3) * cyc.u.adjoint() - sigma(2)).cwiseAbs().maxCoeff() < 1e-10);

  Eigen::Matrix3d reflect = Eigen::Matrix3d::Identity();
  reflect(2, 2) = -1;
  CHECK_THROWS_AS(su2_from_so3(reflect), Error);
}

TEST_CASE("su2 lift satisfies the consistency invariant on random rotations") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const LocalRotation viaU = random_rotation(rng);
    CHECK(consistency_residual(viaU) < 1e-10);
    const LocalRotation lifted = su2_from_so3(viaU.r);
    CHECK(consistency_residual(lifted) < 1e-10);
    CHECK(std::abs(lifted.u.determinant() - 1.0) < 1e-10);
    // Same rotation up to the global sign, with the sign convention applied.
    CHECK((lifted.r - viaU.r).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("conjugate_local on tables") {
  // x <-> z exchange (with y negated to stay special orthogonal).
  Eigen::Matrix3d xz;
  xz << 0, 0, 1, 0, -1, 0, 1, 0, 0;
  const LocalRotation rot = su2_from_so3(xz);
  const PauliTable xx = conjugate_local(table2({{"ZZ", 1.0}}), rot);
  CHECK(xx.coeff("XX") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(xx.max_abs_coeff() == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(5);
  const PauliTable heis = table2({{"XX", 1.0}, {"YY", 1.0}, {"ZZ", 1.0}});
  for (int trial = 0; trial < 20; ++trial) {
    PauliTable diff = conjugate_local(heis, random_rotation(rng)) - heis;
    diff.prune(1e-12);
    CHECK(diff.empty());
  }

  // Rotation about y keeps the skew part XZ - ZX intact.
  const double theta = 0.3;
  Eigen::Matrix3d ry;
  ry << std::cos(theta), 0, std::sin(theta), 0, 1, 0, -std::sin(theta), 0, std::cos(theta);
  const PauliTable skew = conjugate_local(table2({{"XZ", 1.0}, {"ZX", -1.0}}), su2_from_so3(ry));
  CHECK(skew.coeff("XZ") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(skew.coeff("ZX") == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("conjugate_local preserves spectra") {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const PauliTable t = random_table(rng, 2);
    const PauliTable conj = conjugate_local(t, random_rotation(rng));
    const Eigen::VectorXd before = eigenvalues_of(dense_from_pauli(t));
    const Eigen::VectorXd after = eigenvalues_of(dense_from_pauli(conj));
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("symmetric normal form") {
  const SymmetricNormalForm yy = normal_form_symmetric(table2({{"YY", 1.0}}));
  CHECK(yy.alpha(0) == doctest::Approx(1.0));
  CHECK(std::abs(yy.alpha(1)) < 1e-12);
  CHECK(yy.beta.norm() < 1e-12);

  const SymmetricNormalForm xz2 = normal_form_symmetric(
      table2({{"XX", 1.0}, {"XZ", 1.0}, {"ZX", 1.0}, {"ZZ", 1.0}}));
  CHECK(xz2.alpha(0) == doctest::Approx(2.0));
  CHECK(std::abs(xz2.alpha(1)) < 1e-12);
  CHECK(std::abs(xz2.alpha(2)) < 1e-12);

  const SymmetricNormalForm withlocal =
      normal_form_symmetric(table2({{"ZZ", 1.0}, {"XI", 1.0}, {"IX", 1.0}}));
  CHECK(std::abs(withlocal.alpha(0)) == doctest::Approx(1.0));
  CHECK(withlocal.beta.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(normal_form_symmetric(table2({{"XZ", 1.0}, {"ZX", -1.0}})), Error);
}

TEST_CASE("symmetric normal form invariant on random inputs") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliTable t = random_swap_symmetric(rng);
    const SymmetricNormalForm nf = normal_form_symmetric(t);
    const PauliTable conj = conjugate_local(t, nf.rotation);
    // Off-form coefficients vanish.
    PauliTable residue = conj;
    for (int i = 1; i <= 3; ++i) {
      residue.add(static_cast<std::uint32_t>((i << 2) | i), -nf.alpha(i - 1));
      residue.add(static_cast<std::uint32_t>(i << 2), -nf.beta(i - 1));
      residue.add(static_cast<std::uint32_t>(i), -nf.beta(i - 1));
    }
    CHECK(residue.max_abs_coeff() < 1e-9);
    CHECK(std::abs(nf.alpha(0)) >= std::abs(nf.alpha(1)));
    CHECK(std::abs(nf.alpha(1)) >= std::abs(nf.alpha(2)));
    const Eigen::VectorXd before = eigenvalues_of(dense_from_pauli(t));
    const Eigen::VectorXd after = eigenvalues_of(dense_from_pauli(conj));
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("antisymmetric normal form") {
  const AntisymmetricNormalForm canonical =
      normal_form_antisymmetric(table2({{"XZ", 1.0}, {"ZX", -1.0}}));
  CHECK(canonical.alpha == doctest::Approx(1.0));
  CHECK(canonical.axes == std::pair<int, int>{1, 3});

  const AntisymmetricNormalForm xy = normal_form_antisymmetric(table2({{"XY", 1.0}, {"YX", -1.0}}));
  CHECK(xy.alpha == doctest::Approx(1.0));

  const AntisymmetricNormalForm mixed = normal_form_antisymmetric(
      table2({{"YZ", 2.0}, {"ZY", -2.0}, {"XI", 1.0}, {"IX", -1.0}}));
  CHECK(mixed.alpha == doctest::Approx(2.0));
  CHECK(mixed.beta.norm() > 0.5);

  CHECK_THROWS_AS(normal_form_antisymmetric(table2({{"XX", 1.0}})), Error);
}

TEST_CASE("antisymmetric normal form invariant on random inputs") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliTable t = random_swap_antisymmetric(rng);
    const AntisymmetricNormalForm nf = normal_form_antisymmetric(t);
    PauliTable residue = conjugate_local(t, nf.rotation);
    residue.add(pauli_pack("XZ"), -nf.alpha);
    residue.add(pauli_pack("ZX"), nf.alpha);
    for (int i = 1; i <= 3; ++i) {
      residue.add(static_cast<std::uint32_t>(i << 2), -nf.beta(i - 1));
      residue.add(static_cast<std::uint32_t>(i), nf.beta(i - 1));
    }
    CHECK(residue.max_abs_coeff() < 1e-9);
    CHECK(nf.alpha >= 0.0);
  }
}

TEST_CASE("local diagonalizability witness search") {
  CHECK(test_local_diagonalizable(table2({{"ZZ", 1.0}, {"ZI", 1.0}})).has_value());
  const auto xx = test_local_diagonalizable(table2({{"XX", 1.0}}));
  REQUIRE(xx.has_value());
  CHECK(table_is_diagonal(conjugate_local(table2({{"XX", 1.0}}), *xx)));
  CHECK(!test_local_diagonalizable(table2({{"XX", 1.0}, {"ZZ", 1.0}})).has_value());
}

TEST_CASE("planted diagonalizable operators are recognized") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + (trial % 3);
    const Eigen::MatrixXcd u = rng.unitary(2);
    Matrix d = Matrix::Zero(1 << k, 1 << k);
    for (Eigen::Index i = 0; i < d.rows(); ++i) d(i, i) = rng.gaussian();
    Matrix uk = Matrix::Identity(1, 1);
    for (int s = 0; s < k; ++s) {
      Matrix next(uk.rows() * 2, uk.cols() * 2);
      for (Eigen::Index i = 0; i < uk.rows(); ++i)
        for (Eigen::Index j = 0; j < uk.cols(); ++j)
          next.block(2 * i, 2 * j, 2, 2) = uk(i, j) * u;
      uk = next;
    }
    const PauliTable t = pauli_decompose(uk * d * uk.adjoint(), k);
    const auto witness = test_local_diagonalizable(t);
    REQUIRE(witness.has_value());
    CHECK(table_is_diagonal(conjugate_local(t, *witness), 1e-9 * std::max(1.0, t.max_abs_coeff())));
  }
}

TEST_CASE("the three diagonalizability characterizations agree") {
  Rng rng(23);
  int diagonalizable_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    PauliTable t(2);
    if (trial % 2 == 0) {
      const Eigen::MatrixXcd u = rng.unitary(2);
      Matrix d = Matrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i) d(i, i) = rng.gaussian();
      Matrix u2(4, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u2.block(2 * i, 2 * j, 2, 2) = u(i, j) * u;
      t = pauli_decompose(u2 * d * u2.adjoint(), 2);
    } else {
      t = random_table(rng, 2);
    }
    const bool witness = test_local_diagonalizable(t).has_value();
    const bool comm = commutator_characterization(t);
    const bool fit = form_fit_characterization(t);
    CHECK(witness == comm);
    CHECK(witness == fit);
    if (witness) ++diagonalizable_count;
  }
  CHECK(diagonalizable_count >= 100);  // every planted case fires
}

TEST_CASE("common diagonalizer over sets") {
  std::vector<PauliTable> easy = {table2({{"ZZ", 1.0}}), table2({{"ZI", 1.0}, {"IZ", 1.0}})};
  CHECK(common_diagonalizer(easy).has_value());

  std::vector<PauliTable> xset = {table2({{"XX", 1.0}}), PauliTable::from_terms(1, {{"X", 1.0}})};
  const auto rot = common_diagonalizer(xset);
  REQUIRE(rot.has_value());
  CHECK(table_is_diagonal(conjugate_local(xset[0], *rot)));

  std::vector<PauliTable> hard = {table2({{"ZZ", 1.0}}), table2({{"XX", 1.0}})};
  CHECK(!common_diagonalizer(hard).has_value());
}

TEST_CASE("tim axis test") {
  std::vector<PauliTable> aligned = {table2({{"ZZ", 1.0}, {"XI", 1.0}}), table2({{"ZZ", 1.0}})};
  const auto id = tim_axis_test(aligned);
  REQUIRE(id.has_value());
  CHECK((id->r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9);

  std::vector<PauliTable> tilted = {
      table2({{"XX", 0.5}, {"XZ", 0.5}, {"ZX", 0.5}, {"ZZ", 0.5}, {"YI", 1.0}})};
  const auto rot = tim_axis_test(tilted);
  REQUIRE(rot.has_value());
  PauliTable conj = conjugate_local(tilted[0], *rot);
  for (const auto& [code, c] : conj.coeffs()) {
    if (pauli_weight(code, 2) < 2 || std::abs(c) < 1e-9) continue;
    CHECK(code == pauli_pack("ZZ"));
  }

  std::vector<PauliTable> different = {table2({{"ZZ", 1.0}}), table2({{"XX", 1.0}})};
  CHECK(!tim_axis_test(different).has_value());

  std::vector<PauliTable> rank2 = {table2({{"XX", 1.0}, {"ZZ", 1.0}})};
  CHECK_THROWS_AS(tim_axis_test(rank2), Error);
}

TEST_CASE("tim axis acceptance is invariant under common rotation") {
  Rng rng(29);
  std::vector<PauliTable> base = {table2({{"ZZ", 1.0}, {"XI", 0.3}}),
                                  table2({{"ZZ", -0.5}, {"IY", 0.2}})};
  for (int trial = 0; trial < 20; ++trial) {
    const LocalRotation rot = random_rotation(rng);
    std::vector<PauliTable> rotated;
    for (const auto& t : base) rotated.push_back(conjugate_local(t, rot));
    CHECK(tim_axis_test(rotated).has_value());
  }
}
