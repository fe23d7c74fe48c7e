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

#include "hamclass/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hamclass/rng.hpp"

namespace hamclass {

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.rows() == m.cols() && is_hermitian(m, 1e-10)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

void fix_column_phases(Matrix& vecs) {
  for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
    Eigen::Index imax = 0;
    vecs.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex lead = vecs(imax, j);
    if (std::abs(lead) > 0) vecs.col(j) *= std::conj(lead) / std::abs(lead);
  }
}

EigenSystem dense_lowest(const AssembledOperator& op, int k) {
  const Matrix& h = op.dense();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  EigenSystem sys;
  sys.values = es.eigenvalues().head(k);
  sys.vectors = es.eigenvectors().leftCols(k);
  fix_column_phases(sys.vectors);
  sys.residual_norms.resize(k);
  for (int i = 0; i < k; ++i)
    sys.residual_norms(i) = (op.apply(sys.vectors.col(i)) - sys.values(i) * sys.vectors.col(i)).norm();
  return sys;
}

}  // namespace

EigenSystem lanczos_lowest(const AssembledOperator& op, int k, int max_matvecs) {
  const Eigen::Index dim = op.dim();
  const int block = std::min<int>(std::max(2, k), 6);
  const int cap = static_cast<int>(std::min<Eigen::Index>(dim, std::max(4 * k + 48, 96)));

  Rng rng(0x5eedULL);
  Matrix basis(dim, cap);
  int nb = 0;
  auto orthonormalize_into = [&](Vector v) -> bool {
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < nb; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    const double nrm = v.norm();
    if (nrm < 1e-10) return false;
    basis.col(nb++) = v / nrm;
    return true;
  };

  for (int b = 0; b < block && nb < cap; ++b) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
    orthonormalize_into(v);
  }

  int matvecs = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  EigenSystem sys;
  while (true) {
    // Expand the Krylov block until the basis cap.
    int src = std::max(0, nb - block);
    while (nb < cap && matvecs < max_matvecs) {
      if (src >= nb) {  // exhausted; inject a fresh random direction
        Vector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
        if (!orthonormalize_into(v)) break;
        continue;
      }
      ++matvecs;
      orthonormalize_into(op.apply(basis.col(src)));
      ++src;
    }

    // Rayleigh-Ritz on the accumulated basis.
    Matrix hb(dim, nb);
    for (int j = 0; j < nb; ++j) {
      hb.col(j) = op.apply(basis.col(j));
      ++matvecs;
    }
    const Matrix t = basis.leftCols(nb).adjoint() * hb;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (t + t.adjoint()));
    const int kk = std::min(k, nb);
    Matrix ritz = basis.leftCols(nb) * es.eigenvectors().leftCols(kk);
    fix_column_phases(ritz);

    const double scale =
        std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(nb - 1)));
    const double tol = kEigTolFactor * std::max(scale, 1e-300);
    sys.values = es.eigenvalues().head(kk);
    sys.vectors = ritz;
    sys.residual_norms.resize(kk);
    double worst = 0.0;
    for (int i = 0; i < kk; ++i) {
      sys.residual_norms(i) = (op.apply(ritz.col(i)) - sys.values(i) * ritz.col(i)).norm();
      worst = std::max(worst, sys.residual_norms(i));
    }
    best_residual = std::min(best_residual, worst);
    if (worst <= tol && kk == k) return sys;
    if (matvecs >= max_matvecs)
      fail(Errc::NoConvergence, "after " + std::to_string(matvecs) +
                                    " matvecs, best residual " + std::to_string(best_residual));

    // Thick restart: keep the best Ritz vectors plus slack, then keep expanding.
    const int keep = std::min(nb, std::min(cap - block, 2 * k + block));
    Matrix kept = basis.leftCols(nb) * es.eigenvectors().leftCols(keep);
    nb = 0;
    for (int j = 0; j < keep; ++j) orthonormalize_into(kept.col(j));
  }
}

EigenSystem eigensystem(const AssembledOperator& op, int k) {
  if (k < 1 || static_cast<Eigen::Index>(k) > op.dim())
    fail(Errc::DimensionMismatch, "requested eigenpair count out of range");
  if (op.dim() <= kDenseMax) return dense_lowest(op, k);
  return lanczos_lowest(op, k);
}

GroundResult ground_energy(const HamiltonianInstance& inst) {
  const AssembledOperator op = assemble(inst);
  const EigenSystem sys = eigensystem(op, 1);
  GroundResult res;
  res.energy = sys.values(0);
  if (inst.thresholds) {
    if (res.energy <= inst.thresholds->a)
      res.verdict = "at_most_a";
    else if (res.energy >= inst.thresholds->b)
      res.verdict = "at_least_b";
    else
      res.verdict = "violates_promise";
  }
  return res;
}

LowEnergyBlock low_energy_block(const Matrix& h, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  const Eigen::Index dim = vals.size();
  Eigen::Index nlow = 0;
  while (nlow < dim && vals(nlow) < cutoff) ++nlow;

  const double norm_h = std::max(std::abs(vals(0)), std::abs(vals(dim - 1)));
  if (nlow > 0 && nlow < dim) {
    const double gap = vals(nlow) - vals(nlow - 1);
    if (gap < kGapMinFactor * std::max(norm_h, 1e-300))
      fail(Errc::CutoffInsideCluster, "spectral gap " + std::to_string(gap) +
                                          " below GAP_MIN at cutoff " + std::to_string(cutoff));
  }

  LowEnergyBlock block;
  block.cutoff = cutoff;
  block.basis = es.eigenvectors().leftCols(nlow);
  fix_column_phases(block.basis);
  block.restricted = vals.head(nlow).asDiagonal().toDenseMatrix().cast<Complex>();
  return block;
}

LowEnergyBlock low_energy_block(const AssembledOperator& op, double cutoff) {
  return low_energy_block(op.dense(), cutoff);
}

double effective_distance(const Matrix& h_tilde, double cutoff, const Matrix& predicted) {
  const LowEnergyBlock block = low_energy_block(h_tilde, cutoff);
  const Matrix embedded =
      block.basis * block.restricted * block.basis.adjoint();
  return spectral_norm(embedded - predicted);
}

double effective_distance(const AssembledOperator& op_tilde, double cutoff,
                          const Matrix& predicted) {
  return effective_distance(op_tilde.dense(), cutoff, predicted);
}

namespace {

struct SplitSpectrum {
  Matrix qm, qp;            // eigenvector bases below / above the cutoff
  Eigen::VectorXd lm, lp;   // eigenvalues
};

SplitSpectrum split_at(const Matrix& h, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  Eigen::Index nlow = 0;
  while (nlow < vals.size() && vals(nlow) < cutoff) ++nlow;
  SplitSpectrum s;
  s.qm = es.eigenvectors().leftCols(nlow);
  s.qp = es.eigenvectors().rightCols(vals.size() - nlow);
  s.lm = vals.head(nlow);
  s.lp = vals.tail(vals.size() - nlow);
  fix_column_phases(s.qm);
  return s;
}

}  // namespace

SelfEnergy self_energy(Complex z, const Matrix& h, const Matrix& v, double cutoff) {
  const SplitSpectrum s = split_at(h, cutoff);
  const double scale = std::max(1.0, spectral_norm(h));
  for (Eigen::Index i = 0; i < s.lp.size(); ++i)
    if (std::abs(z - s.lp(i)) < 1e-12 * scale)
      fail(Errc::ResolventSingular, "z coincides with an eigenvalue of H above the cutoff");

  const Matrix vmm = s.qm.adjoint() * v * s.qm;
  const Matrix vmp = s.qm.adjoint() * v * s.qp;
  const Matrix vpm = s.qp.adjoint() * v * s.qm;
  const Matrix vpp = s.qp.adjoint() * v * s.qp;

  Vector gp(s.lp.size());
  for (Eigen::Index i = 0; i < s.lp.size(); ++i) gp(i) = 1.0 / (z - s.lp(i));

  const Matrix vpp_gp = vpp * gp.asDiagonal();
  const Matrix k = Matrix::Identity(s.lp.size(), s.lp.size()) - vpp_gp;
  Eigen::FullPivLU<Matrix> lu(k);
  if (!lu.isInvertible())
    fail(Errc::ResolventSingular, "(I - V+ G+) is singular at this z");

  SelfEnergy out;
  out.basis = s.qm;
  out.sigma = s.lm.cast<Complex>().asDiagonal().toDenseMatrix() + vmm +
              vmp * gp.asDiagonal() * lu.solve(vpm);
  return out;
}

Matrix self_energy_series(Complex z, const Matrix& h, const Matrix& v, double cutoff, int order) {
  const SplitSpectrum s = split_at(h, cutoff);
  const Matrix vmp = s.qm.adjoint() * v * s.qp;
  const Matrix vpm = s.qp.adjoint() * v * s.qm;
  const Matrix vpp = s.qp.adjoint() * v * s.qp;

  Vector gp(s.lp.size());
  for (Eigen::Index i = 0; i < s.lp.size(); ++i) gp(i) = 1.0 / (z - s.lp(i));

  Matrix sigma = s.lm.cast<Complex>().asDiagonal().toDenseMatrix() + s.qm.adjoint() * v * s.qm;
  // Term of order m >= 2 is V_-+ G_+ (V_+ G_+)^{m-2} V_+-.
  Matrix chain = gp.asDiagonal() * vpm;
  for (int m = 2; m <= order; ++m) {
    sigma += vmp * chain;
    chain = gp.asDiagonal() * (vpp * chain);
  }
  return sigma;
}

}  // namespace hamclass
