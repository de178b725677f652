// Copyright 2026 The thermoosc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoosc/perturb.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "thermoosc/error.hpp"

namespace thermoosc::perturb {

using lindblad::Complex;
using lindblad::Index;

namespace {

void check_pair(const Operator& h0, const Operator& v) {
  if (h0.dim() != v.dim()) throw ShapeError("perturbation: H0 and V dimensions differ");
  if (!h0.is_hermitian(1e-12)) throw DomainError("perturbation: H0 is not Hermitian");
  if (!v.is_hermitian(1e-12)) throw DomainError("perturbation: V is not Hermitian");
}

// V in the H0 eigenbasis.
Matrix rotated(const SpectralDecomposition& sd, const Operator& v) {
  return sd.vectors.adjoint() * v.matrix() * sd.vectors;
}

Operator diagonal_in_basis(const SpectralDecomposition& sd, const Eigen::VectorXd& d) {
  Matrix m = sd.vectors * d.cast<Complex>().asDiagonal() * sd.vectors.adjoint();
  // Exact Hermitian symmetrization removes rounding asymmetry.
  return Operator(0.5 * (m + m.adjoint()));
}

// sum_{k != j} |V_kj|^2 / (E_j - E_k).
Eigen::VectorXd second_order_shifts(const SpectralDecomposition& sd, const Matrix& vr) {
  const Index n = sd.energies.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      if (k == j) continue;
      out(j) += std::norm(vr(k, j)) / (sd.energies(j) - sd.energies(k));
    }
  }
  return out;
}

Envelope or_one(Envelope f) {
  if (f) return f;
  return [](double) { return 1.0; };
}

}  // namespace

SpectralDecomposition spectral_decomposition(const Operator& h0) {
  if (!h0.is_hermitian(1e-12)) throw DomainError("spectral_decomposition: H0 is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h0.matrix());
  if (es.info() != Eigen::Success) throw DomainError("spectral_decomposition: eigensolver failed");
  SpectralDecomposition sd{es.eigenvalues(), es.eigenvectors(),
                           std::numeric_limits<double>::infinity()};
  for (Index i = 0; i + 1 < sd.energies.size(); ++i) {
    sd.min_gap = std::min(sd.min_gap, sd.energies(i + 1) - sd.energies(i));
  }
  const double norm = sd.energies.cwiseAbs().maxCoeff();
  if (sd.energies.size() > 1 && !(sd.min_gap > 1e-8 * norm && sd.min_gap > 0.0)) {
    throw DegeneracyError("H0 spectrum is degenerate: minimum gap " + std::to_string(sd.min_gap) +
                          " vs threshold 1e-8 ||H0|| = " + std::to_string(1e-8 * norm));
  }
  return sd;
}

Expansion perturbation_expansion(const Operator& h0, const Operator& v, double lambda,
                                 int order) {
  if (order != 1 && order != 2) throw DomainError("perturbation_expansion: order must be 1 or 2");
  check_pair(h0, v);
  const SpectralDecomposition sd = spectral_decomposition(h0);
  const Matrix vr = rotated(sd, v);
  const Index n = sd.energies.size();

  Expansion out{sd.energies + lambda * vr.diagonal().real(), sd.vectors};
  if (order == 1) return out;

  out.energies += lambda * lambda * second_order_shifts(sd, vr);
  for (Index j = 0; j < n; ++j) {
    Eigen::VectorXcd phi = sd.vectors.col(j);
    for (Index k = 0; k < n; ++k) {
      if (k == j) continue;
      phi += lambda * vr(k, j) / (sd.energies(j) - sd.energies(k)) * sd.vectors.col(k);
    }
    out.vectors.col(j) = phi.normalized();
  }
  return out;
}

Operator EffectiveHamiltonian::at(double t) const { return h0 + correction * coefficient(t); }

EffectiveHamiltonian effective_slow_hamiltonian(const Operator& h0, const Operator& v,
                                                double lambda, Envelope f) {
  check_pair(h0, v);
  const SpectralDecomposition sd = spectral_decomposition(h0);
  const Eigen::VectorXd diag = lambda * rotated(sd, v).diagonal().real();
  return {h0, diagonal_in_basis(sd, diag), or_one(std::move(f))};
}

EffectiveHamiltonian effective_fast_hamiltonian(const Operator& h0, const Operator& v,
                                                double lambda, Envelope f) {
  check_pair(h0, v);
  const SpectralDecomposition sd = spectral_decomposition(h0);
  const Eigen::VectorXd diag = 0.5 * lambda * lambda * second_order_shifts(sd, rotated(sd, v));
  Envelope g = or_one(std::move(f));
  return {h0, diagonal_in_basis(sd, diag), [g](double t) {
            const double ft = g(t);
            return ft * ft;
          }};
}

}  // namespace thermoosc::perturb
