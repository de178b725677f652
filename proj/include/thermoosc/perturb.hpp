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

#ifndef THERMOOSC_PERTURB_HPP
#define THERMOOSC_PERTURB_HPP

#include <functional>

#include <Eigen/Dense>

#include "thermoosc/lindblad.hpp"

// Nondegenerate Rayleigh-Schroedinger perturbation theory for H0 + lambda V
// and the diagonal effective Hamiltonians it produces.
namespace thermoosc::perturb {

using lindblad::Matrix;
using lindblad::Operator;

struct SpectralDecomposition {
  Eigen::VectorXd energies;  ///< ascending
  Matrix vectors;            ///< orthonormal columns
  double min_gap;            ///< +inf for dim 1
};

/// Throws DegeneracyError when two levels are closer than 1e-8 ||H0||_2.
SpectralDecomposition spectral_decomposition(const Operator& h0);

struct Expansion {
  Eigen::VectorXd energies;
  /// Zeroth-order vectors at order 1, normalized first-order vectors at order 2.
  Matrix vectors;
};

/// order 1: E_j + lambda V_jj.
/// order 2: adds lambda^2 sum_{k != j} |V_kj|^2 / (E_j - E_k).
Expansion perturbation_expansion(const Operator& h0, const Operator& v, double lambda, int order);

using Envelope = std::function<double(double)>;

/// H0 + coefficient(t) * correction, with a correction diagonal in the H0 basis.
struct EffectiveHamiltonian {
  Operator h0;
  Operator correction;
  Envelope coefficient;

  Operator at(double t) const;
};

/// correction = lambda sum_j V_jj |j><j|, coefficient = f (default 1).
EffectiveHamiltonian effective_slow_hamiltonian(const Operator& h0, const Operator& v,
                                                double lambda, Envelope f = {});

/// correction = 1/2 lambda^2 sum_j sum_{k != j} |V_kj|^2 / (E_j - E_k) |j><j|,
/// coefficient = f^2 (default 1). The 1/2 is the average of cos^2 over the
/// fast carrier.
EffectiveHamiltonian effective_fast_hamiltonian(const Operator& h0, const Operator& v,
                                                double lambda, Envelope f = {});

}  // namespace thermoosc::perturb

#endif  // THERMOOSC_PERTURB_HPP
