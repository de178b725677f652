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

#ifndef THERMOOSC_ENGINE_HPP
#define THERMOOSC_ENGINE_HPP

#include <functional>
#include <optional>

#include "thermoosc/lindblad.hpp"

// Slow-piston heat engine: a working medium with Hamiltonian H0 + xi(t) M,
// xi(t) = g sin(Omega t), whose dissipator L[xi] follows the instantaneous
// piston position. Power and heat follow the work/heat split
//   P = -Tr(rho dH/dt),  J = Tr(H drho/dt).
namespace thermoosc::engine {

using lindblad::DensityMatrix;
using lindblad::GeneratorSpec;
using lindblad::Operator;

struct DrivingSpec {
  double g = 0.0;
  double omega = 1.0;
  Operator M;
};

/// Maps the piston position xi to the full generator (Hamiltonian H0 + xi M
/// and xi-dependent dissipators).
using GeneratorFamily = std::function<GeneratorSpec(double xi)>;
using StationaryFamily = std::function<DensityMatrix(double xi)>;

struct EngineModel {
  Operator h0;
  DrivingSpec driving;
  GeneratorFamily generator_family;
  /// Optional closed-form stationary states. When empty, stationary(xi)
  /// solves for the kernel of generator_family(xi).
  StationaryFamily stationary_family;

  DensityMatrix stationary(double xi) const;
  double xi(double t) const;
  /// Throws DomainError unless g >= 0, Omega > 0, [H0, M] = 0 (1e-10) and
  /// generator_family(0) carries H0 as its Hamiltonian.
  void validate() const;
};

struct PowerAndHeat {
  double power;
  double heat_current;
  /// Largest imaginary part discarded from the two traces.
  double imag_residue;
};

/// P(t) = -g Omega cos(Omega t) Tr(rho M); J(t) = Tr(H(t) L(t) rho).
PowerAndHeat instantaneous_power_and_heat(const EngineModel& model, const DensityMatrix& rho,
                                          double t);

/// 10 / (smallest nonzero |Re| of the xi = 0 generator spectrum).
double default_transient(const EngineModel& model);

struct NumericAverageOptions {
  /// Discarded lead-in; rounded up to whole periods. Default: default_transient.
  std::optional<double> t_transient;
  int n_periods = 20;
  double dt = 0.05;
};

/// Brute-force stationary average power: evolves from the xi = 0 stationary
/// state under g sin(Omega t), drops the transient and averages
/// -g Omega Tr(rho M) cos(Omega t) over whole periods starting at zero phase.
/// The step is shrunk to fit an integer number of steps per period.
double average_power_numeric(const EngineModel& model, const NumericAverageOptions& options = {});

/// Central finite difference (rho[h] - rho[-h]) / 2h of the stationary family.
Operator stationary_derivative(const EngineModel& model, double h_xi = 1e-4, double xi = 0.0);

/// Fast-modulation second-order power -1/2 g^2 Tr(rho'[0] L*[0] M).
double average_power_second_order(const EngineModel& model, double h_xi = 1e-4);

/// Second-order power with the finite-frequency filter:
/// -1/2 g^2 Tr(rho'[0] Y), (Omega^2 + L*^2) Y = Omega^2 L* M.
/// Throws SingularError when the filter matrix cannot be inverted.
double average_power_resolvent(const EngineModel& model, double h_xi = 1e-4);

struct StationarityResiduals {
  double residual1;  ///< ||L[xi] rho[xi]||_max
  double residual2;  ///< ||L'[xi] rho[xi] + L[xi] rho'[xi]||_max
};

/// Checks L rho = 0 and its xi-derivative with central differences of step h.
StationarityResiduals stationarity_check(const EngineModel& model, double xi, double h = 1e-4);

}  // namespace thermoosc::engine

#endif  // THERMOOSC_ENGINE_HPP
