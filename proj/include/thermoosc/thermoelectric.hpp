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

#ifndef THERMOOSC_THERMOELECTRIC_HPP
#define THERMOOSC_THERMOELECTRIC_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thermoosc/engine.hpp"
#include "thermoosc/fermi_dirac.hpp"
#include "thermoosc/lindblad.hpp"

// Two-box junction: box A and box B electrons on one fermionic register
// (box-A modes first), a hot bath driving transfers across the junction gap
// E_g, a cold bath plus electrodes holding each box at (T, mu_box), and the
// plasma piston acting through M = E_g V_J (N_b/V_B - N_a/V_A).
//
// Natural units: hbar = k_B = e = 1.
namespace thermoosc::thermo {

struct DeviceParams {
  double E_g = 1.0;
  double V_A = 2.0;
  double V_B = 1.0;
  double V_J = 0.1;
  double T = 0.05;
  double T1 = 0.1;
  double g = 0.02;
  double Omega = 0.5;
  std::vector<double> modes_a{1.0};
  std::vector<double> modes_b{0.0};
  double gamma0 = 0.01;
  double deltaE = 0.05;
  /// Intra-box thermalization (hopping + dephasing); conserves N_a and N_b.
  double gamma_c = 0.05;
  /// Mode-electrode exchange pinning each box to its electrochemical potential.
  double gamma_lead = 0.05;

  /// Throws DomainError. T1 = T is accepted (equilibrium control device).
  void validate() const;
  std::size_t n_modes() const { return modes_a.size() + modes_b.size(); }
  double c_a() const { return E_g * V_J / V_A; }
  double c_b() const { return E_g * V_J / V_B; }

  /// Missing fields keep their defaults; unknown fields raise ConfigError.
  static DeviceParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct OperatingPoint {
  double mu_a = 0.0;
  double mu_b = 0.0;
  double Phi = 0.0;
  double n_a = 0.0;
  double n_b = 0.0;
};

/// mu_a = mu_b + Phi, densities from the unshifted Fermi occupations.
OperatingPoint operating_point_from_voltage(const DeviceParams& p, double mu_b, double Phi);
OperatingPoint operating_point_from_potentials(const DeviceParams& p, double mu_a, double mu_b);
/// Solves both chemical potentials from the target densities.
OperatingPoint operating_point_from_densities(const DeviceParams& p, double n_a, double n_b);
/// Accepts {"mu_b", "phi"}, {"mu_a", "mu_b"} or {"n_a", "n_b"}.
OperatingPoint operating_point_from_json(const DeviceParams& p, const nlohmann::json& j);

/// Solves sum_k f(E_k, mu, T) = n_target * volume by bisection to 1e-10 in
/// occupancy. Throws InfeasibleError unless 0 < n_target * volume < modes.size().
double chemical_potential_from_density(const std::vector<double>& modes, double n_target,
                                       double volume, double T);

/// Single-particle energies at piston position xi: E_a - xi c_A, E_b + xi c_B,
/// which is the spectrum of H0 + xi M.
std::vector<double> shifted_energies_a(const DeviceParams& p, double xi);
std::vector<double> shifted_energies_b(const DeviceParams& p, double xi);

/// (k, l) pairs with |eps_a(k) - eps_b(l) - E_g| <= deltaE at xi.
std::vector<std::pair<std::size_t, std::size_t>> active_pairs(const DeviceParams& p, double xi);

struct DeviceModel {
  DeviceParams params;
  OperatingPoint op;
  lindblad::FermionRegister reg;
  lindblad::Operator N_a;
  lindblad::Operator N_b;
  lindblad::Operator M;
  /// Cold-bath and lead terms at xi = 0 (the number-conserving part first).
  std::vector<lindblad::LindbladTerm> cold_terms;
  std::size_t n_number_conserving_cold_terms = 0;
  /// No hot-bath pair inside the window at xi = 0: the power vanishes.
  bool dead_junction = false;
  engine::EngineModel engine;
  /// H0 + xi M with the hot-bath terms only.
  engine::GeneratorFamily hot_family;
};

/// Throws CapacityError above 12 modes.
DeviceModel build_device(const DeviceParams& p, const OperatingPoint& op);

/// Product grand-canonical state at temperature T with xi-shifted energies.
lindblad::DensityMatrix stationary_state_xi(const DeviceParams& p, const OperatingPoint& op,
                                            double xi);
/// Exact xi-derivative of stationary_state_xi (diagonal).
lindblad::Operator stationary_state_xi_derivative(const DeviceParams& p, const OperatingPoint& op,
                                                  double xi);

/// -1/2 g^2 Tr(rho_gc'[0] L*[0] M) with the analytic product-state derivative.
double power_second_order_grand_canonical(const DeviceModel& device);

struct AnalyticPower {
  /// Gamma-factored closed form.
  double power;
  /// Unreduced mode sum with the literal exp(-E_g/T1) weight. Equals `power`
  /// when every active pair is exactly resonant.
  double power_mode_sum;
  double gamma;
  double n_a;
  double n_b;
};

AnalyticPower analytic_power(const DeviceParams& p, const OperatingPoint& op);

/// e Phi0 = E_g (1 - T/T1).
double open_circuit_voltage(const DeviceParams& p);

/// E_g / (e T1), dimensionless in natural units.
double seebeck_coefficient(const DeviceParams& p);
/// Seebeck coefficient in V/K for E_g in eV and T1 in K.
double seebeck_si(double E_g_eV, double T1_kelvin);

struct SweepRow {
  double phi;
  double power;
  double gamma;
  double n_a;
  double n_b;
  bool positive;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Rows whose nonzero power sign differs from the previous nonzero row.
  std::vector<std::size_t> sign_changes;
};

/// Analytic power along a voltage list at fixed mu_b. Rows follow input order.
SweepResult iv_sweep(const DeviceParams& p, double mu_b, const std::vector<double>& phi_values);

}  // namespace thermoosc::thermo

#endif  // THERMOOSC_THERMOELECTRIC_HPP
