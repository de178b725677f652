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

#include "thermoosc/engine.hpp"

#include <cmath>
#include <numbers>

#include "thermoosc/error.hpp"

namespace thermoosc::engine {

using lindblad::Complex;
using lindblad::Matrix;

DensityMatrix EngineModel::stationary(double xi_value) const {
  if (stationary_family) return stationary_family(xi_value);
  return lindblad::steady_state(generator_family(xi_value));
}

double EngineModel::xi(double t) const { return driving.g * std::sin(driving.omega * t); }

void EngineModel::validate() const {
  if (!(driving.g >= 0.0)) throw DomainError("driving amplitude g must be nonnegative");
  if (!(driving.omega > 0.0)) throw DomainError("driving frequency Omega must be positive");
  if (!generator_family) throw DomainError("engine model has no generator family");
  if (!driving.M.is_hermitian(1e-12)) throw DomainError("modulation operator M is not Hermitian");
  const double comm = lindblad::commutator(h0, driving.M).max_norm();
  if (comm > 1e-10) {
    throw DomainError("modulation operator does not commute with H0: ||[H0,M]|| = " +
                      std::to_string(comm));
  }
  const GeneratorSpec g0 = generator_family(0.0);
  if ((g0.hamiltonian - h0).max_norm() > 1e-12) {
    throw DomainError("generator_family(0) does not reproduce H0");
  }
}

PowerAndHeat instantaneous_power_and_heat(const EngineModel& model, const DensityMatrix& rho,
                                          double t) {
  const auto& d = model.driving;
  const Complex tr_m = (rho.op() * d.M).trace();
  const double dhdt_factor = d.g * d.omega * std::cos(d.omega * t);
  const Complex power = -dhdt_factor * tr_m;

  const GeneratorSpec gen = model.generator_family(model.xi(t));
  const Complex heat = (gen.hamiltonian * lindblad::apply_generator(gen, rho)).trace();
  return {power.real(), heat.real(), std::max(std::abs(power.imag()), std::abs(heat.imag()))};
}

double default_transient(const EngineModel& model) {
  return 10.0 / lindblad::spectral_gap(model.generator_family(0.0));
}

double average_power_numeric(const EngineModel& model, const NumericAverageOptions& options) {
  model.validate();
  if (options.n_periods < 10) throw DomainError("average_power_numeric needs n_periods >= 10");
  if (!(options.dt > 0.0)) throw DomainError("average_power_numeric: dt must be positive");
  const auto& d = model.driving;
  if (d.g == 0.0) return 0.0;

  const double period = 2.0 * std::numbers::pi / d.omega;
  const double transient = options.t_transient ? *options.t_transient : default_transient(model);
  const double n_lead = std::ceil(std::max(0.0, transient) / period - 1e-12);
  const double t_start = n_lead * period;
  const double t_end = t_start + options.n_periods * period;
  const auto steps_per_period = static_cast<long>(std::ceil(period / options.dt - 1e-9));
  const double h = period / static_cast<double>(steps_per_period);

  lindblad::TimeDependentGenerator gen_t = [&](double t) {
    return model.generator_family(model.xi(t));
  };

  const DensityMatrix rho0 = model.stationary(0.0);
  const DensityMatrix rho_start = lindblad::evolve_observed(gen_t, rho0, 0.0, t_start, h, nullptr);

  // Rectangle rule on whole periods: exact for the periodic integrand up to
  // aliasing above the Nyquist frequency of the step.
  double acc = 0.0;
  long count = 0;
  const long total = steps_per_period * options.n_periods;
  lindblad::evolve_observed(
      gen_t, rho_start, t_start, t_end, h, [&](double t, const Operator& rho) {
        if (count < total) {
          const double tr_m = (rho * d.M).trace().real();
          acc += tr_m * std::cos(d.omega * t);
        }
        ++count;
      });
  const double mean = acc / static_cast<double>(total);
  return -d.g * d.omega * mean;
}

Operator stationary_derivative(const EngineModel& model, double h_xi, double xi) {
  const Operator plus = model.stationary(xi + h_xi).op();
  const Operator minus = model.stationary(xi - h_xi).op();
  return (plus - minus) * (1.0 / (2.0 * h_xi));
}

namespace {

void check_step(double h_xi) {
  if (!(h_xi >= 1e-6 && h_xi <= 1e-2)) {
    throw DomainError("finite-difference step h_xi must lie in [1e-6, 1e-2]");
  }
}

}  // namespace

double average_power_second_order(const EngineModel& model, double h_xi) {
  check_step(h_xi);
  model.validate();
  const auto& d = model.driving;
  if (d.g == 0.0) return 0.0;
  const Operator drho = stationary_derivative(model, h_xi);
  const Operator lstar_m = lindblad::adjoint_apply(model.generator_family(0.0), d.M);
  return -0.5 * d.g * d.g * (drho * lstar_m).trace().real();
}

double average_power_resolvent(const EngineModel& model, double h_xi) {
  check_step(h_xi);
  model.validate();
  const auto& d = model.driving;
  if (d.g == 0.0) return 0.0;
  const GeneratorSpec gen0 = model.generator_family(0.0);
  const Matrix lstar = lindblad::adjoint_superoperator(gen0);
  const auto n = lstar.rows();
  const double om2 = d.omega * d.omega;
  const Matrix filter = om2 * Matrix::Identity(n, n) + lstar * lstar;
  const Eigen::VectorXcd rhs = om2 * (lstar * lindblad::vec(d.M));

  Eigen::FullPivLU<Matrix> lu(filter);
  const double rc = lu.rcond();
  if (!lu.isInvertible() || !(rc > 1e-14)) {
    throw SingularError("resolvent filter Omega^2 + L*^2 is singular (rcond " + std::to_string(rc) +
                        "); Omega^2 coincides with -lambda^2 for a generator eigenvalue, "
                        "perturb Omega slightly");
  }
  const Eigen::VectorXcd y = lu.solve(rhs);
  const Operator drho = stationary_derivative(model, h_xi);
  const Complex tr = (lindblad::vec(drho.adjoint()).adjoint() * y)(0);  // Tr(drho Y)
  return -0.5 * d.g * d.g * tr.real();
}

StationarityResiduals stationarity_check(const EngineModel& model, double xi, double h) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("stationarity_check requires |xi| < 1");
  const DensityMatrix rho = model.stationary(xi);
  const GeneratorSpec gen = model.generator_family(xi);
  const double r1 = lindblad::apply_generator(gen, rho).max_norm();

  const Operator l_prime_rho =
      (lindblad::apply_generator(model.generator_family(xi + h), rho) -
       lindblad::apply_generator(model.generator_family(xi - h), rho)) *
      (1.0 / (2.0 * h));
  const Operator drho = stationary_derivative(model, h, xi);
  const double r2 = (l_prime_rho + lindblad::apply_generator(gen, drho)).max_norm();
  return {r1, r2};
}

}  // namespace thermoosc::engine
