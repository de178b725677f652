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

#include "thermoosc/thermoelectric.hpp"

#include <cmath>
#include <memory>
#include <set>
#include <string>

#include "thermoosc/error.hpp"

namespace thermoosc::thermo {

using lindblad::DensityMatrix;
using lindblad::GeneratorSpec;
using lindblad::LindbladTerm;
using lindblad::Operator;
using nlohmann::json;

namespace {

// Window comparisons tolerate rounding in eps_a - eps_b - E_g.
constexpr double kWindowSlack = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("DeviceParams: " + what);
}

double occupancy(const std::vector<double>& energies, double mu, double T) {
  double s = 0.0;
  for (double e : energies) s += fermi_dirac(e, mu, T);
  return s;
}

}  // namespace

void DeviceParams::validate() const {
  require(std::isfinite(E_g) && E_g > 0.0, "E_g must be positive");
  require(V_A > 0.0 && V_B > 0.0 && V_J > 0.0, "volumes must be positive");
  require(T > 0.0, "T must be positive");
  require(T1 >= T, "T1 must not be below T");
  require(std::isfinite(T1), "T1 must be finite");
  require(g >= 0.0 && std::isfinite(g), "g must be nonnegative");
  require(Omega > 0.0 && std::isfinite(Omega), "Omega must be positive");
  require(gamma0 >= 0.0 && gamma_c >= 0.0 && gamma_lead >= 0.0, "rates must be nonnegative");
  require(deltaE > 0.0, "deltaE must be positive");
  require(!modes_a.empty() && !modes_b.empty(), "each box needs at least one mode");
  for (double e : modes_a) require(std::isfinite(e), "mode energies must be finite");
  for (double e : modes_b) require(std::isfinite(e), "mode energies must be finite");
}

DeviceParams DeviceParams::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("device: expected a JSON object");
  static const std::set<std::string> known = {
      "E_g", "V_A", "V_B", "V_J", "T", "T1", "g", "Omega", "modes_a", "modes_b",
      "gamma0", "deltaE", "gamma_c", "gamma_lead"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("device: unknown field '" + key + "'");
  }
  DeviceParams p;
  auto num = [&](const char* key, double& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw ConfigError(std::string("device: field '") + key + "' must be a number");
    field = j[key].get<double>();
  };
  auto list = [&](const char* key, std::vector<double>& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) throw ConfigError(std::string("device: field '") + key + "' must be an array");
    field.clear();
    for (const auto& v : j[key]) {
      if (!v.is_number()) throw ConfigError(std::string("device: '") + key + "' entries must be numbers");
      field.push_back(v.get<double>());
    }
  };
  num("E_g", p.E_g);
  num("V_A", p.V_A);
  num("V_B", p.V_B);
  num("V_J", p.V_J);
  num("T", p.T);
  num("T1", p.T1);
  num("g", p.g);
  num("Omega", p.Omega);
  list("modes_a", p.modes_a);
  list("modes_b", p.modes_b);
  num("gamma0", p.gamma0);
  num("deltaE", p.deltaE);
  num("gamma_c", p.gamma_c);
  num("gamma_lead", p.gamma_lead);
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

json DeviceParams::to_json() const {
  return json{{"E_g", E_g},         {"V_A", V_A},       {"V_B", V_B},       {"V_J", V_J},
              {"T", T},             {"T1", T1},         {"g", g},           {"Omega", Omega},
              {"modes_a", modes_a}, {"modes_b", modes_b}, {"gamma0", gamma0}, {"deltaE", deltaE},
              {"gamma_c", gamma_c}, {"gamma_lead", gamma_lead}};
}

OperatingPoint operating_point_from_potentials(const DeviceParams& p, double mu_a, double mu_b) {
  if (!std::isfinite(mu_a) || !std::isfinite(mu_b)) {
    throw DomainError("operating point: potentials must be finite");
  }
  OperatingPoint op;
  op.mu_a = mu_a;
  op.mu_b = mu_b;
  op.Phi = mu_a - mu_b;
  op.n_a = occupancy(p.modes_a, mu_a, p.T) / p.V_A;
  op.n_b = occupancy(p.modes_b, mu_b, p.T) / p.V_B;
  return op;
}

OperatingPoint operating_point_from_voltage(const DeviceParams& p, double mu_b, double Phi) {
  OperatingPoint op = operating_point_from_potentials(p, mu_b + Phi, mu_b);
  op.Phi = Phi;
  return op;
}

OperatingPoint operating_point_from_densities(const DeviceParams& p, double n_a, double n_b) {
  const double mu_a = chemical_potential_from_density(p.modes_a, n_a, p.V_A, p.T);
  const double mu_b = chemical_potential_from_density(p.modes_b, n_b, p.V_B, p.T);
  return operating_point_from_potentials(p, mu_a, mu_b);
}

OperatingPoint operating_point_from_json(const DeviceParams& p, const json& j) {
  if (!j.is_object()) throw ConfigError("operating_point: expected a JSON object");
  auto get = [&](const char* key) {
    if (!j[key].is_number()) throw ConfigError(std::string("operating_point: '") + key + "' must be a number");
    return j[key].get<double>();
  };
  if (j.size() == 2 && j.contains("mu_b") && j.contains("phi")) {
    return operating_point_from_voltage(p, get("mu_b"), get("phi"));
  }
  if (j.size() == 2 && j.contains("mu_a") && j.contains("mu_b")) {
    return operating_point_from_potentials(p, get("mu_a"), get("mu_b"));
  }
  if (j.size() == 2 && j.contains("n_a") && j.contains("n_b")) {
    return operating_point_from_densities(p, get("n_a"), get("n_b"));
  }
  throw ConfigError(
      "operating_point: give exactly one of {mu_b, phi}, {mu_a, mu_b} or {n_a, n_b}");
}

double chemical_potential_from_density(const std::vector<double>& modes, double n_target,
                                       double volume, double T) {
  if (!(T > 0.0)) throw DomainError("chemical_potential_from_density: T must be positive");
  if (!(volume > 0.0)) throw DomainError("chemical_potential_from_density: volume must be positive");
  const double target = n_target * volume;
  const auto count = static_cast<double>(modes.size());
  if (!(target > 0.0 && target < count)) {
    throw InfeasibleError("target occupancy " + std::to_string(target) + " outside (0, " +
                          std::to_string(modes.size()) + ")");
  }
  double lo = modes.front();
  double hi = modes.front();
  for (double e : modes) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  double span = T;
  while (occupancy(modes, lo, T) > target) lo -= (span *= 2.0);
  span = T;
  while (occupancy(modes, hi, T) < target) hi += (span *= 2.0);
  // Monotone increasing in mu; stop on occupancy accuracy or interval collapse.
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double occ = occupancy(modes, mid, T);
    if (std::abs(occ - target) <= 1e-12) return mid;
    (occ < target ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
  }
  const double mu = 0.5 * (lo + hi);
  if (std::abs(occupancy(modes, mu, T) - target) > 1e-10) {
    throw InfeasibleError("bisection could not reach occupancy accuracy 1e-10");
  }
  return mu;
}

std::vector<double> shifted_energies_a(const DeviceParams& p, double xi) {
  std::vector<double> e = p.modes_a;
  for (double& v : e) v -= xi * p.c_a();
  return e;
}

std::vector<double> shifted_energies_b(const DeviceParams& p, double xi) {
  std::vector<double> e = p.modes_b;
  for (double& v : e) v += xi * p.c_b();
  return e;
}

std::vector<std::pair<std::size_t, std::size_t>> active_pairs(const DeviceParams& p, double xi) {
  const auto ea = shifted_energies_a(p, xi);
  const auto eb = shifted_energies_b(p, xi);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < ea.size(); ++k) {
    for (std::size_t l = 0; l < eb.size(); ++l) {
      if (std::abs(ea[k] - eb[l] - p.E_g) <= p.deltaE + kWindowSlack) out.emplace_back(k, l);
    }
  }
  return out;
}

namespace {

// Operators fixed by the register; shared by every generator_family call.
struct DeviceOperators {
  DeviceParams params;
  OperatingPoint op;
  std::vector<Operator> lower;   // a_k then b_l
  std::vector<Operator> raise;
  std::vector<Operator> number;
  Operator h0;
  Operator M;

  std::size_t na() const { return params.modes_a.size(); }
  std::size_t b_index(std::size_t l) const { return na() + l; }

  std::vector<LindbladTerm> cold_terms(double xi, std::size_t* n_conserving) const {
    std::vector<LindbladTerm> terms;
    const auto ea = shifted_energies_a(params, xi);
    const auto eb = shifted_energies_b(params, xi);
    auto box = [&](const std::vector<double>& eps, std::size_t offset) {
      if (params.gamma_c > 0.0) {
        for (std::size_t i = 0; i < eps.size(); ++i) {
          for (std::size_t j = 0; j < eps.size(); ++j) {
            if (i == j) continue;
            // j -> i hop; the i <-> j rate ratio is exp(-(eps_i - eps_j)/T).
            const double rate = params.gamma_c * fermi_dirac(eps[i] - eps[j], 0.0, params.T);
            terms.emplace_back(raise[offset + i] * lower[offset + j], rate);
          }
          terms.emplace_back(number[offset + i], params.gamma_c);
        }
      }
    };
    box(ea, 0);
    box(eb, na());
    if (n_conserving) *n_conserving = terms.size();
    if (params.gamma_lead > 0.0) {
      auto leads = [&](const std::vector<double>& eps, std::size_t offset, double mu) {
        for (std::size_t i = 0; i < eps.size(); ++i) {
          const double f = fermi_dirac(eps[i], mu, params.T);
          terms.emplace_back(lower[offset + i], params.gamma_lead * (1.0 - f));
          terms.emplace_back(raise[offset + i], params.gamma_lead * f);
        }
      };
      leads(ea, 0, op.mu_a);
      leads(eb, na(), op.mu_b);
    }
    return terms;
  }

  std::vector<LindbladTerm> hot_terms(double xi) const {
    std::vector<LindbladTerm> terms;
    if (params.gamma0 == 0.0) return terms;
    const auto ea = shifted_energies_a(params, xi);
    const auto eb = shifted_energies_b(params, xi);
    for (const auto& [k, l] : active_pairs(params, xi)) {
      const double omega = ea[k] - eb[l];
      terms.emplace_back(lower[k] * raise[b_index(l)], params.gamma0);
      terms.emplace_back(raise[k] * lower[b_index(l)],
                         params.gamma0 * std::exp(-omega / params.T1));
    }
    return terms;
  }

  GeneratorSpec generator(double xi) const {
    GeneratorSpec gen{xi == 0.0 ? h0 : h0 + M * xi, hot_terms(xi)};
    auto cold = cold_terms(xi, nullptr);
    gen.terms.insert(gen.terms.end(), std::make_move_iterator(cold.begin()),
                     std::make_move_iterator(cold.end()));
    return gen;
  }
};

std::vector<lindblad::ModeLevel> shifted_levels(const DeviceParams& p, const OperatingPoint& op,
                                                double xi) {
  std::vector<lindblad::ModeLevel> levels;
  const auto ea = shifted_energies_a(p, xi);
  const auto eb = shifted_energies_b(p, xi);
  for (std::size_t k = 0; k < ea.size(); ++k) levels.push_back({ea[k], k, op.mu_a});
  for (std::size_t l = 0; l < eb.size(); ++l) levels.push_back({eb[l], ea.size() + l, op.mu_b});
  return levels;
}

}  // namespace

DeviceModel build_device(const DeviceParams& p, const OperatingPoint& op) {
  p.validate();
  if (p.n_modes() > lindblad::kMaxModes) {
    throw CapacityError("device needs " + std::to_string(p.n_modes()) + " modes; the register holds at most " +
                        std::to_string(lindblad::kMaxModes));
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < p.modes_a.size(); ++k) labels.push_back("a" + std::to_string(k));
  for (std::size_t l = 0; l < p.modes_b.size(); ++l) labels.push_back("b" + std::to_string(l));

  DeviceModel dev;
  dev.params = p;
  dev.op = op;
  dev.reg = lindblad::build_fermion_register(p.n_modes(), labels);

  auto ops = std::make_shared<DeviceOperators>();
  ops->params = p;
  ops->op = op;
  const lindblad::Index dim = dev.reg.dim();
  dev.N_a = Operator::zero(dim);
  dev.N_b = Operator::zero(dim);
  ops->h0 = Operator::zero(dim);
  for (std::size_t i = 0; i < p.n_modes(); ++i) {
    ops->lower.push_back(dev.reg.lowering[i]);
    ops->raise.push_back(dev.reg.raising(i));
    ops->number.push_back(dev.reg.number(i));
    const bool in_a = i < p.modes_a.size();
    const double e = in_a ? p.modes_a[i] : p.modes_b[i - p.modes_a.size()];
    ops->h0 += ops->number[i] * e;
    (in_a ? dev.N_a : dev.N_b) += ops->number[i];
  }
  dev.M = dev.N_b * p.c_b() - dev.N_a * p.c_a();
  ops->M = dev.M;

  dev.cold_terms = ops->cold_terms(0.0, &dev.n_number_conserving_cold_terms);
  dev.dead_junction = active_pairs(p, 0.0).empty();

  dev.engine.h0 = ops->h0;
  dev.engine.driving = engine::DrivingSpec{p.g, p.Omega, dev.M};
  dev.engine.generator_family = [ops](double xi) { return ops->generator(xi); };
  dev.hot_family = [ops](double xi) {
    return GeneratorSpec{xi == 0.0 ? ops->h0 : ops->h0 + ops->M * xi, ops->hot_terms(xi)};
  };
  return dev;
}

DensityMatrix stationary_state_xi(const DeviceParams& p, const OperatingPoint& op, double xi) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("stationary_state_xi requires |xi| < 1");
  const auto reg = lindblad::build_fermion_register(p.n_modes());
  const auto levels = shifted_levels(p, op, xi);
  return lindblad::grand_canonical_state(levels, p.T, reg);
}

Operator stationary_state_xi_derivative(const DeviceParams& p, const OperatingPoint& op,
                                        double xi) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("stationary_state_xi_derivative requires |xi| < 1");
  const auto levels = shifted_levels(p, op, xi);
  const std::size_t n = levels.size();
  std::vector<double> f(n), df(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = fermi_dirac(levels[i].energy, levels[i].mu, p.T);
    // d eps / d xi is -c_A for box A and +c_B for box B; df/deps = -f(1-f)/T.
    const double deps = i < p.modes_a.size() ? -p.c_a() : p.c_b();
    df[i] = -f[i] * (1.0 - f[i]) / p.T * deps;
  }
  const lindblad::Index dim = lindblad::Index{1} << n;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (lindblad::Index s = 0; s < dim; ++s) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double term = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        const bool occ = ((s >> (n - 1 - j)) & 1) != 0;
        if (j == k) {
          term *= occ ? df[j] : -df[j];
        } else {
          term *= occ ? f[j] : 1.0 - f[j];
        }
      }
      total += term;
    }
    diag(s) = total;
  }
  return Operator::diagonal(diag);
}

double power_second_order_grand_canonical(const DeviceModel& device) {
  const auto& d = device.engine.driving;
  const Operator drho = stationary_state_xi_derivative(device.params, device.op, 0.0);
  const Operator lstar_m = lindblad::adjoint_apply(device.engine.generator_family(0.0), d.M);
  return -0.5 * d.g * d.g * (drho * lstar_m).trace().real();
}

AnalyticPower analytic_power(const DeviceParams& p, const OperatingPoint& op) {
  p.validate();
  AnalyticPower out{};
  out.n_a = op.n_a;
  out.n_b = op.n_b;
  const double prefactor = p.g * p.g * p.E_g * p.E_g * p.V_J * p.V_J / p.T * (p.V_A + p.V_B) *
                           (op.n_b - op.n_a);
  double gamma = 0.0;
  double mode_sum = 0.0;
  const double reverse = std::exp(-p.E_g / p.T1);
  for (const auto& [k, l] : active_pairs(p, 0.0)) {
    const double fa = fermi_dirac(p.modes_a[k], op.mu_a, p.T);
    const double fb = fermi_dirac(p.modes_b[l], op.mu_b, p.T);
    gamma += p.gamma0 * (1.0 - fb) * fa;
    mode_sum += p.gamma0 * (reverse * (1.0 - fa) * fb - (1.0 - fb) * fa);
  }
  gamma /= p.V_A * p.V_B;
  mode_sum /= p.V_A * p.V_B;
  out.gamma = gamma;
  // exp(x) - 1 loses digits for small x; expm1 keeps P(Phi0) an exact zero.
  const double x = ((1.0 - p.T / p.T1) * p.E_g - op.Phi) / p.T;
  out.power = prefactor * gamma * std::expm1(x);
  out.power_mode_sum = prefactor * mode_sum;
  return out;
}

double open_circuit_voltage(const DeviceParams& p) { return p.E_g * (1.0 - p.T / p.T1); }

double seebeck_coefficient(const DeviceParams& p) { return p.E_g / p.T1; }

double seebeck_si(double E_g_eV, double T1_kelvin) {
  if (!(E_g_eV > 0.0 && T1_kelvin > 0.0)) throw DomainError("seebeck_si: arguments must be positive");
  // E_g [J] / (e T1) with E_g [J] = E_g_eV * e.
  return E_g_eV / T1_kelvin;
}

SweepResult iv_sweep(const DeviceParams& p, double mu_b, const std::vector<double>& phi_values) {
  p.validate();
  SweepResult out;
  for (double phi : phi_values) {
    if (!std::isfinite(phi)) throw DomainError("iv_sweep: non-finite voltage");
    const OperatingPoint op = operating_point_from_voltage(p, mu_b, phi);
    const AnalyticPower ap = analytic_power(p, op);
    out.rows.push_back({phi, ap.power, ap.gamma, ap.n_a, ap.n_b, ap.power > 0.0});
  }
  int last_sign = 0;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const double v = out.rows[i].power;
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) out.sign_changes.push_back(i);
    last_sign = s;
  }
  return out;
}

}  // namespace thermoosc::thermo
