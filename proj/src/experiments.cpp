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

#include "thermoosc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "thermoosc/engine.hpp"
#include "thermoosc/error.hpp"
#include "thermoosc/lindblad.hpp"
#include "thermoosc/perturb.hpp"
#include "thermoosc/plasma.hpp"
#include "thermoosc/thermoelectric.hpp"

namespace thermoosc::experiments {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Units parse_units(const std::string& name) {
  if (name == "natural") return Units::natural;
  if (name == "si-display") return Units::si_display;
  throw ConfigError("unknown units '" + name + "' (expected natural or si-display)");
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"iv-sweep", "power-compare", "thermalize",
                                                 "plasma", "perturb-check"};
  return names;
}

namespace {

// ---------------------------------------------------------------------------
// Config helpers

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

double get_number(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": '" + key + "' must be finite");
  return v;
}

double require_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  return get_number(j, key, 0.0, where);
}

long get_integer(const json& j, const std::string& key, long fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(where + ": '" + key + "' must be an integer");
  return j[key].get<long>();
}

std::vector<double> get_list(const json& j, const std::string& key, const std::string& where) {
  if (!j[key].is_array() || j[key].empty()) {
    throw ConfigError(where + ": '" + key + "' must be a non-empty array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ConfigError(where + ": '" + key + "' entries must be numbers");
    out.push_back(v.get<double>());
    if (!std::isfinite(out.back())) throw ConfigError(where + ": '" + key + "' entries must be finite");
  }
  return out;
}

thermo::DeviceParams device_from(const json& cfg) {
  return cfg.contains("device") ? thermo::DeviceParams::from_json(cfg["device"])
                                : thermo::DeviceParams{};
}

thermo::OperatingPoint operating_point_from(const thermo::DeviceParams& p, const json& cfg) {
  if (!cfg.contains("operating_point")) return thermo::operating_point_from_voltage(p, 0.4, 0.2);
  try {
    return thermo::operating_point_from_json(p, cfg["operating_point"]);
  } catch (const InfeasibleError& e) {
    throw ConfigError(std::string("operating_point: ") + e.what());
  }
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out_ << (i ? "," : "") << format_double(values[i]);
    }
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

// nlohmann prints doubles with 17 digits only when needed; force %.17g.
json num(double v) { return json::parse(format_double(v)); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// iv-sweep
//
// {"device": {...}, "mu_b": 0.4, "phi": [...] | "phi_over_phi0": [...]}

Result run_iv_sweep(const json& cfg, Units units) {
  const std::string where = "iv-sweep";
  check_keys(cfg, {"device", "mu_b", "phi", "phi_over_phi0"}, where);
  const auto p = device_from(cfg);
  const double mu_b = get_number(cfg, "mu_b", 0.4, where);
  const double phi0 = thermo::open_circuit_voltage(p);
  std::vector<double> phis;
  if (cfg.contains("phi") == cfg.contains("phi_over_phi0")) {
    throw ConfigError(where + ": give exactly one of 'phi' or 'phi_over_phi0'");
  }
  if (cfg.contains("phi")) {
    phis = get_list(cfg, "phi", where);
  } else {
    for (double r : get_list(cfg, "phi_over_phi0", where)) phis.push_back(r * phi0);
  }
  const auto sweep = thermo::iv_sweep(p, mu_b, phis);

  const bool si = units == Units::si_display;
  Csv csv({"phi", "power", "gamma", "n_a", "n_b"});
  for (const auto& r : sweep.rows) {
    csv.row({r.phi, si ? r.power * kPowerUnitWatt : r.power,
             si ? r.gamma * kRateUnitPerSecond : r.gamma, r.n_a, r.n_b});
  }
  json summary{{"phi0", num(phi0)},
               {"seebeck", num(si ? thermo::seebeck_coefficient(p) * kVoltPerKelvin * 1e3
                                  : thermo::seebeck_coefficient(p))},
               {"units", si ? "phi V, power W, gamma 1/s, seebeck mV/K"
                            : "natural (hbar = k_B = e = 1)"}};
  json changes = json::array();
  for (std::size_t i : sweep.sign_changes) changes.push_back(i);
  summary["sign_change_rows"] = changes;
  return {"csv", csv.str(), dump(summary)};
}

// ---------------------------------------------------------------------------
// power-compare
//
// {"device": {...}, "operating_point": {...}, "g": [...],
//  "numeric": {"n_periods": 20, "dt": 0.05, "t_transient": ...}, "h_xi": 1e-4}

Result run_power_compare(const json& cfg, Units units) {
  const std::string where = "power-compare";
  check_keys(cfg, {"device", "operating_point", "g", "numeric", "h_xi"}, where);
  const auto p = device_from(cfg);
  const auto op = operating_point_from(p, cfg);
  const std::vector<double> gs =
      cfg.contains("g") ? get_list(cfg, "g", where) : std::vector<double>{0.01, 0.02, 0.04};
  const double h_xi = get_number(cfg, "h_xi", 1e-4, where);
  engine::NumericAverageOptions nopt;
  if (cfg.contains("numeric")) {
    const json& n = cfg["numeric"];
    check_keys(n, {"n_periods", "dt", "t_transient"}, where + ".numeric");
    nopt.n_periods = static_cast<int>(get_integer(n, "n_periods", nopt.n_periods, where));
    nopt.dt = get_number(n, "dt", nopt.dt, where);
    if (n.contains("t_transient")) nopt.t_transient = get_number(n, "t_transient", 0.0, where);
  }
  if (nopt.n_periods < 10) throw ConfigError(where + ": n_periods must be >= 10");
  if (!(nopt.dt > 0.0)) throw ConfigError(where + ": dt must be positive");

  const double scale = units == Units::si_display ? kPowerUnitWatt : 1.0;
  Csv csv({"g", "p_numeric", "p_second_order", "p_resolvent", "rel_err"});
  json analytic = json::array();
  for (double g : gs) {
    if (!(g >= 0.0)) throw ConfigError(where + ": g values must be nonnegative");
    thermo::DeviceParams pg = p;
    pg.g = g;
    const auto dev = thermo::build_device(pg, op);
    const double pn = engine::average_power_numeric(dev.engine, nopt);
    const double p2 = engine::average_power_second_order(dev.engine, h_xi);
    const double pr = engine::average_power_resolvent(dev.engine, h_xi);
    const double rel = p2 != 0.0 ? std::abs(pn - p2) / std::abs(p2) : std::abs(pn);
    csv.row({g, pn * scale, p2 * scale, pr * scale, rel});
    analytic.push_back(num(thermo::analytic_power(pg, op).power * scale));
  }
  json summary{{"rel_err", "|p_numeric - p_second_order| / |p_second_order|"},
               {"closed_form_power", analytic},
               {"phi", num(op.Phi)},
               {"units", units == Units::si_display ? "power W" : "natural"}};
  return {"csv", csv.str(), dump(summary)};
}

// ---------------------------------------------------------------------------
// thermalize
//
// {"device": {...}, "operating_point": {...}, "t_max": 200, "dt": 0.05,
//  "sample_every": 20, "initial": "empty" | "full" | "mixed"}

Result run_thermalize(const json& cfg, Units units) {
  const std::string where = "thermalize";
  check_keys(cfg, {"device", "operating_point", "t_max", "dt", "sample_every", "initial"}, where);
  const auto p = device_from(cfg);
  const auto op = operating_point_from(p, cfg);
  const double t_max = get_number(cfg, "t_max", 200.0, where);
  const double dt = get_number(cfg, "dt", 0.05, where);
  const long every = get_integer(cfg, "sample_every", 20, where);
  if (!(t_max > 0.0) || !(dt > 0.0) || every < 1) {
    throw ConfigError(where + ": t_max, dt and sample_every must be positive");
  }
  std::string initial = "empty";
  if (cfg.contains("initial")) {
    if (!cfg["initial"].is_string()) throw ConfigError(where + ": 'initial' must be a string");
    initial = cfg["initial"].get<std::string>();
  }

  const auto dev = thermo::build_device(p, op);
  const lindblad::Index dim = dev.reg.dim();
  lindblad::Matrix m0 = lindblad::Matrix::Zero(dim, dim);
  if (initial == "empty") {
    m0(0, 0) = 1.0;
  } else if (initial == "full") {
    m0(dim - 1, dim - 1) = 1.0;
  } else if (initial == "mixed") {
    m0 = lindblad::Matrix::Identity(dim, dim) / static_cast<double>(dim);
  } else {
    throw ConfigError(where + ": 'initial' must be empty, full or mixed");
  }
  const lindblad::DensityMatrix rho0{lindblad::Operator(m0)};
  const auto gibbs = thermo::stationary_state_xi(p, op, 0.0);
  const auto gen = dev.engine.generator_family(0.0);
  lindblad::EvolveOptions opt;
  opt.sample_every = static_cast<std::size_t>(every);
  const auto traj = lindblad::evolve([&](double) { return gen; }, rho0, 0.0, t_max, dt, opt);

  const double tscale = units == Units::si_display ? kTimeUnitSecond : 1.0;
  Csv csv({"t", "trace_distance_to_gibbs"});
  for (const auto& pt : traj) {
    csv.row({pt.t * tscale, lindblad::trace_distance(pt.rho.op(), gibbs.op())});
  }
  const auto ss = lindblad::steady_state(gen);
  json summary{{"steady_state_distance_to_gibbs",
                num(lindblad::trace_distance(ss.op(), gibbs.op()))},
               {"final_distance_to_steady_state",
                num(lindblad::trace_distance(traj.back().rho.op(), ss.op()))},
               {"units", units == Units::si_display ? "t s" : "natural"}};
  return {"csv", csv.str(), dump(summary)};
}

// ---------------------------------------------------------------------------
// plasma
//
// {"profile": {"type": "harmonic" | "junction" | "flat", ...},
//  "packet": {"center": ..., "width": ..., "amplitude": 1},
//  "dt_factor": 0.2, "periods": 6, "sample_every": 20}

struct PlasmaSetup {
  plasma::JunctionProfile profile;
  double omega_bottom;  // plasma frequency at the well minimum
  double x_bottom;
  double delta_E;
  double L;
};

PlasmaSetup plasma_profile(const json& pj) {
  const std::string where = "plasma.profile";
  if (!pj.is_object() || !pj.contains("type") || !pj["type"].is_string()) {
    throw ConfigError(where + ": needs a string 'type'");
  }
  const std::string type = pj["type"].get<std::string>();
  const double m_star = get_number(pj, "m_star", plasma::kElectronMass, where);
  const double x_min = get_number(pj, "x_min", -120e-9, where);
  const double x_max = get_number(pj, "x_max", 120e-9, where);
  const long n_points = get_integer(pj, "n_points", 1201, where);
  if (!(x_max > x_min) || n_points < 3) throw ConfigError(where + ": invalid grid");
  const plasma::Grid grid{x_min, (x_max - x_min) / static_cast<double>(n_points - 1),
                          static_cast<std::size_t>(n_points)};
  const double eV = plasma::kElementaryCharge;
  if (type == "harmonic") {
    check_keys(pj, {"type", "m_star", "x_min", "x_max", "n_points", "omega0", "delta_E_eV", "L", "x0"},
               where);
    const double omega0 = get_number(pj, "omega0", 1e15, where);
    const double dE = get_number(pj, "delta_E_eV", 0.5, where) * eV;
    const double L = get_number(pj, "L", 100e-9, where);
    const double x0 = get_number(pj, "x0", 0.0, where);
    return {plasma::JunctionProfile::harmonic(grid, m_star, omega0, dE, L, x0), omega0, x0, dE, L};
  }
  if (type == "junction") {
    check_keys(pj, {"type", "m_star", "x_min", "x_max", "n_points", "omega_a", "omega_b", "x0",
                    "step_width", "delta_E_eV", "L"},
               where);
    const double wa = get_number(pj, "omega_a", 1e15, where);
    const double wb = get_number(pj, "omega_b", 1e15, where);
    const double x0 = get_number(pj, "x0", 0.0, where);
    const double sw = get_number(pj, "step_width", 200e-9, where);
    const double dE = get_number(pj, "delta_E_eV", 0.5, where) * eV;
    const double L = get_number(pj, "L", 100e-9, where);
    auto prof = plasma::JunctionProfile::junction(grid, m_star, wa, wb, x0, sw, dE, L);
    const auto it = std::min_element(prof.omega_p.begin(), prof.omega_p.end());
    const auto i = static_cast<std::size_t>(it - prof.omega_p.begin());
    return {std::move(prof), *it, grid.x(i), dE, L};
  }
  if (type == "flat") {
    check_keys(pj, {"type", "m_star", "x_min", "x_max", "n_points", "n"}, where);
    const double n = require_number(pj, "n", where);
    auto prof = plasma::JunctionProfile::flat(grid, n, m_star);
    const double w = prof.omega_p[0];
    return {std::move(prof), w, 0.5 * (x_min + x_max), 0.0, 0.0};
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

Result run_plasma(const json& cfg, Units units) {
  const std::string where = "plasma";
  check_keys(cfg, {"profile", "packet", "dt_factor", "periods", "sample_every"}, where);
  if (!cfg.contains("profile")) throw ConfigError(where + ": missing 'profile'");
  const PlasmaSetup setup = plasma_profile(cfg["profile"]);
  const auto& prof = setup.profile;
  const auto& grid = prof.grid;
  const auto ib = static_cast<std::size_t>(std::lround((setup.x_bottom - grid.x_min) / grid.dx));
  const double c0 = prof.c_F[std::min(ib, grid.n_points - 1)];
  const double M = plasma::kHbar * setup.omega_bottom / (c0 * c0);
  const bool has_well = setup.delta_E > 0.0;
  const double omega_well = has_well ? plasma::well_frequency(setup.delta_E, M, setup.L) : 0.0;

  json pk = cfg.contains("packet") ? cfg["packet"] : json::object();
  check_keys(pk, {"center", "width", "amplitude", "k"}, where + ".packet");
  // Ground-state width of the effective oscillator.
  const double width_default =
      has_well ? c0 / std::sqrt(setup.omega_bottom * omega_well) : 20.0 * grid.dx;
  const double width = get_number(pk, "width", width_default, where);
  const double center = get_number(pk, "center", setup.x_bottom + 1.5 * width, where);
  const double amplitude = get_number(pk, "amplitude", 1.0, where);
  const double k = get_number(pk, "k", 0.0, where);

  const double dt_factor = get_number(cfg, "dt_factor", 0.2, where);
  const double periods = get_number(cfg, "periods", 6.0, where);
  const long every = get_integer(cfg, "sample_every", 20, where);
  if (!(dt_factor > 0.0) || !(periods > 0.0) || every < 1) {
    throw ConfigError(where + ": dt_factor, periods and sample_every must be positive");
  }
  const double w_max = *std::max_element(prof.omega_p.begin(), prof.omega_p.end());
  const double dt = dt_factor / w_max;
  const double period =
      2.0 * std::numbers::pi / (has_well ? omega_well : setup.omega_bottom);
  const auto n_steps = static_cast<std::size_t>(std::ceil(periods * period / dt));

  const auto init = plasma::gaussian_packet(grid, amplitude, center, width, k);
  const auto traj = plasma::kg_evolve(prof, init, dt, n_steps, static_cast<std::size_t>(every));
  const auto xc = plasma::centroid_series(prof, traj);
  const double omega_measured = plasma::frequency_from_signal(traj.t, xc);

  json summary{{"omega_measured", num(omega_measured)},
               {"omega_well", num(omega_well)},
               {"M_eff", num(M)},
               {"dt", num(dt)},
               {"n_steps", n_steps},
               {"energy_drift", num(std::abs(traj.energy.back() - traj.energy.front()) /
                                    std::abs(traj.energy.front()))}};
  if (has_well) {
    const auto ct = plasma::classical_trajectory(prof, xc.front(), 0.0, dt, n_steps,
                                                 static_cast<std::size_t>(every));
    std::vector<double> tt, xx;
    for (const auto& pt : ct) {
      tt.push_back(pt.t);
      xx.push_back(pt.x);
    }
    summary["omega_classical"] = num(plasma::frequency_from_signal(tt, xx));
  }
  const bool si = units == Units::si_display;
  if (si) {
    const double to_thz = 1.0 / (2.0 * std::numbers::pi * 1e12);
    summary["f_measured_THz"] = num(omega_measured * to_thz);
    summary["f_well_THz"] = num(omega_well * to_thz);
    if (summary.contains("omega_classical")) {
      summary["f_classical_THz"] = num(summary["omega_classical"].get<double>() * to_thz);
    }
  }
  summary["units"] = "SI (rad/s, kg, s)";

  Csv csv({"t", "x_c"});
  for (std::size_t i = 0; i < xc.size(); ++i) csv.row({traj.t[i], xc[i]});
  return {"csv", csv.str(), dump(summary)};
}

// ---------------------------------------------------------------------------
// perturb-check
//
// {"dim": 6, "instances": 5, "seed": 1, "lambdas": [...], "gap_min": 1}

struct RandomInstance {
  lindblad::Operator h0;
  lindblad::Operator v;
};

RandomInstance random_instance(std::mt19937_64& rng, long dim, double gap_min) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd e(dim);
  double level = 0.0;
  for (long i = 0; i < dim; ++i) {
    e(i) = level;
    level += gap_min * (1.0 + unif(rng));
  }
  lindblad::Matrix v(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) v(i, j) = {2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0};
  }
  v = 0.5 * (v + v.adjoint()).eval();
  // Random orthonormal basis so H0 is not trivially diagonal.
  lindblad::Matrix a(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) a(i, j) = {2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0};
  }
  const lindblad::Matrix q = Eigen::HouseholderQR<lindblad::Matrix>(a).householderQ();
  lindblad::Matrix h = q * e.cast<lindblad::Complex>().asDiagonal() * q.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();
  return {lindblad::Operator(h), lindblad::Operator(v)};
}

double spectral_residual(const lindblad::Operator& h0, const lindblad::Operator& v, double lambda,
                         int order) {
  Eigen::SelfAdjointEigenSolver<lindblad::Matrix> es((h0 + v * lambda).matrix());
  const auto approx = perturb::perturbation_expansion(h0, v, lambda, order);
  Eigen::VectorXd a = approx.energies;
  std::sort(a.data(), a.data() + a.size());
  return (es.eigenvalues() - a).cwiseAbs().sum();
}

Result run_perturb_check(const json& cfg, Units) {
  const std::string where = "perturb-check";
  check_keys(cfg, {"dim", "instances", "seed", "lambdas", "gap_min"}, where);
  const long dim = get_integer(cfg, "dim", 6, where);
  const long instances = get_integer(cfg, "instances", 5, where);
  const long seed = get_integer(cfg, "seed", 1, where);
  const double gap_min = get_number(cfg, "gap_min", 1.0, where);
  const std::vector<double> lambdas = cfg.contains("lambdas")
                                          ? get_list(cfg, "lambdas", where)
                                          : std::vector<double>{0.005, 0.01, 0.02, 0.04};
  if (dim < 2 || dim > 64 || instances < 1 || !(gap_min > 0.0) || lambdas.size() < 2) {
    throw ConfigError(where + ": need 2 <= dim <= 64, instances >= 1, gap_min > 0, 2+ lambdas");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) throw ConfigError(where + ": lambdas must be positive");
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  json per = json::array();
  double s1 = 0.0, s2 = 0.0;
  double s1_min = 1e300, s1_max = -1e300, s2_min = 1e300, s2_max = -1e300;
  for (long n = 0; n < instances; ++n) {
    const auto inst = random_instance(rng, dim, gap_min);
    std::vector<double> r1, r2;
    for (double l : lambdas) {
      r1.push_back(spectral_residual(inst.h0, inst.v, l, 1));
      r2.push_back(spectral_residual(inst.h0, inst.v, l, 2));
    }
    const double e1 = log_log_slope(lambdas, r1);
    const double e2 = log_log_slope(lambdas, r2);
    s1 += e1;
    s2 += e2;
    s1_min = std::min(s1_min, e1);
    s1_max = std::max(s1_max, e1);
    s2_min = std::min(s2_min, e2);
    s2_max = std::max(s2_max, e2);
    json r1j = json::array(), r2j = json::array();
    for (double r : r1) r1j.push_back(num(r));
    for (double r : r2) r2j.push_back(num(r));
    per.push_back({{"order1_exponent", num(e1)},
                   {"order2_exponent", num(e2)},
                   {"order1_residuals", r1j},
                   {"order2_residuals", r2j}});
  }
  json lj = json::array();
  for (double l : lambdas) lj.push_back(num(l));
  json data{{"lambdas", lj},
            {"order1_exponent", num(s1 / static_cast<double>(instances))},
            {"order2_exponent", num(s2 / static_cast<double>(instances))},
            {"order1_exponent_range", {num(s1_min), num(s1_max)}},
            {"order2_exponent_range", {num(s2_min), num(s2_max)}},
            {"instances", per}};
  return {"json", dump(data), ""};
}

}  // namespace

Result run(const std::string& name, const std::string& config_text, Units units) {
  json cfg;
  try {
    cfg = json::parse(config_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (name == "iv-sweep") return run_iv_sweep(cfg, units);
    if (name == "power-compare") return run_power_compare(cfg, units);
    if (name == "thermalize") return run_thermalize(cfg, units);
    if (name == "plasma") return run_plasma(cfg, units);
    if (name == "perturb-check") return run_perturb_check(cfg, units);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace thermoosc::experiments
