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

#include "thermoosc/thermoosc.h"

#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "thermoosc/engine.hpp"
#include "thermoosc/error.hpp"
#include "thermoosc/experiments.hpp"
#include "thermoosc/thermoelectric.hpp"

struct tosc_device {
  thermoosc::thermo::DeviceParams params;
  thermoosc::thermo::OperatingPoint op;
};

struct tosc_result {
  thermoosc::experiments::Result r;
};

namespace {

thread_local std::string g_last_error;

tosc_status fail(tosc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs fn and maps library exceptions onto status codes.
template <typename Fn>
tosc_status guarded(Fn&& fn) {
  using namespace thermoosc;
  try {
    g_last_error.clear();
    fn();
    return TOSC_OK;
  } catch (const ConfigError& e) {
    return fail(TOSC_ERR_CONFIG, e.what());
  } catch (const CapacityError& e) {
    return fail(TOSC_ERR_CAPACITY, e.what());
  } catch (const DegeneracyError& e) {
    return fail(TOSC_ERR_DEGENERATE, e.what());
  } catch (const InstabilityError& e) {
    return fail(TOSC_ERR_NUMERICAL, e.what());
  } catch (const SingularError& e) {
    return fail(TOSC_ERR_NUMERICAL, e.what());
  } catch (const InsufficientSpanError& e) {
    return fail(TOSC_ERR_NUMERICAL, e.what());
  } catch (const ShapeError& e) {
    return fail(TOSC_ERR_DOMAIN, e.what());
  } catch (const DomainError& e) {
    return fail(TOSC_ERR_DOMAIN, e.what());
  } catch (const InfeasibleError& e) {
    return fail(TOSC_ERR_DOMAIN, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(TOSC_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TOSC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TOSC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TOSC_ERR_INTERNAL, "unknown error");
  }
}

tosc_status null_arg(const char* fn) {
  return fail(TOSC_ERR_INVALID, std::string(fn) + ": NULL argument");
}

}  // namespace

extern "C" {

const char* tosc_version(void) { return THERMOOSC_VERSION; }

const char* tosc_last_error(void) { return g_last_error.c_str(); }

const char* tosc_status_name(tosc_status status) {
  switch (status) {
    case TOSC_OK: return "ok";
    case TOSC_ERR_INVALID: return "invalid_argument";
    case TOSC_ERR_CONFIG: return "config_error";
    case TOSC_ERR_NUMERICAL: return "numerical_error";
    case TOSC_ERR_DEGENERATE: return "degeneracy_error";
    case TOSC_ERR_CAPACITY: return "capacity_error";
    case TOSC_ERR_DOMAIN: return "domain_error";
    case TOSC_ERR_INTERNAL: return "internal_error";
  }
  return "unknown_status";
}

tosc_status tosc_device_create(const char* params_json, tosc_device** out) {
  if (!out) return null_arg("tosc_device_create");
  *out = nullptr;
  return guarded([&] {
    auto dev = std::make_unique<tosc_device>();
    if (params_json) {
      dev->params = thermoosc::thermo::DeviceParams::from_json(nlohmann::json::parse(params_json));
    }
    dev->op = thermoosc::thermo::operating_point_from_voltage(dev->params, 0.4, 0.2);
    *out = dev.release();
  });
}

void tosc_device_destroy(tosc_device* dev) { delete dev; }

tosc_status tosc_device_set_voltage(tosc_device* dev, double mu_b, double phi) {
  if (!dev) return null_arg("tosc_device_set_voltage");
  return guarded([&] { dev->op = thermoosc::thermo::operating_point_from_voltage(dev->params, mu_b, phi); });
}

tosc_status tosc_device_set_amplitude(tosc_device* dev, double g) {
  if (!dev) return null_arg("tosc_device_set_amplitude");
  return guarded([&] {
    auto p = dev->params;
    p.g = g;
    p.validate();
    dev->params = p;
  });
}

tosc_status tosc_device_open_circuit_voltage(const tosc_device* dev, double* out) {
  if (!dev || !out) return null_arg("tosc_device_open_circuit_voltage");
  return guarded([&] { *out = thermoosc::thermo::open_circuit_voltage(dev->params); });
}

tosc_status tosc_device_seebeck(const tosc_device* dev, double* out) {
  if (!dev || !out) return null_arg("tosc_device_seebeck");
  return guarded([&] { *out = thermoosc::thermo::seebeck_coefficient(dev->params); });
}

tosc_status tosc_device_power_analytic(const tosc_device* dev, double* out) {
  if (!dev || !out) return null_arg("tosc_device_power_analytic");
  return guarded([&] { *out = thermoosc::thermo::analytic_power(dev->params, dev->op).power; });
}

tosc_status tosc_device_power_second_order(const tosc_device* dev, double h_xi, double* out) {
  if (!dev || !out) return null_arg("tosc_device_power_second_order");
  return guarded([&] {
    const auto model = thermoosc::thermo::build_device(dev->params, dev->op);
    *out = thermoosc::engine::average_power_second_order(model.engine, h_xi);
  });
}

tosc_status tosc_device_power_resolvent(const tosc_device* dev, double h_xi, double* out) {
  if (!dev || !out) return null_arg("tosc_device_power_resolvent");
  return guarded([&] {
    const auto model = thermoosc::thermo::build_device(dev->params, dev->op);
    *out = thermoosc::engine::average_power_resolvent(model.engine, h_xi);
  });
}

tosc_status tosc_device_power_numeric(const tosc_device* dev, int n_periods, double dt,
                                      double t_transient, double* out) {
  if (!dev || !out) return null_arg("tosc_device_power_numeric");
  return guarded([&] {
    const auto model = thermoosc::thermo::build_device(dev->params, dev->op);
    thermoosc::engine::NumericAverageOptions opt;
    opt.n_periods = n_periods;
    opt.dt = dt;
    if (t_transient >= 0.0) opt.t_transient = t_transient;
    *out = thermoosc::engine::average_power_numeric(model.engine, opt);
  });
}

tosc_status tosc_run(const char* experiment, const char* config_json, const char* units,
                     tosc_result** out) {
  if (!experiment || !config_json || !out) return null_arg("tosc_run");
  *out = nullptr;
  return guarded([&] {
    namespace ex = thermoosc::experiments;
    const ex::Units u = units ? ex::parse_units(units) : ex::Units::natural;
    auto res = std::make_unique<tosc_result>();
    res->r = ex::run(experiment, config_json, u);
    *out = res.release();
  });
}

const char* tosc_result_format(const tosc_result* res) { return res ? res->r.format.c_str() : ""; }
const char* tosc_result_data(const tosc_result* res) { return res ? res->r.data.c_str() : ""; }
const char* tosc_result_summary(const tosc_result* res) { return res ? res->r.summary.c_str() : ""; }
void tosc_result_destroy(tosc_result* res) { delete res; }

}  // extern "C"
