/* Copyright 2026 The thermoosc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the thermoosc library.
 *
 * Every fallible call returns a tosc_status. On failure the message is
 * available from tosc_last_error() until the next call on the same thread.
 * Handles are opaque and owned by the caller; destroy functions accept NULL.
 */

#ifndef THERMOOSC_H
#define THERMOOSC_H

#if defined(_WIN32)
#  if defined(THERMOOSC_BUILDING)
#    define TOSC_API __declspec(dllexport)
#  else
#    define TOSC_API __declspec(dllimport)
#  endif
#else
#  define TOSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tosc_status {
  TOSC_OK = 0,
  TOSC_ERR_INVALID = 1,   /* NULL pointer or bad argument */
  TOSC_ERR_CONFIG = 2,    /* malformed or inconsistent configuration */
  TOSC_ERR_NUMERICAL = 3, /* integration instability, singular solve */
  TOSC_ERR_DEGENERATE = 4,/* non-unique stationary state, degenerate spectrum */
  TOSC_ERR_CAPACITY = 5,  /* register larger than 12 modes */
  TOSC_ERR_DOMAIN = 6,    /* argument outside its mathematical domain */
  TOSC_ERR_INTERNAL = 7
} tosc_status;

TOSC_API const char* tosc_version(void);
TOSC_API const char* tosc_last_error(void);
TOSC_API const char* tosc_status_name(tosc_status status);

/* ---- Thermoelectric device ------------------------------------------- */

typedef struct tosc_device tosc_device;

/* params_json: a DeviceParams object (field names as in the config files),
 * or NULL for the default device. The operating point starts at
 * mu_b = 0.4, Phi = 0.2. */
TOSC_API tosc_status tosc_device_create(const char* params_json, tosc_device** out);
TOSC_API void tosc_device_destroy(tosc_device* dev);

TOSC_API tosc_status tosc_device_set_voltage(tosc_device* dev, double mu_b, double phi);
TOSC_API tosc_status tosc_device_set_amplitude(tosc_device* dev, double g);

TOSC_API tosc_status tosc_device_open_circuit_voltage(const tosc_device* dev, double* out);
/* Natural units (E_g / T1). */
TOSC_API tosc_status tosc_device_seebeck(const tosc_device* dev, double* out);

TOSC_API tosc_status tosc_device_power_analytic(const tosc_device* dev, double* out);
TOSC_API tosc_status tosc_device_power_second_order(const tosc_device* dev, double h_xi,
                                                    double* out);
TOSC_API tosc_status tosc_device_power_resolvent(const tosc_device* dev, double h_xi, double* out);
/* t_transient < 0 selects 10 / spectral gap. */
TOSC_API tosc_status tosc_device_power_numeric(const tosc_device* dev, int n_periods, double dt,
                                               double t_transient, double* out);

/* ---- Batch experiments ----------------------------------------------- */

typedef struct tosc_result tosc_result;

/* experiment: iv-sweep | power-compare | thermalize | plasma | perturb-check
 * units: "natural" or "si-display" (NULL means natural). */
TOSC_API tosc_status tosc_run(const char* experiment, const char* config_json, const char* units,
                              tosc_result** out);
/* "csv" or "json". */
TOSC_API const char* tosc_result_format(const tosc_result* res);
TOSC_API const char* tosc_result_data(const tosc_result* res);
/* JSON object text; empty string when the experiment has no summary. */
TOSC_API const char* tosc_result_summary(const tosc_result* res);
TOSC_API void tosc_result_destroy(tosc_result* res);

#ifdef __cplusplus
}
#endif

#endif /* THERMOOSC_H */
