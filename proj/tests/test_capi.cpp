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

// Exercises the shared library through its C header only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "thermoosc/thermoosc.h"

TEST_CASE("version and status names") {
  CHECK(std::strlen(tosc_version()) > 0);
  CHECK(std::string(tosc_status_name(TOSC_OK)) == "ok");
  CHECK(std::string(tosc_status_name(TOSC_ERR_CONFIG)) == "config_error");
}

TEST_CASE("default device") {
  tosc_device* dev = nullptr;
  REQUIRE(tosc_device_create(nullptr, &dev) == TOSC_OK);
  REQUIRE(dev != nullptr);

  double phi0 = 0.0, s = 0.0;
  CHECK(tosc_device_open_circuit_voltage(dev, &phi0) == TOSC_OK);
  CHECK(phi0 == doctest::Approx(0.5));
  CHECK(tosc_device_seebeck(dev, &s) == TOSC_OK);
  CHECK(s == doctest::Approx(10.0));

  double pa = 0.0, p8 = 0.0, p7 = 0.0;
  CHECK(tosc_device_power_analytic(dev, &pa) == TOSC_OK);
  CHECK(pa > 0.0);
  CHECK(tosc_device_power_second_order(dev, 1e-4, &p8) == TOSC_OK);
  CHECK(tosc_device_power_resolvent(dev, 1e-4, &p7) == TOSC_OK);
  CHECK(std::abs(p7 - p8) <= 0.05 * std::abs(p8));

  CHECK(tosc_device_set_voltage(dev, 0.4, phi0) == TOSC_OK);
  CHECK(tosc_device_power_analytic(dev, &pa) == TOSC_OK);
  CHECK(pa == 0.0);

  CHECK(tosc_device_set_amplitude(dev, 0.0) == TOSC_OK);
  double pn = 1.0;
  CHECK(tosc_device_power_numeric(dev, 10, 0.05, -1.0, &pn) == TOSC_OK);
  CHECK(pn == 0.0);

  tosc_device_destroy(dev);
  tosc_device_destroy(nullptr);
}

TEST_CASE("argument and config errors") {
  tosc_device* dev = nullptr;
  CHECK(tosc_device_create(nullptr, nullptr) == TOSC_ERR_INVALID);
  CHECK(std::strlen(tosc_last_error()) > 0);
  CHECK(tosc_device_create("{not json", &dev) == TOSC_ERR_CONFIG);
  CHECK(dev == nullptr);
  CHECK(tosc_device_create("{\"bogus\": 1}", &dev) == TOSC_ERR_CONFIG);
  CHECK(tosc_device_create("{\"modes_a\": [1,1,1,1,1,1,1], \"modes_b\": [0,0,0,0,0,0]}", &dev) ==
        TOSC_OK);
  double p = 0.0;
  CHECK(tosc_device_power_second_order(dev, 1e-4, &p) == TOSC_ERR_CAPACITY);
  tosc_device_destroy(dev);

  REQUIRE(tosc_device_create(nullptr, &dev) == TOSC_OK);
  CHECK(tosc_device_set_amplitude(dev, -1.0) == TOSC_ERR_DOMAIN);
  CHECK(tosc_device_power_second_order(dev, 0.5, &p) == TOSC_ERR_DOMAIN);
  CHECK(tosc_device_power_numeric(dev, 3, 0.05, -1.0, &p) == TOSC_ERR_DOMAIN);
  CHECK(tosc_device_power_analytic(dev, nullptr) == TOSC_ERR_INVALID);
  tosc_device_destroy(dev);
}

TEST_CASE("batch runs") {
  tosc_result* res = nullptr;
  REQUIRE(tosc_run("iv-sweep", "{\"phi\": [0.0, 0.25, 0.5, 1.0]}", "natural", &res) == TOSC_OK);
  CHECK(std::string(tosc_result_format(res)) == "csv");
  const std::string data = tosc_result_data(res);
  CHECK(data.rfind("phi,", 0) == 0);
  CHECK(std::string(tosc_result_summary(res)).find("phi0") != std::string::npos);
  tosc_result_destroy(res);

  res = nullptr;
  CHECK(tosc_run("no-such-experiment", "{}", nullptr, &res) == TOSC_ERR_CONFIG);
  CHECK(res == nullptr);
  CHECK(tosc_run("iv-sweep", "{", nullptr, &res) == TOSC_ERR_CONFIG);
  CHECK(tosc_run("iv-sweep", "{}", "furlongs", &res) == TOSC_ERR_CONFIG);
  CHECK(tosc_run(nullptr, "{}", nullptr, &res) == TOSC_ERR_INVALID);
  CHECK(tosc_run("thermalize", "{\"dt\": 50.0, \"t_max\": 500.0}", nullptr, &res) == TOSC_ERR_NUMERICAL);
  tosc_result_destroy(nullptr);
}
