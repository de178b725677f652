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

#ifndef THERMOOSC_FERMI_DIRAC_HPP
#define THERMOOSC_FERMI_DIRAC_HPP

#include <cmath>
#include <string>

#include "thermoosc/error.hpp"

namespace thermoosc::thermo {

/// 1 / (exp((E - mu)/T) + 1), evaluated without overflow for any finite ratio.
inline double fermi_dirac(double energy, double mu, double temperature) {
  if (!(temperature > 0.0)) {
    throw DomainError("fermi_dirac: temperature must be positive, got " + std::to_string(temperature));
  }
  const double x = (energy - mu) / temperature;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

}  // namespace thermoosc::thermo

#endif  // THERMOOSC_FERMI_DIRAC_HPP
