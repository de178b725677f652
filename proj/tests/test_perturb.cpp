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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "test_util.hpp"
#include "thermoosc/error.hpp"
#include "thermoosc/perturb.hpp"

using namespace thermoosc;
using namespace thermoosc::perturb;

namespace {

Operator two_level(double delta) {
  Eigen::VectorXd e(2);
  e << 0.0, delta;
  return Operator::diagonal(e);
}

Operator sigma_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return Operator(m);
}

Eigen::VectorXd exact_levels(const Operator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  return es.eigenvalues();
}

Operator random_diagonal(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(1.0, 2.0);
  Eigen::VectorXd e(dim);
  double level = 0.0;
  for (int i = 0; i < dim; ++i) {
    e(i) = level;
    level += u(rng);
  }
  return Operator::diagonal(e);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_SUITE("spectral decomposition") {
  TEST_CASE("ascending levels and gap") {
    Eigen::VectorXd e(3);
    e << 2.0, 0.0, 0.5;
    const auto sd = spectral_decomposition(Operator::diagonal(e));
    CHECK(sd.energies(0) == doctest::Approx(0.0));
    CHECK(sd.energies(2) == doctest::Approx(2.0));
    CHECK(sd.min_gap == doctest::Approx(0.5));
  }

  TEST_CASE("degenerate levels are rejected") {
    Eigen::VectorXd e(3);
    e << 0.0, 1.0, 1.0;
    CHECK_THROWS_AS(spectral_decomposition(Operator::diagonal(e)), DegeneracyError);
    CHECK_THROWS_AS(effective_fast_hamiltonian(Operator::diagonal(e), Operator::identity(3), 0.1),
                    DegeneracyError);
  }
}

TEST_SUITE("expansion") {
  TEST_CASE("zero coupling reproduces the bare spectrum") {
    std::mt19937_64 rng(3);
    const auto h0 = random_diagonal(rng, 5);
    const auto v = testutil::random_hermitian(rng, 5);
    const auto ex = perturbation_expansion(h0, v, 0.0, 2);
    const auto bare = spectral_decomposition(h0).energies;
    CHECK((ex.energies - bare).norm() <= 1e-14);
  }

  TEST_CASE("two-level ground state through second order") {
    const double delta = 1.0;
    for (double lambda : {0.01, 0.03, 0.1}) {
      const auto ex = perturbation_expansion(two_level(delta), sigma_x(), lambda, 2);
      const double exact = 0.5 * delta - std::sqrt(0.25 * delta * delta + lambda * lambda);
      CHECK(ex.energies(0) == doctest::Approx(-lambda * lambda / delta).epsilon(1e-14));
      CHECK(std::abs(ex.energies(0) - exact) <= 2.0 * std::pow(lambda, 4) / std::pow(delta, 3));

      Eigen::SelfAdjointEigenSolver<Matrix> es((two_level(delta) + sigma_x() * lambda).matrix());
      const double overlap = std::norm(es.eigenvectors().col(0).dot(ex.vectors.col(0)));
      CHECK(1.0 - overlap <= 10.0 * std::pow(lambda / delta, 4));
    }
  }

  TEST_CASE("order must be 1 or 2") {
    CHECK_THROWS_AS(perturbation_expansion(two_level(1.0), sigma_x(), 0.1, 3), DomainError);
  }

  TEST_CASE("error exponents on random instances") {
    std::mt19937_64 rng(11);
    const std::vector<double> lambdas{0.005, 0.01, 0.02, 0.04};
    for (int inst = 0; inst < 4; ++inst) {
      const auto h0 = random_diagonal(rng, 6);
      const auto v = testutil::random_hermitian(rng, 6);
      std::vector<double> e1, e2;
      for (double l : lambdas) {
        const auto exact = exact_levels(h0 + v * l);
        e1.push_back((perturbation_expansion(h0, v, l, 1).energies - exact).cwiseAbs().maxCoeff());
        e2.push_back((perturbation_expansion(h0, v, l, 2).energies - exact).cwiseAbs().maxCoeff());
      }
      CHECK(loglog_slope(lambdas, e1) == doctest::Approx(2.0).epsilon(0.075));
      CHECK(loglog_slope(lambdas, e2) == doctest::Approx(3.0).epsilon(0.05));
    }
  }
}

TEST_SUITE("slow effective Hamiltonian") {
  TEST_CASE("diagonal coupling is exact") {
    std::mt19937_64 rng(5);
    const auto h0 = random_diagonal(rng, 4);
    Eigen::VectorXd d(4);
    d << 0.3, -1.0, 0.2, 0.7;
    const auto v = Operator::diagonal(d);
    const auto eff = effective_slow_hamiltonian(h0, v, 0.05);
    CHECK((eff.at(0.0) - (h0 + v * 0.05)).max_norm() <= 1e-12);
  }

  TEST_CASE("off-diagonal coupling leaves no first-order shift") {
    const auto eff = effective_slow_hamiltonian(two_level(1.0), sigma_x(), 0.1);
    CHECK(eff.correction.max_norm() <= 1e-15);
  }

  TEST_CASE("neglected term is second order") {
    std::mt19937_64 rng(8);
    const auto h0 = random_diagonal(rng, 5);
    const auto v = testutil::random_hermitian(rng, 5);
    std::vector<double> ls{1e-3, 3e-3, 1e-2, 3e-2, 1e-1}, err;
    for (double l : ls) {
      const auto eff = effective_slow_hamiltonian(h0, v, l);
      const Eigen::VectorXd approx = eff.at(0.0).matrix().diagonal().real();
      Eigen::VectorXd sorted = approx;
      std::sort(sorted.data(), sorted.data() + sorted.size());
      err.push_back((sorted - exact_levels(h0 + v * l)).cwiseAbs().maxCoeff());
    }
    CHECK(loglog_slope(ls, err) == doctest::Approx(2.0).epsilon(0.05));
  }

  TEST_CASE("envelope multiplies the correction") {
    Eigen::VectorXd d(2);
    d << 1.0, -1.0;
    const auto eff = effective_slow_hamiltonian(two_level(1.0), Operator::diagonal(d), 0.1,
                                                [](double t) { return std::cos(t); });
    CHECK(eff.at(std::numbers::pi)(0, 0).real() == doctest::Approx(-0.1));
    CHECK(eff.at(0.5 * std::numbers::pi)(0, 0).real() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_SUITE("fast effective Hamiltonian") {
  TEST_CASE("two-level shift") {
    const double delta = 1.0, lambda = 0.05;
    const auto eff = effective_fast_hamiltonian(two_level(delta), sigma_x(), lambda);
    CHECK(eff.correction(0, 0).real() == doctest::Approx(-lambda * lambda / (2.0 * delta)).epsilon(1e-14));
    CHECK(eff.correction(1, 1).real() == doctest::Approx(lambda * lambda / (2.0 * delta)).epsilon(1e-14));
    // Half the static second-order shift of the exact ground level.
    const double exact = 0.5 * delta - std::sqrt(0.25 * delta * delta + lambda * lambda);
    CHECK(std::abs(eff.correction(0, 0).real() - 0.5 * exact) <= std::pow(lambda, 4));
  }

  TEST_CASE("diagonal coupling gives no fast correction") {
    Eigen::VectorXd d(3);
    d << 0.3, -1.0, 0.2;
    std::mt19937_64 rng(2);
    const auto eff = effective_fast_hamiltonian(random_diagonal(rng, 3), Operator::diagonal(d), 0.3);
    CHECK(eff.correction.max_norm() <= 1e-15);
  }

  TEST_CASE("ground level is pushed down and the correction commutes with H0") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 5; ++i) {
      const auto h0 = random_diagonal(rng, 6);
      const auto v = testutil::random_hermitian(rng, 6);
      const auto eff = effective_fast_hamiltonian(h0, v, 0.1);
      CHECK(eff.correction(0, 0).real() <= 0.0);
      CHECK(eff.correction(5, 5).real() >= 0.0);
      CHECK(lindblad::commutator(eff.correction, h0).max_norm() <= 1e-12);
      CHECK(std::abs(eff.correction.trace()) <= 1e-12);
    }
  }

  TEST_CASE("envelope enters squared") {
    const auto eff = effective_fast_hamiltonian(two_level(1.0), sigma_x(), 0.1, [](double t) { return t; });
    const auto c = eff.correction(0, 0).real();
    CHECK(eff.at(3.0)(0, 0).real() == doctest::Approx(9.0 * c));
  }
}
