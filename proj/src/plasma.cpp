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

#include "thermoosc/plasma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "thermoosc/error.hpp"

namespace thermoosc::plasma {

namespace {

constexpr double kPi = std::numbers::pi;

double omega_p_of(double n, double m_star) {
  return std::sqrt(n * kElementaryCharge * kElementaryCharge / (m_star * kEpsilon0));
}

double c_F_of(double n, double m_star) {
  const double alpha = std::pow(3.0 * kPi * kPi, 2.0 / 3.0) * kHbar * kHbar / (2.0 * m_star);
  return std::sqrt(5.0 / 3.0 * alpha / m_star * std::cbrt(n * n));
}

void check_grid(const Grid& grid) {
  if (!(grid.dx > 0.0) || grid.n_points < 3 || !std::isfinite(grid.x_min)) {
    throw DomainError("grid needs dx > 0 and at least 3 points");
  }
}

}  // namespace

MaterialFunctions material_functions(const PlasmaMaterial& mat) {
  if (!(mat.n > 0.0 && mat.m_star > 0.0)) {
    throw DomainError("material_functions: density and mass must be positive");
  }
  MaterialFunctions out{};
  out.omega_p = omega_p_of(mat.n, mat.m_star);
  out.alpha = std::pow(3.0 * kPi * kPi, 2.0 / 3.0) * kHbar * kHbar / (2.0 * mat.m_star);
  out.v_F = kHbar * std::cbrt(3.0 * kPi * kPi * mat.n) / mat.m_star;
  out.c_F = c_F_of(mat.n, mat.m_star);
  out.M_eff = kHbar * out.omega_p / (out.c_F * out.c_F);
  return out;
}

EffectiveParticle effective_particle(double omega_p, double v_F) {
  if (!(omega_p > 0.0 && v_F > 0.0)) throw DomainError("effective_particle: arguments must be positive");
  const double c2 = 5.0 / 6.0 * v_F * v_F;
  return {std::sqrt(c2), kHbar * omega_p / c2};
}

double well_frequency(double delta_E, double M_eff, double L) {
  if (!(delta_E > 0.0 && M_eff > 0.0 && L > 0.0)) {
    throw DomainError("well_frequency: arguments must be positive");
  }
  return std::sqrt(2.0 * delta_E / (M_eff * L * L));
}

// ---------------------------------------------------------------------------
// Profiles

JunctionProfile JunctionProfile::from_density(const Grid& grid, std::vector<double> n_bar,
                                              double m_star) {
  check_grid(grid);
  if (!(m_star > 0.0)) throw DomainError("profile: m_star must be positive");
  if (n_bar.size() != grid.n_points) throw ShapeError("profile: density size differs from grid");
  JunctionProfile p;
  p.grid = grid;
  p.m_star = m_star;
  p.n_bar = std::move(n_bar);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double n = p.n_bar[i];
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw DomainError("profile: density must be positive at x = " + std::to_string(grid.x(i)));
    }
    p.omega_p.push_back(omega_p_of(n, m_star));
    p.c_F.push_back(c_F_of(n, m_star));
    p.U.push_back(kHbar * p.omega_p.back());
  }
  return p;
}

JunctionProfile JunctionProfile::from_omega_p(const Grid& grid,
                                              const std::function<double(double)>& omega_p,
                                              double m_star) {
  check_grid(grid);
  std::vector<double> n(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double w = omega_p(grid.x(i));
    n[i] = w * w * m_star * kEpsilon0 / (kElementaryCharge * kElementaryCharge);
  }
  return from_density(grid, std::move(n), m_star);
}

JunctionProfile JunctionProfile::flat(const Grid& grid, double n, double m_star) {
  return from_density(grid, std::vector<double>(grid.n_points, n), m_star);
}

JunctionProfile JunctionProfile::harmonic(const Grid& grid, double m_star, double omega0,
                                          double delta_E, double L, double x0) {
  if (!(omega0 > 0.0 && delta_E > 0.0 && L > 0.0)) {
    throw DomainError("harmonic profile: omega0, delta_E and L must be positive");
  }
  return from_omega_p(
      grid,
      [=](double x) {
        const double s = (x - x0) / L;
        return omega0 + delta_E * s * s / kHbar;
      },
      m_star);
}

JunctionProfile JunctionProfile::junction(const Grid& grid, double m_star, double omega_a,
                                          double omega_b, double x0, double step_width,
                                          double delta_E, double L) {
  if (!(omega_a > 0.0 && omega_b > 0.0 && step_width > 0.0 && delta_E >= 0.0 && L > 0.0)) {
    throw DomainError("junction profile: invalid plateau, step or dip parameters");
  }
  return from_omega_p(
      grid,
      [=](double x) {
        const double step = 0.5 * (1.0 + std::tanh((x - x0) / step_width));
        const double s = (x - x0) / L;
        return omega_a + (omega_b - omega_a) * step - delta_E / kHbar * std::exp(-s * s);
      },
      m_star);
}

WavePacketState gaussian_packet(const Grid& grid, double amplitude, double center, double width,
                                double k) {
  check_grid(grid);
  if (!(width > 0.0)) throw DomainError("gaussian_packet: width must be positive");
  WavePacketState s{std::vector<double>(grid.n_points, 0.0),
                    std::vector<double>(grid.n_points, 0.0)};
  for (std::size_t i = 1; i + 1 < grid.n_points; ++i) {
    const double d = grid.x(i) - center;
    s.delta_n[i] = amplitude * std::exp(-d * d / (2.0 * width * width)) * std::cos(k * d);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Klein-Gordon leapfrog

namespace {

struct KgOperator {
  const JunctionProfile& prof;
  double inv_dx2;

  // a = c^2 D2 u - omega^2 u on interior points; boundary entries are zero.
  void accel(const std::vector<double>& u, std::vector<double>& a) const {
    const std::size_t n = u.size();
    a[0] = 0.0;
    a[n - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double c2 = prof.c_F[i] * prof.c_F[i];
      const double w2 = prof.omega_p[i] * prof.omega_p[i];
      a[i] = c2 * (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_dx2 - w2 * u[i];
    }
  }

  double energy(const std::vector<double>& u0, const std::vector<double>& u1, double dt,
                double c_ref2) const {
    const std::size_t n = u0.size();
    const double dx = prof.grid.dx;
    double e = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double c2 = prof.c_F[i] * prof.c_F[i];
      const double w2 = prof.omega_p[i] * prof.omega_p[i];
      const double v = (u1[i] - u0[i]) / dt;
      e += v * v / c2 + w2 / c2 * u0[i] * u1[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      e += (u0[i + 1] - u0[i]) * (u1[i + 1] - u1[i]) / (dx * dx);
    }
    return 0.5 * dx * c_ref2 * e;
  }
};

std::vector<double> central_velocity(const std::vector<double>& um, const std::vector<double>& up,
                                     double dt) {
  std::vector<double> v(um.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (up[i] - um[i]) / (2.0 * dt);
  return v;
}

}  // namespace

KgTrajectory kg_evolve(const JunctionProfile& profile, const WavePacketState& init, double dt,
                       std::size_t n_steps, std::size_t sample_every) {
  const std::size_t n = profile.grid.n_points;
  if (init.delta_n.size() != n || init.delta_n_dot.size() != n) {
    throw ShapeError("kg_evolve: state size differs from grid");
  }
  if (!(dt > 0.0)) throw ConfigError("kg_evolve: dt must be positive");
  const double dx = profile.grid.dx;
  const double c_max = *std::max_element(profile.c_F.begin(), profile.c_F.end());
  const double w_max = *std::max_element(profile.omega_p.begin(), profile.omega_p.end());
  const double cfl = c_max * dt / dx;
  if (cfl > 0.9) {
    throw ConfigError("kg_evolve: CFL number " + std::to_string(cfl) + " exceeds 0.9");
  }
  // Von Neumann bound for the frozen-coefficient scheme: dt^2 (4c^2/dx^2 + w^2) < 4.
  if (dt * dt * (4.0 * c_max * c_max / (dx * dx) + w_max * w_max) >= 4.0) {
    throw ConfigError("kg_evolve: dt too large for the plasma frequency (need dt * omega_p << 2)");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(init.delta_n[i]) || !std::isfinite(init.delta_n_dot[i])) {
      throw DomainError("kg_evolve: non-finite initial state");
    }
  }
  const std::size_t every = std::max<std::size_t>(1, sample_every);
  const KgOperator op{profile, 1.0 / (dx * dx)};
  const double c_ref2 = c_max * c_max;

  std::vector<double> u0 = init.delta_n;
  u0.front() = 0.0;
  u0.back() = 0.0;
  std::vector<double> a(n);
  op.accel(u0, a);
  std::vector<double> u1(n);
  for (std::size_t i = 0; i < n; ++i) u1[i] = u0[i] + dt * init.delta_n_dot[i] + 0.5 * dt * dt * a[i];
  u1.front() = 0.0;
  u1.back() = 0.0;

  KgTrajectory traj;
  traj.t.push_back(0.0);
  traj.states.push_back({u0, init.delta_n_dot});
  traj.states.back().delta_n_dot.front() = 0.0;
  traj.states.back().delta_n_dot.back() = 0.0;
  traj.energy.push_back(op.energy(u0, u1, dt, c_ref2));

  // Invariant at the top of step s: u0 = u^(s-1), u1 = u^s.
  std::vector<double> u2(n);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    op.accel(u1, a);
    for (std::size_t i = 1; i + 1 < n; ++i) u2[i] = 2.0 * u1[i] - u0[i] + dt * dt * a[i];
    u2.front() = 0.0;
    u2.back() = 0.0;
    if (s % every == 0 || s == n_steps) {
      traj.t.push_back(static_cast<double>(s) * dt);
      traj.states.push_back({u1, central_velocity(u0, u2, dt)});
      traj.energy.push_back(op.energy(u1, u2, dt, c_ref2));
    }
    std::swap(u0, u1);
    std::swap(u1, u2);
  }
  return traj;
}

std::vector<double> centroid_series(const JunctionProfile& profile, const KgTrajectory& traj) {
  std::vector<double> xc;
  xc.reserve(traj.states.size());
  for (const auto& st : traj.states) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < st.delta_n.size(); ++i) {
      const double v = st.delta_n_dot[i] / profile.omega_p[i];
      const double w = st.delta_n[i] * st.delta_n[i] + v * v;
      num += profile.grid.x(i) * w;
      den += w;
    }
    xc.push_back(den > 0.0 ? num / den : 0.0);
  }
  return xc;
}

double frequency_from_signal(const std::vector<double>& t, const std::vector<double>& s) {
  if (t.size() != s.size()) throw ShapeError("frequency_from_signal: size mismatch");
  if (s.empty()) throw InsufficientSpanError("empty signal");
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double scale = 0.0;
  for (double v : s) scale = std::max(scale, std::abs(v - mean));
  // Constant signals (up to rounding) have no crossings.
  const double floor = 1e-12 * std::max(std::abs(mean), scale);
  std::vector<double> crossings;
  if (scale > floor) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const double a = s[i] - mean;
      const double b = s[i + 1] - mean;
      if ((a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0)) {
        crossings.push_back(t[i] - a * (t[i + 1] - t[i]) / (b - a));
      }
    }
  }
  if (crossings.size() < 3) {
    throw InsufficientSpanError("only " + std::to_string(crossings.size()) +
                                " zero crossings; need at least 3 (lengthen the run)");
  }
  const double mean_interval =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return kPi / mean_interval;
}

double extract_centroid_frequency(const JunctionProfile& profile, const KgTrajectory& traj) {
  return frequency_from_signal(traj.t, centroid_series(profile, traj));
}

// ---------------------------------------------------------------------------
// Classical effective particle

ProfileInterpolant::ProfileInterpolant(const JunctionProfile& profile)
    : grid_(profile.grid), c_(profile.c_F), w_(profile.omega_p) {}

namespace {

void catmull_rom(const std::vector<double>& f, std::size_t i, double t, double dx, double& value,
                 double& deriv) {
  const std::size_t n = f.size();
  const double p0 = f[i == 0 ? 0 : i - 1];
  const double p1 = f[i];
  const double p2 = f[std::min(i + 1, n - 1)];
  const double p3 = f[std::min(i + 2, n - 1)];
  const double a = 2.0 * p1;
  const double b = p2 - p0;
  const double c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
  const double d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
  value = 0.5 * (a + t * (b + t * (c + t * d)));
  deriv = 0.5 * (b + t * (2.0 * c + t * 3.0 * d)) / dx;
}

}  // namespace

void ProfileInterpolant::eval(double x, double& c, double& dc, double& w, double& dw) const {
  const double s = (x - grid_.x_min) / grid_.dx;
  auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0,
                                               static_cast<double>(grid_.n_points - 2)));
  const double t = s - static_cast<double>(i);
  catmull_rom(c_, i, t, grid_.dx, c, dc);
  catmull_rom(w_, i, t, grid_.dx, w, dw);
}

double ProfileInterpolant::hamiltonian(double x, double p) const {
  double c, dc, w, dw;
  eval(x, c, dc, w, dw);
  return std::sqrt(c * c * p * p + kHbar * kHbar * w * w);
}

std::vector<PhasePoint> classical_trajectory(const JunctionProfile& profile, double x0, double p0,
                                             double dt, std::size_t n_steps,
                                             std::size_t sample_every) {
  const Grid& grid = profile.grid;
  if (!(x0 >= grid.x_min && x0 <= grid.x_max())) {
    throw DomainError("classical_trajectory: x0 outside the grid");
  }
  if (!(dt > 0.0) || !std::isfinite(p0)) throw DomainError("classical_trajectory: bad dt or p0");
  const ProfileInterpolant ip(profile);
  const std::size_t every = std::max<std::size_t>(1, sample_every);

  auto dH_dx = [&](double x, double p) {
    double c, dc, w, dw;
    ip.eval(x, c, dc, w, dw);
    const double h = std::sqrt(c * c * p * p + kHbar * kHbar * w * w);
    return (c * dc * p * p + kHbar * kHbar * w * dw) / h;
  };
  auto dH_dp = [&](double x, double p) {
    double c, dc, w, dw;
    ip.eval(x, c, dc, w, dw);
    const double h = std::sqrt(c * c * p * p + kHbar * kHbar * w * w);
    return c * c * p / h;
  };

  std::vector<PhasePoint> out;
  double x = x0;
  double p = p0;
  out.push_back({0.0, x, p, ip.hamiltonian(x, p)});
  // Fixed-point tolerances relative to the natural scales of the motion.
  double c_0, dc_0, w_0, dw_0;
  ip.eval(x0, c_0, dc_0, w_0, dw_0);
  const double p_scale = std::max(std::abs(p0), 1e-6 * kHbar * w_0 / c_0);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    double ph = p - 0.5 * dt * dH_dx(x, p);
    for (int it = 0; it < 50; ++it) {
      const double next = p - 0.5 * dt * dH_dx(x, ph);
      const bool done = std::abs(next - ph) <= 1e-15 * std::max(std::abs(next), p_scale);
      ph = next;
      if (done) break;
    }
    const double vx0 = dH_dp(x, ph);
    double xn = x + dt * vx0;
    for (int it = 0; it < 50; ++it) {
      if (!(xn >= grid.x_min && xn <= grid.x_max())) break;
      const double next = x + 0.5 * dt * (vx0 + dH_dp(xn, ph));
      const bool done = std::abs(next - xn) <= 1e-15 * std::max(std::abs(next), grid.dx);
      xn = next;
      if (done) break;
    }
    const double t = static_cast<double>(s) * dt;
    if (!(xn >= grid.x_min && xn <= grid.x_max())) {
      throw BoundaryExitError("classical trajectory left the grid", t);
    }
    x = xn;
    p = ph - 0.5 * dt * dH_dx(x, ph);
    if (s % every == 0 || s == n_steps) out.push_back({t, x, p, ip.hamiltonian(x, p)});
  }
  return out;
}

}  // namespace thermoosc::plasma
