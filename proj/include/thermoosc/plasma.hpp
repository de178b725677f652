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

#ifndef THERMOOSC_PLASMA_HPP
#define THERMOOSC_PLASMA_HPP

#include <cstddef>
#include <functional>
#include <vector>

// Linearized hydrodynamics of a degenerate electron gas in one dimension.
// SI units throughout.
namespace thermoosc::plasma {

// CODATA 2018.
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kEpsilon0 = 8.8541878128e-12;
inline constexpr double kElectronMass = 9.1093837015e-31;

struct PlasmaMaterial {
  double n;       ///< electron density, m^-3
  double m_star;  ///< effective mass, kg
};

struct MaterialFunctions {
  double omega_p;  ///< sqrt(n e^2 / (m eps0))
  double alpha;    ///< pressure coefficient in p = alpha n^(5/3)
  double v_F;      ///< hbar (3 pi^2 n)^(1/3) / m
  double c_F;      ///< sqrt(5/6) v_F
  double M_eff;    ///< hbar omega_p / c_F^2
};

MaterialFunctions material_functions(const PlasmaMaterial& mat);

struct EffectiveParticle {
  double c_F;
  double M_eff;
};

/// Effective particle from a plasma frequency and Fermi velocity.
EffectiveParticle effective_particle(double omega_p, double v_F);

/// sqrt(2 delta_E / (M_eff L^2)).
double well_frequency(double delta_E, double M_eff, double L);

struct Grid {
  double x_min;
  double dx;
  std::size_t n_points;

  double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
  double x_max() const { return x(n_points - 1); }
};

/// Background density on a uniform grid and the derived local quantities.
struct JunctionProfile {
  Grid grid;
  double m_star;
  std::vector<double> n_bar;
  std::vector<double> omega_p;
  std::vector<double> c_F;
  std::vector<double> U;  ///< hbar omega_p

  /// Throws DomainError on non-positive density or mass.
  static JunctionProfile from_density(const Grid& grid, std::vector<double> n_bar, double m_star);
  /// Inverts omega_p(x) to the density it implies for m_star.
  static JunctionProfile from_omega_p(const Grid& grid, const std::function<double(double)>& omega_p,
                                      double m_star);

  static JunctionProfile flat(const Grid& grid, double n, double m_star);
  /// hbar omega_p(x) = hbar omega0 + delta_E ((x - x0)/L)^2.
  static JunctionProfile harmonic(const Grid& grid, double m_star, double omega0, double delta_E,
                                  double L, double x0 = 0.0);
  /// Plateaus omega_a (left) and omega_b (right) joined by a tanh step of
  /// width `step_width` at x0, with a dip -delta_E exp(-((x - x0)/L)^2) in U.
  static JunctionProfile junction(const Grid& grid, double m_star, double omega_a, double omega_b,
                                  double x0, double step_width, double delta_E, double L);
};

struct WavePacketState {
  std::vector<double> delta_n;
  std::vector<double> delta_n_dot;
};

/// Gaussian packet exp(-(x - xc)^2 / (2 w^2)) cos(k (x - xc)) at rest.
WavePacketState gaussian_packet(const Grid& grid, double amplitude, double center, double width,
                                double k = 0.0);

struct KgTrajectory {
  std::vector<double> t;
  std::vector<WavePacketState> states;
  /// Discrete energy at each stored time (see kg_energy).
  std::vector<double> energy;
};

/// Leapfrog for d_tt n = c_F^2 d_xx n - omega_p^2 n with n = 0 at both ends.
/// Stores every `sample_every`-th step and the initial state. Throws
/// ConfigError when max(c_F) dt/dx > 0.9 or the step is unstable for omega_p.
///
/// The reported energy is the staggered functional the scheme conserves:
///   1/2 sum dx c_ref^2 [ v^2 / c^2 + D+u^n D+u^(n+1) + (omega_p/c)^2 u^n u^(n+1) ],
/// v = (u^(n+1) - u^n)/dt and c_ref = max c_F; it equals the continuum
/// 1/2 int [n_t^2 + c^2 n_x^2 + omega_p^2 n^2] dx on flat profiles.
KgTrajectory kg_evolve(const JunctionProfile& profile, const WavePacketState& init, double dt,
                       std::size_t n_steps, std::size_t sample_every = 1);

/// Weighted centroid with weight delta_n^2 + (delta_n_dot / omega_p)^2, which
/// averages out the carrier at 2 omega_p.
std::vector<double> centroid_series(const JunctionProfile& profile, const KgTrajectory& traj);

/// pi / (mean interval between zero crossings of s - mean(s)). Throws
/// InsufficientSpanError below 3 crossings.
double frequency_from_signal(const std::vector<double>& t, const std::vector<double>& s);

/// Angular frequency of the packet centroid.
double extract_centroid_frequency(const JunctionProfile& profile, const KgTrajectory& traj);

struct PhasePoint {
  double t;
  double x;
  double p;
  double H;
};

/// Interpolated local quantities: C1 cubic (Catmull-Rom) in x.
struct ProfileInterpolant {
  explicit ProfileInterpolant(const JunctionProfile& profile);
  /// value and derivative of c_F and omega_p at x
  void eval(double x, double& c, double& dc, double& w, double& dw) const;
  double hamiltonian(double x, double p) const;

 private:
  Grid grid_;
  std::vector<double> c_;
  std::vector<double> w_;
};

/// Generalized (implicit) Stormer-Verlet for H = sqrt(c_F^2 p^2 + hbar^2 omega_p^2).
/// Throws BoundaryExitError with the exit time when x leaves the grid.
std::vector<PhasePoint> classical_trajectory(const JunctionProfile& profile, double x0, double p0,
                                             double dt, std::size_t n_steps,
                                             std::size_t sample_every = 1);

}  // namespace thermoosc::plasma

#endif  // THERMOOSC_PLASMA_HPP
