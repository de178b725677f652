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

#ifndef THERMOOSC_LINDBLAD_HPP
#define THERMOOSC_LINDBLAD_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace thermoosc::lindblad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Dense square complex matrix on a finite Hilbert space.
///
/// Construction rejects non-square or non-finite input. Arithmetic is
/// dimension checked and throws ShapeError on mismatch.
class Operator {
 public:
  Operator() : m_(Matrix::Zero(1, 1)) {}
  explicit Operator(Matrix m);

  static Operator zero(Index dim);
  static Operator identity(Index dim);
  static Operator diagonal(const Eigen::VectorXd& diag);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  Operator adjoint() const { return Operator(m_.adjoint(), Unchecked{}); }
  Complex trace() const { return m_.trace(); }
  bool is_hermitian(double tol = 1e-12) const;
  /// Largest absolute entry.
  double max_norm() const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  struct Unchecked {};
  Operator(Matrix m, Unchecked) : m_(std::move(m)) {}
  friend class DensityMatrix;
  friend Operator commutator(const Operator&, const Operator&);
  friend Operator anticommutator(const Operator&, const Operator&);

  Matrix m_;
};

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Trace-one, Hermitian, positive semidefinite operator.
class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kPositivityTol = 1e-8;

  /// Validates trace, Hermiticity and positivity; throws DomainError.
  explicit DensityMatrix(Operator op);

  /// Normalizes the trace and symmetrizes before validating.
  static DensityMatrix normalized(const Operator& op);

  const Operator& op() const { return op_; }
  Index dim() const { return op_.dim(); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  struct Trusted {};
  DensityMatrix(Operator op, Trusted) : op_(std::move(op)) {}
  friend struct TrustedAccess;
  Operator op_;
};

/// Jump operator with a nonnegative rate.
struct LindbladTerm {
  LindbladTerm(Operator jump_op, double rate_value);
  Operator jump;
  double rate;
};

/// Hamiltonian plus dissipators of a GKSL generator.
struct GeneratorSpec {
  Operator hamiltonian;
  std::vector<LindbladTerm> terms;

  Index dim() const { return hamiltonian.dim(); }
  /// Throws ShapeError / DomainError when the invariants do not hold.
  void validate() const;
};

/// Fermionic modes on a 2^n dimensional Fock space.
///
/// Mode i acts on tensor slot i with a parity string Z on slots < i. Slot 0
/// is the most significant bit of the basis index, so a basis state |s>
/// has mode i occupied iff bit (n_modes - 1 - i) of s is set.
struct FermionRegister {
  std::size_t n_modes = 0;
  std::vector<std::string> labels;
  std::vector<Operator> lowering;

  Index dim() const { return Index{1} << n_modes; }
  Operator raising(std::size_t i) const { return lowering.at(i).adjoint(); }
  Operator number(std::size_t i) const;
  bool occupied(Index basis_state, std::size_t mode) const {
    return ((basis_state >> (n_modes - 1 - mode)) & 1) != 0;
  }
};

constexpr std::size_t kMaxModes = 12;

/// Builds lowering operators for 1..12 modes; throws CapacityError otherwise.
FermionRegister build_fermion_register(std::size_t n_modes,
                                       std::vector<std::string> labels = {});

/// -i[H, rho] + sum rate (A rho A^+ - 1/2 {A^+A, rho}).
Operator apply_generator(const GeneratorSpec& gen, const Operator& rho);
inline Operator apply_generator(const GeneratorSpec& gen, const DensityMatrix& rho) {
  return apply_generator(gen, rho.op());
}

/// Heisenberg-picture generator: i[H, X] + sum rate (A^+ X A - 1/2 {A^+A, X}).
Operator adjoint_apply(const GeneratorSpec& gen, const Operator& x);

/// Row-major vectorization: vec(X)[i*d + j] = X(i, j).
Eigen::VectorXcd vec(const Operator& x);
Operator unvec(const Eigen::VectorXcd& v, Index dim);

/// dim^2 x dim^2 matrix of the Schroedinger-picture generator acting on vec(rho).
Matrix superoperator(const GeneratorSpec& gen);
/// Matrix of the Heisenberg-picture generator; equals superoperator(gen)^H.
Matrix adjoint_superoperator(const GeneratorSpec& gen);

/// Eigenvalues of the vectorized generator.
Eigen::VectorXcd generator_spectrum(const GeneratorSpec& gen);
/// Smallest nonzero |Re lambda| of the generator spectrum (zero tolerance 1e-9).
double spectral_gap(const GeneratorSpec& gen);

/// Unique stationary state from the kernel of the vectorized generator.
/// Throws DegeneracyError when the kernel is not one-dimensional.
DensityMatrix steady_state(const GeneratorSpec& gen);

using TimeDependentGenerator = std::function<GeneratorSpec(double t)>;

struct TrajectoryPoint {
  double t;
  DensityMatrix rho;
};

struct EvolveOptions {
  /// Store every n-th step (the initial and final states are always stored).
  std::size_t sample_every = 1;
  /// Check the minimum eigenvalue every n-th step.
  std::size_t positivity_every = 1;
  double trace_tol = 1e-8;
  double positivity_tol = 1e-6;
};

/// Observer called after each step with (t, rho).
using StepObserver = std::function<void(double, const Operator&)>;

/// Fixed-step classical RK4 from t0 to t1. The step is shortened so that the
/// interval holds an integer number of equal steps no longer than dt. The
/// observer also sees the initial state. Throws InstabilityError on trace
/// drift beyond trace_tol or eigenvalues below -positivity_tol.
DensityMatrix evolve_observed(const TimeDependentGenerator& gen, const DensityMatrix& rho0,
                              double t0, double t1, double dt, const StepObserver& observer,
                              const EvolveOptions& options = {});

std::vector<TrajectoryPoint> evolve(const TimeDependentGenerator& gen, const DensityMatrix& rho0,
                                    double t0, double t1, double dt,
                                    const EvolveOptions& options = {});

/// Single-particle level entering a grand-canonical product state.
struct ModeLevel {
  double energy;
  std::size_t mode;
  double mu;
};

/// Product grand-canonical state exp(-(H - sum mu_k n_k)/T)/Z for a
/// quadratic diagonal H. Built per mode from Fermi-Dirac occupations, so no
/// large exponentials are formed. Modes not listed are left empty.
DensityMatrix grand_canonical_state(std::span<const ModeLevel> levels, double temperature,
                                    const FermionRegister& reg);

/// Same, with one chemical potential for all listed modes.
DensityMatrix grand_canonical_state(std::span<const std::pair<double, std::size_t>> levels,
                                    double mu, double temperature, const FermionRegister& reg);

/// 1/2 ||a - b||_1.
double trace_distance(const Operator& a, const Operator& b);

/// Debug layout: {"dim": d, "entries": [[re, im], ...]} in row-major order.
nlohmann::json to_json(const Operator& op);
Operator operator_from_json(const nlohmann::json& j);

}  // namespace thermoosc::lindblad

#endif  // THERMOOSC_LINDBLAD_HPP
