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

#include "thermoosc/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoosc/error.hpp"
#include "thermoosc/fermi_dirac.hpp"

namespace thermoosc::lindblad {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_dim(const Operator& a, const Operator& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(where) + ": dimension mismatch " + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()));
  }
}

double hermitian_min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// A (x) B^T in the row-major vec convention: vec(A X B) = kron(A, B^T) vec(X).
Matrix kron(const Matrix& a, const Matrix& b) {
  const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Index i = 0; i < ra; ++i)
    for (Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

}  // namespace

struct TrustedAccess {
  static DensityMatrix make(Operator op) {
    return DensityMatrix(std::move(op), DensityMatrix::Trusted{});
  }
};

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw ShapeError("Operator must be square with dim >= 1, got " + std::to_string(m_.rows()) +
                     "x" + std::to_string(m_.cols()));
  }
  if (!m_.allFinite()) throw DomainError("Operator has non-finite entries");
}

Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }

Operator Operator::diagonal(const Eigen::VectorXd& diag) {
  return Operator(diag.cast<Complex>().asDiagonal().toDenseMatrix());
}

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double Operator::max_norm() const { return m_.cwiseAbs().maxCoeff(); }

Operator& Operator::operator+=(const Operator& o) {
  require_same_dim(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same_dim(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  return Operator(a.matrix() * b.matrix());
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return Operator(a.m_ * b.m_ - b.m_ * a.m_, Operator::Unchecked{});
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "anticommutator");
  return Operator(a.m_ * b.m_ + b.m_ * a.m_, Operator::Unchecked{});
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  const Complex tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
  }
  if (!op_.is_hermitian(kHermitianTol)) throw DomainError("density matrix is not Hermitian");
  const double lmin = hermitian_min_eigenvalue(op_.matrix());
  if (lmin < -kPositivityTol) {
    throw DomainError("density matrix has negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::normalized(const Operator& op) {
  Matrix m = 0.5 * (op.matrix() + op.matrix().adjoint());
  const double tr = m.trace().real();
  if (!(std::abs(tr) > std::numeric_limits<double>::min())) {
    throw DomainError("cannot normalize an operator with zero trace");
  }
  return DensityMatrix(Operator(m / tr));
}

double DensityMatrix::purity() const { return (op_.matrix() * op_.matrix()).trace().real(); }

double DensityMatrix::min_eigenvalue() const { return hermitian_min_eigenvalue(op_.matrix()); }

// ---------------------------------------------------------------------------
// Generators

LindbladTerm::LindbladTerm(Operator jump_op, double rate_value)
    : jump(std::move(jump_op)), rate(rate_value) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw DomainError("Lindblad rate must be finite and nonnegative, got " + std::to_string(rate));
  }
}

void GeneratorSpec::validate() const {
  if (!hamiltonian.is_hermitian(1e-12)) throw DomainError("generator Hamiltonian is not Hermitian");
  for (const auto& t : terms) {
    if (t.jump.dim() != hamiltonian.dim()) {
      throw ShapeError("jump operator dim " + std::to_string(t.jump.dim()) +
                       " differs from Hamiltonian dim " + std::to_string(hamiltonian.dim()));
    }
  }
}

Operator FermionRegister::number(std::size_t i) const {
  const Operator& a = lowering.at(i);
  return a.adjoint() * a;
}

FermionRegister build_fermion_register(std::size_t n_modes, std::vector<std::string> labels) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    throw CapacityError("fermion register supports 1.." + std::to_string(kMaxModes) +
                        " modes, requested " + std::to_string(n_modes));
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < n_modes; ++i) labels.push_back("m" + std::to_string(i));
  }
  if (labels.size() != n_modes) throw ConfigError("label count does not match n_modes");

  FermionRegister reg;
  reg.n_modes = n_modes;
  reg.labels = std::move(labels);
  const Index dim = Index{1} << n_modes;
  for (std::size_t i = 0; i < n_modes; ++i) {
    const Index bit = Index{1} << (n_modes - 1 - i);
    const Index string_mask = ~((bit << 1) - 1) & (dim - 1);  // slots < i
    Matrix a = Matrix::Zero(dim, dim);
    for (Index s = 0; s < dim; ++s) {
      if ((s & bit) == 0) continue;
      const int parity = __builtin_popcountll(static_cast<unsigned long long>(s & string_mask));
      a(s ^ bit, s) = (parity % 2 == 0) ? 1.0 : -1.0;
    }
    reg.lowering.emplace_back(std::move(a));
  }
  return reg;
}

Operator apply_generator(const GeneratorSpec& gen, const Operator& rho) {
  if (rho.dim() != gen.dim()) {
    throw ShapeError("apply_generator: state dim " + std::to_string(rho.dim()) +
                     " vs generator dim " + std::to_string(gen.dim()));
  }
  const Matrix& h = gen.hamiltonian.matrix();
  const Matrix& r = rho.matrix();
  Matrix out = -kI * (h * r - r * h);
  for (const auto& t : gen.terms) {
    if (t.rate == 0.0) continue;
    if (t.jump.dim() != gen.dim()) throw ShapeError("apply_generator: jump dim mismatch");
    const Matrix& a = t.jump.matrix();
    const Matrix ada = a.adjoint() * a;
    out += t.rate * (a * r * a.adjoint() - 0.5 * (ada * r + r * ada));
  }
  return Operator(std::move(out));
}

Operator adjoint_apply(const GeneratorSpec& gen, const Operator& x) {
  if (x.dim() != gen.dim()) {
    throw ShapeError("adjoint_apply: operator dim " + std::to_string(x.dim()) +
                     " vs generator dim " + std::to_string(gen.dim()));
  }
  const Matrix& h = gen.hamiltonian.matrix();
  const Matrix& m = x.matrix();
  Matrix out = kI * (h * m - m * h);
  for (const auto& t : gen.terms) {
    if (t.rate == 0.0) continue;
    if (t.jump.dim() != gen.dim()) throw ShapeError("adjoint_apply: jump dim mismatch");
    const Matrix& a = t.jump.matrix();
    const Matrix ada = a.adjoint() * a;
    out += t.rate * (a.adjoint() * m * a - 0.5 * (ada * m + m * ada));
  }
  return Operator(std::move(out));
}

Eigen::VectorXcd vec(const Operator& x) {
  const Index d = x.dim();
  Eigen::VectorXcd v(d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  return v;
}

Operator unvec(const Eigen::VectorXcd& v, Index dim) {
  if (v.size() != dim * dim) throw ShapeError("unvec: length is not dim^2");
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) m(i, j) = v(i * dim + j);
  return Operator(std::move(m));
}

Matrix superoperator(const GeneratorSpec& gen) {
  gen.validate();
  const Index d = gen.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& h = gen.hamiltonian.matrix();
  Matrix l = -kI * (kron(h, id) - kron(id, h.transpose()));
  for (const auto& t : gen.terms) {
    if (t.rate == 0.0) continue;
    const Matrix& a = t.jump.matrix();
    const Matrix ada = a.adjoint() * a;
    l += t.rate * (kron(a, a.conjugate()) - 0.5 * kron(ada, id) - 0.5 * kron(id, ada.transpose()));
  }
  return l;
}

Matrix adjoint_superoperator(const GeneratorSpec& gen) { return superoperator(gen).adjoint(); }

Eigen::VectorXcd generator_spectrum(const GeneratorSpec& gen) {
  Eigen::ComplexEigenSolver<Matrix> es(superoperator(gen), false);
  return es.eigenvalues();
}

double spectral_gap(const GeneratorSpec& gen) {
  const Eigen::VectorXcd ev = generator_spectrum(gen);
  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < ev.size(); ++i) {
    const double re = std::abs(ev(i).real());
    if (re > 1e-9 && re < gap) gap = re;
  }
  if (!std::isfinite(gap)) throw DegeneracyError("generator has no relaxing modes");
  return gap;
}

DensityMatrix steady_state(const GeneratorSpec& gen) {
  const Index d = gen.dim();
  const Matrix l = superoperator(gen);
  Eigen::BDCSVD<Matrix> svd(l, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending
  const double tol = 1e-9 * std::max(1.0, sv(0));
  Index kernel = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol) ++kernel;
  if (kernel != 1) {
    throw DegeneracyError("generator kernel has dimension " + std::to_string(kernel) +
                          " (expected 1); break the symmetry or use evolve");
  }
  const Eigen::VectorXcd v = svd.matrixV().col(sv.size() - 1);
  Operator rho_raw = unvec(v, d);
  DensityMatrix rho = DensityMatrix::normalized(rho_raw);
  const double residual = apply_generator(gen, rho.op()).max_norm();
  if (residual > 1e-10) {
    throw DegeneracyError("steady state residual " + std::to_string(residual) +
                          " exceeds 1e-10 (ill-conditioned kernel)");
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Time evolution

DensityMatrix evolve_observed(const TimeDependentGenerator& gen, const DensityMatrix& rho0,
                              double t0, double t1, double dt, const StepObserver& observer,
                              const EvolveOptions& options) {
  if (!(dt > 0.0)) throw DomainError("evolve: dt must be positive");
  if (!(t1 >= t0)) throw DomainError("evolve: t1 must not precede t0");
  const double span = t1 - t0;
  const auto n_steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
  const double h = n_steps > 0 ? span / static_cast<double>(n_steps) : 0.0;

  Operator rho = rho0.op();
  if (observer) observer(t0, rho);
  const std::size_t pos_every = std::max<std::size_t>(1, options.positivity_every);

  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = t0 + static_cast<double>(n) * h;
    const GeneratorSpec g0 = gen(t);
    const GeneratorSpec gm = gen(t + 0.5 * h);
    const GeneratorSpec g1 = gen(t + h);
    const Operator k1 = apply_generator(g0, rho);
    const Operator k2 = apply_generator(gm, rho + k1 * (0.5 * h));
    const Operator k3 = apply_generator(gm, rho + k2 * (0.5 * h));
    const Operator k4 = apply_generator(g1, rho + k3 * h);
    rho += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);

    const double t_next = t0 + static_cast<double>(n + 1) * h;
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > options.trace_tol) {
      throw InstabilityError("trace drift " + std::to_string(std::abs(tr - 1.0)), t_next);
    }
    rho *= 1.0 / tr.real();
    if ((n + 1) % pos_every == 0 || n + 1 == n_steps) {
      const double lmin = hermitian_min_eigenvalue(rho.matrix());
      if (lmin < -options.positivity_tol) {
        throw InstabilityError("negative eigenvalue " + std::to_string(lmin), t_next);
      }
    }
    if (observer) observer(t_next, rho);
  }
  return TrustedAccess::make(std::move(rho));
}

std::vector<TrajectoryPoint> evolve(const TimeDependentGenerator& gen, const DensityMatrix& rho0,
                                    double t0, double t1, double dt,
                                    const EvolveOptions& options) {
  std::vector<TrajectoryPoint> out;
  const std::size_t every = std::max<std::size_t>(1, options.sample_every);
  std::size_t step = 0;
  double last_t = t0;
  const DensityMatrix final_state = evolve_observed(
      gen, rho0, t0, t1, dt,
      [&](double t, const Operator& rho) {
        if (step % every == 0) out.push_back({t, TrustedAccess::make(rho)});
        last_t = t;
        ++step;
      },
      options);
  if (out.back().t != last_t) out.push_back({last_t, final_state});
  return out;
}

// ---------------------------------------------------------------------------
// Thermal states and utilities

DensityMatrix grand_canonical_state(std::span<const ModeLevel> levels, double temperature,
                                    const FermionRegister& reg) {
  if (!(temperature > 0.0)) throw DomainError("grand_canonical_state: T must be positive");
  std::vector<double> occupation(reg.n_modes, 0.0);
  for (const auto& lvl : levels) {
    if (lvl.mode >= reg.n_modes) throw ShapeError("grand_canonical_state: mode index out of range");
    occupation[lvl.mode] = thermo::fermi_dirac(lvl.energy, lvl.mu, temperature);
  }
  const Index dim = reg.dim();
  Eigen::VectorXd diag(dim);
  for (Index s = 0; s < dim; ++s) {
    double p = 1.0;
    for (std::size_t k = 0; k < reg.n_modes; ++k)
      p *= reg.occupied(s, k) ? occupation[k] : 1.0 - occupation[k];
    diag(s) = p;
  }
  return TrustedAccess::make(Operator::diagonal(diag));
}

DensityMatrix grand_canonical_state(std::span<const std::pair<double, std::size_t>> levels,
                                    double mu, double temperature, const FermionRegister& reg) {
  std::vector<ModeLevel> full;
  full.reserve(levels.size());
  for (const auto& [e, k] : levels) full.push_back({e, k, mu});
  return grand_canonical_state(full, temperature, reg);
}

double trace_distance(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "trace_distance");
  const Matrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

nlohmann::json to_json(const Operator& op) {
  nlohmann::json entries = nlohmann::json::array();
  for (Index i = 0; i < op.dim(); ++i)
    for (Index j = 0; j < op.dim(); ++j) entries.push_back({op(i, j).real(), op(i, j).imag()});
  return {{"dim", op.dim()}, {"entries", std::move(entries)}};
}

Operator operator_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<Index>();
  const auto& entries = j.at("entries");
  if (dim < 1 || static_cast<Index>(entries.size()) != dim * dim) {
    throw ConfigError("operator JSON: entries length must be dim^2");
  }
  Matrix m(dim, dim);
  for (Index k = 0; k < dim * dim; ++k) {
    const auto& e = entries.at(static_cast<std::size_t>(k));
    m(k / dim, k % dim) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return Operator(std::move(m));
}

}  // namespace thermoosc::lindblad
