#include "fenecpd/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <random>
#include <sstream>

#include "fenecpd/error.hpp"

namespace fenecpd {

SparseMatrix add_same_pattern(const SparseMatrix& a, const SparseMatrix& b, double scale_b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("add_same_pattern: dimension mismatch");
  if (a.nonZeros() != b.nonZeros()) return a + scale_b * b;
  SparseMatrix out = a;
  double* va = out.valuePtr();
  const double* vb = b.valuePtr();
  for (Eigen::Index k = 0; k < a.nonZeros(); ++k) va[k] += scale_b * vb[k];
  return out;
}

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < a.nonZeros(); ++k) m = std::max(m, std::abs(a.valuePtr()[k]));
  return m;
}

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("max_abs_difference: dimension mismatch");
  SparseMatrix d = a - b;
  return max_abs(d);
}

struct LinearSolver::Impl {
  SparseMatrix a;
  bool direct = true;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<double>> krylov;
};

LinearSolver::LinearSolver(LinearSolverOptions options)
    : impl_(std::make_unique<Impl>()), options_(options) {}
LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

void LinearSolver::compute(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("LinearSolver: matrix is not square");
  impl_->a = a;
  impl_->a.makeCompressed();
  impl_->direct = static_cast<std::size_t>(a.rows()) <= options_.direct_max_dofs;
  if (impl_->direct) {
    impl_->lu.compute(impl_->a);
    if (impl_->lu.info() != Eigen::Success)
      throw SolverError("LinearSolver: sparse LU failed (" + impl_->lu.lastErrorMessage() +
                        "); the system is singular");
  } else {
    impl_->krylov.setTolerance(options_.tolerance);
    impl_->krylov.setMaxIterations(options_.max_iterations);
    impl_->krylov.preconditioner().setDroptol(1e-6);
    impl_->krylov.preconditioner().setFillfactor(20);
    impl_->krylov.compute(impl_->a);
    if (impl_->krylov.info() != Eigen::Success)
      throw SolverError("LinearSolver: incomplete-LU preconditioner failed; the system is singular");
  }
}

Vector LinearSolver::solve(const Vector& b, const Vector* guess, LinearSolveReport& report) const {
  if (b.size() != impl_->a.rows()) throw ValidationError("LinearSolver: right-hand side size mismatch");
  Vector x;
  report.direct = impl_->direct;
  if (impl_->direct) {
    x = impl_->lu.solve(b);
    report.iterations = 0;
  } else {
    if (guess)
      x = impl_->krylov.solveWithGuess(b, *guess);
    else
      x = impl_->krylov.solve(b);
    report.iterations = static_cast<int>(impl_->krylov.iterations());
  }
  const double bn = b.norm();
  report.residual = bn > 0.0 ? (b - impl_->a * x).norm() / bn : (impl_->a * x).norm();
  if (!x.allFinite()) throw SolverError("LinearSolver: solution is not finite");
  if (!impl_->direct && report.residual > options_.tolerance * 10.0) {
    std::ostringstream os;
    os << "LinearSolver: BiCGSTAB stagnated after " << report.iterations
       << " iterations with relative residual " << report.residual;
    throw SolverError(os.str(), {report.residual});
  }
  return x;
}

EigenResult lanczos_largest(const std::function<Vector(const Vector&)>& op, const SparseMatrix& b,
                            const EigenOptions& options) {
  const Eigen::Index n = b.rows();
  EigenResult result;
  if (n == 0) throw ValidationError("lanczos_largest: empty operator");
  const int m_max = static_cast<int>(std::min<Eigen::Index>(options.max_iterations, n));
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uni(rng);

  auto b_norm = [&](const Vector& x) { return std::sqrt(std::max(0.0, x.dot(b * x))); };
  std::vector<Vector> basis;    // B-orthonormal Lanczos vectors
  std::vector<Vector> b_basis;  // B times each of them
  std::vector<double> alpha, beta;
  v /= b_norm(v);
  double prev = 0.0;
  for (int j = 0; j < m_max; ++j) {
    basis.push_back(v);
    b_basis.push_back(b * v);
    Vector w = op(v);
    const double a = w.dot(b_basis.back());
    alpha.push_back(a);
    // full reorthogonalization in the B-inner product, applied twice
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < basis.size(); ++k) w -= w.dot(b_basis[k]) * basis[k];
    const double bn = b_norm(w);

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      t(k, k) = alpha[k];
      if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double theta = es.eigenvalues()[m - 1];
    const double resid = bn * std::abs(es.eigenvectors()(m - 1, m - 1));
    result.value = theta;
    result.iterations = m;
    const double scale = std::max(std::abs(theta), 1e-300);
    if (resid <= options.tolerance * scale || bn <= 1e-14 * scale ||
        (j > 0 && std::abs(theta - prev) <= 1e-15 * scale && resid <= 1e-6 * scale)) {
      result.converged = true;
      return result;
    }
    prev = theta;
    beta.push_back(bn);
    v = w / bn;
  }
  result.converged = m_max == n;
  return result;
}

EigenResult largest_generalized_eigenvalue(const SparseMatrix& a, const SparseMatrix& b,
                                           const EigenOptions& options) {
  Eigen::SimplicialLDLT<SparseMatrix> fact(b);
  if (fact.info() != Eigen::Success)
    throw SolverError("largest_generalized_eigenvalue: right-hand matrix is not positive definite");
  auto op = [&](const Vector& x) -> Vector { return fact.solve(a * x); };
  EigenResult r = lanczos_largest(op, b, options);
  if (!r.converged) {
    std::ostringstream os;
    os << "largest_generalized_eigenvalue: Lanczos did not converge in " << r.iterations
       << " iterations (last estimate " << r.value << ")";
    throw SolverError(os.str());
  }
  return r;
}

EigenResult smallest_generalized_eigenvalue(const SparseMatrix& a, const SparseMatrix& b,
                                            const EigenOptions& options) {
  Eigen::SimplicialLLT<SparseMatrix> fact(a);
  if (fact.info() != Eigen::Success)
    throw SolverError("smallest_generalized_eigenvalue: left-hand matrix is not positive definite");
  auto op = [&](const Vector& x) -> Vector { return fact.solve(b * x); };
  EigenResult r = lanczos_largest(op, a, options);
  if (!r.converged || !(r.value > 0.0)) {
    std::ostringstream os;
    os << "smallest_generalized_eigenvalue: Lanczos did not converge in " << r.iterations
       << " iterations (last estimate " << r.value << ")";
    throw SolverError(os.str());
  }
  r.value = 1.0 / r.value;
  return r;
}

double min_eigenvalue_2x2(double a, double b, double c) {
  const double mean = 0.5 * (a + c);
  const double half = 0.5 * (a - c);
  return mean - std::hypot(half, b);
}

}  // namespace fenecpd
