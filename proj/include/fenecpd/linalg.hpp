#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <memory>

namespace fenecpd {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Entry-wise sum of matrices that share one sparsity pattern.
SparseMatrix add_same_pattern(const SparseMatrix& a, const SparseMatrix& b, double scale_b = 1.0);
/// Max-norm of a - b (patterns may differ).
double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b);
double max_abs(const SparseMatrix& a);

struct LinearSolveReport {
  int iterations = 0;       ///< 0 for the direct path
  double residual = 0.0;    ///< relative residual |b - Ax| / |b|
  bool direct = false;
};

struct LinearSolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 2000;
  /// Systems up to this size use a sparse LU factorization, larger ones
  /// BiCGSTAB with incomplete-LU preconditioning.
  std::size_t direct_max_dofs = 3000;
};

/// Solver for the nonsymmetric implicit-Euler systems.
class LinearSolver {
 public:
  explicit LinearSolver(LinearSolverOptions options = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  /// Factorize (or precondition) A. Throws SolverError when singular.
  void compute(const SparseMatrix& a);
  /// Solve with optional initial guess (iterative path only).
  Vector solve(const Vector& b, const Vector* guess, LinearSolveReport& report) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  LinearSolverOptions options_;
};

struct EigenOptions {
  int max_iterations = 400;
  double tolerance = 1e-10;
};

struct EigenResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of the operator op, self-adjoint in the inner product
/// induced by the SPD matrix b. Lanczos with full reorthogonalization.
EigenResult lanczos_largest(const std::function<Vector(const Vector&)>& op,
                            const SparseMatrix& b, const EigenOptions& options = {});

/// Largest lambda with a x = lambda b x; a symmetric, b SPD.
EigenResult largest_generalized_eigenvalue(const SparseMatrix& a, const SparseMatrix& b,
                                           const EigenOptions& options = {});

/// Smallest lambda with a x = lambda b x; a and b SPD. Throws SolverError
/// when a is not positive definite.
EigenResult smallest_generalized_eigenvalue(const SparseMatrix& a, const SparseMatrix& b,
                                            const EigenOptions& options = {});

/// Smallest eigenvalue of a symmetric 2x2 matrix [[a, b], [b, c]].
double min_eigenvalue_2x2(double a, double b, double c);

}  // namespace fenecpd
