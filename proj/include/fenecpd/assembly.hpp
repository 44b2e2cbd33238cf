#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fenecpd/fields.hpp"
#include "fenecpd/linalg.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/params.hpp"
#include "fenecpd/state.hpp"

namespace fenecpd {

/// One sparse matrix per term group of the bilinear form a_eps(t, r; trial, test).
/// Row index = test function, column index = trial function. Every matrix
/// shares the sparsity pattern of the mesh.
///
/// When dx != dq, products between x-space and q-space vectors use the
/// leading min(dx, dq) components (the connector axis q_1 is aligned with x_1).
struct TermMatrices {
  SparseMatrix transport;  ///< (v . grad_x f) psi
  SparseMatrix diff_xx;    ///< theta grad_x f . grad_x psi / De
  SparseMatrix cross_qx;   ///< (q . grad theta) grad_q f . grad_x psi / De
  SparseMatrix cross_xq;   ///< (q . grad theta) grad_x f . grad_q psi / De
  SparseMatrix diff_qq;    ///< theta grad_q f . grad_q psi / (q0^2 De)
  SparseMatrix entropy_x;  ///< g(r) f grad theta . grad_x psi / De
  SparseMatrix entropy_q;  ///< g(r) f (hess theta q) . grad_q psi / De
  SparseMatrix drift_q;    ///< -(kappa q) f . grad_q psi
  SparseMatrix fene;       ///< (2/De) f q / (eps + 1 - |q|^2) . grad_q psi

  /// Symmetric diffusion part: diff_xx + cross_qx + cross_xq + diff_qq.
  SparseMatrix b_form() const;
};

struct EntropyMatrices {
  SparseMatrix entropy_x;
  SparseMatrix entropy_q;
};

/// Mass matrix and the assembled terms at one time instant.
struct OperatorSet {
  SparseMatrix mass;
  TermMatrices terms;
};

/// Owns the sparsity pattern of a mesh and the cell-to-pattern scatter map.
/// The mesh must outlive the assembler.
class Assembler {
 public:
  explicit Assembler(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  /// Pattern with all values zero.
  const SparseMatrix& pattern() const { return pattern_; }

  SparseMatrix mass() const;
  /// int grad_x phi_j . grad_x phi_i
  SparseMatrix stiffness_x() const;
  /// int grad_q phi_j . grad_q phi_i
  SparseMatrix stiffness_q() const;

  /// Every term except the entropy pair (returned as zero matrices).
  TermMatrices assemble_static(const Params& params, const TemperatureField& theta,
                               const FlowField& flow, double t) const;

  /// Entropy terms with g_eps applied to r interpolated at quadrature points.
  EntropyMatrices assemble_entropy(const Params& params, const TemperatureField& theta,
                                   double t, const DensityState& r) const;

  /// Load vector int F phi_i; F receives dim() coordinates (x first).
  Vector load(const std::function<double(const double*)>& f) const;

 private:
  template <class Kernel>
  void assemble_into(std::vector<SparseMatrix*> targets, Kernel&& kernel) const;

  const Mesh* mesh_;
  SparseMatrix pattern_;
  std::vector<int> scatter_;  ///< per cell, num_local^2 value positions (-1: boundary)
};

TermMatrices assemble_static(const Mesh& mesh, const Params& params,
                             const TemperatureField& theta, const FlowField& flow, double t);
EntropyMatrices assemble_entropy(const Mesh& mesh, const Params& params,
                                 const TemperatureField& theta, double t, const DensityState& r);

/// A_h = sum of the static terms with the entropy pair substituted.
/// Throws ValidationError on dimension mismatch.
SparseMatrix compose_a_eps(const TermMatrices& static_terms, const EntropyMatrices& entropy);

}  // namespace fenecpd
