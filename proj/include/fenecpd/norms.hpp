#pragma once

#include <vector>

#include "fenecpd/linalg.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/state.hpp"

namespace fenecpd {

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
};

/// One row of the invariant series.
struct InvariantRecord {
  double t = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double min_f = 0.0;
  double neg_mass = 0.0;  ///< integral of the negative part
  double mass = 0.0;      ///< integral of f
  double energy_slack = 0.0;
};

using InvariantSeries = std::vector<InvariantRecord>;

/// Norms of finite-element functions on a fixed mesh. L2 and H1 use the
/// exact mass and stiffness forms; L1 and the negative-part mass use the
/// mesh quadrature.
class NormEvaluator {
 public:
  explicit NormEvaluator(const Mesh& mesh);

  Norms norms(const Vector& f) const;
  InvariantRecord record(const DensityState& f) const;
  double l2_norm(const Vector& f) const;
  /// Sum over quadrature points of w |f|, and of w max(-f, 0).
  double l1_norm(const Vector& f) const;
  double negative_mass(const Vector& f) const;
  double mass(const Vector& f) const;

  const SparseMatrix& mass_matrix() const { return mass_; }
  const SparseMatrix& stiffness() const { return stiffness_; }

 private:
  const Mesh* mesh_;
  SparseMatrix mass_;
  SparseMatrix stiffness_;
  Vector integrals_;
};

}  // namespace fenecpd
