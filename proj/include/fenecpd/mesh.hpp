#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fenecpd {

inline constexpr int kMaxDim = 4;
inline constexpr int kMaxLocal = 16;

/// Tensor Gauss-Legendre rule on the reference cell [0,1]^dim together with
/// the multilinear shape functions evaluated at its points.
///
/// Local vertex a has coordinate bit k equal to (a >> k) & 1.
class ReferenceElement {
 public:
  ReferenceElement(int dim, int order);

  int dim() const { return dim_; }
  int num_local() const { return 1 << dim_; }
  int num_points() const { return static_cast<int>(weights_.size()); }

  double weight(int p) const { return weights_[p]; }
  double coord(int p, int k) const { return points_[p * dim_ + k]; }
  double value(int p, int a) const { return values_[p * num_local() + a]; }
  /// d phi_a / d xi_k on the reference cell.
  double ref_grad(int p, int a, int k) const {
    return grads_[(p * num_local() + a) * dim_ + k];
  }

 private:
  int dim_;
  std::vector<double> weights_;
  std::vector<double> points_;
  std::vector<double> values_;
  std::vector<double> grads_;
};

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct MeshOptions {
  /// Treat the x-directions as periodic (x-homogeneous studies). The
  /// connector directions always carry the zero Dirichlet condition.
  bool x_periodic = false;
  /// Uniform scale of every axis (unit box and unit ball when 1).
  double scale = 1.0;
};

struct Cell {
  std::array<double, kMaxDim> lower{};
  std::array<int, kMaxLocal> dofs{};  ///< -1 for vertices on the Dirichlet boundary
  int q_cell = 0;                     ///< index into Mesh::q_cells()
};

/// Structured discretization of Omega x B(0,1), Omega = [0,1]^dx.
///
/// Axes are ordered x_1..x_dx, q_1..q_dq. Each axis carries n cells
/// (n_x or n_q). For dq = 2 the ball is approximated by the q-cells whose
/// four corners lie in the closed unit disk; connector DOFs are the nodes
/// interior to that union. DOF numbering runs the connector index fastest.
class Mesh {
 public:
  int dx() const { return dx_; }
  int dq() const { return dq_; }
  int dim() const { return dx_ + dq_; }
  int n_x() const { return nx_; }
  int n_q() const { return nq_; }
  int quad_order() const { return quad_order_; }
  bool x_periodic() const { return x_periodic_; }
  double scale() const { return scale_; }

  std::size_t num_dofs() const { return num_x_dofs_ * num_q_dofs_; }
  std::size_t num_x_dofs() const { return num_x_dofs_; }
  std::size_t num_q_dofs() const { return num_q_dofs_; }
  std::size_t num_cells() const { return cells_.size(); }
  int num_local() const { return 1 << dim(); }

  /// Spacing of axis k (x axes first).
  double h(int k) const { return spacing_[k]; }
  double cell_volume() const { return cell_volume_; }
  const std::vector<Cell>& cells() const { return cells_; }

  /// Coordinates of DOF i: dim() values, x first.
  const double* dof_coords(std::size_t i) const { return &dof_coords_[i * dim()]; }

  /// Measure of the meshed connector domain (interval length or masked area).
  double q_measure() const { return q_cell_count_ * q_cell_volume_; }
  /// Measure of the meshed Sigma.
  double measure() const;

  /// Connector sub-mesh data: cells of the q-lattice with their q-DOFs.
  struct QCell {
    std::array<double, 2> lower{};
    std::array<int, 4> dofs{};
  };
  const std::vector<QCell>& q_cells() const { return q_cells_; }
  double h_q() const { return spacing_[dx_]; }
  const double* q_dof_coords(std::size_t j) const { return &q_dof_coords_[j * dq_]; }

  const ReferenceElement& reference() const { return reference_; }

  /// Copy with every axis scaled by factor (scaling studies of constants).
  Mesh scaled(double factor) const;

  friend Mesh build_mesh(int dx, int dq, int n_x, int n_q, int quad_order,
                         const MeshOptions& options);

 private:
  Mesh(int dim, int order) : reference_(dim, order) {}

  int dx_ = 0, dq_ = 0, nx_ = 0, nq_ = 0, quad_order_ = 0;
  bool x_periodic_ = false;
  double scale_ = 1.0;
  std::array<double, kMaxDim> spacing_{};
  double cell_volume_ = 0.0;
  double q_cell_volume_ = 0.0;
  std::size_t q_cell_count_ = 0;
  std::size_t num_x_dofs_ = 0, num_q_dofs_ = 0;
  std::vector<Cell> cells_;
  std::vector<QCell> q_cells_;
  std::vector<double> dof_coords_;
  std::vector<double> q_dof_coords_;
  ReferenceElement reference_;
};

/// Throws ValidationError for dimensions outside {1,2}, n < 4, quad_order
/// outside [2,8], or a grid without interior nodes.
Mesh build_mesh(int dx, int dq, int n_x, int n_q, int quad_order = 3,
                const MeshOptions& options = {});

}  // namespace fenecpd
