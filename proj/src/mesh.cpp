#include "fenecpd/mesh.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fenecpd/error.hpp"

namespace fenecpd {

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    // map [-1,1] -> [0,1], ascending order
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

ReferenceElement::ReferenceElement(int dim, int order) : dim_(dim) {
  std::vector<double> x1, w1;
  gauss_legendre_unit(order, x1, w1);
  int np = 1;
  for (int k = 0; k < dim; ++k) np *= order;
  const int nl = 1 << dim;
  weights_.resize(np);
  points_.resize(static_cast<std::size_t>(np) * dim);
  values_.resize(static_cast<std::size_t>(np) * nl);
  grads_.resize(static_cast<std::size_t>(np) * nl * dim);
  for (int p = 0; p < np; ++p) {
    int rem = p;
    double w = 1.0;
    for (int k = 0; k < dim; ++k) {
      const int idx = rem % order;
      rem /= order;
      points_[p * dim + k] = x1[idx];
      w *= w1[idx];
    }
    weights_[p] = w;
    for (int a = 0; a < nl; ++a) {
      double v = 1.0;
      for (int k = 0; k < dim; ++k) {
        const double xi = points_[p * dim + k];
        v *= ((a >> k) & 1) ? xi : 1.0 - xi;
      }
      values_[p * nl + a] = v;
      for (int k = 0; k < dim; ++k) {
        double g = 1.0;
        for (int m = 0; m < dim; ++m) {
          const double xi = points_[p * dim + m];
          const bool hi = (a >> m) & 1;
          if (m == k)
            g *= hi ? 1.0 : -1.0;
          else
            g *= hi ? xi : 1.0 - xi;
        }
        grads_[(static_cast<std::size_t>(p) * nl + a) * dim + k] = g;
      }
    }
  }
}

double Mesh::measure() const {
  double x_measure = 1.0;
  for (int k = 0; k < dx_; ++k) x_measure *= scale_;
  return x_measure * q_measure();
}

Mesh Mesh::scaled(double factor) const {
  MeshOptions opts;
  opts.x_periodic = x_periodic_;
  opts.scale = scale_ * factor;
  return build_mesh(dx_, dq_, nx_, nq_, quad_order_, opts);
}

Mesh build_mesh(int dx, int dq, int n_x, int n_q, int quad_order, const MeshOptions& options) {
  {
    std::ostringstream os;
    if (dx != 1 && dx != 2) os << " dx must be 1 or 2 (got " << dx << ");";
    if (dq != 1 && dq != 2) os << " dq must be 1 or 2 (got " << dq << ");";
    if (n_x < 4) os << " n_x must be >= 4 (got " << n_x << ");";
    if (n_q < 4) os << " n_q must be >= 4 (got " << n_q << ");";
    if (quad_order < 2 || quad_order > 8)
      os << " quad_order must lie in [2,8] (got " << quad_order << ");";
    if (!(options.scale > 0.0) || !std::isfinite(options.scale)) os << " scale must be > 0;";
    if (!os.str().empty()) throw ValidationError("build_mesh:" + os.str());
  }

  Mesh m(dx + dq, quad_order);
  m.dx_ = dx;
  m.dq_ = dq;
  m.nx_ = n_x;
  m.nq_ = n_q;
  m.quad_order_ = quad_order;
  m.x_periodic_ = options.x_periodic;
  m.scale_ = options.scale;
  const double s = options.scale;
  const double hx = s / n_x, hq = 2.0 * s / n_q;
  for (int k = 0; k < dx; ++k) m.spacing_[k] = hx;
  for (int k = 0; k < dq; ++k) m.spacing_[dx + k] = hq;
  m.cell_volume_ = 1.0;
  for (int k = 0; k < dx + dq; ++k) m.cell_volume_ *= m.spacing_[k];
  m.q_cell_volume_ = dq == 1 ? hq : hq * hq;

  // connector lattice
  const int nqn = n_q + 1;
  auto q_coord = [&](int i) { return -s + i * hq; };
  std::vector<int> qdof_of_node(dq == 1 ? nqn : nqn * nqn, -1);
  std::vector<char> q_cell_active;
  if (dq == 1) {
    q_cell_active.assign(n_q, 1);
    int next = 0;
    for (int i = 1; i < n_q; ++i) qdof_of_node[i] = next++;
    m.num_q_dofs_ = next;
  } else {
    q_cell_active.assign(static_cast<std::size_t>(n_q) * n_q, 0);
    const double r2 = s * s * (1.0 + 1e-12);
    auto inside = [&](int i, int j) {
      const double a = q_coord(i), b = q_coord(j);
      return a * a + b * b <= r2;
    };
    for (int j = 0; j < n_q; ++j)
      for (int i = 0; i < n_q; ++i)
        q_cell_active[i + n_q * j] =
            inside(i, j) && inside(i + 1, j) && inside(i, j + 1) && inside(i + 1, j + 1);
    int next = 0;
    for (int j = 1; j < n_q; ++j)
      for (int i = 1; i < n_q; ++i) {
        const bool interior = q_cell_active[(i - 1) + n_q * (j - 1)] && q_cell_active[i + n_q * (j - 1)] &&
                              q_cell_active[(i - 1) + n_q * j] && q_cell_active[i + n_q * j];
        if (interior) qdof_of_node[i + nqn * j] = next++;
      }
    m.num_q_dofs_ = next;
  }
  if (m.num_q_dofs_ == 0) throw ValidationError("build_mesh: connector grid has no interior node");

  m.q_dof_coords_.resize(m.num_q_dofs_ * dq);
  if (dq == 1) {
    for (int i = 1; i < n_q; ++i) m.q_dof_coords_[qdof_of_node[i]] = q_coord(i);
  } else {
    for (int j = 0; j < nqn; ++j)
      for (int i = 0; i < nqn; ++i) {
        const int d = qdof_of_node[i + nqn * j];
        if (d < 0) continue;
        m.q_dof_coords_[2 * d] = q_coord(i);
        m.q_dof_coords_[2 * d + 1] = q_coord(j);
      }
  }

  std::vector<std::array<int, 2>> q_cell_index;
  for (int j = 0; j < (dq == 1 ? 1 : n_q); ++j)
    for (int i = 0; i < n_q; ++i) {
      if (!q_cell_active[i + (dq == 1 ? 0 : n_q * j)]) continue;
      q_cell_index.push_back({i, j});
      Mesh::QCell qc;
      qc.lower = {q_coord(i), dq == 2 ? q_coord(j) : 0.0};
      for (int a = 0; a < (1 << dq); ++a) {
        const int ii = i + (a & 1);
        const int jj = j + ((a >> 1) & 1);
        qc.dofs[a] = dq == 1 ? qdof_of_node[ii] : qdof_of_node[ii + nqn * jj];
      }
      m.q_cells_.push_back(qc);
    }
  m.q_cell_count_ = m.q_cells_.size();

  // physical lattice
  const bool per = options.x_periodic;
  const int nxn = n_x + 1;
  std::vector<int> xdof_of_node(dx == 1 ? nxn : nxn * nxn, -1);
  auto x_is_dof = [&](int i) { return per ? i < n_x : (i > 0 && i < n_x); };
  {
    int next = 0;
    if (dx == 1) {
      for (int i = 0; i < nxn; ++i)
        if (x_is_dof(i)) xdof_of_node[i] = next++;
    } else {
      for (int j = 0; j < nxn; ++j)
        for (int i = 0; i < nxn; ++i)
          if (x_is_dof(i) && x_is_dof(j)) xdof_of_node[i + nxn * j] = next++;
    }
    m.num_x_dofs_ = next;
  }
  auto x_node_dof = [&](int i, int j) {
    if (per) {
      i %= n_x;
      j %= n_x;
    }
    return dx == 1 ? xdof_of_node[i] : xdof_of_node[i + nxn * j];
  };

  std::vector<double> x_dof_coords(m.num_x_dofs_ * dx);
  for (int j = 0; j < (dx == 1 ? 1 : nxn); ++j)
    for (int i = 0; i < nxn; ++i) {
      const int d = dx == 1 ? xdof_of_node[i] : xdof_of_node[i + nxn * j];
      if (d < 0) continue;
      x_dof_coords[d * dx] = i * hx;
      if (dx == 2) x_dof_coords[d * dx + 1] = j * hx;
    }

  const std::size_t nqd = m.num_q_dofs_;
  m.dof_coords_.resize(m.num_dofs() * (dx + dq));
  for (std::size_t xd = 0; xd < m.num_x_dofs_; ++xd)
    for (std::size_t qd = 0; qd < nqd; ++qd) {
      double* c = &m.dof_coords_[(xd * nqd + qd) * (dx + dq)];
      for (int k = 0; k < dx; ++k) c[k] = x_dof_coords[xd * dx + k];
      for (int k = 0; k < dq; ++k) c[dx + k] = m.q_dof_coords_[qd * dq + k];
    }

  const int nl = 1 << (dx + dq);
  const int xcells_y = dx == 2 ? n_x : 1;
  m.cells_.reserve(static_cast<std::size_t>(n_x) * xcells_y * m.q_cells_.size());
  for (int xj = 0; xj < xcells_y; ++xj)
    for (int xi = 0; xi < n_x; ++xi)
      for (std::size_t qc = 0; qc < m.q_cells_.size(); ++qc) {
        Cell c;
        c.q_cell = static_cast<int>(qc);
        c.lower[0] = xi * hx;
        if (dx == 2) c.lower[1] = xj * hx;
        for (int k = 0; k < dq; ++k) c.lower[dx + k] = m.q_cells_[qc].lower[k];
        for (int a = 0; a < nl; ++a) {
          const int bx0 = a & 1;
          const int bx1 = dx == 2 ? (a >> 1) & 1 : 0;
          const int qbits = a >> dx;
          const int xd = x_node_dof(xi + bx0, xj + bx1);
          const int qd = m.q_cells_[qc].dofs[qbits];
          c.dofs[a] = (xd < 0 || qd < 0) ? -1 : static_cast<int>(xd * nqd + qd);
        }
        m.cells_.push_back(c);
      }
  return m;
}

}  // namespace fenecpd
