#include "fenecpd/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "fenecpd/error.hpp"
#include "fenecpd/regularization.hpp"

namespace fenecpd {

namespace {

struct QPoint {
  double coord[kMaxDim];
  double weight;
  double phi[kMaxLocal];
  double grad[kMaxLocal][kMaxDim];
  double x[2];  // x part, zero padded
  double q[2];  // q part, zero padded
};

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string("assembly: non-finite ") + what);
}

}  // namespace

SparseMatrix TermMatrices::b_form() const {
  SparseMatrix b = add_same_pattern(diff_xx, cross_qx);
  b = add_same_pattern(b, cross_xq);
  return add_same_pattern(b, diff_qq);
}

Assembler::Assembler(const Mesh& mesh) : mesh_(&mesh) {
  const int nl = mesh.num_local();
  const auto n = static_cast<Eigen::Index>(mesh.num_dofs());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.num_cells() * nl * nl);
  for (const Cell& c : mesh.cells())
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        if (c.dofs[a] >= 0 && c.dofs[b] >= 0) trip.emplace_back(c.dofs[a], c.dofs[b], 0.0);
  pattern_.resize(n, n);
  pattern_.setFromTriplets(trip.begin(), trip.end());
  pattern_.makeCompressed();

  scatter_.assign(mesh.num_cells() * nl * nl, -1);
  const int* outer = pattern_.outerIndexPtr();
  const int* inner = pattern_.innerIndexPtr();
  for (std::size_t ci = 0; ci < mesh.num_cells(); ++ci) {
    const Cell& c = mesh.cells()[ci];
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b) {
        const int row = c.dofs[a], col = c.dofs[b];
        if (row < 0 || col < 0) continue;
        const int* first = inner + outer[col];
        const int* last = inner + outer[col + 1];
        const int* it = std::lower_bound(first, last, row);
        scatter_[(ci * nl + a) * nl + b] = static_cast<int>(it - inner);
      }
  }
}

template <class Kernel>
void Assembler::assemble_into(std::vector<SparseMatrix*> targets, Kernel&& kernel) const {
  const Mesh& m = *mesh_;
  const ReferenceElement& ref = m.reference();
  const int nl = m.num_local(), dim = m.dim(), dx = m.dx();
  const int np = ref.num_points();
  const std::size_t nt = targets.size();
  for (SparseMatrix* t : targets) *t = pattern_;
  std::vector<double*> values(nt);
  for (std::size_t k = 0; k < nt; ++k) values[k] = targets[k]->valuePtr();

  std::vector<double> local(nt * nl * nl);
  QPoint qp{};
  double inv_h[kMaxDim];
  for (int k = 0; k < dim; ++k) inv_h[k] = 1.0 / m.h(k);
  for (std::size_t ci = 0; ci < m.num_cells(); ++ci) {
    const Cell& c = m.cells()[ci];
    std::fill(local.begin(), local.end(), 0.0);
    for (int p = 0; p < np; ++p) {
      for (int k = 0; k < dim; ++k) qp.coord[k] = c.lower[k] + m.h(k) * ref.coord(p, k);
      qp.x[0] = qp.x[1] = qp.q[0] = qp.q[1] = 0.0;
      for (int k = 0; k < dx; ++k) qp.x[k] = qp.coord[k];
      for (int k = 0; k < m.dq(); ++k) qp.q[k] = qp.coord[dx + k];
      qp.weight = ref.weight(p) * m.cell_volume();
      for (int a = 0; a < nl; ++a) {
        qp.phi[a] = ref.value(p, a);
        for (int k = 0; k < dim; ++k) qp.grad[a][k] = ref.ref_grad(p, a, k) * inv_h[k];
      }
      kernel(c, qp, local.data());
    }
    const int* sc = &scatter_[ci * nl * nl];
    for (int ab = 0; ab < nl * nl; ++ab) {
      const int pos = sc[ab];
      if (pos < 0) continue;
      for (std::size_t k = 0; k < nt; ++k) values[k][pos] += local[k * nl * nl + ab];
    }
  }
}

SparseMatrix Assembler::mass() const {
  SparseMatrix out;
  const int nl = mesh_->num_local();
  assemble_into({&out}, [nl](const Cell&, const QPoint& qp, double* loc) {
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b) loc[a * nl + b] += qp.weight * qp.phi[a] * qp.phi[b];
  });
  return out;
}

SparseMatrix Assembler::stiffness_x() const {
  SparseMatrix out;
  const int nl = mesh_->num_local(), dx = mesh_->dx();
  assemble_into({&out}, [nl, dx](const Cell&, const QPoint& qp, double* loc) {
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b) {
        double s = 0.0;
        for (int k = 0; k < dx; ++k) s += qp.grad[a][k] * qp.grad[b][k];
        loc[a * nl + b] += qp.weight * s;
      }
  });
  return out;
}

SparseMatrix Assembler::stiffness_q() const {
  SparseMatrix out;
  const int nl = mesh_->num_local(), dx = mesh_->dx(), dim = mesh_->dim();
  assemble_into({&out}, [nl, dx, dim](const Cell&, const QPoint& qp, double* loc) {
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b) {
        double s = 0.0;
        for (int k = dx; k < dim; ++k) s += qp.grad[a][k] * qp.grad[b][k];
        loc[a * nl + b] += qp.weight * s;
      }
  });
  return out;
}

TermMatrices Assembler::assemble_static(const Params& params, const TemperatureField& theta,
                                        const FlowField& flow, double t) const {
  const Mesh& m = *mesh_;
  const int nl = m.num_local(), dx = m.dx(), dq = m.dq();
  const int mm = std::min(dx, dq);
  const double inv_de = 1.0 / params.de;
  const double xdiff = params.strong_form_halved_xdiff ? 0.5 * inv_de : inv_de;
  const double qdiff = inv_de / (params.q0 * params.q0);
  const double eps = params.eps;
  const bool has_v = flow.has_velocity();
  const int nn = nl * nl;

  TermMatrices tm;
  enum { kTransport, kDiffXX, kCrossQX, kCrossXQ, kDiffQQ, kDrift, kFene, kCount };
  assemble_into(
      {&tm.transport, &tm.diff_xx, &tm.cross_qx, &tm.cross_xq, &tm.diff_qq, &tm.drift_q, &tm.fene},
      [&](const Cell&, const QPoint& qp, double* loc) {
        const Vec2 x{qp.x[0], qp.x[1]};
        const double th = theta.value(x, t);
        check_finite(th, "temperature");
        const Vec2 gth = theta.gradient(x, t);
        const Vec2 v = has_v ? flow.velocity(x, t) : Vec2{0.0, 0.0};
        check_finite(v[0] + v[1], "velocity");
        const Mat2 kap = flow.kappa(x, t);
        double q_dot_gth = 0.0;
        for (int k = 0; k < mm; ++k) q_dot_gth += qp.q[k] * gth[k];
        double kq[2] = {0.0, 0.0};
        for (int k = 0; k < dq; ++k)
          for (int l = 0; l < dq; ++l) kq[k] += kap[k][l] * qp.q[l];
        const double fene = 2.0 * inv_de * fene_factor(qp.q[0] * qp.q[0] + qp.q[1] * qp.q[1], eps);
        const double w = qp.weight;
        for (int a = 0; a < nl; ++a) {
          const double* ga = qp.grad[a];
          const double* gqa = ga + dx;
          for (int b = 0; b < nl; ++b) {
            const double* gb = qp.grad[b];
            const double* gqb = gb + dx;
            const int ab = a * nl + b;
            double vgrad = 0.0, gxx = 0.0, gqq = 0.0, qx = 0.0, xq = 0.0, kqg = 0.0, qg = 0.0;
            for (int k = 0; k < dx; ++k) {
              vgrad += v[k] * gb[k];
              gxx += ga[k] * gb[k];
            }
            for (int k = 0; k < dq; ++k) {
              gqq += gqa[k] * gqb[k];
              kqg += kq[k] * gqa[k];
              qg += qp.q[k] * gqa[k];
            }
            for (int k = 0; k < mm; ++k) {
              qx += gqb[k] * ga[k];
              xq += gb[k] * gqa[k];
            }
            loc[kTransport * nn + ab] += w * vgrad * qp.phi[a];
            loc[kDiffXX * nn + ab] += w * xdiff * th * gxx;
            loc[kCrossQX * nn + ab] += w * inv_de * q_dot_gth * qx;
            loc[kCrossXQ * nn + ab] += w * inv_de * q_dot_gth * xq;
            loc[kDiffQQ * nn + ab] += w * qdiff * th * gqq;
            loc[kDrift * nn + ab] -= w * kqg * qp.phi[b];
            loc[kFene * nn + ab] += w * fene * qg * qp.phi[b];
          }
        }
      });
  tm.entropy_x = pattern_;
  tm.entropy_q = pattern_;
  return tm;
}

EntropyMatrices Assembler::assemble_entropy(const Params& params, const TemperatureField& theta,
                                            double t, const DensityState& r) const {
  const Mesh& m = *mesh_;
  if (static_cast<std::size_t>(r.coeffs.size()) != m.num_dofs())
    throw ValidationError("assemble_entropy: iterate does not belong to this mesh");
  const int nl = m.num_local(), dx = m.dx(), dq = m.dq();
  const int mm = std::min(dx, dq);
  const double inv_de = 1.0 / params.de;
  const double eps = params.eps;
  const int nn = nl * nl;
  EntropyMatrices em;
  assemble_into({&em.entropy_x, &em.entropy_q}, [&](const Cell& c, const QPoint& qp, double* loc) {
    double rv = 0.0;
    for (int a = 0; a < nl; ++a)
      if (c.dofs[a] >= 0) rv += r.coeffs[c.dofs[a]] * qp.phi[a];
    const double g = g_eps(rv, eps) * inv_de;
    if (g == 0.0) return;
    const Vec2 x{qp.x[0], qp.x[1]};
    const Vec2 gth = theta.gradient(x, t);
    const Mat2 hth = theta.hessian(x, t);
    double hq[2] = {0.0, 0.0};
    for (int k = 0; k < mm; ++k)
      for (int l = 0; l < mm; ++l) hq[k] += hth[k][l] * qp.q[l];
    const double w = qp.weight * g;
    for (int a = 0; a < nl; ++a) {
      double sx = 0.0, sq = 0.0;
      for (int k = 0; k < dx; ++k) sx += gth[k] * qp.grad[a][k];
      for (int k = 0; k < mm; ++k) sq += hq[k] * qp.grad[a][dx + k];
      for (int b = 0; b < nl; ++b) {
        loc[a * nl + b] += w * sx * qp.phi[b];
        loc[nn + a * nl + b] += w * sq * qp.phi[b];
      }
    }
    (void)dq;
  });
  return em;
}

Vector Assembler::load(const std::function<double(const double*)>& f) const {
  const Mesh& m = *mesh_;
  const ReferenceElement& ref = m.reference();
  const int nl = m.num_local(), dim = m.dim();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(m.num_dofs()));
  double coord[kMaxDim];
  for (const Cell& c : m.cells()) {
    for (int p = 0; p < ref.num_points(); ++p) {
      for (int k = 0; k < dim; ++k) coord[k] = c.lower[k] + m.h(k) * ref.coord(p, k);
      const double val = f(coord) * ref.weight(p) * m.cell_volume();
      for (int a = 0; a < nl; ++a)
        if (c.dofs[a] >= 0) out[c.dofs[a]] += val * ref.value(p, a);
    }
  }
  return out;
}

TermMatrices assemble_static(const Mesh& mesh, const Params& params,
                             const TemperatureField& theta, const FlowField& flow, double t) {
  return Assembler(mesh).assemble_static(params, theta, flow, t);
}

EntropyMatrices assemble_entropy(const Mesh& mesh, const Params& params,
                                 const TemperatureField& theta, double t, const DensityState& r) {
  return Assembler(mesh).assemble_entropy(params, theta, t, r);
}

SparseMatrix compose_a_eps(const TermMatrices& s, const EntropyMatrices& e) {
  const SparseMatrix* parts[] = {&s.diff_xx,   &s.cross_qx, &s.cross_xq,  &s.diff_qq,  &s.transport,
                                 &e.entropy_x, &e.entropy_q, &s.drift_q, &s.fene};
  for (const SparseMatrix* p : parts)
    if (p->rows() != s.diff_xx.rows() || p->cols() != s.diff_xx.cols())
      throw ValidationError("compose_a_eps: term matrices have inconsistent dimensions");
  SparseMatrix a = *parts[0];
  for (std::size_t k = 1; k < std::size(parts); ++k) a = add_same_pattern(a, *parts[k]);
  return a;
}

}  // namespace fenecpd
