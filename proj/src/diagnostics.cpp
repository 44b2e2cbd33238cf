#include "fenecpd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fenecpd/assembly.hpp"
#include "fenecpd/error.hpp"

namespace fenecpd {

NormEvaluator::NormEvaluator(const Mesh& mesh) : mesh_(&mesh) {
  Assembler as(mesh);
  mass_ = as.mass();
  stiffness_ = add_same_pattern(as.stiffness_x(), as.stiffness_q());
  integrals_ = Vector::Zero(static_cast<Eigen::Index>(mesh.num_dofs()));
  const double w = mesh.cell_volume() / mesh.num_local();
  for (const Cell& c : mesh.cells())
    for (int a = 0; a < mesh.num_local(); ++a)
      if (c.dofs[a] >= 0) integrals_[c.dofs[a]] += w;
}

double NormEvaluator::l2_norm(const Vector& f) const {
  return std::sqrt(std::max(0.0, f.dot(mass_ * f)));
}

Norms NormEvaluator::norms(const Vector& f) const {
  Norms n;
  const double l2sq = std::max(0.0, f.dot(mass_ * f));
  n.l2 = std::sqrt(l2sq);
  n.h1 = std::sqrt(l2sq + std::max(0.0, f.dot(stiffness_ * f)));
  n.l1 = l1_norm(f);
  return n;
}

namespace {

// Quadrature sums of |f| and of the negative part.
std::pair<double, double> abs_and_negative(const Mesh& mesh, const Vector& f) {
  const ReferenceElement& ref = mesh.reference();
  const int nl = mesh.num_local();
  double abs_sum = 0.0, neg_sum = 0.0;
  for (const Cell& c : mesh.cells()) {
    bool any = false;
    for (int a = 0; a < nl; ++a)
      if (c.dofs[a] >= 0 && f[c.dofs[a]] != 0.0) any = true;
    if (!any) continue;
    for (int p = 0; p < ref.num_points(); ++p) {
      double v = 0.0;
      for (int a = 0; a < nl; ++a)
        if (c.dofs[a] >= 0) v += f[c.dofs[a]] * ref.value(p, a);
      const double w = ref.weight(p);
      abs_sum += w * std::abs(v);
      if (v < 0.0) neg_sum -= w * v;
    }
  }
  return {abs_sum * mesh.cell_volume(), neg_sum * mesh.cell_volume()};
}

}  // namespace

double NormEvaluator::l1_norm(const Vector& f) const { return abs_and_negative(*mesh_, f).first; }

double NormEvaluator::negative_mass(const Vector& f) const {
  return abs_and_negative(*mesh_, f).second;
}

double NormEvaluator::mass(const Vector& f) const { return integrals_.dot(f); }

InvariantRecord NormEvaluator::record(const DensityState& f) const {
  InvariantRecord r;
  r.t = f.t;
  const Norms n = norms(f.coeffs);
  const auto an = abs_and_negative(*mesh_, f.coeffs);
  r.l1 = an.first;
  r.l2 = n.l2;
  r.h1 = n.h1;
  r.min_f = f.coeffs.size() > 0 ? f.coeffs.minCoeff() : 0.0;
  r.neg_mass = an.second;
  r.mass = mass(f.coeffs);
  return r;
}

Norms norms(const DensityState& f, const Mesh& mesh) {
  if (static_cast<std::size_t>(f.coeffs.size()) != mesh.num_dofs())
    throw ValidationError("norms: state does not belong to this mesh");
  return NormEvaluator(mesh).norms(f.coeffs);
}

L1Report check_l1_bound(const InvariantSeries& series, double tol_inv) {
  L1Report r;
  if (series.empty()) return r;
  const double l10 = series.front().l1;
  r.worst_ratio = 1.0;
  if (l10 > 0.0)
    for (const auto& rec : series) r.worst_ratio = std::max(r.worst_ratio, rec.l1 / l10);
  r.pass = r.worst_ratio <= 1.0 + tol_inv;
  return r;
}

PositivityReport check_positivity(const InvariantSeries& series) {
  PositivityReport r;
  r.min_value = std::numeric_limits<double>::infinity();
  for (const auto& rec : series) {
    r.min_value = std::min(r.min_value, rec.min_f);
    r.min_per_time.push_back(rec.min_f);
    r.neg_mass_per_time.push_back(rec.neg_mass);
    r.max_neg_mass = std::max(r.max_neg_mass, rec.neg_mass);
    const double pos = rec.l1 - rec.neg_mass;
    if (pos > 0.0) r.worst_neg_fraction = std::max(r.worst_neg_fraction, rec.neg_mass / pos);
  }
  if (series.empty()) r.min_value = 0.0;
  r.final_neg_mass = series.empty() ? 0.0 : series.back().neg_mass;
  r.flagged = r.min_value < 0.0;
  return r;
}

EnergyReport evaluate_energy(const InvariantSeries& series, double dt, double c1, double c2) {
  EnergyReport r;
  r.c1 = c1;
  r.c2 = c2;
  r.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < series.size(); ++n) {
    const double l2n = series[n].l2, l2p = series[n - 1].l2, h1n = series[n].h1;
    const double lhs = (l2n * l2n - l2p * l2p) / dt + 2.0 * c1 * h1n * h1n;
    const double s = 2.0 * c2 * l2n * l2n - lhs;
    r.slack.push_back(s);
    r.min_slack = std::min(r.min_slack, s);
  }
  if (r.slack.empty()) r.min_slack = 0.0;
  r.pass = r.min_slack >= 0.0;
  return r;
}

EnergyReport check_energy(InvariantSeries& series, double dt, const CoercivityReport& coercivity,
                          double c1_factor) {
  const double c1 = coercivity.lambda_m ? c1_factor * *coercivity.lambda_m : 0.0;
  double c2 = 0.0;
  if (series.size() >= 2) {
    const double l2n = series[1].l2, l2p = series[0].l2, h1n = series[1].h1;
    const double lhs = (l2n * l2n - l2p * l2p) / dt + 2.0 * c1 * h1n * h1n;
    if (lhs > 0.0 && l2n > 0.0) c2 = lhs / (2.0 * l2n * l2n) * (1.0 + 1e-12);
  }
  EnergyReport r = evaluate_energy(series, dt, c1, c2);
  if (!series.empty()) series[0].energy_slack = 0.0;
  for (std::size_t n = 1; n < series.size(); ++n) series[n].energy_slack = r.slack[n - 1];
  return r;
}

DensityState analytic_steady_state(double theta0, double q0, const Mesh& mesh) {
  if (!(theta0 > 0.0) || !(q0 > 0.0))
    throw ValidationError("analytic_steady_state: theta0 and q0 must be > 0");
  const double expo = q0 * q0 / theta0;
  DensityState s;
  s.coeffs.resize(static_cast<Eigen::Index>(mesh.num_dofs()));
  const int dx = mesh.dx(), dq = mesh.dq();
  for (std::size_t i = 0; i < mesh.num_dofs(); ++i) {
    const double* c = mesh.dof_coords(i);
    double q2 = 0.0;
    for (int k = 0; k < dq; ++k) q2 += c[dx + k] * c[dx + k];
    s.coeffs[static_cast<Eigen::Index>(i)] = std::pow(std::max(0.0, 1.0 - q2), expo);
  }
  s.coeffs /= discrete_integral(mesh, s.coeffs);
  return s;
}

double relative_l2_distance(const NormEvaluator& norms, const Vector& a, const Vector& b) {
  return norms.l2_norm(a - b) / norms.l2_norm(b);
}

std::vector<double> q_histogram(const Mesh& mesh, const Vector& f) {
  if (static_cast<std::size_t>(f.size()) != mesh.num_dofs())
    throw ValidationError("q_histogram: state does not belong to this mesh");
  std::vector<double> h(mesh.q_cells().size(), 0.0);
  // each multilinear hat integrates to volume / 2^dim on a cell
  const double w = mesh.cell_volume() / mesh.num_local();
  for (const Cell& c : mesh.cells())
    for (int a = 0; a < mesh.num_local(); ++a)
      if (c.dofs[a] >= 0) h[c.q_cell] += w * f[c.dofs[a]];
  double total = 0.0;
  for (double v : h) total += v;
  if (total != 0.0)
    for (double& v : h) v /= total;
  return h;
}

std::vector<double> equilibrium_histogram(const Mesh& mesh, double theta0, double q0) {
  const double expo = q0 * q0 / theta0;
  std::vector<double> nodes, weights;
  gauss_legendre_unit(20, nodes, weights);
  const double h = mesh.h_q();
  const int dq = mesh.dq();
  std::vector<double> out;
  out.reserve(mesh.q_cells().size());
  double total = 0.0;
  for (const Mesh::QCell& c : mesh.q_cells()) {
    double s = 0.0;
    if (dq == 1) {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double q = c.lower[0] + h * nodes[i];
        s += weights[i] * std::pow(std::max(0.0, 1.0 - q * q), expo);
      }
      s *= h;
    } else {
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          const double a = c.lower[0] + h * nodes[i], b = c.lower[1] + h * nodes[j];
          s += weights[i] * weights[j] * std::pow(std::max(0.0, 1.0 - a * a - b * b), expo);
        }
      s *= h * h;
    }
    out.push_back(s);
    total += s;
  }
  for (double& v : out) v /= total;
  return out;
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("tv_distance: histograms have different sizes");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace fenecpd
