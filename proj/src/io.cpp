#include "fenecpd/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fenecpd/error.hpp"

namespace fenecpd {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ValidationError("'" + path.string() + "': malformed number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

void put_u32(unsigned char* p, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) p[k] = static_cast<unsigned char>(v >> (8 * k));
}
void put_u64(unsigned char* p, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) p[k] = static_cast<unsigned char>(v >> (8 * k));
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(p[k]) << (8 * k);
  return v;
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  return v;
}

constexpr char kMagic[8] = {'F', 'C', 'P', 'D', 'F', '6', '4', '\0'};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_snapshot_csv(const std::filesystem::path& path, const Mesh& mesh,
                        const DensityState& state, std::size_t index) {
  if (static_cast<std::size_t>(state.coeffs.size()) != mesh.num_dofs())
    throw ValidationError("write_snapshot_csv: state does not belong to the mesh");
  auto out = open_out(path);
  out << "# index=" << index << ",t=" << g17(state.t) << ",dx=" << mesh.dx() << ",dq=" << mesh.dq()
      << ",n_x=" << mesh.n_x() << ",n_q=" << mesh.n_q() << ",dofs=" << mesh.num_dofs() << "\n";
  for (int k = 0; k < mesh.dx(); ++k) out << "x" << k + 1 << ",";
  for (int k = 0; k < mesh.dq(); ++k) out << "q" << k + 1 << ",";
  out << "f\n";
  for (std::size_t i = 0; i < mesh.num_dofs(); ++i) {
    const double* c = mesh.dof_coords(i);
    for (int k = 0; k < mesh.dim(); ++k) out << g17(c[k]) << ",";
    out << g17(state.coeffs[static_cast<Eigen::Index>(i)]) << "\n";
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

SnapshotData read_snapshot_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  SnapshotData d;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw ValidationError("'" + path.string() + "': missing metadata line");
  for (const auto& kv : split(line.substr(2), ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    if (k == "t") d.t = parse_double(v, path);
    if (k == "dx") d.dx = static_cast<int>(parse_double(v, path));
    if (k == "dq") d.dq = static_cast<int>(parse_double(v, path));
  }
  if (d.dx < 1 || d.dq < 1) throw ValidationError("'" + path.string() + "': missing dimensions");
  std::getline(in, line);  // column header
  const int dim = d.dx + d.dq;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (static_cast<int>(cols.size()) != dim + 1)
      throw ValidationError("'" + path.string() + "': row has the wrong number of columns");
    for (int k = 0; k < dim; ++k) d.coords.push_back(parse_double(cols[k], path));
    vals.push_back(parse_double(cols[dim], path));
  }
  d.values = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return d;
}

void write_f64(const std::filesystem::path& path, const Mesh& mesh, const Vector& values) {
  auto out = open_out(path, true);
  unsigned char header[32];
  std::memcpy(header, kMagic, 8);
  put_u32(header + 8, static_cast<std::uint32_t>(mesh.dx()));
  put_u32(header + 12, static_cast<std::uint32_t>(mesh.dq()));
  put_u32(header + 16, static_cast<std::uint32_t>(mesh.n_x()));
  put_u32(header + 20, static_cast<std::uint32_t>(mesh.n_q()));
  put_u64(header + 24, static_cast<std::uint64_t>(values.size()));
  out.write(reinterpret_cast<const char*>(header), 32);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::uint64_t bits;
    const double v = values[i];
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    put_u64(b, bits);
    out.write(reinterpret_cast<const char*>(b), 8);
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Vector read_f64(const std::filesystem::path& path, int* dx, int* dq) {
  auto in = open_in(path, true);
  unsigned char header[32];
  if (!in.read(reinterpret_cast<char*>(header), 32) || std::memcmp(header, kMagic, 8) != 0)
    throw ValidationError("'" + path.string() + "': not a float64 dump");
  if (dx) *dx = static_cast<int>(get_u32(header + 8));
  if (dq) *dq = static_cast<int>(get_u32(header + 12));
  const std::uint64_t n = get_u64(header + 24);
  Vector v(static_cast<Eigen::Index>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
      throw ValidationError("'" + path.string() + "': truncated float64 dump");
    const std::uint64_t bits = get_u64(b);
    double x;
    std::memcpy(&x, &bits, 8);
    v[static_cast<Eigen::Index>(i)] = x;
  }
  return v;
}

void write_diagnostics_csv(const std::filesystem::path& path, const InvariantSeries& series) {
  auto out = open_out(path);
  out << "t,l1,l2,h1,min_f,neg_mass,mass,energy_slack\n";
  for (const auto& r : series)
    out << g17(r.t) << "," << g17(r.l1) << "," << g17(r.l2) << "," << g17(r.h1) << ","
        << g17(r.min_f) << "," << g17(r.neg_mass) << "," << g17(r.mass) << ","
        << g17(r.energy_slack) << "\n";
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

InvariantSeries read_diagnostics_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  if (line != "t,l1,l2,h1,min_f,neg_mass,mass,energy_slack")
    throw ValidationError("'" + path.string() + "': unexpected diagnostics header");
  InvariantSeries s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line, ',');
    if (c.size() != 8) throw ValidationError("'" + path.string() + "': malformed diagnostics row");
    InvariantRecord r;
    double* f[] = {&r.t, &r.l1, &r.l2, &r.h1, &r.min_f, &r.neg_mass, &r.mass, &r.energy_slack};
    for (int k = 0; k < 8; ++k) *f[k] = parse_double(c[k], path);
    s.push_back(r);
  }
  return s;
}

void write_steps_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  auto out = open_out(path);
  out << "step,t,picard_iters,fp_residual,lin_iters,lin_residual\n";
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const StepReport& s = trajectory.steps[i];
    int iters = 0;
    double res = 0.0;
    for (const auto& l : s.linear) {
      iters += l.iterations;
      res = std::max(res, l.residual);
    }
    out << i + 1 << "," << g17(static_cast<double>(i + 1) * trajectory.dt) << "," << s.picard_iters
        << "," << g17(s.fp_residual) << "," << iters << "," << g17(res) << "\n";
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

void write_triplets(const std::filesystem::path& path, const SparseMatrix& matrix) {
  auto out = open_out(path);
  for (int k = 0; k < matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(matrix, k); it; ++it)
      out << it.row() << " " << it.col() << " " << g17(it.value()) << "\n";
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace fenecpd
