#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fenecpd/linalg.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/norms.hpp"
#include "fenecpd/solver.hpp"
#include "fenecpd/state.hpp"

namespace fenecpd {

/// Snapshot CSV: a '#' metadata line, a column header (x1[,x2],q1[,q2],f)
/// and one row per DOF. Values carry 17 significant digits.
void write_snapshot_csv(const std::filesystem::path& path, const Mesh& mesh,
                        const DensityState& state, std::size_t index);

struct SnapshotData {
  double t = 0.0;
  int dx = 0;
  int dq = 0;
  std::vector<double> coords;  ///< row-major, dx+dq per row
  Vector values;
};

SnapshotData read_snapshot_csv(const std::filesystem::path& path);

/// Raw little-endian float64 dump with a 32-byte header:
///   bytes 0-7   magic "FCPDF64\0"
///   bytes 8-11  dx (uint32), 12-15 dq (uint32)
///   bytes 16-19 n_x (uint32), 20-23 n_q (uint32)
///   bytes 24-31 number of values (uint64)
void write_f64(const std::filesystem::path& path, const Mesh& mesh, const Vector& values);
Vector read_f64(const std::filesystem::path& path, int* dx = nullptr, int* dq = nullptr);

/// Columns t,l1,l2,h1,min_f,neg_mass,mass,energy_slack.
void write_diagnostics_csv(const std::filesystem::path& path, const InvariantSeries& series);
InvariantSeries read_diagnostics_csv(const std::filesystem::path& path);

/// Columns step,t,picard_iters,fp_residual,lin_iters,lin_residual.
void write_steps_csv(const std::filesystem::path& path, const Trajectory& trajectory);

/// One "row col value" line per stored entry.
void write_triplets(const std::filesystem::path& path, const SparseMatrix& matrix);

/// Shortest round-trip decimal form used by every writer.
std::string format_double(double v);

}  // namespace fenecpd
