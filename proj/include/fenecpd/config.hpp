#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fenecpd/error.hpp"
#include "fenecpd/fields.hpp"
#include "fenecpd/mms.hpp"
#include "fenecpd/params.hpp"
#include "fenecpd/state.hpp"

namespace fenecpd {

enum class Mode { Run, Check, Steady, Mms, Continuation, Bd };

std::string to_string(Mode m);
bool mode_from_string(const std::string& s, Mode& out);

struct MeshConfig {
  int dx = 1;
  int dq = 1;
  int n_x = 16;
  int n_q = 16;
  int quad_order = 3;
  bool x_periodic = false;
  bool operator==(const MeshConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  int snapshot_every = 1;
  bool write_f64 = false;
  bool operator==(const OutputConfig&) const = default;
};

struct SolverConfig {
  std::int64_t direct_max_dofs = 3000;
  int max_linear_iterations = 2000;
  bool allow_unverified = false;
  bool operator==(const SolverConfig&) const = default;
};

struct ContinuationConfig {
  std::vector<double> schedule{0.1, 0.05, 0.025, 0.0125};
  bool operator==(const ContinuationConfig&) const = default;
};

struct MmsConfig {
  MmsProblem problem = MmsProblem::Diffusion;
  std::vector<int> levels{8, 16, 32};
  int temporal_n = 48;
  std::vector<double> temporal_dts{0.2, 0.1, 0.05};
  double temporal_t_end = 1.0;
  bool operator==(const MmsConfig&) const = default;
};

struct BdConfig {
  std::int64_t particles = 100000;
  double dt = 1e-3;
  double t_end = 3.0;
  std::int64_t seed = 20240611;
  bool operator==(const BdConfig&) const = default;
};

struct SimulationConfig {
  Mode mode = Mode::Run;
  Params params;
  ThetaSpec theta;
  FlowSpec flow;
  MeshConfig mesh;
  InitialFamily initial_family = InitialFamily::EquilibriumUniform;
  double initial_theta0 = 0.0;
  std::string initial_values_file;
  OutputConfig output;
  SolverConfig solver;
  ContinuationConfig continuation;
  MmsConfig mms;
  BdConfig bd;
};

bool operator==(const SimulationConfig& a, const SimulationConfig& b);

struct ConfigIssue {
  int line = 0;  ///< 0 when the issue is not tied to a line (missing key)
  std::string message;
};

/// Every problem found in a configuration text.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses the sectioned key-value format. overrides are "section.key=value"
/// entries applied after the file. Throws ConfigError listing all issues.
SimulationConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const SimulationConfig& config);

/// Cross-field checks (dimensions, flow/mesh compatibility, ranges).
std::vector<std::string> validate_config(const SimulationConfig& config);

}  // namespace fenecpd
