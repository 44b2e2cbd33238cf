#include "fenecpd/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "fenecpd/io.hpp"

namespace fenecpd {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Run: return "run";
    case Mode::Check: return "check";
    case Mode::Steady: return "steady";
    case Mode::Mms: return "mms";
    case Mode::Continuation: return "continuation";
    case Mode::Bd: return "bd";
  }
  return "unknown";
}

bool mode_from_string(const std::string& s, Mode& out) {
  for (Mode m : {Mode::Run, Mode::Check, Mode::Steady, Mode::Mms, Mode::Continuation, Mode::Bd})
    if (to_string(m) == s) {
      out = m;
      return true;
    }
  return false;
}

bool operator==(const SimulationConfig& a, const SimulationConfig& b) {
  auto params_eq = [](const Params& x, const Params& y) {
    return x.de == y.de && x.q0 == y.q0 && x.eps == y.eps && x.dt == y.dt && x.t_end == y.t_end &&
           x.tol_fp == y.tol_fp && x.tol_lin == y.tol_lin && x.max_picard == y.max_picard &&
           x.strong_form_halved_xdiff == y.strong_form_halved_xdiff;
  };
  auto theta_eq = [](const ThetaSpec& x, const ThetaSpec& y) {
    return x.family == y.family && x.theta0 == y.theta0 && x.gradient == y.gradient &&
           x.amplitude == y.amplitude && x.omega == y.omega;
  };
  auto flow_eq = [](const FlowSpec& x, const FlowSpec& y) {
    return x.velocity == y.velocity && x.kappa == y.kappa && x.amplitude == y.amplitude &&
           x.rate == y.rate;
  };
  return a.mode == b.mode && params_eq(a.params, b.params) && theta_eq(a.theta, b.theta) &&
         flow_eq(a.flow, b.flow) && a.mesh == b.mesh && a.initial_family == b.initial_family &&
         a.initial_theta0 == b.initial_theta0 && a.initial_values_file == b.initial_values_file &&
         a.output == b.output && a.solver == b.solver && a.continuation == b.continuation &&
         a.mms == b.mms && a.bd == b.bd;
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid configuration (" << issues.size() << (issues.size() == 1 ? " issue)" : " issues)");
  for (const auto& i : issues) {
    os << "\n  ";
    if (i.line > 0) os << "line " << i.line << ": ";
    os << i.message;
  }
  return os.str();
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Value {
  std::string raw;
  int line = 0;
};

// Typed readers; each returns an error message or empty.
std::string read_double(const std::string& raw, double& out) {
  const char* b = raw.c_str();
  char* end = nullptr;
  out = std::strtod(b, &end);
  if (raw.empty() || end != b + raw.size() || !std::isfinite(out)) return "expected a number, got '" + raw + "'";
  return {};
}

std::string read_int(const std::string& raw, std::int64_t& out) {
  double d;
  if (auto e = read_double(raw, d); !e.empty()) return "expected an integer, got '" + raw + "'";
  if (d != std::floor(d) || std::abs(d) > 9.0e15) return "expected an integer, got '" + raw + "'";
  out = static_cast<std::int64_t>(d);
  return {};
}

std::string read_bool(const std::string& raw, bool& out) {
  if (raw == "true") out = true;
  else if (raw == "false") out = false;
  else return "expected true or false, got '" + raw + "'";
  return {};
}

std::string read_string(const std::string& raw, std::string& out) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    out = raw.substr(1, raw.size() - 2);
    if (out.find('"') != std::string::npos) return "strings may not contain quotes";
    return {};
  }
  if (raw.empty()) return "expected a string";
  out = raw;  // bare words are accepted
  return {};
}

std::string read_list(const std::string& raw, std::vector<std::string>& out) {
  if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') return "expected a list [a, b, ...], got '" + raw + "'";
  out.clear();
  const std::string inner = trim(std::string_view(raw).substr(1, raw.size() - 2));
  if (inner.empty()) return {};
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return {};
}

std::string read_double_list(const std::string& raw, std::vector<double>& out) {
  std::vector<std::string> items;
  if (auto e = read_list(raw, items); !e.empty()) return e;
  out.clear();
  for (const auto& it : items) {
    double d;
    if (auto e = read_double(it, d); !e.empty()) return e;
    out.push_back(d);
  }
  return {};
}

using Setter = std::function<std::string(const std::string&, SimulationConfig&)>;

struct KeySpec {
  bool required;
  Setter set;
};

template <class F>
Setter real(F field, std::function<std::string(double)> check = {}) {
  return [field, check](const std::string& raw, SimulationConfig& c) -> std::string {
    double v;
    if (auto e = read_double(raw, v); !e.empty()) return e;
    if (check)
      if (auto e = check(v); !e.empty()) return e;
    field(c) = v;
    return {};
  };
}

template <class T, class F>
Setter integer(F field, std::int64_t lo, std::int64_t hi) {
  return [field, lo, hi](const std::string& raw, SimulationConfig& c) -> std::string {
    std::int64_t v;
    if (auto e = read_int(raw, v); !e.empty()) return e;
    if (v < lo || v > hi) {
      std::ostringstream os;
      os << "value " << v << " out of range [" << lo << ", " << hi << "]";
      return os.str();
    }
    field(c) = static_cast<T>(v);
    return {};
  };
}

template <class F>
Setter boolean(F field) {
  return [field](const std::string& raw, SimulationConfig& c) -> std::string {
    bool v;
    if (auto e = read_bool(raw, v); !e.empty()) return e;
    field(c) = v;
    return {};
  };
}

std::function<std::string(double)> positive(const char* name) {
  return [name](double v) -> std::string {
    if (v > 0.0) return {};
    return std::string(name) + " must be > 0";
  };
}

std::map<std::string, KeySpec> key_table() {
  std::map<std::string, KeySpec> t;
  auto P = [](auto member) { return [member](SimulationConfig& c) -> auto& { return c.params.*member; }; };
  t["mode"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                 std::string s;
                 if (auto e = read_string(raw, s); !e.empty()) return e;
                 if (!mode_from_string(s, c.mode))
                   return "unknown mode '" + s + "' (run, check, steady, mms, continuation, bd)";
                 return {};
               }};
  t["params.de"] = {true, real(P(&Params::de), positive("de"))};
  t["params.q0"] = {true, real(P(&Params::q0), positive("q0"))};
  t["params.eps"] = {true, real(P(&Params::eps), [](double v) -> std::string {
                       if (v > 0.0 && v < 1.0) return {};
                       std::ostringstream os;
                       os << "eps = " << v
                          << " out of range: eps must lie in (0,1) so that the entropy cutoff g_eps has "
                             "ordered branches";
                       return os.str();
                     })};
  t["params.dt"] = {true, real(P(&Params::dt), positive("dt"))};
  t["params.t_end"] = {true, real(P(&Params::t_end), [](double v) -> std::string {
                         return v >= 0.0 ? std::string() : std::string("t_end must be >= 0");
                       })};
  t["params.tol_fp"] = {false, real(P(&Params::tol_fp), positive("tol_fp"))};
  t["params.tol_lin"] = {false, real(P(&Params::tol_lin), positive("tol_lin"))};
  t["params.max_picard"] = {false, integer<int>(P(&Params::max_picard), 1, 100000)};
  t["params.strong_form_halved_xdiff"] = {false, boolean(P(&Params::strong_form_halved_xdiff))};

  t["theta.family"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                         std::string s;
                         if (auto e = read_string(raw, s); !e.empty()) return e;
                         auto f = theta_family_from_string(s);
                         if (!f) return "unknown temperature family '" + s + "' (constant, affine, sinusoidal)";
                         c.theta.family = *f;
                         return {};
                       }};
  t["theta.theta0"] = {false, real([](SimulationConfig& c) -> double& { return c.theta.theta0; },
                                   positive("theta0"))};
  t["theta.gradient"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                           std::vector<double> v;
                           if (auto e = read_double_list(raw, v); !e.empty()) return e;
                           if (v.empty() || v.size() > 2) return "gradient takes one or two components";
                           c.theta.gradient = {v[0], v.size() > 1 ? v[1] : 0.0};
                           return {};
                         }};
  t["theta.amplitude"] = {false, real([](SimulationConfig& c) -> double& { return c.theta.amplitude; })};
  t["theta.omega"] = {false, real([](SimulationConfig& c) -> double& { return c.theta.omega; })};

  t["flow.family"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                        std::string s;
                        if (auto e = read_string(raw, s); !e.empty()) return e;
                        auto f = FlowSpec::from_family(s, c.flow.amplitude, c.flow.rate);
                        if (!f) return "unknown flow family '" + s + "' (quiescent, cellular, simple-shear, extensional)";
                        c.flow.velocity = f->velocity;
                        c.flow.kappa = f->kappa;
                        return {};
                      }};
  t["flow.velocity"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                          std::string s;
                          if (auto e = read_string(raw, s); !e.empty()) return e;
                          auto k = velocity_kind_from_string(s);
                          if (!k) return "unknown velocity '" + s + "' (none, cellular)";
                          c.flow.velocity = *k;
                          return {};
                        }};
  t["flow.kappa"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                       std::string s;
                       if (auto e = read_string(raw, s); !e.empty()) return e;
                       auto k = kappa_kind_from_string(s);
                       if (!k) return "unknown kappa '" + s + "' (none, simple-shear, extensional, velocity-gradient)";
                       c.flow.kappa = *k;
                       return {};
                     }};
  t["flow.amplitude"] = {false, real([](SimulationConfig& c) -> double& { return c.flow.amplitude; })};
  t["flow.rate"] = {false, real([](SimulationConfig& c) -> double& { return c.flow.rate; })};

  t["mesh.dx"] = {true, integer<int>([](SimulationConfig& c) -> int& { return c.mesh.dx; }, 1, 2)};
  t["mesh.dq"] = {true, integer<int>([](SimulationConfig& c) -> int& { return c.mesh.dq; }, 1, 2)};
  t["mesh.n_x"] = {true, integer<int>([](SimulationConfig& c) -> int& { return c.mesh.n_x; }, 4, 4096)};
  t["mesh.n_q"] = {true, integer<int>([](SimulationConfig& c) -> int& { return c.mesh.n_q; }, 4, 4096)};
  t["mesh.quad_order"] = {false, integer<int>([](SimulationConfig& c) -> int& { return c.mesh.quad_order; }, 2, 8)};
  t["mesh.x_periodic"] = {false, boolean([](SimulationConfig& c) -> bool& { return c.mesh.x_periodic; })};

  t["initial.family"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                           std::string s;
                           if (auto e = read_string(raw, s); !e.empty()) return e;
                           if (!initial_family_from_string(s, c.initial_family))
                             return "unknown initial family '" + s +
                                    "' (fene-equilibrium-uniform, fene-equilibrium-bump, custom-nodal)";
                           return {};
                         }};
  t["initial.theta0"] = {false, real([](SimulationConfig& c) -> double& { return c.initial_theta0; })};
  t["initial.values_file"] = {false, [](const std::string& raw, SimulationConfig& c) {
                                return read_string(raw, c.initial_values_file);
                              }};

  t["output.dir"] = {false, [](const std::string& raw, SimulationConfig& c) { return read_string(raw, c.output.dir); }};
  t["output.snapshot_every"] = {false, integer<int>([](SimulationConfig& c) -> int& { return c.output.snapshot_every; }, 1, 1000000000)};
  t["output.write_f64"] = {false, boolean([](SimulationConfig& c) -> bool& { return c.output.write_f64; })};

  t["solver.direct_max_dofs"] = {false, integer<std::int64_t>([](SimulationConfig& c) -> std::int64_t& { return c.solver.direct_max_dofs; }, 0, 1000000000)};
  t["solver.max_linear_iterations"] = {false, integer<int>([](SimulationConfig& c) -> int& { return c.solver.max_linear_iterations; }, 1, 1000000000)};
  t["solver.allow_unverified"] = {false, boolean([](SimulationConfig& c) -> bool& { return c.solver.allow_unverified; })};

  t["continuation.schedule"] = {false, [](const std::string& raw, SimulationConfig& c) {
                                  return read_double_list(raw, c.continuation.schedule);
                                }};

  t["mms.problem"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                        std::string s;
                        if (auto e = read_string(raw, s); !e.empty()) return e;
                        if (s == "diffusion") c.mms.problem = MmsProblem::Diffusion;
                        else if (s == "full") c.mms.problem = MmsProblem::Full;
                        else return "unknown mms problem '" + s + "' (diffusion, full)";
                        return {};
                      }};
  t["mms.levels"] = {false, [](const std::string& raw, SimulationConfig& c) -> std::string {
                       std::vector<double> v;
                       if (auto e = read_double_list(raw, v); !e.empty()) return e;
                       c.mms.levels.clear();
                       for (double d : v) {
                         if (d != std::floor(d) || d < 4 || d > 4096) return "levels must be integers in [4, 4096]";
                         c.mms.levels.push_back(static_cast<int>(d));
                       }
                       return {};
                     }};
  t["mms.temporal_n"] = {false, integer<int>([](SimulationConfig& c) -> int& { return c.mms.temporal_n; }, 4, 4096)};
  t["mms.temporal_dts"] = {false, [](const std::string& raw, SimulationConfig& c) {
                             return read_double_list(raw, c.mms.temporal_dts);
                           }};
  t["mms.temporal_t_end"] = {false, real([](SimulationConfig& c) -> double& { return c.mms.temporal_t_end; },
                                         positive("temporal_t_end"))};

  t["bd.particles"] = {false, integer<std::int64_t>([](SimulationConfig& c) -> std::int64_t& { return c.bd.particles; }, 1, 1000000000)};
  t["bd.dt"] = {false, real([](SimulationConfig& c) -> double& { return c.bd.dt; }, positive("bd dt"))};
  t["bd.t_end"] = {false, real([](SimulationConfig& c) -> double& { return c.bd.t_end; }, positive("bd t_end"))};
  t["bd.seed"] = {false, integer<std::int64_t>([](SimulationConfig& c) -> std::int64_t& { return c.bd.seed; }, 0, 9000000000000000LL)};
  return t;
}

// Strips a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : ValidationError(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<std::string> validate_config(const SimulationConfig& c) {
  std::vector<std::string> out = c.params.violations();
  if (c.flow.velocity == VelocityKind::Cellular && c.mesh.dx != 2)
    out.emplace_back("cellular velocity requires mesh.dx = 2");
  if (c.theta.family == ThetaFamily::Sinusoidal && std::abs(c.theta.amplitude) >= c.theta.theta0)
    out.emplace_back("sinusoidal temperature needs |amplitude| < theta0 to stay positive");
  if (c.theta.family == ThetaFamily::Affine) {
    double tmin = c.theta.theta0;
    for (int k = 0; k < c.mesh.dx; ++k) tmin += std::min(0.0, c.theta.gradient[k]);
    if (!(tmin > 0.0)) out.emplace_back("affine temperature is not positive on the unit box");
  }
  if (c.initial_family == InitialFamily::CustomNodal && c.initial_values_file.empty())
    out.emplace_back("initial.family = custom-nodal requires initial.values_file");
  if (c.mode == Mode::Continuation) {
    const auto& s = c.continuation.schedule;
    if (s.size() < 2) out.emplace_back("continuation.schedule needs at least two values");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!(s[i] > 0.0 && s[i] < 1.0)) out.emplace_back("continuation.schedule values must lie in (0,1)");
      if (i > 0 && !(s[i] < s[i - 1])) out.emplace_back("continuation.schedule must be strictly decreasing");
    }
  }
  if (c.mode == Mode::Mms) {
    if (c.mesh.dq != 1) out.emplace_back("mms mode requires mesh.dq = 1");
    if (c.mms.levels.size() < 2) out.emplace_back("mms.levels needs at least two levels");
    if (c.mms.temporal_dts.size() < 2) out.emplace_back("mms.temporal_dts needs at least two values");
    for (double d : c.mms.temporal_dts)
      if (!(d > 0.0)) out.emplace_back("mms.temporal_dts values must be > 0");
  }
  if ((c.mode == Mode::Bd || c.mode == Mode::Steady) &&
      (c.theta.family != ThetaFamily::Constant || c.flow.velocity != VelocityKind::None))
    out.emplace_back(to_string(c.mode) + " mode requires a constant temperature and no velocity");
  if (c.mode == Mode::Bd && c.flow.kappa == KappaKind::VelocityGradient)
    out.emplace_back("bd mode supports kappa = none, simple-shear or extensional");
  return out;
}

SimulationConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  static const std::map<std::string, KeySpec> table = key_table();
  std::vector<ConfigIssue> issues;
  std::map<std::string, Value> entries;
  std::vector<std::string> order;

  auto add_entry = [&](const std::string& key, const std::string& raw, int line, bool from_override) {
    if (!table.count(key)) {
      issues.push_back({line, (from_override ? "override: unknown key '" : "unknown key '") + key + "'"});
      return;
    }
    if (entries.count(key) && !from_override) {
      issues.push_back({line, "duplicate key '" + key + "'"});
      return;
    }
    if (!entries.count(key)) order.push_back(key);
    entries[key] = Value{raw, line};
  };

  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        issues.push_back({lineno, "malformed section header '" + s + "'"});
        continue;
      }
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      static const char* known[] = {"params", "theta", "flow", "mesh", "initial", "output",
                                    "solver", "continuation", "mms", "bd"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) issues.push_back({lineno, "unknown section [" + section + "]"});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      issues.push_back({lineno, "expected 'key = value', got '" + s + "'"});
      continue;
    }
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string raw = trim(std::string_view(s).substr(eq + 1));
    add_entry(section.empty() ? key : section + "." + key, raw, lineno, false);
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      issues.push_back({0, "override '" + o + "' is not of the form section.key=value"});
      continue;
    }
    add_entry(trim(std::string_view(o).substr(0, eq)), trim(std::string_view(o).substr(eq + 1)), 0, true);
  }

  SimulationConfig c;
  // presets first so explicit velocity/kappa keys win regardless of order
  auto apply = [&](const std::string& key) {
    const Value& v = entries.at(key);
    if (auto e = table.at(key).set(v.raw, c); !e.empty()) issues.push_back({v.line, key + ": " + e});
  };
  for (const char* first : {"flow.amplitude", "flow.rate", "flow.family"})
    if (entries.count(first)) apply(first);
  for (const auto& key : order)
    if (key != "flow.amplitude" && key != "flow.rate" && key != "flow.family") apply(key);
  for (const auto& [key, spec] : table)
    if (spec.required && !entries.count(key)) issues.push_back({0, "missing required key '" + key + "'"});

  if (issues.empty())
    for (const auto& msg : validate_config(c)) issues.push_back({0, msg});
  if (!issues.empty()) {
    std::stable_sort(issues.begin(), issues.end(),
                     [](const ConfigIssue& a, const ConfigIssue& b) {
                       return (a.line == 0 ? 1 << 30 : a.line) < (b.line == 0 ? 1 << 30 : b.line);
                     });
    throw ConfigError(std::move(issues));
  }
  return c;
}

std::string emit_config(const SimulationConfig& c) {
  std::ostringstream os;
  auto d = [](double v) { return format_double(v); };
  auto list = [&](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + d(v[i]);
    return s + "]";
  };
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "mode = \"" << to_string(c.mode) << "\"\n\n";
  os << "[params]\n"
     << "de = " << d(c.params.de) << "\nq0 = " << d(c.params.q0) << "\neps = " << d(c.params.eps)
     << "\ndt = " << d(c.params.dt) << "\nt_end = " << d(c.params.t_end)
     << "\ntol_fp = " << d(c.params.tol_fp) << "\ntol_lin = " << d(c.params.tol_lin)
     << "\nmax_picard = " << c.params.max_picard
     << "\nstrong_form_halved_xdiff = " << b(c.params.strong_form_halved_xdiff) << "\n\n";
  os << "[theta]\nfamily = \"" << to_string(c.theta.family) << "\"\ntheta0 = " << d(c.theta.theta0)
     << "\ngradient = " << list({c.theta.gradient[0], c.theta.gradient[1]})
     << "\namplitude = " << d(c.theta.amplitude) << "\nomega = " << d(c.theta.omega) << "\n\n";
  os << "[flow]\nvelocity = \"" << to_string(c.flow.velocity) << "\"\nkappa = \""
     << to_string(c.flow.kappa) << "\"\namplitude = " << d(c.flow.amplitude)
     << "\nrate = " << d(c.flow.rate) << "\n\n";
  os << "[mesh]\ndx = " << c.mesh.dx << "\ndq = " << c.mesh.dq << "\nn_x = " << c.mesh.n_x
     << "\nn_q = " << c.mesh.n_q << "\nquad_order = " << c.mesh.quad_order
     << "\nx_periodic = " << b(c.mesh.x_periodic) << "\n\n";
  os << "[initial]\nfamily = \"" << to_string(c.initial_family) << "\"\ntheta0 = "
     << d(c.initial_theta0) << "\nvalues_file = \"" << c.initial_values_file << "\"\n\n";
  os << "[output]\ndir = \"" << c.output.dir << "\"\nsnapshot_every = " << c.output.snapshot_every
     << "\nwrite_f64 = " << b(c.output.write_f64) << "\n\n";
  os << "[solver]\ndirect_max_dofs = " << c.solver.direct_max_dofs
     << "\nmax_linear_iterations = " << c.solver.max_linear_iterations
     << "\nallow_unverified = " << b(c.solver.allow_unverified) << "\n\n";
  os << "[continuation]\nschedule = " << list(c.continuation.schedule) << "\n\n";
  std::vector<double> levels(c.mms.levels.begin(), c.mms.levels.end());
  os << "[mms]\nproblem = \"" << to_string(c.mms.problem) << "\"\nlevels = " << list(levels)
     << "\ntemporal_n = " << c.mms.temporal_n << "\ntemporal_dts = " << list(c.mms.temporal_dts)
     << "\ntemporal_t_end = " << d(c.mms.temporal_t_end) << "\n\n";
  os << "[bd]\nparticles = " << c.bd.particles << "\ndt = " << d(c.bd.dt) << "\nt_end = " << d(c.bd.t_end)
     << "\nseed = " << c.bd.seed << "\n";
  return os.str();
}

}  // namespace fenecpd
