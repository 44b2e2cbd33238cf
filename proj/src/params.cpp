#include "fenecpd/params.hpp"

#include <cmath>
#include <sstream>

#include "fenecpd/error.hpp"

namespace fenecpd {

std::vector<std::string> Params::violations() const {
  std::vector<std::string> out;
  auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_positive(de)) out.emplace_back("de must be > 0");
  if (!finite_positive(q0)) out.emplace_back("q0 must be > 0");
  if (!(std::isfinite(eps) && eps > 0.0 && eps < 1.0))
    out.emplace_back("eps must lie in (0,1) so that the entropy cutoff g_eps has ordered branches");
  if (!finite_positive(dt)) out.emplace_back("dt must be > 0");
  if (!(std::isfinite(t_end) && t_end >= 0.0))
    out.emplace_back("t_end must be >= 0");
  else if (t_end > 0.0 && t_end < dt)
    out.emplace_back("t_end must be 0 or >= dt");
  if (!finite_positive(tol_fp)) out.emplace_back("tol_fp must be > 0");
  if (!finite_positive(tol_lin)) out.emplace_back("tol_lin must be > 0");
  if (max_picard < 1) out.emplace_back("max_picard must be >= 1");
  return out;
}

void Params::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid parameters:";
  for (const auto& s : v) os << "\n  " << s;
  throw ValidationError(os.str());
}

}  // namespace fenecpd
