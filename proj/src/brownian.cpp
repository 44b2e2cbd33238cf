#include "fenecpd/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "fenecpd/error.hpp"

namespace fenecpd {

namespace {

struct BlockCounts {
  std::vector<std::size_t> bins;
  std::size_t discarded = 0;
  std::size_t outside = 0;
};

class Integrator {
 public:
  Integrator(const BdSetup& s, int dq, std::mt19937_64& rng)
      : s_(s), dq_(dq), rng_(rng), sigma_(std::sqrt(2.0 * s.theta0 / (s.q0 * s.q0 * s.de))) {}

  // Advances q by h; returns false when the move still leaves the ball after
  // the allowed number of halvings.
  bool advance(double* q, double h, int depth) {
    double trial[2] = {0.0, 0.0};
    const double sq = std::sqrt(h);
    double r2 = 0.0;
    for (int k = 0; k < dq_; ++k) r2 += q[k] * q[k];
    const double spring = 2.0 / (s_.de * (1.0 - r2));
    for (int k = 0; k < dq_; ++k) {
      // kappa q: scalar rate for dq = 1, rate * diag(1,-1) for dq = 2
      const double kq = (k == 0 ? 1.0 : -1.0) * s_.kappa * q[k];
      trial[k] = q[k] + (kq - spring * q[k]) * h + sigma_ * sq * normal_(rng_);
    }
    double t2 = 0.0;
    for (int k = 0; k < dq_; ++k) t2 += trial[k] * trial[k];
    if (t2 < 1.0) {
      for (int k = 0; k < dq_; ++k) q[k] = trial[k];
      return true;
    }
    if (depth >= s_.max_halvings) return false;
    return advance(q, 0.5 * h, depth + 1) && advance(q, 0.5 * h, depth + 1);
  }

 private:
  const BdSetup& s_;
  int dq_;
  std::mt19937_64& rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double sigma_;
};

}  // namespace

BdResult bd_oracle(const BdSetup& setup, const Mesh& mesh, unsigned threads) {
  if (!(setup.de > 0.0) || !(setup.q0 > 0.0) || !(setup.theta0 > 0.0))
    throw ValidationError("bd_oracle: de, q0 and theta0 must be > 0");
  if (!(setup.dt > 0.0) || !(setup.t_end >= 0.0)) throw ValidationError("bd_oracle: invalid time grid");
  if (setup.particles == 0 || setup.block_size == 0)
    throw ValidationError("bd_oracle: particle and block counts must be positive");
  if (setup.max_halvings < 0) throw ValidationError("bd_oracle: max_halvings must be >= 0");

  const int dq = mesh.dq();
  const int nq = mesh.n_q();
  const double h = mesh.h_q();
  const double s = mesh.scale();
  std::vector<int> bin_of(dq == 1 ? nq : nq * nq, -1);
  for (std::size_t b = 0; b < mesh.q_cells().size(); ++b) {
    const auto& c = mesh.q_cells()[b];
    const int i = static_cast<int>(std::lround((c.lower[0] + s) / h));
    const int j = dq == 2 ? static_cast<int>(std::lround((c.lower[1] + s) / h)) : 0;
    bin_of[i + nq * j] = static_cast<int>(b);
  }

  const long steps = std::lround(setup.t_end / setup.dt);
  const std::size_t nblocks = (setup.particles + setup.block_size - 1) / setup.block_size;
  std::vector<BlockCounts> blocks(nblocks);

  auto run_block = [&](std::size_t b) {
    BlockCounts& out = blocks[b];
    out.bins.assign(mesh.q_cells().size(), 0);
    std::seed_seq seq{static_cast<std::uint32_t>(setup.seed), static_cast<std::uint32_t>(setup.seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    Integrator integ(setup, dq, rng);
    const std::size_t first = b * setup.block_size;
    const std::size_t last = std::min(setup.particles, first + setup.block_size);
    for (std::size_t p = first; p < last; ++p) {
      double q[2] = {0.0, 0.0};
      bool alive = true;
      for (long k = 0; k < steps && alive; ++k) alive = integ.advance(q, setup.dt, 0);
      if (!alive) {
        ++out.discarded;
        continue;
      }
      // connector coordinates on the mesh scale
      const int i = static_cast<int>(std::floor((q[0] * s + s) / h));
      const int j = dq == 2 ? static_cast<int>(std::floor((q[1] * s + s) / h)) : 0;
      const int bin = (i >= 0 && i < nq && j >= 0 && j < nq) ? bin_of[i + nq * j] : -1;
      if (bin < 0)
        ++out.outside;
      else
        ++out.bins[bin];
    }
  };

  unsigned nt = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, nblocks));
  if (nt <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < nblocks; b += nt) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  BdResult r;
  std::vector<std::size_t> counts(mesh.q_cells().size(), 0);
  for (const auto& b : blocks) {
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += b.bins[k];
    r.discarded += b.discarded;
    r.outside += b.outside;
  }
  std::size_t total = 0;
  for (auto c : counts) total += c;
  r.histogram.assign(counts.size(), 0.0);
  if (total > 0)
    for (std::size_t k = 0; k < counts.size(); ++k)
      r.histogram[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  r.discarded_fraction = static_cast<double>(r.discarded) / static_cast<double>(setup.particles);
  return r;
}

}  // namespace fenecpd
