#pragma once

#include <cstdint>
#include <vector>

#include "fenecpd/mesh.hpp"

namespace fenecpd {

/// Isothermal dumbbell ensemble,
///   dq = [kappa q - (2/De) q/(1-|q|^2)] dt + sqrt(2 theta0/(q0^2 De)) dW.
struct BdSetup {
  double de = 1.0;
  double q0 = 1.0;
  double theta0 = 1.0;
  double kappa = 0.0;  ///< dq = 1: scalar rate; dq = 2: kappa = kappa * diag(1,-1)
  std::size_t particles = 100000;
  double dt = 1e-3;
  double t_end = 3.0;
  std::uint64_t seed = 20240611;
  std::size_t block_size = 4096;
  int max_halvings = 10;
};

struct BdResult {
  std::vector<double> histogram;  ///< per Mesh::q_cells(), sums to one
  std::size_t discarded = 0;      ///< particles stuck after max halvings
  std::size_t outside = 0;        ///< kept particles outside every meshed q-cell
  double discarded_fraction = 0.0;
};

/// Euler-Maruyama with rejection of moves that leave the ball (retried with
/// halved substeps). Particle block b draws from a generator seeded by
/// (seed, b), so the histogram does not depend on the thread count.
BdResult bd_oracle(const BdSetup& setup, const Mesh& mesh, unsigned threads = 0);

}  // namespace fenecpd
