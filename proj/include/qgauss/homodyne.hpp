#pragma once

#include <cstdint>

#include "qgauss/fock.hpp"

namespace qgauss {

/// Monte-Carlo estimate of the overlap Tr(rho rho_G) from the simulated
/// double-homodyne scheme: rho and its reference Gaussian enter a balanced
/// beam splitter, x is read on one output and p on the other, and the
/// joint density at the origin times pi is the overlap. The constant pi
/// is fixed by the vacuum case, whose joint density at the origin is
/// exactly 1/pi in this quadrature convention.
struct HomodyneRun {
  int shots = 0;
  std::uint64_t seed = 0;
  double bandwidth = 0.0;
  double estimate = 0.0;       // overlap estimate (already rescaled by pi)
  double stderr_est = 0.0;     // batch-means standard error
  double direct_overlap = 0.0; // ground truth Tr(rho rho_G)
  double exact_density = 0.0;  // overlap from the noise-free joint density
  double deviation_sigma = 0.0;
  double grid_extent = 0.0;
  int grid_cells = 0;
  int working_dim = 0;
};

struct HomodyneOptions {
  double bandwidth = 0.0;   // 0 selects the default 0.15 sqrt(alpha)
  int working_dim = 24;     // per-mode cutoff of the two-mode simulation
  int grid_cells = 1024;    // sampling grid resolution per axis
  int batches = 32;         // batch-means groups for the standard error
};

/// Full Monte-Carlo pipeline; shots >= 100. Deterministic per seed: the
/// sampler draws from one fixed-order stream, so replays are bit-identical
/// (per-batch substreams keep the estimate independent of batching).
HomodyneRun simulate_overlap(const DensityOperator& rho, int shots,
                             std::uint64_t seed,
                             const HomodyneOptions& options = {});

/// Noise-free mode: the exact joint density at the origin, rescaled.
/// Agrees with Tr(rho rho_G) up to two-mode truncation error.
double exact_overlap_via_homodyne(const DensityOperator& rho,
                                  int working_dim = 24);

/// g = alpha * overlap with linear error propagation.
struct GEstimate {
  double g = 0.0;
  double stderr_g = 0.0;
};
GEstimate g_from_simulation(const HomodyneRun& run, double alpha);

}  // namespace qgauss
