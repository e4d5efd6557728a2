#pragma once

#include <cstdint>
#include <utility>
#include <optional>
#include <string>
#include <vector>

#include "qgauss/fock.hpp"

namespace qgauss {

/// Exact extremes of g over all diagonal states of fixed uncertainty at a
/// finite cutoff. With the trace and uncertainty equalities in place the
/// problem is a linear program in the populations, so every optimal vertex
/// has support on at most two levels; enumerating all pairs is exact.
struct LpCertificate {
  double alpha = 1.0;
  int cutoff = 0;
  double g_min_found = 1.0;
  double g_max_found = 1.0;
  std::pair<int, int> support_min{0, 0};
  std::pair<int, int> support_max{0, 0};
  double weight_min = 0.0;  // population on support_min.first
  double weight_max = 0.0;
  double analytic_g_min = 1.0;  // adjacent-pair formula at this alpha
  double analytic_g_max = 1.0;  // limit 2 alpha / (alpha + 1)
};

/// Requires 1 <= alpha <= 2 cutoff - 1. Pure-state optima are reported in
/// the canonical adjacent form (k, k+1) with weight 1 on k.
LpCertificate lp_extremal_g(double alpha, int cutoff);

struct AuditParams {
  int cutoff = 20;
  int samples = 10000;
  std::uint64_t seed = 42;
  /// When set, every draw is blended toward the two-level minimizing
  /// mixture at this uncertainty, concentrating samples near the curve.
  std::optional<double> alpha_focus;
};

struct AuditSample {
  double alpha = 0.0;
  double g = 0.0;
  double margin = 0.0;  // alpha - alpha_min(g)
};

struct AuditReport {
  AuditParams params;
  int evaluated = 0;
  int skipped = 0;               // per-sample construction failures
  int violations_sr = 0;         // alpha < 1 - 1e-8
  int violations_bound = 0;      // margin < -1e-7
  double min_alpha_seen = 0.0;
  AuditSample worst;             // smallest margin
  double phase_avg_max_dev = 0.0;  // max |g(rho) - g(phase_average(rho))|
};

inline constexpr double kSrTolerance = 1e-8;
inline constexpr double kBoundTolerance = 1e-7;

/// Randomized global check of the bound: draws diagonal Dirichlet
/// mixtures, Haar-random pure-state mixtures (projected to the centered
/// isotropic normal form by displacement/rotation/squeeze), and noisy
/// two-level mixtures, then verifies that no sample undercuts alpha_min(g).
/// Fully deterministic for a fixed seed.
AuditReport random_state_audit(const AuditParams& params);

/// One draw of the non-diagonal ensemble after normal-form projection;
/// exposed for tests that need the raw states.
DensityOperator audit_random_state(std::uint64_t seed, int cutoff);

}  // namespace qgauss
