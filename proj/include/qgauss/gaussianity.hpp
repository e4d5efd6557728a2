#pragma once

#include <utility>
#include <vector>

#include "qgauss/gaussian.hpp"

namespace qgauss {

/// Degree of Gaussianity g = Tr(rho rho_G) / Tr(rho_G^2) of a state,
/// together with the Wigner-positivity verdict derived from it.
///
/// purity_G is the exact value 1/alpha: the purity of a Gaussian state is
/// invariant under the displacement/squeeze used to build its Fock-basis
/// realization, so the thermal-core identity Tr(rho_G^2) = 1/alpha holds
/// without the truncated tail that a literal matrix trace would drop.
struct GaussianityReport {
  double g = 1.0;
  double overlap = 1.0;     // Tr(rho rho_G), computed on the Fock matrices
  double alpha = 1.0;
  double purity_G = 1.0;    // 1/alpha
  double g_min_pos = 0.0;   // positivity window, fitted lower edge
  double g_max_pos = 0.0;   // positivity window, analytic upper edge
  bool wigner_negativity_certified = false;
  double truncation = 0.0;  // indicator of the reference construction
};

/// g together with the positivity verdict. g = 1 for Gaussian states
/// (the converse does not hold: g = 1 does not certify Gaussianity).
GaussianityReport gaussianity(const DensityOperator& rho);

/// Uniform phase averaging: in the number basis this is exactly deletion
/// of all off-diagonal elements. Fixed point for diagonal states.
DensityOperator phase_average(const DensityOperator& rho);

/// Range of g compatible with a strictly positive Wigner function at a
/// given uncertainty. Lower edge is a fitted formula, upper edge analytic:
///   g_min = 0.0095 a + 0.62 + 0.711/a - 0.333/a^2,  g_max = sqrt(2/(1+1/a^2)).
/// Values returned verbatim; certification additionally clamps the lower
/// edge at 1 because Gaussian states (g = 1) always have positive Wigner
/// functions while the fit slightly overshoots 1 as alpha -> 1.
std::pair<double, double> positivity_window(double alpha);

/// W(x, p) sampled on a square grid [-extent, extent]^2.
struct WignerGrid {
  double extent = 0.0;
  int resolution = 0;
  std::vector<double> xs;              // axis coordinates (size resolution)
  Eigen::MatrixXd values;              // values(i, j) = W(xs[i], xs[j])
  double min_value = 0.0;
  double cell = 0.0;                   // grid step
  double integral = 0.0;               // sum * cell^2, should be ~Tr(rho)
};

/// Fock-basis Wigner function via generalized Laguerre polynomials,
/// normalized so that the full integral over dx dp equals Tr(rho).
/// Vacuum peaks at W(0,0) = 1/pi. resolution must be >= 16.
WignerGrid wigner(const DensityOperator& rho, double extent, int resolution);

/// Single-point Wigner evaluation (same convention as wigner()).
double wigner_at(const DensityOperator& rho, double x, double p);

/// Expansion of g in radial moments of the phase-averaged Wigner function:
///   g = 4 pi sum_k (-1)^k <r^{2k+1}> / (k! alpha^k),
/// with <r^{2k+1}> = integral of W_s(r) r^{2k+1} dr. The series converges
/// geometrically (ratio 1/alpha) for alpha > 1 and only in the Abel sense
/// at alpha = 1, where partial sums oscillate between 0 and 2; the
/// averaged tail estimate resolves that boundary case.
struct RadialSeries {
  double alpha = 1.0;
  std::vector<double> moments;        // quadrature radial moments
  std::vector<double> gaussian_moments;  // alpha^k Gamma(k+1) / (2 pi)
  std::vector<double> partial_sums;
  double direct_g = 1.0;
  double tail_averaged = 1.0;         // mean of the last two partial sums
  double r3_quadrature = 0.0;         // must match alpha/(2 pi)
  double r3_expected = 0.0;
};

/// Requires a centered state with isotropic covariance (gamma prop. to
/// identity); phase-averages internally. n_terms <= 100.
RadialSeries radial_moment_series(const DensityOperator& rho, int n_terms);

}  // namespace qgauss
