#pragma once

#include <vector>

#include "qgauss/fock.hpp"

namespace qgauss {

/// Multipliers of the stationarity operators. l2, l3 weight the linear
/// quadrature terms, l4 the symmetrized cross term, l5 the x^2 - p^2
/// anisotropy, l6 the number operator (overlap extremization only).
struct Lambdas {
  double l2 = 0.0;
  double l3 = 0.0;
  double l4 = 0.0;
  double l5 = 0.0;
  double l6 = 0.0;
};

enum class LagrangeKind {
  Uncertainty,     // n + 1/2 + l2 x + l3 p + l4 (xp+px) + l5 (x^2-p^2)
  OverlapFull,     // e^{-beta n} + l2 x + l3 p + l4 (xp+px) + l5 (x^2-p^2) + l6 n
  OverlapDiagonal  // e^{-beta n} + l6 n  (diagonal in the number basis)
};

struct LagrangeOperator {
  LagrangeKind kind;
  Lambdas lambdas;
  double beta = 0.0;
  OperatorMatrix matrix;
};

/// Assemble one of the three stationarity operators. beta >= 0 is required
/// for the overlap kinds; e^{-beta n} is built as an exact diagonal.
LagrangeOperator build_operator(LagrangeKind kind, const Lambdas& lambdas,
                                double beta, int dim);

/// For elliptic quadratic coefficients (l4^2 + l5^2 < 1/4) the Uncertainty
/// operator is a displaced, squeezed harmonic oscillator: its spectrum is
/// nu (k + 1/2) + shift with nu = sqrt(1 - 4 (l4^2 + l5^2)) and
/// shift = -(l2, l3) A^{-1} (l2, l3)^T / 2, A = [[1+2 l5, 2 l4], [2 l4, 1-2 l5]].
/// Only at l4 = l5 = 0 does the level spacing stay exactly 1.
struct QuadraticSpectrum {
  bool elliptic = false;
  double spacing = 1.0;  // nu
  double shift = 0.0;
};
QuadraticSpectrum predicted_spectrum(const Lambdas& lambdas);

/// Outcome of checking a candidate state against the stationarity
/// conditions of the overlap extremization at fixed uncertainty.
struct StationarityCertificate {
  DensityOperator candidate;
  double alpha = 1.0;
  double beta = 0.0;
  double lambda6 = 0.0;
  double common_eigenvalue = 0.0;
  std::vector<double> residuals;    // ||(H - mu)|psi>|| per support vector
  bool eigenvalue_extremal = false; // mu extremal among all diagonal entries
  bool passed = false;
};

/// Certify a two-level diagonal mixture (or a pure level, when the weight
/// is 0 or 1): solve the scalar degeneracy condition
///   e^{-beta a} + l6 a = e^{-beta b} + l6 b
/// for l6, then verify that both support levels are eigenvectors of the
/// diagonal overlap operator with a common, extremal eigenvalue. Adjacent
/// levels always admit such an l6; non-adjacent supports fail the
/// extremality ordering because e^{-beta k} + l6 k is strictly convex in k.
StationarityCertificate certify_two_level(int level_a, int level_b,
                                          double weight_a, int dim,
                                          double tolerance = 1e-10);

/// certify_two_level for the min-branch family r|n><n| + (1-r)|n+1><n+1|.
StationarityCertificate certify_min_state(int n, double r, int dim,
                                          double tolerance = 1e-10);

/// Minimum of Tr(rho (1 + 2n)) over all states: 1, attained by the vacuum;
/// 3 on the orthogonal complement of the vacuum.
struct ReducedSrReport {
  int dim = 0;
  double min_eigenvalue = 0.0;
  bool vacuum_is_argmin = false;
  double min_excluding_vacuum = 0.0;
};
ReducedSrReport reduced_sr_check(int dim);

}  // namespace qgauss
