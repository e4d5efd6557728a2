#pragma once

#include <complex>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "qgauss/tolerances.hpp"

namespace qgauss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Density operator on the truncated number basis {|0>, ..., |dim-1>}.
/// Dimensionless convention: hbar = 1, unit mass and frequency.
/// Instances are treated as immutable; all operations return new values.
struct DensityOperator {
  int dim = 0;
  Matrix matrix;
  std::string label;
};

/// A dim x dim operator in the number basis.
struct OperatorMatrix {
  int dim = 0;
  Matrix matrix;
  bool hermitian = false;
};

/// Worst-case defects of a candidate density matrix, report-only.
struct ValidationReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool psd_ok = false;
  bool passed() const { return hermitian_ok && trace_ok && psd_ok; }
};

/// Annihilation operator: a[n-1, n] = sqrt(n). Throws for dim < 2.
OperatorMatrix annihilation_operator(int dim);
/// Creation operator, the conjugate transpose of annihilation_operator.
OperatorMatrix creation_operator(int dim);
/// Number operator as an exact diagonal diag(0, 1, ..., dim-1).
OperatorMatrix number_operator(int dim);
/// Position quadrature x = (a + a^dag)/sqrt(2); vacuum variance 1/2.
OperatorMatrix position_operator(int dim);
/// Momentum quadrature p = (a - a^dag)/(i sqrt(2)).
OperatorMatrix momentum_operator(int dim);

/// Frequently used operators for one cutoff, built once and reused.
struct FockOperators {
  int dim;
  Matrix a, a_dag, n;
  Matrix x, p;
  Matrix x2, p2, xp_sym;  // matrix products of the truncated quadratures

  explicit FockOperators(int dim);
};

/// Tr(rho * op). Throws on dimension mismatch.
Complex expectation(const DensityOperator& rho, const OperatorMatrix& op);
Complex expectation(const DensityOperator& rho, const Matrix& op);

/// Expectation of a Hermitian operator; checks that the imaginary part is
/// at roundoff level and returns the real part.
double real_expectation(const DensityOperator& rho, const Matrix& op);

/// Defect report for the density-matrix invariants (Hermiticity, unit
/// trace, positive semidefiniteness). Never throws.
ValidationReport validate(const DensityOperator& rho,
                          const ToleranceProfile& tol = default_tolerances());

/// Population of the top 10% of Fock levels. Large values signal that
/// results are truncation-limited.
double truncation_indicator(const DensityOperator& rho);

/// Warn threshold for truncation_indicator used by state-transforming ops.
inline constexpr double kTruncationWarnLevel = 1e-8;

/// |n><n| at the given cutoff. Throws if n >= dim or n < 0.
DensityOperator fock_state(int n, int dim);

/// Diagonal mixture sum_n populations[n] |n><n|. Populations must be
/// nonnegative and sum to 1 within 1e-10.
DensityOperator mixture_state(const std::map<int, double>& populations, int dim);

/// Thermal state with the given mean photon number, normalized on the
/// truncated space. Populations are proportional to (nbar/(nbar+1))^n.
DensityOperator thermal_state(double mean_photons, int dim);

/// Internal helper: build a DensityOperator without running validation.
/// Used where a controlled trace deficit is expected (truncated reference
/// states); regular constructors validate.
DensityOperator make_density_unchecked(Matrix m, std::string label = {});

/// Build and validate; throws std::invalid_argument on defect.
DensityOperator make_density(Matrix m, std::string label = {},
                             const ToleranceProfile& tol = default_tolerances());

}  // namespace qgauss
