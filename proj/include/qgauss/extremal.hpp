#pragma once

#include <utility>
#include <vector>

#include "qgauss/fock.hpp"

namespace qgauss {

/// Lower bound of g over all states: lim_{n->inf} g(|n>) = 2/e.
inline constexpr double kGLowerBound = 0.73575888234288464320;  // 2/e

enum class Branch { Min, Max };

/// One point of the extremal g-vs-alpha curve.
/// Min branch: mixture r|n><n| + (1-r)|n+1><n+1| with
///   alpha = r(2n+1) + (1-r)(2n+3); r = 1 is the pure-|n> limit point
///   (the only representation of the vacuum at alpha = 1).
/// Max branch: mixture r|0><0| + (1-r)|n><n| with alpha = r + (1-r)(2n+1);
///   the supremum 2 alpha/(alpha+1) is reached only as n->inf, r->1.
struct ExtremalPoint {
  double alpha = 1.0;
  double g = 1.0;
  Branch branch = Branch::Min;
  int n = 0;
  double r = 0.0;
};

enum class BoundMethod { ClosedFormLow, ClosedFormHigh, Polynomial };

/// Result of the Gaussianity-bounded uncertainty relation alpha >= f(g).
struct BoundResult {
  double g = 1.0;
  double alpha_min = 1.0;
  int n = 0;  // two-level interval index; -1 on the g > 1 branch
  BoundMethod method = BoundMethod::ClosedFormLow;
};

/// g-contribution per unit population at level k for a state of
/// uncertainty alpha: 2 alpha (alpha-1)^k / (alpha+1)^{k+1}. Equals alpha
/// times the reference-thermal population of level k.
double scaled_thermal_population(double alpha, int k);

/// g of the number state |n>: n^n (2n+1) / (n+1)^{n+1}. Exact double
/// rationals for n <= 12, log-domain beyond. Strictly decreasing, -> 2/e.
double number_state_g(int n);

/// g of the adjacent-pair minimizing family at a given uncertainty:
///   4 alpha (n+1) (alpha-1)^n / (alpha+1)^{n+2},  alpha in [2n+1, 2n+3].
double min_branch_g(double alpha, int n);

/// Limiting maximal g at fixed uncertainty: 2 alpha / (alpha + 1).
double max_branch_g_limit(double alpha);

/// The unique n with number_state_g(n+1) < g <= number_state_g(n).
/// Ties land on the smaller n (the pure number state). Requires 2/e < g <= 1.
int interval_index(double g);

/// r|n><n| + (1-r)|n+1><n+1|; r in [0, 1], needs dim > n+1.
DensityOperator rho_min(int n, double r, int dim);

/// r|0><0| + (1-r)|n><n|; r in [0, 1], needs dim > n. Finite-n member of
/// the max-branch family; see max_branch_deficit for its gap to the limit.
DensityOperator rho_max(int n, double r, int dim);

/// g of rho_max(n, r) minus nothing -- the exact finite-n value
/// (1-w) 2a/(a+1) + w * scaled_thermal_population(a, n) with w = 1-r.
double rho_max_g(int n, double r);

/// Gap between the max-branch limit and the finite-n member at the same alpha.
double max_branch_deficit(int n, double r);

/// Minimal uncertainty compatible with Gaussianity g, for 2/e < g <= 2.
///   3/4 < g <= 1 : alpha = (2 + 2 sqrt(1-g) - g) / g
///   g > 1       : alpha = g / (2 - g)   (+inf at g = 2, sup not attained)
///   2/e < g <= 3/4: bisection of min_branch_g(., n) on [2n+1, 2n+3].
/// The bracket function rises from the left endpoint before falling, so the
/// single sign change bisection converges to is the descending crossing --
/// except when g equals a number-state value, which snaps to alpha = 2n+1.
BoundResult alpha_min(double g);

/// One emitted row of the extremal curve.
struct CurveRow {
  double alpha;
  double g_min;
  double g_max;
  int n_min;
  double r_min;
};

/// Curve samples on [from, to], samples >= 2, from >= 1. g_min is the
/// adjacent-mixture value (non-monotone within each [2n+1, 2n+3] bracket);
/// g_max is the analytic limit.
std::vector<CurveRow> extremal_curve(double from, double to, int samples);

/// The two ExtremalPoints behind one curve row.
std::pair<ExtremalPoint, ExtremalPoint> extremal_points(double alpha);

}  // namespace qgauss
