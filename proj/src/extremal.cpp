#include "qgauss/extremal.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace qgauss {

double scaled_thermal_population(double alpha, int k) {
  if (alpha < 1.0) {
    throw std::invalid_argument("scaled_thermal_population: alpha >= 1 required");
  }
  if (k < 0) throw std::invalid_argument("scaled_thermal_population: k >= 0");
  if (alpha == 1.0) return k == 0 ? 1.0 : 0.0;
  double q = (alpha - 1.0) / (alpha + 1.0);
  return 2.0 * alpha * std::pow(q, k) / (alpha + 1.0);
}

double number_state_g(int n) {
  if (n < 0) throw std::invalid_argument("number_state_g: n >= 0 required");
  if (n == 0) return 1.0;
  if (n <= 12) {
    // n^n and (n+1)^{n+1} stay below 2^53 here, so the ratio is a single
    // correctly rounded division.
    auto ipow = [](std::uint64_t b, int e) {
      std::uint64_t r = 1;
      for (int i = 0; i < e; ++i) r *= b;
      return r;
    };
    double num = static_cast<double>((2 * n + 1) * ipow(n, n));
    double den = static_cast<double>(ipow(n + 1, n + 1));
    return num / den;
  }
  double ln = std::log(2.0 * n + 1.0) + n * std::log(static_cast<double>(n)) -
              (n + 1.0) * std::log(n + 1.0);
  return std::exp(ln);
}

double min_branch_g(double alpha, int n) {
  if (n < 0) throw std::invalid_argument("min_branch_g: n >= 0 required");
  if (alpha < 1.0) throw std::invalid_argument("min_branch_g: alpha >= 1 required");
  if (n == 0) return 4.0 * alpha / ((alpha + 1.0) * (alpha + 1.0));
  double q = (alpha - 1.0) / (alpha + 1.0);
  return 4.0 * alpha * (n + 1.0) * std::pow(q, n) /
         ((alpha + 1.0) * (alpha + 1.0));
}

double max_branch_g_limit(double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("max_branch_g_limit: alpha >= 1");
  return 2.0 * alpha / (alpha + 1.0);
}

int interval_index(double g) {
  if (!(g > kGLowerBound) || g > 1.0) {
    throw std::invalid_argument("interval_index: g must lie in (2/e, 1]");
  }
  int n = 0;
  while (number_state_g(n + 1) >= g) {
    ++n;
    if (n > 10'000'000) {
      throw std::runtime_error("interval_index: g too close to 2/e");
    }
  }
  return n;
}

DensityOperator rho_min(int n, double r, int dim) {
  if (n < 0 || r < 0.0 || r > 1.0) {
    throw std::invalid_argument("rho_min: need n >= 0 and r in [0, 1]");
  }
  if (dim <= n + 1) {
    throw std::invalid_argument("rho_min: cutoff must exceed n+1");
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(n, n) = r;
  m(n + 1, n + 1) = 1.0 - r;
  return make_density_unchecked(std::move(m), "rho_min");
}

DensityOperator rho_max(int n, double r, int dim) {
  if (n < 0 || r < 0.0 || r > 1.0) {
    throw std::invalid_argument("rho_max: need n >= 0 and r in [0, 1]");
  }
  if (dim <= n) throw std::invalid_argument("rho_max: cutoff must exceed n");
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 0) = r;
  m(n, n) += 1.0 - r;
  return make_density_unchecked(std::move(m), "rho_max");
}

double rho_max_g(int n, double r) {
  double alpha = r + (1.0 - r) * (2.0 * n + 1.0);
  return r * scaled_thermal_population(alpha, 0) +
         (1.0 - r) * scaled_thermal_population(alpha, n);
}

double max_branch_deficit(int n, double r) {
  double alpha = r + (1.0 - r) * (2.0 * n + 1.0);
  return max_branch_g_limit(alpha) - rho_max_g(n, r);
}

BoundResult alpha_min(double g) {
  if (!(g > kGLowerBound) || g > 2.0) {
    throw std::invalid_argument("alpha_min: g must lie in (2/e, 2]");
  }
  BoundResult res;
  res.g = g;
  if (g > 1.0) {
    res.method = BoundMethod::ClosedFormHigh;
    res.n = -1;
    res.alpha_min = (g == 2.0) ? std::numeric_limits<double>::infinity()
                               : g / (2.0 - g);
    return res;
  }
  if (g > 0.75) {
    res.method = BoundMethod::ClosedFormLow;
    res.n = 0;
    res.alpha_min = (2.0 + 2.0 * std::sqrt(1.0 - g) - g) / g;
    return res;
  }
  int n = interval_index(g);
  res.method = BoundMethod::Polynomial;
  res.n = n;
  double ub = number_state_g(n);
  if (g >= ub * (1.0 - 1e-12)) {
    // Number-state tie: the pure |n> sits at the smaller of the two roots.
    res.alpha_min = 2.0 * n + 1.0;
    return res;
  }
  // min_branch_g(., n) rises from the left bracket edge before falling, so
  // g(alpha) - g changes sign exactly once, on the descending side.
  double lo = 2.0 * n + 1.0 + 1e-15;
  double hi = 2.0 * n + 3.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    if (min_branch_g(mid, n) - g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.alpha_min = 0.5 * (lo + hi);
  return res;
}

std::pair<ExtremalPoint, ExtremalPoint> extremal_points(double alpha) {
  if (alpha < 1.0 - 1e-12) {
    throw std::invalid_argument("extremal_points: alpha >= 1 required");
  }
  alpha = std::max(alpha, 1.0);
  int n = static_cast<int>(std::floor(0.5 * (alpha - 1.0)));
  double r = 0.5 * (2.0 * n + 3.0 - alpha);
  ExtremalPoint mn{alpha, min_branch_g(alpha, n), Branch::Min, n, r};
  // Max-branch curve points carry the n -> inf limit; n = -1 marks it.
  ExtremalPoint mx{alpha, max_branch_g_limit(alpha), Branch::Max, -1, 1.0};
  return {mn, mx};
}

std::vector<CurveRow> extremal_curve(double from, double to, int samples) {
  if (from < 1.0 - 1e-12) {
    throw std::invalid_argument("extremal_curve: range must start at alpha >= 1");
  }
  if (samples < 2 || to < from) {
    throw std::invalid_argument("extremal_curve: need samples >= 2 and to >= from");
  }
  std::vector<CurveRow> rows;
  rows.reserve(samples);
  double step = (to - from) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    double alpha = std::max(1.0, from + i * step);
    auto [mn, mx] = extremal_points(alpha);
    rows.push_back({alpha, mn.g, mx.g, mn.n, mn.r});
  }
  return rows;
}

}  // namespace qgauss
