#include "qgauss/gaussianity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgauss {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Certification slack: numerical g of a Gaussian state sits within
// truncation error of 1, which must not trip the verdict.
constexpr double kCertSlack = 1e-9;

// Gauss-Legendre nodes/weights on [a, b] by Newton iteration on P_n.
void gauss_legendre(int n, double a, double b, std::vector<double>& xs,
                    std::vector<double>& ws) {
  xs.resize(n);
  ws.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    xs[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    xs[n - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    ws[i] = ws[n - 1 - i] = 0.5 * (b - a) * w;
  }
}

// W(x, p) for one phase-space point. Scaled Laguerre recurrences keep all
// intermediates bounded: the e^{-r^2} envelope is folded into the start
// values, so large grids cannot overflow.
double wigner_point(const Matrix& rho, double x, double p) {
  const int dim = static_cast<int>(rho.rows());
  const double r2 = x * x + p * p;
  const double u = 2.0 * r2;
  const double envelope = std::exp(-0.5 * u);  // e^{-r^2}

  // Diagonal part: sum_n rho_nn (-1)^n e^{-r^2} L_n(2 r^2).
  double acc = 0.0;
  {
    double lm2 = envelope;            // ~L_0
    double lm1 = (1.0 - u) * envelope;  // ~L_1
    double sign = 1.0;
    for (int n = 0; n < dim; ++n) {
      double ln;
      if (n == 0) {
        ln = lm2;
      } else if (n == 1) {
        ln = lm1;
      } else {
        ln = ((2.0 * n - 1.0 - u) * lm1 - (n - 1.0) * lm2) / n;
        lm2 = lm1;
        lm1 = ln;
      }
      acc += sign * rho(n, n).real() * ln;
      sign = -sign;
    }
  }

  // Off-diagonal part, one subdiagonal offset k at a time:
  //   2 Re sum_m rho_{m+k, m} (-1)^m sqrt(m!/(m+k)!) z^k e^{-r^2} L_m^k(2r^2)
  // with z = sqrt(2) (x - i p).
  const double zmag = std::sqrt(u);
  const Complex zphase =
      (zmag > 0.0) ? Complex(std::sqrt(2.0) * x / zmag, -std::sqrt(2.0) * p / zmag)
                   : Complex(1.0, 0.0);
  Complex phase_k(1.0, 0.0);
  double c0 = 1.0;  // |z|^k / sqrt(k!)
  Complex off_acc(0.0, 0.0);
  for (int k = 1; k < dim; ++k) {
    phase_k *= zphase;
    c0 *= zmag / std::sqrt(static_cast<double>(k));
    double cm = c0;
    double lm2 = envelope;                      // ~L_0^k
    double lm1 = (1.0 + k - u) * envelope;      // ~L_1^k
    double sign = 1.0;
    for (int m = 0; m + k < dim; ++m) {
      double lm;
      if (m == 0) {
        lm = lm2;
      } else if (m == 1) {
        lm = lm1;
      } else {
        lm = ((2.0 * m - 1.0 + k - u) * lm1 - (m - 1.0 + k) * lm2) / m;
        lm2 = lm1;
        lm1 = lm;
      }
      if (m > 0) cm *= std::sqrt(static_cast<double>(m) / (m + k));
      Complex entry = rho(m + k, m);
      if (std::abs(entry) > 1e-300) {
        off_acc += entry * (sign * cm * lm) * phase_k;
      }
      sign = -sign;
    }
  }
  return (acc + 2.0 * off_acc.real()) / kPi;
}

// Radial profile of the Wigner function of a diagonal state.
double wigner_radial_diagonal(const Eigen::VectorXd& populations, double r) {
  const int dim = static_cast<int>(populations.size());
  const double u = 2.0 * r * r;
  const double envelope = std::exp(-0.5 * u);
  double acc = 0.0;
  double lm2 = envelope;
  double lm1 = (1.0 - u) * envelope;
  double sign = 1.0;
  for (int n = 0; n < dim; ++n) {
    double ln;
    if (n == 0) {
      ln = lm2;
    } else if (n == 1) {
      ln = lm1;
    } else {
      ln = ((2.0 * n - 1.0 - u) * lm1 - (n - 1.0) * lm2) / n;
      lm2 = lm1;
      lm1 = ln;
    }
    acc += sign * populations(n) * ln;
    sign = -sign;
  }
  return acc / kPi;
}

}  // namespace

GaussianityReport gaussianity(const DensityOperator& rho) {
  GaussianRef ref = reference_gaussian(rho);
  Complex ov = (rho.matrix.cwiseProduct(ref.matrix.matrix.transpose())).sum();
  if (std::abs(ov.imag()) > 1e-10) {
    throw std::runtime_error("gaussianity: overlap has non-real part");
  }
  GaussianityReport rep;
  rep.alpha = ref.alpha;
  rep.overlap = ov.real();
  rep.purity_G = 1.0 / ref.alpha;
  rep.g = rep.overlap / rep.purity_G;
  auto [gmin, gmax] = positivity_window(ref.alpha);
  rep.g_min_pos = gmin;
  rep.g_max_pos = gmax;
  rep.wigner_negativity_certified =
      rep.g < std::min(gmin, 1.0) - kCertSlack || rep.g > gmax + kCertSlack;
  rep.truncation = ref.truncation;
  return rep;
}

DensityOperator phase_average(const DensityOperator& rho) {
  Matrix m = Matrix::Zero(rho.dim, rho.dim);
  m.diagonal() = rho.matrix.diagonal().real().cast<Complex>();
  DensityOperator out = make_density_unchecked(std::move(m), rho.label);
  if (!out.label.empty()) out.label += "|phase-averaged";
  return out;
}

std::pair<double, double> positivity_window(double alpha) {
  if (alpha < 1.0) {
    throw std::invalid_argument("positivity_window: alpha must be >= 1");
  }
  double gmin = 0.0095 * alpha + 0.62 + 0.711 / alpha - 0.333 / (alpha * alpha);
  double gmax = std::sqrt(2.0 / (1.0 + 1.0 / (alpha * alpha)));
  return {gmin, gmax};
}

double wigner_at(const DensityOperator& rho, double x, double p) {
  return wigner_point(rho.matrix, x, p);
}

WignerGrid wigner(const DensityOperator& rho, double extent, int resolution) {
  if (resolution < 16) {
    throw std::invalid_argument("wigner: resolution must be >= 16");
  }
  if (extent <= 0.0) {
    throw std::invalid_argument("wigner: extent must be positive");
  }
  WignerGrid grid;
  grid.extent = extent;
  grid.resolution = resolution;
  grid.cell = 2.0 * extent / (resolution - 1);
  grid.xs.resize(resolution);
  for (int i = 0; i < resolution; ++i) grid.xs[i] = -extent + i * grid.cell;
  grid.values.resize(resolution, resolution);

  const bool diagonal =
      rho.matrix.cwiseAbs().sum() - rho.matrix.diagonal().cwiseAbs().sum() <
      1e-15;
  Eigen::VectorXd pops = rho.matrix.diagonal().real();
  double sum = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      double w;
      if (diagonal) {
        double r = std::hypot(grid.xs[i], grid.xs[j]);
        w = wigner_radial_diagonal(pops, r);
      } else {
        w = wigner_point(rho.matrix, grid.xs[i], grid.xs[j]);
      }
      grid.values(i, j) = w;
      sum += w;
      mn = std::min(mn, w);
    }
  }
  grid.min_value = mn;
  grid.integral = sum * grid.cell * grid.cell;
  return grid;
}

RadialSeries radial_moment_series(const DensityOperator& rho, int n_terms) {
  if (n_terms < 1 || n_terms > 100) {
    throw std::invalid_argument("radial_moment_series: n_terms must be in [1, 100]");
  }
  FirstAndSecondMoments m = moments(rho);
  const double scale = std::max(1.0, m.gamma.trace());
  if (m.d.norm() > 1e-8 || std::abs(m.gamma(0, 0) - m.gamma(1, 1)) > 1e-8 * scale ||
      std::abs(m.gamma(0, 1)) > 1e-8 * scale) {
    throw std::invalid_argument(
        "radial_moment_series: state must be centered with isotropic covariance");
  }
  DensityOperator rs = phase_average(rho);
  const double alpha = m.alpha();
  const double log_alpha = std::log(alpha);

  RadialSeries out;
  out.alpha = alpha;
  out.direct_g = gaussianity(rs).g;

  // High moments need the domain to cover r^2/alpha ~ 2k + O(sqrt(k))
  // past the requested term count; 8 sqrt(alpha) alone starves k ~ 40
  // moments of ~1e-4 of their mass.
  const double radius =
      std::sqrt(alpha) *
      std::max(8.0, std::sqrt(2.0 * n_terms + 12.0 * std::sqrt(1.0 * n_terms) +
                              30.0));
  std::vector<double> xs, ws;
  gauss_legendre(1024, 0.0, radius, xs, ws);
  Eigen::VectorXd pops = rs.matrix.diagonal().real();
  std::vector<double> wvals(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    wvals[i] = wigner_radial_diagonal(pops, xs[i]);
  }

  out.moments.resize(n_terms);
  out.gaussian_moments.resize(n_terms);
  out.partial_sums.resize(n_terms);
  double running = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    double mom = 0.0;
    double term = 0.0;
    const double log_norm = std::lgamma(k + 1.0) + k * log_alpha;
    for (size_t i = 0; i < xs.size(); ++i) {
      double rpow = std::exp((2.0 * k + 1.0) * std::log(xs[i]));
      mom += ws[i] * wvals[i] * rpow;
      term += ws[i] * wvals[i] *
              std::exp((2.0 * k + 1.0) * std::log(xs[i]) - log_norm);
    }
    out.moments[k] = mom;
    out.gaussian_moments[k] = std::exp(k * log_alpha + std::lgamma(k + 1.0)) /
                              (2.0 * kPi);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    running += 4.0 * kPi * sign * term;
    out.partial_sums[k] = running;
  }
  out.tail_averaged =
      (n_terms >= 2)
          ? 0.5 * (out.partial_sums[n_terms - 1] + out.partial_sums[n_terms - 2])
          : out.partial_sums[0];
  double m1 = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    m1 += ws[i] * wvals[i] * xs[i] * xs[i] * xs[i];
  }
  out.r3_quadrature = m1;
  out.r3_expected = alpha / (2.0 * kPi);
  return out;
}

}  // namespace qgauss
