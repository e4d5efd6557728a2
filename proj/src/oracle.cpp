#include "qgauss/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qgauss/extremal.hpp"
#include "qgauss/gaussian.hpp"
#include "qgauss/gaussianity.hpp"

namespace qgauss {

namespace {

struct PairValue {
  double g;
  int a, b;
  double weight_a;
};

// Canonical reporting form: a pure level k becomes the adjacent pair
// (k, k+1) with all weight on k, matching the two-level family it bounds.
PairValue canonical(PairValue v, int cutoff) {
  auto as_pure = [&](int k) -> PairValue {
    if (k + 1 < cutoff) return {v.g, k, k + 1, 1.0};
    return {v.g, k - 1, k, 0.0};
  };
  if (v.weight_a >= 1.0) return as_pure(v.a);
  if (v.weight_a <= 0.0) return as_pure(v.b);
  return v;
}

}  // namespace

LpCertificate lp_extremal_g(double alpha, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("lp_extremal_g: cutoff >= 2");
  if (alpha < 1.0 || alpha > 2.0 * cutoff - 1.0) {
    throw std::invalid_argument(
        "lp_extremal_g: alpha infeasible for this cutoff");
  }
  bool found = false;
  PairValue best_min{0, 0, 0, 0}, best_max{0, 0, 0, 0};
  for (int a = 0; a < cutoff; ++a) {
    for (int b = a + 1; b < cutoff; ++b) {
      // weight on a solving w (2a+1) + (1-w)(2b+1) = alpha
      double w = (2.0 * b + 1.0 - alpha) / (2.0 * (b - a));
      if (w < 0.0 || w > 1.0) continue;
      double g = w * scaled_thermal_population(alpha, a) +
                 (1.0 - w) * scaled_thermal_population(alpha, b);
      PairValue v{g, a, b, w};
      if (!found || g < best_min.g) best_min = v;
      if (!found || g > best_max.g) best_max = v;
      found = true;
    }
  }
  if (!found) {
    throw std::runtime_error("lp_extremal_g: no feasible two-level state");
  }
  best_min = canonical(best_min, cutoff);
  best_max = canonical(best_max, cutoff);

  LpCertificate cert;
  cert.alpha = alpha;
  cert.cutoff = cutoff;
  cert.g_min_found = best_min.g;
  cert.g_max_found = best_max.g;
  cert.support_min = {best_min.a, best_min.b};
  cert.support_max = {best_max.a, best_max.b};
  cert.weight_min = best_min.weight_a;
  cert.weight_max = best_max.weight_a;
  int n = static_cast<int>(std::floor(0.5 * (alpha - 1.0)));
  cert.analytic_g_min = min_branch_g(alpha, n);
  cert.analytic_g_max = max_branch_g_limit(alpha);
  return cert;
}

namespace {

// Haar-like random unit vector on the bottom `support` levels.
Vector random_pure_vector(std::mt19937_64& rng, int dim, int support) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v = Vector::Zero(dim);
  for (int k = 0; k < support; ++k) {
    v(k) = Complex(gauss(rng), gauss(rng));
  }
  v /= v.norm();
  return v;
}

Eigen::VectorXd dirichlet(std::mt19937_64& rng, int k) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) w(i) = gamma(rng);
  w /= w.sum();
  return w;
}

// Non-diagonal state that is centered and isotropic by construction:
// coherences only between levels >= 3 apart never touch the linear or
// quadratic quadrature forms.
DensityOperator sparse_coherence_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  int n_vecs = 2 + static_cast<int>(rng() % 3);
  Eigen::VectorXd w = dirichlet(rng, n_vecs);
  Matrix m = Matrix::Zero(dim, dim);
  for (int v = 0; v < n_vecs; ++v) {
    int stride = 3 + static_cast<int>(rng() % 3);
    int offset = static_cast<int>(rng() % 3);
    Vector vec = Vector::Zero(dim);
    for (int level = offset; level < dim / 2; level += stride) {
      vec(level) = Complex(gauss(rng), gauss(rng));
    }
    if (vec.norm() < 1e-12) vec(offset) = 1.0;
    vec /= vec.norm();
    m += w(v) * (vec * vec.adjoint());
  }
  return make_density_unchecked(std::move(m), "audit-sparse");
}

// Displace/rotate/squeeze a state onto the centered isotropic normal form.
// The corrections are exact unitaries but the measured moments come from
// truncated quadratures, so the map is only approximately symplectic and
// the reduction is iterated to a fixed point.
DensityOperator project_normal_form(DensityOperator rho) {
  FockOperators ops(rho.dim);
  for (int pass = 0; pass < 8; ++pass) {
    FirstAndSecondMoments m = moments(rho, ops);
    double off = m.gamma(0, 1);
    double dd = m.gamma(0, 0) - m.gamma(1, 1);
    if (m.d.norm() <= 1e-13 && std::hypot(off, dd) <= 1e-13) break;
    if (m.d.norm() > 1e-13) {
      Complex delta(-m.d(0) / std::sqrt(2.0), -m.d(1) / std::sqrt(2.0));
      rho = apply(displacement_op(delta, rho.dim), rho);
      m = moments(rho, ops);
      off = m.gamma(0, 1);
      dd = m.gamma(0, 0) - m.gamma(1, 1);
    }
    if (std::hypot(off, dd) > 1e-13) {
      // principal angle of gamma; rotation_op(theta) maps it onto the axes
      double theta = 0.5 * std::atan2(2.0 * off, dd);
      rho = apply(rotation_op(theta, rho.dim), rho);
      m = moments(rho, ops);
      double r = 0.25 * std::log(m.gamma(0, 0) / m.gamma(1, 1));
      if (std::abs(r) > 1e-15) {
        rho = apply(squeeze_op(Complex(r, 0.0), rho.dim), rho);
      }
    }
  }
  return rho;
}

}  // namespace

DensityOperator audit_random_state(std::uint64_t seed, int cutoff) {
  std::mt19937_64 rng(seed);
  int support = std::max(2, cutoff / 2);
  int rank = 1 + static_cast<int>(rng() % 4);
  Eigen::VectorXd w = dirichlet(rng, rank);
  Matrix m = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < rank; ++k) {
    Vector v = random_pure_vector(rng, cutoff, support);
    m += w(k) * (v * v.adjoint());
  }
  DensityOperator rho = make_density_unchecked(std::move(m), "audit");
  return project_normal_form(rho);
}

AuditReport random_state_audit(const AuditParams& params) {
  if (params.samples < 1) {
    throw std::invalid_argument("random_state_audit: samples >= 1");
  }
  if (params.cutoff < 8) {
    throw std::invalid_argument("random_state_audit: cutoff >= 8");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  AuditReport rep;
  rep.params = params;
  rep.min_alpha_seen = std::numeric_limits<double>::infinity();
  rep.worst.margin = std::numeric_limits<double>::infinity();
  const int support = std::max(2, params.cutoff / 2);

  for (int s = 0; s < params.samples; ++s) {
    try {
      DensityOperator rho;
      double kind = uni(rng);
      bool nondiagonal = false;
      if (kind < 0.35) {
        // diagonal Dirichlet mixture
        Eigen::VectorXd w = dirichlet(rng, support);
        Matrix m = Matrix::Zero(params.cutoff, params.cutoff);
        for (int k = 0; k < support; ++k) m(k, k) = w(k);
        rho = make_density_unchecked(std::move(m), "audit-diag");
      } else if (kind < 0.6) {
        // noisy two-level mixture hugging the min branch
        int n = static_cast<int>(rng() % (support - 1));
        double r = uni(rng);
        double noise = 1e-5 * uni(rng);
        Matrix m = Matrix::Zero(params.cutoff, params.cutoff);
        m(n, n) = r * (1.0 - noise);
        m(n + 1, n + 1) = (1.0 - r) * (1.0 - noise);
        m(0, 0) += noise;
        rho = make_density_unchecked(std::move(m), "audit-two-level");
      } else if (kind < 0.8) {
        nondiagonal = true;
        rho = audit_random_state(rng(), params.cutoff);
      } else {
        nondiagonal = true;
        rho = sparse_coherence_state(rng, params.cutoff);
      }
      if (params.alpha_focus) {
        double a = *params.alpha_focus;
        int n = static_cast<int>(std::floor(0.5 * (a - 1.0)));
        double r = 0.5 * (2.0 * n + 3.0 - a);
        DensityOperator target = rho_min(n, r, params.cutoff);
        // Half the draws perturb the minimizing state itself so the audit
        // probes the immediate neighborhood of the bound.
        double blend = (uni(rng) < 0.5) ? 1.0 - 1e-5 * uni(rng)
                                        : 0.5 + 0.5 * uni(rng);
        Matrix m = blend * target.matrix + (1.0 - blend) * rho.matrix;
        rho = make_density_unchecked(std::move(m), "audit-focused");
        nondiagonal = false;
      }

      GaussianityReport rg = gaussianity(rho);
      double alpha = rg.alpha;
      double g = rg.g;
      rep.min_alpha_seen = std::min(rep.min_alpha_seen, alpha);
      if (alpha < 1.0 - kSrTolerance) ++rep.violations_sr;

      double margin;
      if (g <= kGLowerBound) {
        // Below the global floor of g: unreachable for valid states, so
        // any occurrence is itself a violation.
        margin = -1.0;
      } else {
        margin = alpha - alpha_min(std::min(g, 2.0)).alpha_min;
      }
      if (margin < -kBoundTolerance) ++rep.violations_bound;
      if (margin < rep.worst.margin) rep.worst = {alpha, g, margin};

      if (nondiagonal) {
        // The reduction claim presumes gamma prop. to identity; projected
        // Haar draws only approximate that at truncation level, so gate on
        // the measured residuals.
        FirstAndSecondMoments m = moments(rho);
        bool isotropic =
            m.d.norm() <= 1e-8 &&
            std::abs(m.gamma(0, 0) - m.gamma(1, 1)) <= 1e-8 &&
            std::abs(m.gamma(0, 1)) <= 1e-8;
        if (isotropic) {
          GaussianityReport rs = gaussianity(phase_average(rho));
          rep.phase_avg_max_dev =
              std::max(rep.phase_avg_max_dev, std::abs(rs.g - g));
        }
      }
      ++rep.evaluated;
    } catch (const std::exception&) {
      ++rep.skipped;
    }
  }
  return rep;
}

}  // namespace qgauss
