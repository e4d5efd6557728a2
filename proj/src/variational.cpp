#include "qgauss/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "qgauss/extremal.hpp"
#include "qgauss/gaussian.hpp"

namespace qgauss {

LagrangeOperator build_operator(LagrangeKind kind, const Lambdas& lambdas,
                                double beta, int dim) {
  if (dim < 2) throw std::invalid_argument("build_operator: dim >= 2 required");
  if (kind != LagrangeKind::Uncertainty && beta < 0.0) {
    throw std::invalid_argument("build_operator: beta >= 0 required");
  }
  FockOperators ops(dim);
  Matrix m = Matrix::Zero(dim, dim);

  if (kind == LagrangeKind::Uncertainty) {
    m = ops.n + 0.5 * Matrix::Identity(dim, dim);
  } else {
    // k = 0 handled outside std::exp so that beta = +inf (vacuum reference)
    // yields diag(1, 0, 0, ...) instead of NaN.
    m(0, 0) = 1.0;
    for (int k = 1; k < dim; ++k) m(k, k) = std::exp(-beta * k);
    m += lambdas.l6 * ops.n;
  }
  if (kind != LagrangeKind::OverlapDiagonal) {
    m += lambdas.l2 * ops.x + lambdas.l3 * ops.p +
         lambdas.l4 * 2.0 * ops.xp_sym + lambdas.l5 * (ops.x2 - ops.p2);
  }

  LagrangeOperator op;
  op.kind = kind;
  op.lambdas = lambdas;
  op.beta = (kind == LagrangeKind::Uncertainty) ? 0.0 : beta;
  double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-12) {
    throw std::runtime_error("build_operator: assembled matrix not Hermitian");
  }
  op.matrix = OperatorMatrix{dim, std::move(m), true};
  return op;
}

QuadraticSpectrum predicted_spectrum(const Lambdas& lambdas) {
  QuadraticSpectrum s;
  double rad = lambdas.l4 * lambdas.l4 + lambdas.l5 * lambdas.l5;
  s.elliptic = rad < 0.25;
  if (!s.elliptic) return s;
  s.spacing = std::sqrt(1.0 - 4.0 * rad);
  // Completing the square in the quadratic form (1/2) r^T A r + b . r.
  Eigen::Matrix2d A;
  A << 1.0 + 2.0 * lambdas.l5, 2.0 * lambdas.l4, 2.0 * lambdas.l4,
      1.0 - 2.0 * lambdas.l5;
  Eigen::Vector2d b(lambdas.l2, lambdas.l3);
  s.shift = -0.5 * b.dot(A.inverse() * b);
  return s;
}

StationarityCertificate certify_two_level(int level_a, int level_b,
                                          double weight_a, int dim,
                                          double tolerance) {
  if (level_a < 0 || level_b < 0 || level_a == level_b) {
    throw std::invalid_argument("certify_two_level: need two distinct levels");
  }
  if (level_a > level_b) {
    std::swap(level_a, level_b);
    weight_a = 1.0 - weight_a;
  }
  if (weight_a < 0.0 || weight_a > 1.0) {
    throw std::invalid_argument("certify_two_level: weight must be in [0, 1]");
  }
  if (dim <= level_b) {
    throw std::invalid_argument("certify_two_level: cutoff must exceed both levels");
  }

  StationarityCertificate cert;
  Matrix m = Matrix::Zero(dim, dim);
  m(level_a, level_a) = weight_a;
  m(level_b, level_b) += 1.0 - weight_a;
  cert.candidate = make_density_unchecked(std::move(m), "candidate");

  cert.alpha = weight_a * (2.0 * level_a + 1.0) +
               (1.0 - weight_a) * (2.0 * level_b + 1.0);
  GaussianRef ref = reference_gaussian(cert.candidate);
  cert.beta = ref.beta;
  const double q = (cert.alpha - 1.0) / (cert.alpha + 1.0);

  const bool pure = (weight_a == 0.0 || weight_a == 1.0);
  std::vector<int> support;
  if (pure) {
    support = {weight_a == 1.0 ? level_a : level_b};
    // A one-dimensional support needs no degeneracy; the stationary value
    // of l6 places the continuous minimum of e^{-beta k} + l6 k at the
    // occupied level. The vacuum (q = 0) admits any l6 > 1.
    int k = support[0];
    cert.lambda6 = (q > 0.0) ? cert.beta * std::pow(q, k) : 2.0;
  } else {
    support = {level_a, level_b};
    cert.lambda6 = (std::pow(q, level_a) - std::pow(q, level_b)) /
                   static_cast<double>(level_b - level_a);
  }
  cert.common_eigenvalue = std::pow(q, support[0]) + cert.lambda6 * support[0];

  Lambdas lam;
  lam.l6 = cert.lambda6;
  LagrangeOperator h2 =
      build_operator(LagrangeKind::OverlapDiagonal, lam, cert.beta, dim);

  bool ok = true;
  for (int k : support) {
    Vector e = Vector::Zero(dim);
    e(k) = 1.0;
    double res = (h2.matrix.matrix * e - cert.common_eigenvalue * e).norm();
    cert.residuals.push_back(res);
    ok = ok && res <= tolerance;
  }

  // The certified eigenvalue must be an extremum over the whole diagonal;
  // strict convexity of e^{-beta k} + l6 k makes this the minimum when the
  // support is adjacent, and breaks it for gapped supports.
  double min_diag = h2.matrix.matrix.diagonal().real().minCoeff();
  cert.eigenvalue_extremal =
      cert.common_eigenvalue <= min_diag + 1e-12 * std::abs(min_diag) + 1e-14;
  cert.passed = ok && cert.eigenvalue_extremal;
  return cert;
}

StationarityCertificate certify_min_state(int n, double r, int dim,
                                          double tolerance) {
  if (n < 0) throw std::invalid_argument("certify_min_state: n >= 0 required");
  return certify_two_level(n, n + 1, r, dim, tolerance);
}

ReducedSrReport reduced_sr_check(int dim) {
  if (dim < 10) throw std::invalid_argument("reduced_sr_check: dim >= 10");
  FockOperators ops(dim);
  Matrix h = 2.0 * ops.n + Matrix::Identity(dim, dim);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  ReducedSrReport rep;
  rep.dim = dim;
  rep.min_eigenvalue = es.eigenvalues()(0);
  // The minimizing eigenvector must be the vacuum up to phase.
  rep.vacuum_is_argmin = std::abs(es.eigenvectors().col(0)(0)) > 1.0 - 1e-10;
  Eigen::SelfAdjointEigenSolver<Matrix> es2(
      h.bottomRightCorner(dim - 1, dim - 1));
  rep.min_excluding_vacuum = es2.eigenvalues()(0);
  return rep;
}

}  // namespace qgauss
