#include "qgauss/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgauss {

Matrix unitary_exponential(const Matrix& generator) {
  Matrix h = generator / Complex(0.0, 1.0);  // Hermitian
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("unitary_exponential: eigendecomposition failed");
  }
  const auto& lam = es.eigenvalues();
  Vector phases(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, lam(k)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

double unitarity_defect_of(const Matrix& u) {
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace

double FirstAndSecondMoments::alpha() const {
  double det = gamma.determinant();
  if (det <= 0.0) {
    throw std::logic_error("moments: covariance matrix became degenerate");
  }
  double recomputed = 2.0 * std::sqrt(det);
  if (std::abs(recomputed - alpha_value) > 1e-10 * std::max(1.0, recomputed)) {
    throw std::logic_error("moments: stored alpha inconsistent with gamma");
  }
  return alpha_value;
}

FirstAndSecondMoments moments(const DensityOperator& rho,
                              const FockOperators& ops) {
  FirstAndSecondMoments m;
  double dx = real_expectation(rho, ops.x);
  double dp = real_expectation(rho, ops.p);
  double xx = real_expectation(rho, ops.x2);
  double pp = real_expectation(rho, ops.p2);
  double xp = real_expectation(rho, ops.xp_sym);
  m.d << dx, dp;
  m.gamma << xx - dx * dx, xp - dx * dp, xp - dx * dp, pp - dp * dp;
  double det = m.gamma.determinant();
  if (det <= 0.0) {
    throw std::runtime_error(
        "moments: det(gamma) <= 0 (severe truncation or invalid state)");
  }
  m.alpha_value = 2.0 * std::sqrt(det);
  return m;
}

FirstAndSecondMoments moments(const DensityOperator& rho) {
  FockOperators ops(rho.dim);
  return moments(rho, ops);
}

GaussianOp rotation_op(double theta, int dim) {
  if (dim < 2) throw std::invalid_argument("rotation_op: dim must be >= 2");
  Matrix u = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    u(n, n) = std::exp(Complex(0.0, -theta * n));
  }
  GaussianOp op;
  op.kind = GaussKind::Rotation;
  op.dim = dim;
  op.theta = theta;
  op.unitary = std::move(u);
  op.unitarity_defect = 0.0;  // diagonal phases are exactly unitary
  return op;
}

GaussianOp displacement_op(Complex delta, int dim) {
  if (dim < 2) throw std::invalid_argument("displacement_op: dim must be >= 2");
  if (std::abs(delta) > 0.75 * std::sqrt(static_cast<double>(dim))) {
    // |delta|^2 quanta must sit well inside the cutoff
    throw std::invalid_argument(
        "displacement_op: amplitude too large for this cutoff");
  }
  Matrix a = annihilation_operator(dim).matrix;
  Matrix gen = delta * a.adjoint() - std::conj(delta) * a;
  GaussianOp op;
  op.kind = GaussKind::Displacement;
  op.dim = dim;
  op.displacement = delta;
  op.unitary = unitary_exponential(gen);
  op.unitarity_defect = unitarity_defect_of(op.unitary);
  return op;
}

GaussianOp squeeze_op(Complex zeta, int dim) {
  if (dim < 2) throw std::invalid_argument("squeeze_op: dim must be >= 2");
  if (std::abs(zeta) > 1.0) {
    // Useful cutoffs cannot represent stronger squeezing; callers are
    // expected to stay within the truncation-indicator budget anyway.
    throw std::invalid_argument("squeeze_op: |zeta| > 1 rejected");
  }
  Matrix a = annihilation_operator(dim).matrix;
  Matrix a2 = a * a;
  Matrix gen = 0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint());
  GaussianOp op;
  op.kind = GaussKind::Squeeze;
  op.dim = dim;
  op.squeeze = zeta;
  op.unitary = unitary_exponential(gen);
  op.unitarity_defect = unitarity_defect_of(op.unitary);
  return op;
}

DensityOperator apply(const GaussianOp& op, const DensityOperator& rho) {
  if (op.dim != rho.dim) {
    throw std::invalid_argument("apply: operator/state dimension mismatch");
  }
  Matrix out = op.unitary * rho.matrix * op.unitary.adjoint();
  out = 0.5 * (out + Matrix(out.adjoint()));
  DensityOperator result = make_density_unchecked(std::move(out), rho.label);
  ValidationReport rep = validate(result);
  if (!rep.passed()) {
    throw std::runtime_error(
        "apply: transformed state fails validation (truncation too strong); "
        "truncation indicator = " +
        std::to_string(truncation_indicator(result)));
  }
  return result;
}

DensityOperator coherent_state(Complex amplitude, int dim) {
  DensityOperator rho = apply(displacement_op(amplitude, dim), fock_state(0, dim));
  rho.label = "coherent";
  return rho;
}

DensityOperator squeezed_vacuum_state(double r, double phi, int dim) {
  Complex zeta = std::polar(r, phi);
  DensityOperator rho = apply(squeeze_op(zeta, dim), fock_state(0, dim));
  rho.label = "squeezed";
  return rho;
}

GaussianRef reference_gaussian_from_moments(const FirstAndSecondMoments& m,
                                            int dim,
                                            double truncation_limit) {
  if (dim < 2) throw std::invalid_argument("reference_gaussian: dim >= 2");
  double det = m.gamma.determinant();
  if (det <= 0.0) {
    throw std::invalid_argument("reference_gaussian: degenerate covariance");
  }
  const double nu = std::sqrt(det);
  double alpha = 2.0 * nu;
  if (alpha < 1.0 - 1e-8) {
    throw std::invalid_argument(
        "reference_gaussian: alpha < 1, input is not a valid state");
  }
  alpha = std::max(alpha, 1.0);
  const double q = (alpha - 1.0) / (alpha + 1.0);

  GaussianRef ref;
  ref.alpha = alpha;
  ref.beta = (q > 0.0) ? -std::log(q)
                       : std::numeric_limits<double>::infinity();
  ref.norm = 0.5 * (alpha + 1.0);
  ref.d = m.d;

  // Thermal core with the exact geometric populations of the target.
  Matrix core = Matrix::Zero(dim, dim);
  double pop = 1.0 - q;
  for (int k = 0; k < dim; ++k) {
    core(k, k) = pop;
    pop *= q;
  }
  ref.trace_deficit = std::pow(q, dim);

  // The symmetric symplectic square root A of gamma/nu maps the isotropic
  // core onto gamma; its eigenstructure fixes the squeeze parameters.
  // For 2x2 with unit determinant, A = (gamma/nu + I)/sqrt(tr + 2).
  Eigen::Matrix2d gn = m.gamma / nu;
  Eigen::Matrix2d A =
      (gn + Eigen::Matrix2d::Identity()) / std::sqrt(gn.trace() + 2.0);
  double mean = 0.5 * (A(0, 0) + A(1, 1));
  double diff = 0.5 * (A(0, 0) - A(1, 1));
  double off = A(0, 1);
  double spread = std::hypot(diff, off);
  double lam_max = mean + spread;
  ref.squeeze_r = std::log(lam_max);
  // The e^{-r} eigenvector direction (cos psi, sin psi) sets the squeeze
  // phase phi = 2 psi. Of the two algebraic eigenvector forms, pick the one
  // that stays away from (0, 0) for the sign of diff at hand.
  double psi = 0.0;
  if (spread > 1e-15) {
    psi = (diff > 0.0) ? std::atan2(-diff - spread, off)
                       : std::atan2(off, diff - spread);
  }
  ref.squeeze_phi = 2.0 * psi;

  DensityOperator state = make_density_unchecked(std::move(core), "reference");
  if (ref.squeeze_r > 1e-14) {
    GaussianOp s = squeeze_op(std::polar(ref.squeeze_r, ref.squeeze_phi), dim);
    Matrix transformed = s.unitary * state.matrix * s.unitary.adjoint();
    state.matrix = 0.5 * (transformed + Matrix(transformed.adjoint()));
  }
  if (ref.d.norm() > 1e-14) {
    Complex delta(ref.d(0) / std::sqrt(2.0), ref.d(1) / std::sqrt(2.0));
    GaussianOp dop = displacement_op(delta, dim);
    Matrix transformed = dop.unitary * state.matrix * dop.unitary.adjoint();
    state.matrix = 0.5 * (transformed + Matrix(transformed.adjoint()));
  }
  state.label = "reference";
  ref.matrix = std::move(state);

  ref.truncation = truncation_indicator(ref.matrix) + ref.trace_deficit;
  if (ref.truncation > truncation_limit) {
    throw std::runtime_error(
        "reference_gaussian: truncation indicator " +
        std::to_string(ref.truncation) + " above limit; raise the cutoff");
  }
  return ref;
}

GaussianRef reference_gaussian(const DensityOperator& rho,
                               double truncation_limit) {
  return reference_gaussian_from_moments(moments(rho), rho.dim,
                                         truncation_limit);
}

}  // namespace qgauss
