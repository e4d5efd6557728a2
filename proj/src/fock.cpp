#include "qgauss/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qgauss {

namespace {

void require_dim(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("fock: dimension must be >= 2, got " +
                                std::to_string(dim));
  }
}

}  // namespace

OperatorMatrix annihilation_operator(int dim) {
  require_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return {dim, std::move(a), false};
}

OperatorMatrix creation_operator(int dim) {
  OperatorMatrix a = annihilation_operator(dim);
  return {dim, a.matrix.adjoint(), false};
}

OperatorMatrix number_operator(int dim) {
  require_dim(dim);
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return {dim, std::move(n), true};
}

OperatorMatrix position_operator(int dim) {
  OperatorMatrix a = annihilation_operator(dim);
  Matrix x = (a.matrix + a.matrix.adjoint()) / std::sqrt(2.0);
  return {dim, std::move(x), true};
}

OperatorMatrix momentum_operator(int dim) {
  OperatorMatrix a = annihilation_operator(dim);
  Matrix p = (a.matrix - a.matrix.adjoint()) / Complex(0.0, std::sqrt(2.0));
  return {dim, std::move(p), true};
}

FockOperators::FockOperators(int d) : dim(d) {
  require_dim(d);
  a = annihilation_operator(d).matrix;
  a_dag = a.adjoint();
  n = number_operator(d).matrix;
  x = position_operator(d).matrix;
  p = momentum_operator(d).matrix;
  x2 = x * x;
  p2 = p * p;
  xp_sym = 0.5 * (x * p + p * x);
}

Complex expectation(const DensityOperator& rho, const Matrix& op) {
  if (rho.matrix.rows() != op.rows() || rho.matrix.cols() != op.cols()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  // Tr(rho*op) = sum_ij rho_ij op_ji without forming the product.
  return (rho.matrix.cwiseProduct(op.transpose())).sum();
}

Complex expectation(const DensityOperator& rho, const OperatorMatrix& op) {
  return expectation(rho, op.matrix);
}

double real_expectation(const DensityOperator& rho, const Matrix& op) {
  Complex v = expectation(rho, op);
  double scale = std::max(1.0, std::abs(v));
  if (std::abs(v.imag()) > 1e-12 * scale) {
    throw std::runtime_error(
        "expectation: non-real value for Hermitian observable, imag = " +
        std::to_string(v.imag()));
  }
  return v.real();
}

ValidationReport validate(const DensityOperator& rho,
                          const ToleranceProfile& tol) {
  ValidationReport r;
  const Matrix& m = rho.matrix;
  r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.hermitian_ok = r.hermiticity_defect <= tol.hermiticity;
  r.trace_ok = r.trace_defect <= tol.trace;
  r.psd_ok = r.min_eigenvalue >= tol.psd_floor;
  return r;
}

double truncation_indicator(const DensityOperator& rho) {
  int start = rho.dim - std::max(1, rho.dim / 10);
  double mass = 0.0;
  for (int k = start; k < rho.dim; ++k) mass += rho.matrix(k, k).real();
  return std::max(0.0, mass);
}

DensityOperator make_density_unchecked(Matrix m, std::string label) {
  DensityOperator rho;
  rho.dim = static_cast<int>(m.rows());
  rho.matrix = std::move(m);
  rho.label = std::move(label);
  return rho;
}

DensityOperator make_density(Matrix m, std::string label,
                             const ToleranceProfile& tol) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw std::invalid_argument("density operator must be square, dim >= 2");
  }
  DensityOperator rho = make_density_unchecked(std::move(m), std::move(label));
  ValidationReport rep = validate(rho, tol);
  if (!rep.passed()) {
    throw std::invalid_argument(
        "invalid density operator (" + rho.label + "): hermiticity defect " +
        std::to_string(rep.hermiticity_defect) + ", trace defect " +
        std::to_string(rep.trace_defect) + ", min eigenvalue " +
        std::to_string(rep.min_eigenvalue));
  }
  return rho;
}

DensityOperator fock_state(int n, int dim) {
  require_dim(dim);
  if (n < 0 || n >= dim) {
    throw std::invalid_argument("fock_state: level " + std::to_string(n) +
                                " outside cutoff " + std::to_string(dim));
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(n, n) = 1.0;
  return make_density_unchecked(std::move(m), "fock:" + std::to_string(n));
}

DensityOperator mixture_state(const std::map<int, double>& populations,
                              int dim) {
  require_dim(dim);
  Matrix m = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (const auto& [level, weight] : populations) {
    if (level < 0 || level >= dim) {
      throw std::invalid_argument("mixture_state: level " +
                                  std::to_string(level) + " outside cutoff");
    }
    if (weight < 0.0) {
      throw std::invalid_argument("mixture_state: negative population at level " +
                                  std::to_string(level));
    }
    m(level, level) = weight;
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("mixture_state: populations sum to " +
                                std::to_string(total) + ", expected 1");
  }
  return make_density_unchecked(std::move(m), "mixture");
}

DensityOperator thermal_state(double mean_photons, int dim) {
  require_dim(dim);
  if (mean_photons < 0.0) {
    throw std::invalid_argument("thermal_state: mean photon number must be >= 0");
  }
  const double q = mean_photons / (mean_photons + 1.0);
  Matrix m = Matrix::Zero(dim, dim);
  double norm = 0.0;
  double pop = 1.0;
  for (int k = 0; k < dim; ++k) {
    m(k, k) = pop;
    norm += pop;
    pop *= q;
  }
  m /= norm;
  return make_density_unchecked(std::move(m), "thermal");
}

}  // namespace qgauss
