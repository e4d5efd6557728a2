#pragma once

// Helpers shared between the unit suites and the acceptance runner.

#include <random>

#include "qgauss/fock.hpp"

namespace qgauss::testsupport {

/// Random state with coherences only between levels >= 3 apart: exactly
/// centered and isotropic (the quadrature forms touch |dn| <= 2 only),
/// yet genuinely changed by phase averaging.
inline DensityOperator sparse_coherence_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  std::gamma_distribution<double> gamma_d(1.0, 1.0);
  int n_vecs = 2 + static_cast<int>(rng() % 3);
  Eigen::VectorXd w(n_vecs);
  for (int i = 0; i < n_vecs; ++i) w(i) = gamma_d(rng);
  w /= w.sum();
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
  return make_density_unchecked(std::move(m), "sparse-coherence");
}

/// Random diagonal mixture over the bottom `support` levels.
inline DensityOperator random_diagonal(std::mt19937_64& rng, int dim,
                                       int support) {
  std::gamma_distribution<double> gamma_d(1.0, 1.0);
  Eigen::VectorXd w(support);
  for (int i = 0; i < support; ++i) w(i) = gamma_d(rng);
  w /= w.sum();
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < support; ++i) m(i, i) = w(i);
  return make_density_unchecked(std::move(m), "rand-diag");
}

/// Haar-like random pure state over the bottom `support` levels.
inline DensityOperator random_pure(std::mt19937_64& rng, int dim, int support) {
  std::normal_distribution<double> gauss;
  Vector v = Vector::Zero(dim);
  for (int i = 0; i < support; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return make_density_unchecked(v * v.adjoint(), "rand-pure");
}

}  // namespace qgauss::testsupport
