#pragma once

#include <Eigen/Dense>

namespace qgauss {

/// Harmonic-oscillator position eigenfunctions psi_0..psi_{nmax-1} at x,
/// hbar = 1 convention (vacuum variance <x^2> = 1/2):
///   psi_0 = pi^{-1/4} e^{-x^2/2},  psi_n = sqrt(2/n) x psi_{n-1}
///                                        - sqrt((n-1)/n) psi_{n-2}.
/// Momentum eigenfunctions are (-i)^n psi_n(p) in this Fourier convention.
Eigen::VectorXd hermite_functions(int nmax, double x);

}  // namespace qgauss
