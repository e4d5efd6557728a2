#pragma once

#include <limits>
#include <optional>

#include "qgauss/fock.hpp"

namespace qgauss {

/// First moments d = (<x>, <p>) and the 2x2 covariance matrix
///   gamma = [[<x^2>-<x>^2,           <xp+px>/2 - <x><p>],
///            [<xp+px>/2 - <x><p>,    <p^2>-<p>^2      ]].
/// The uncertainty alpha = 2 sqrt(det gamma) (hbar = 1) is stored
/// redundantly; the accessor re-derives it and rejects inconsistent use.
struct FirstAndSecondMoments {
  Eigen::Vector2d d;
  Eigen::Matrix2d gamma;
  double alpha_value = 0.0;

  double alpha() const;
};

/// Moments of a state, extracted with the truncated quadrature operators.
/// Throws if det(gamma) <= 0 (severe truncation or invalid input).
FirstAndSecondMoments moments(const DensityOperator& rho);
FirstAndSecondMoments moments(const DensityOperator& rho,
                              const FockOperators& ops);

/// exp(G) for an anti-Hermitian generator G, via eigendecomposition of
/// -iG; the result is unitary to roundoff regardless of ||G||.
Matrix unitary_exponential(const Matrix& generator);

enum class GaussKind { Rotation, Displacement, Squeeze };

/// A Gaussian (linear canonical) unitary in the truncated number basis.
/// Rotations are exact diagonals; displacement and squeeze are built by
/// eigendecomposition of the Hermitian generator, so the matrix is unitary
/// to roundoff. Truncation shows up when the op is applied, not here.
struct GaussianOp {
  GaussKind kind;
  int dim = 0;
  double theta = 0.0;        // rotation angle
  Complex displacement{0.0, 0.0};
  Complex squeeze{0.0, 0.0};  // zeta = r e^{i phi}
  Matrix unitary;
  double unitarity_defect = 0.0;
};

/// Phase-space rotation exp(-i theta n).
GaussianOp rotation_op(double theta, int dim);
/// Displacement exp(delta a^dag - conj(delta) a); <x>,<p> shift by
/// (sqrt(2) Re delta, sqrt(2) Im delta).
GaussianOp displacement_op(Complex delta, int dim);
/// Squeeze exp((conj(zeta) a^2 - zeta a^dag^2)/2); for real zeta = r the
/// position variance of the vacuum becomes e^{-2r}/2.
GaussianOp squeeze_op(Complex zeta, int dim);

/// U rho U^dag, re-Hermitized and re-validated. Throws a truncation error
/// when the transformed state no longer passes validation.
DensityOperator apply(const GaussianOp& op, const DensityOperator& rho);

/// D(alpha)|0><0|D^dag.
DensityOperator coherent_state(Complex amplitude, int dim);
/// S(zeta)|0><0|S^dag with zeta = r e^{i phi}.
DensityOperator squeezed_vacuum_state(double r, double phi, int dim);

/// The Gaussian state with the same first and second moments as a target.
/// Realized as displace(squeeze(thermal core)); the thermal core keeps the
/// exact geometric populations of the infinite-dimensional state, so its
/// truncated trace is 1 - q^dim with q = (alpha-1)/(alpha+1). That deficit
/// is reported here instead of being renormalized away: renormalizing
/// would bias every overlap computed against this matrix.
struct GaussianRef {
  double alpha = 1.0;
  double beta = 0.0;          // thermal parameter; +inf encodes the vacuum
  double norm = 1.0;          // (alpha+1)/2
  double theta = 0.0;         // rotation (always 0: the core is isotropic)
  double squeeze_r = 0.0;
  double squeeze_phi = 0.0;
  Eigen::Vector2d d{0.0, 0.0};
  DensityOperator matrix;
  double trace_deficit = 0.0;  // q^dim of the thermal core
  double truncation = 0.0;     // trace deficit + top-level mass
};

/// Strict limit for callers that need the matrix to be a faithful state
/// (not just overlap-exact), e.g. when it is fed through further unitaries.
inline constexpr double kStrictReferenceTruncation = 1e-6;

/// By default the reference is always returned and its truncation is
/// reported: the geometric populations are exact, so overlaps against
/// low-lying states stay exact even when the trace deficit is large.
/// Pass a finite truncation_limit to reject deficient references instead.
GaussianRef reference_gaussian(
    const DensityOperator& rho,
    double truncation_limit = std::numeric_limits<double>::infinity());

/// Reference Gaussian for explicitly given moments at a chosen cutoff.
GaussianRef reference_gaussian_from_moments(
    const FirstAndSecondMoments& m, int dim,
    double truncation_limit = std::numeric_limits<double>::infinity());

}  // namespace qgauss
