#include <doctest.h>

#include <random>

#include "qgauss/gaussian.hpp"
#include "support.hpp"

using namespace qgauss;
using qgauss::testsupport::random_diagonal;
using qgauss::testsupport::random_pure;

TEST_CASE("moments of basic states") {
  SUBCASE("vacuum") {
    FirstAndSecondMoments m = moments(fock_state(0, 30));
    CHECK(m.d.norm() <= 1e-15);
    CHECK(m.gamma(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.gamma(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(m.gamma(0, 1)) <= 1e-15);
    CHECK(m.alpha() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("number states have alpha = 2n+1") {
    for (int n : {1, 2, 5, 11}) {
      FirstAndSecondMoments m = moments(fock_state(n, 40));
      CHECK(m.alpha() == doctest::Approx(2.0 * n + 1.0).epsilon(1e-13));
    }
  }
  SUBCASE("coherent state, amplitude 1") {
    FirstAndSecondMoments m = moments(coherent_state(Complex(1.0, 0.0), 60));
    CHECK(m.d(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(std::abs(m.d(1)) <= 1e-10);
    CHECK(m.gamma(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.gamma(1, 1) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.alpha() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("gaussian unitaries") {
  SUBCASE("rotation is an exact diagonal") {
    GaussianOp rot = rotation_op(0.7, 12);
    CHECK(rot.unitarity_defect == 0.0);
    for (int n = 0; n < 12; ++n) {
      CHECK(std::abs(rot.unitary(n, n) - std::exp(Complex(0, -0.7 * n))) == 0.0);
    }
  }
  SUBCASE("zero displacement is the identity") {
    GaussianOp d0 = displacement_op(Complex(0.0, 0.0), 10);
    CHECK((d0.unitary - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("squeezed vacuum variance e^{-2r}/2") {
    const double r = 0.2;
    DensityOperator sq = squeezed_vacuum_state(r, 0.0, 60);
    FirstAndSecondMoments m = moments(sq);
    CHECK(m.gamma(0, 0) == doctest::Approx(0.5 * std::exp(-2 * r)).epsilon(1e-6));
    CHECK(m.gamma(1, 1) == doctest::Approx(0.5 * std::exp(2 * r)).epsilon(1e-6));
  }
  SUBCASE("displacement on vacuum gives the coherent moments") {
    Complex beta(0.4, -0.3);
    DensityOperator rho = apply(displacement_op(beta, 50), fock_state(0, 50));
    FirstAndSecondMoments m = moments(rho);
    CHECK(m.d(0) == doctest::Approx(std::sqrt(2.0) * beta.real()).epsilon(1e-9));
    CHECK(m.d(1) == doctest::Approx(std::sqrt(2.0) * beta.imag()).epsilon(1e-9));
  }
  SUBCASE("rotation leaves number states fixed") {
    DensityOperator n3 = fock_state(3, 12);
    DensityOperator rot = apply(rotation_op(1.3, 12), n3);
    CHECK((rot.matrix - n3.matrix).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("squeeze round-trip") {
    DensityOperator start = mixture_state({{0, 0.6}, {2, 0.4}}, 60);
    DensityOperator fwd = apply(squeeze_op(Complex(0.3, 0.0), 60), start);
    DensityOperator back = apply(squeeze_op(Complex(-0.3, 0.0), 60), fwd);
    CHECK((back.matrix - start.matrix).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("reported unitarity defects are at roundoff") {
    CHECK(displacement_op(Complex(0.7, -0.4), 40).unitarity_defect <= 1e-13);
    CHECK(squeeze_op(Complex(0.3, 0.2), 60).unitarity_defect <= 1e-13);
  }
  SUBCASE("parameter guards") {
    CHECK_THROWS_AS(squeeze_op(Complex(1.5, 0.0), 30), std::invalid_argument);
    CHECK_THROWS_AS(displacement_op(Complex(9.0, 0.0), 30), std::invalid_argument);
  }
}

TEST_CASE("alpha invariance under the linear canonical group") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int dim = 60;
  for (int trial = 0; trial < 40; ++trial) {
    DensityOperator rho = (trial % 2 == 0) ? random_diagonal(rng, dim, dim / 3)
                                           : random_pure(rng, dim, dim / 3);
    double a0 = moments(rho).alpha();

    double theta = 2 * M_PI * uni(rng);
    double a_rot = moments(apply(rotation_op(theta, dim), rho)).alpha();
    CHECK(std::abs(a_rot - a0) <= 1e-12 * std::max(1.0, a0));

    Complex delta(0.6 * (uni(rng) - 0.5), 0.6 * (uni(rng) - 0.5));
    double a_disp = moments(apply(displacement_op(delta, dim), rho)).alpha();
    CHECK(std::abs(a_disp - a0) <= 1e-6);

    Complex zeta = std::polar(0.25 * uni(rng), 2 * M_PI * uni(rng));
    double a_sq = moments(apply(squeeze_op(zeta, dim), rho)).alpha();
    CHECK(std::abs(a_sq - a0) <= 1e-6);
  }
}

TEST_CASE("reference gaussian") {
  SUBCASE("vacuum is its own reference") {
    GaussianRef ref = reference_gaussian(fock_state(0, 30));
    CHECK(ref.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(ref.beta));
    CHECK((ref.matrix.matrix - fock_state(0, 30).matrix).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  SUBCASE("reference of |1> is the geometric thermal with ratio 1/2") {
    GaussianRef ref = reference_gaussian(fock_state(1, 60));
    CHECK(ref.alpha == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(std::exp(-ref.beta) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ref.norm == doctest::Approx(2.0).epsilon(1e-12));
    for (int n : {0, 1, 2, 7}) {
      CHECK(ref.matrix.matrix(n, n).real() ==
            doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-11));
    }
  }
  SUBCASE("pure squeezed vacuum is its own reference") {
    DensityOperator sq = squeezed_vacuum_state(0.3, 0.0, 60);
    GaussianRef ref = reference_gaussian(sq);
    CHECK((ref.matrix.matrix - sq.matrix).cwiseAbs().maxCoeff() <= 1e-6);
  }
  SUBCASE("rotated squeezed vacuum is its own reference") {
    DensityOperator sq = squeezed_vacuum_state(0.25, 1.1, 60);
    GaussianRef ref = reference_gaussian(sq);
    CHECK((ref.matrix.matrix - sq.matrix).cwiseAbs().maxCoeff() <= 1e-6);
  }
  SUBCASE("displaced coherent reference") {
    DensityOperator coh = coherent_state(Complex(0.7, 0.2), 60);
    GaussianRef ref = reference_gaussian(coh);
    CHECK((ref.matrix.matrix - coh.matrix).cwiseAbs().maxCoeff() <= 1e-6);
  }
  SUBCASE("purity identity Tr(rho_G^2) = 1/alpha for centered isotropic states") {
    for (double nbar : {0.3, 1.0, 2.5}) {
      DensityOperator th = thermal_state(nbar, 80);
      GaussianRef ref = reference_gaussian(th);
      double purity = (ref.matrix.matrix * ref.matrix.matrix).trace().real();
      CHECK(purity * ref.alpha == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  SUBCASE("williamson consistency: reference reproduces the target moments") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      // support low enough that the reference tail is far below 1e-8
      DensityOperator rho = random_pure(rng, 100, 4);
      FirstAndSecondMoments target = moments(rho);
      GaussianRef ref = reference_gaussian(rho);
      FirstAndSecondMoments got = moments(ref.matrix);
      double tol = 1e-8 + ref.truncation;
      CHECK((got.d - target.d).norm() <= tol);
      CHECK((got.gamma - target.gamma).cwiseAbs().maxCoeff() <= 10 * tol);
    }
  }
  SUBCASE("degenerate covariance is rejected") {
    FirstAndSecondMoments m;
    m.d.setZero();
    m.gamma << 0.5, 0.0, 0.0, -0.1;
    CHECK_THROWS(reference_gaussian_from_moments(m, 20));
  }
}

TEST_CASE("SR relation on random states") {
  std::mt19937_64 rng(29);
  const int dim = 24;
  double min_alpha = 10.0;
  for (int trial = 0; trial < 10000; ++trial) {
    DensityOperator rho = (trial % 2 == 0) ? random_diagonal(rng, dim, 12)
                                           : random_pure(rng, dim, 8);
    double a = moments(rho).alpha();
    CHECK(a >= 1.0 - 1e-8);
    min_alpha = std::min(min_alpha, a);
  }
  CHECK(min_alpha >= 1.0 - 1e-8);

  // Near-saturation only happens close to a pure Gaussian state.
  DensityOperator coh = coherent_state(Complex(0.3, 0.1), 40);
  double a = moments(coh).alpha();
  CHECK(a <= 1.0 + 1e-8);
  GaussianRef ref = reference_gaussian(coh);
  double fidelity = (coh.matrix * ref.matrix.matrix).trace().real();
  CHECK(fidelity >= 1.0 - 1e-6);
}

TEST_CASE("stored alpha consistency guard") {
  FirstAndSecondMoments m = moments(fock_state(2, 20));
  m.alpha_value = 99.0;
  CHECK_THROWS_AS(m.alpha(), std::logic_error);
}
