#include <doctest.h>

#include <random>

#include "qgauss/extremal.hpp"
#include "qgauss/gaussianity.hpp"
#include "qgauss/hermite.hpp"
#include "support.hpp"

using namespace qgauss;
using qgauss::testsupport::sparse_coherence_state;

namespace {

// Independent Wigner oracle: W(x,p) = (1/pi) int <x+y|rho|x-y> e^{-2ipy} dy
// evaluated by wide trapezoid quadrature over the Hermite-function overlap.
double wigner_defining_integral(const DensityOperator& rho, double x, double p) {
  const int N = 4001;
  const double L = 9.0;
  const double h = 2.0 * L / (N - 1);
  Complex acc(0.0, 0.0);
  for (int k = 0; k < N; ++k) {
    double y = -L + k * h;
    Eigen::VectorXd plus = hermite_functions(rho.dim, x + y);
    Eigen::VectorXd minus = hermite_functions(rho.dim, x - y);
    Complex bracket(0.0, 0.0);
    for (int m = 0; m < rho.dim; ++m) {
      for (int n = 0; n < rho.dim; ++n) {
        bracket += rho.matrix(m, n) * plus(m) * minus(n);
      }
    }
    double w = (k == 0 || k == N - 1) ? 0.5 : 1.0;
    acc += w * bracket * std::exp(Complex(0.0, -2.0 * p * y));
  }
  acc *= h / M_PI;
  CHECK(std::abs(acc.imag()) < 1e-10);
  return acc.real();
}

}  // namespace

TEST_CASE("g for number states matches the closed form") {
  CHECK(gaussianity(fock_state(0, 40)).g == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gaussianity(fock_state(1, 60)).g == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(gaussianity(fock_state(2, 60)).g ==
        doctest::Approx(20.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("g is definitionally overlap / purity") {
  for (int n : {0, 1, 3}) {
    GaussianityReport r = gaussianity(fock_state(n, 60));
    CHECK(r.g == doctest::Approx(r.overlap / r.purity_G).epsilon(1e-15));
    CHECK(r.purity_G == doctest::Approx(1.0 / r.alpha).epsilon(1e-15));
  }
}

TEST_CASE("Gaussian states score g = 1") {
  CHECK(gaussianity(thermal_state(1.0, 80)).g == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gaussianity(coherent_state(Complex(0.8, 0.1), 60)).g ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(gaussianity(squeezed_vacuum_state(0.25, 0.9, 60)).g ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("phase averaging") {
  SUBCASE("diagonal fixed point") {
    DensityOperator th = thermal_state(0.7, 30);
    DensityOperator ave = phase_average(th);
    CHECK((ave.matrix - th.matrix).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("plus superposition collapses to the level mixture") {
    Matrix m = Matrix::Zero(8, 8);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
    DensityOperator plus = make_density_unchecked(std::move(m));
    DensityOperator ave = phase_average(plus);
    CHECK(ave.matrix(0, 0).real() == 0.5);
    CHECK(ave.matrix(1, 1).real() == 0.5);
    CHECK(std::abs(ave.matrix(0, 1)) == 0.0);
  }
  SUBCASE("coherent state averages to a Poisson mixture") {
    DensityOperator coh = coherent_state(Complex(1.0, 0.0), 60);
    DensityOperator ave = phase_average(coh);
    for (int n : {0, 1, 2, 5}) {
      double expected = std::exp(-1.0) / std::tgamma(n + 1.0);
      CHECK(ave.matrix(n, n).real() == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("wigner evaluation") {
  SUBCASE("vacuum peak") {
    CHECK(wigner_at(fock_state(0, 20), 0.0, 0.0) ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-13));
  }
  SUBCASE("|1> origin dip") {
    CHECK(wigner_at(fock_state(1, 20), 0.0, 0.0) ==
          doctest::Approx(-1.0 / M_PI).epsilon(1e-13));
  }
  SUBCASE("matches the defining integral, including coherences") {
    Matrix m = Matrix::Zero(6, 6);
    m(0, 0) = m(1, 1) = 0.5;
    m(0, 1) = Complex(0.3, 0.15);
    m(1, 0) = std::conj(m(0, 1));
    DensityOperator mixed = make_density_unchecked(std::move(m));
    for (auto [x, p] : {std::pair{0.0, 0.0}, {0.7, -0.4}, {-1.3, 0.9}, {2.1, 1.7}}) {
      CHECK(wigner_at(mixed, x, p) ==
            doctest::Approx(wigner_defining_integral(mixed, x, p)).epsilon(1e-9));
    }
    DensityOperator coh = coherent_state(Complex(0.6, -0.3), 24);
    for (auto [x, p] : {std::pair{0.0, 0.0}, {0.9, 0.5}, {-0.8, -0.2}}) {
      CHECK(wigner_at(coh, x, p) ==
            doctest::Approx(wigner_defining_integral(coh, x, p)).epsilon(1e-9));
    }
    DensityOperator f2 = fock_state(2, 12);
    for (auto [x, p] : {std::pair{0.4, 0.0}, {1.2, -1.1}}) {
      CHECK(wigner_at(f2, x, p) ==
            doctest::Approx(wigner_defining_integral(f2, x, p)).epsilon(1e-9));
    }
  }
  SUBCASE("grid form normalizes and records the minimum") {
    WignerGrid grid = wigner(fock_state(1, 30), 6.0, 101);
    CHECK(grid.integral == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(grid.min_value == doctest::Approx(-1.0 / M_PI).epsilon(1e-3));

    WignerGrid th = wigner(thermal_state(1.0, 50), 8.0, 101);
    CHECK(th.min_value >= 0.0);
    CHECK(th.integral == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("rejects low resolution") {
    CHECK_THROWS_AS(wigner(fock_state(0, 10), 5.0, 15), std::invalid_argument);
  }
}

TEST_CASE("positivity window") {
  SUBCASE("frozen values at alpha = 3") {
    auto [gmin, gmax] = positivity_window(3.0);
    CHECK(gmin == doctest::Approx(0.8485).epsilon(1e-12));
    CHECK(gmax == doctest::Approx(std::sqrt(1.8)).epsilon(1e-12));
  }
  SUBCASE("upper edge is 1 at alpha = 1") {
    auto [gmin, gmax] = positivity_window(1.0);
    (void)gmin;
    CHECK(gmax == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("rejects alpha < 1") {
    CHECK_THROWS_AS(positivity_window(0.9), std::invalid_argument);
  }
  SUBCASE("|1> is certified non-positive, Gaussian states are not") {
    GaussianityReport one = gaussianity(fock_state(1, 60));
    CHECK(one.g < one.g_min_pos);
    CHECK(one.wigner_negativity_certified);
    CHECK_FALSE(gaussianity(thermal_state(1.0, 80)).wigner_negativity_certified);
    CHECK_FALSE(gaussianity(coherent_state(Complex(0.5, 0.5), 60))
                    .wigner_negativity_certified);
    CHECK_FALSE(gaussianity(fock_state(0, 30)).wigner_negativity_certified);
  }
}

TEST_CASE("criterion soundness: positive Wigner grids imply g inside the window") {
  std::vector<DensityOperator> corpus;
  corpus.push_back(thermal_state(0.5, 60));
  corpus.push_back(thermal_state(2.0, 80));
  corpus.push_back(coherent_state(Complex(0.7, -0.2), 60));
  corpus.push_back(squeezed_vacuum_state(0.2, 0.3, 60));
  corpus.push_back(fock_state(1, 40));
  corpus.push_back(fock_state(3, 40));
  corpus.push_back(mixture_state({{0, 0.85}, {1, 0.15}}, 40));
  for (const auto& rho : corpus) {
    double alpha = moments(rho).alpha();
    WignerGrid grid = wigner(rho, 5.0 + 3.0 * std::sqrt(alpha), 121);
    GaussianityReport rep = gaussianity(rho);
    if (grid.min_value > 1e-3) {
      CHECK_FALSE(rep.wigner_negativity_certified);
    }
  }
}

TEST_CASE("g invariance under gaussian operations") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int dim = 60;
  DensityOperator base = mixture_state({{0, 0.3}, {1, 0.25}, {2, 0.45}}, dim);
  double g0 = gaussianity(base).g;
  for (int t = 0; t < 12; ++t) {
    double theta = 2 * M_PI * uni(rng);
    double g_rot = gaussianity(apply(rotation_op(theta, dim), base)).g;
    CHECK(std::abs(g_rot - g0) <= 1e-10);
  }
  for (int t = 0; t < 6; ++t) {
    Complex delta(0.5 * (uni(rng) - 0.5), 0.5 * (uni(rng) - 0.5));
    double gd = gaussianity(apply(displacement_op(delta, dim), base)).g;
    CHECK(std::abs(gd - g0) <= 1e-5);
    Complex zeta = std::polar(0.2 * uni(rng), 2 * M_PI * uni(rng));
    double gs = gaussianity(apply(squeeze_op(zeta, dim), base)).g;
    CHECK(std::abs(gs - g0) <= 1e-5);
  }
}

TEST_CASE("phase averaging preserves g for centered isotropic states") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 25; ++t) {
    DensityOperator rho = sparse_coherence_state(rng, 40);
    FirstAndSecondMoments m = moments(rho);
    REQUIRE(m.d.norm() <= 1e-12);
    REQUIRE(std::abs(m.gamma(0, 0) - m.gamma(1, 1)) <= 1e-12);
    double g = gaussianity(rho).g;
    double gs = gaussianity(phase_average(rho)).g;
    CHECK(std::abs(g - gs) <= 1e-10);
  }
}

TEST_CASE("g stays within the global bounds") {
  std::mt19937_64 rng(41);
  std::gamma_distribution<double> gamma_d(1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    int support = 2 + static_cast<int>(rng() % 10);
    Eigen::VectorXd w(support);
    for (int i = 0; i < support; ++i) w(i) = gamma_d(rng);
    w /= w.sum();
    Matrix m = Matrix::Zero(30, 30);
    for (int i = 0; i < support; ++i) m(i, i) = w(i);
    double g = gaussianity(make_density_unchecked(std::move(m))).g;
    CHECK(g >= 2.0 / M_E - 1e-6);
    CHECK(g <= 2.0 + 1e-6);
  }
}

TEST_CASE("radial moment series") {
  SUBCASE("|1>: partial sums reach the direct g") {
    RadialSeries s = radial_moment_series(fock_state(1, 40), 40);
    CHECK(s.direct_g == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(std::abs(s.partial_sums.back() - s.direct_g) <= 1e-4);
    CHECK(s.r3_quadrature == doctest::Approx(s.r3_expected).epsilon(1e-8));
  }
  SUBCASE("half/half mixture of the lowest two levels") {
    RadialSeries s = radial_moment_series(rho_min(0, 0.5, 40), 40);
    CHECK(s.direct_g == doctest::Approx(8.0 / 9.0).epsilon(1e-10));
    CHECK(std::abs(s.partial_sums.back() - s.direct_g) <= 1e-4);
  }
  SUBCASE("thermal reference: quadrature moments match the closed form") {
    RadialSeries s = radial_moment_series(thermal_state(0.5, 100), 40);
    CHECK(s.direct_g == doctest::Approx(1.0).epsilon(1e-9));
    for (int k = 0; k < 40; ++k) {
      CHECK(s.moments[k] ==
            doctest::Approx(s.gaussian_moments[k]).epsilon(1e-6));
    }
    // A Gaussian state's own series sits on the convergence boundary at
    // every alpha (terms of modulus exactly 2); the averaged tail is the
    // meaningful limit and must land on g = 1.
    CHECK(std::abs(s.partial_sums[38] - s.partial_sums[39]) ==
          doctest::Approx(2.0).epsilon(1e-7));
    CHECK(s.tail_averaged == doctest::Approx(1.0).epsilon(1e-7));
  }
  SUBCASE("vacuum sits on the convergence boundary") {
    // Terms have modulus exactly 2, so the plain partial sums oscillate
    // between 2 and 0 forever; the two-term average resolves the limit.
    RadialSeries s = radial_moment_series(fock_state(0, 20), 40);
    CHECK(std::abs(s.partial_sums[38] - s.partial_sums[39]) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.tail_averaged == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(s.partial_sums.back() - s.direct_g) > 0.5);
  }
  SUBCASE("non-isotropic input is rejected") {
    CHECK_THROWS_AS(radial_moment_series(coherent_state(Complex(0.5, 0.0), 40), 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(radial_moment_series(squeezed_vacuum_state(0.2, 0.0, 40), 10),
                    std::invalid_argument);
  }
}
