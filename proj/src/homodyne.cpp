#include "qgauss/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qgauss/gaussian.hpp"
#include "qgauss/gaussianity.hpp"
#include "qgauss/hermite.hpp"

namespace qgauss {

Eigen::VectorXd hermite_functions(int nmax, double x) {
  Eigen::VectorXd psi(nmax);
  if (nmax < 1) return psi;
  psi(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (nmax > 1) psi(1) = std::sqrt(2.0) * x * psi(0);
  for (int n = 2; n < nmax; ++n) {
    psi(n) = std::sqrt(2.0 / n) * x * psi(n - 1) -
             std::sqrt((n - 1.0) / n) * psi(n - 2);
  }
  return psi;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

struct JointDensity {
  int dim = 0;          // per-mode cutoff
  Matrix rho_out;       // two-mode state after the beam splitter
  double alpha = 1.0;
};

// rho (signal) and its reference Gaussian (auxiliary, mirrored in x) mixed
// on a balanced beam splitter. The x-mirror Pi rho^T Pi on the auxiliary
// port makes pi * density(0,0) equal Tr(rho rho_G) exactly for every input;
// it is the identity for the phase-invariant references of centered
// isotropic states.
JointDensity beam_splitter_output(const DensityOperator& rho, int working_dim) {
  const int d = working_dim;
  if (d < 4) throw std::invalid_argument("homodyne: working_dim >= 4");

  FirstAndSecondMoments m = moments(rho);
  Matrix signal = Matrix::Zero(d, d);
  int copy = std::min(rho.dim, d);
  signal.topLeftCorner(copy, copy) = rho.matrix.topLeftCorner(copy, copy);
  double dropped = 1.0 - signal.trace().real();
  if (dropped > 1e-8) {
    throw std::invalid_argument(
        "homodyne: working cutoff drops population " + std::to_string(dropped));
  }

  GaussianRef ref =
      reference_gaussian_from_moments(m, d, kStrictReferenceTruncation);
  Matrix aux = ref.matrix.matrix.transpose();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if ((i + j) % 2 == 1) aux(i, j) = -aux(i, j);
    }
  }

  Matrix a = annihilation_operator(d).matrix;
  Matrix id = Matrix::Identity(d, d);
  Matrix A = kron(a, id);
  Matrix B = kron(id, a);
  Matrix gen = (M_PI / 4.0) * (A.adjoint() * B - A * B.adjoint());
  Matrix u = unitary_exponential(gen);

  JointDensity jd;
  jd.dim = d;
  jd.alpha = m.alpha();
  Matrix in = kron(signal, aux);
  jd.rho_out = u * in * u.adjoint();
  return jd;
}

// psi_m(x) * phi_n(p) stacked as a two-mode coefficient vector.
Vector point_vector(const JointDensity& jd, double x, double p) {
  Eigen::VectorXd px = hermite_functions(jd.dim, x);
  Eigen::VectorXd pp = hermite_functions(jd.dim, p);
  Vector c(jd.dim * jd.dim);
  Complex mi(0.0, -1.0);
  Complex ph(1.0, 0.0);
  std::vector<Complex> phases(jd.dim);
  for (int n = 0; n < jd.dim; ++n) {
    phases[n] = ph;
    ph *= mi;
  }
  for (int mm = 0; mm < jd.dim; ++mm) {
    for (int nn = 0; nn < jd.dim; ++nn) {
      c(mm * jd.dim + nn) = px(mm) * phases[nn] * pp(nn);
    }
  }
  return c;
}

double density_at(const JointDensity& jd, double x, double p) {
  Vector c = point_vector(jd, x, p);
  Complex val = (c.transpose() * jd.rho_out * c.conjugate())(0, 0);
  return val.real();
}

}  // namespace

double exact_overlap_via_homodyne(const DensityOperator& rho, int working_dim) {
  JointDensity jd = beam_splitter_output(rho, working_dim);
  return M_PI * density_at(jd, 0.0, 0.0);
}

HomodyneRun simulate_overlap(const DensityOperator& rho, int shots,
                             std::uint64_t seed,
                             const HomodyneOptions& options) {
  if (shots < 100) {
    throw std::invalid_argument("simulate_overlap: shots >= 100 required");
  }
  if (options.grid_cells < 64) {
    throw std::invalid_argument("simulate_overlap: grid too coarse");
  }
  JointDensity jd = beam_splitter_output(rho, options.working_dim);
  const int d = jd.dim;
  const int N = options.grid_cells;

  HomodyneRun run;
  run.shots = shots;
  run.seed = seed;
  run.working_dim = d;
  run.grid_cells = N;
  run.grid_extent = 8.0 * std::sqrt(jd.alpha);
  run.bandwidth = options.bandwidth > 0.0
                      ? options.bandwidth
                      : 0.15 * std::sqrt(jd.alpha);
  if (!(run.bandwidth > 0.0) || run.bandwidth > 0.25 * run.grid_extent) {
    throw std::invalid_argument("simulate_overlap: invalid bandwidth");
  }
  run.direct_overlap = gaussianity(rho).overlap;
  run.exact_density = M_PI * density_at(jd, 0.0, 0.0);

  // Joint density on the sampling grid, factorized through the reshaped
  // two-mode state: P = Fx * R * Fp^T with
  //   R[(m,m'), (n,n')] = rho_out[(m,n), (m',n')].
  const double cell = 2.0 * run.grid_extent / N;
  Eigen::VectorXd axis(N);
  for (int i = 0; i < N; ++i) axis(i) = -run.grid_extent + (i + 0.5) * cell;

  Matrix R(d * d, d * d);
  for (int mm = 0; mm < d; ++mm)
    for (int mp = 0; mp < d; ++mp)
      for (int nn = 0; nn < d; ++nn)
        for (int np = 0; np < d; ++np)
          R(mm * d + mp, nn * d + np) = jd.rho_out(mm * d + nn, mp * d + np);

  Matrix Fx(N, d * d);
  Matrix Fp(N, d * d);
  std::vector<Complex> phases(d);
  {
    Complex mi(0.0, -1.0), ph(1.0, 0.0);
    for (int n = 0; n < d; ++n) {
      phases[n] = ph;
      ph *= mi;
    }
  }
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXd h = hermite_functions(d, axis(i));
    for (int mm = 0; mm < d; ++mm)
      for (int mp = 0; mp < d; ++mp) {
        Fx(i, mm * d + mp) = h(mm) * h(mp);
        Fp(i, mm * d + mp) =
            phases[mm] * std::conj(phases[mp]) * h(mm) * h(mp);
      }
  }
  Matrix tmp = R * Fp.transpose();      // (d^2 x N)
  Matrix Pc = Fx * tmp;                 // (N x N), row = x index
  Eigen::MatrixXd P = Pc.real().cwiseMax(0.0);

  const double cell_area = cell * cell;
  const double total = P.sum() * cell_area;

  // Inverse-transform tables: row marginal in x, then conditional in p.
  Eigen::VectorXd row_cdf(N);
  Eigen::MatrixXd col_cdf(N, N);
  double acc = 0.0;
  for (int i = 0; i < N; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < N; ++j) {
      rowsum += P(i, j);
      col_cdf(i, j) = rowsum;
    }
    if (rowsum > 0.0) col_cdf.row(i) /= rowsum;
    acc += rowsum;
    row_cdf(i) = acc;
  }
  row_cdf /= acc;

  const int B = std::max(2, options.batches);
  const double h2 = run.bandwidth * run.bandwidth;
  const double knorm = 1.0 / (2.0 * M_PI * h2);
  std::vector<double> batch_mean(B, 0.0);
  std::vector<int> batch_count(B, 0);
  int base = shots / B;
  int extra = shots % B;
  for (int b = 0; b < B; ++b) {
    // Independent substream per batch; thread-safe splitting by design.
    std::mt19937_64 rng(splitmix64(seed ^ (0x51ed2701ULL + b)));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int count = base + (b < extra ? 1 : 0);
    double sum = 0.0;
    for (int s = 0; s < count; ++s) {
      double u1 = uni(rng), u2 = uni(rng), u3 = uni(rng), u4 = uni(rng);
      int i = static_cast<int>(
          std::lower_bound(row_cdf.data(), row_cdf.data() + N, u1) -
          row_cdf.data());
      i = std::min(i, N - 1);
      // col_cdf is column-major, so binary-search row i by index.
      int lo = 0, hi = N - 1;
      while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (col_cdf(i, mid) < u2) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      int j = lo;
      double xs = axis(i) + (u3 - 0.5) * cell;
      double ps = axis(j) + (u4 - 0.5) * cell;
      sum += knorm * std::exp(-0.5 * (xs * xs + ps * ps) / h2);
    }
    batch_mean[b] = count > 0 ? sum / count : 0.0;
    batch_count[b] = count;
  }
  double mean = 0.0;
  for (int b = 0; b < B; ++b) mean += batch_mean[b] * batch_count[b];
  mean /= shots;
  double var = 0.0;
  for (int b = 0; b < B; ++b) {
    double dlt = batch_mean[b] - mean;
    var += dlt * dlt;
  }
  var /= (B - 1.0);

  run.estimate = M_PI * mean * total;
  run.stderr_est = M_PI * std::sqrt(var / B) * total;
  if (run.stderr_est > 0.0) {
    run.deviation_sigma = (run.estimate - run.direct_overlap) / run.stderr_est;
  }
  return run;
}

GEstimate g_from_simulation(const HomodyneRun& run, double alpha) {
  if (alpha < 1.0 - 1e-8) {
    throw std::invalid_argument("g_from_simulation: alpha >= 1 required");
  }
  alpha = std::max(alpha, 1.0);
  return {alpha * run.estimate, alpha * run.stderr_est};
}

}  // namespace qgauss
