#include "qgauss/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "qgauss/gaussian.hpp"
#include "qgauss/version.hpp"

namespace qgauss {

DensityOperator state_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("kind")) {
    throw std::invalid_argument("state file: 'dim' and 'kind' are required");
  }
  const int dim = j.at("dim").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  const Json params = j.value("params", Json::object());

  if (kind == "fock") {
    return fock_state(params.at("n").get<int>(), dim);
  }
  if (kind == "mixture") {
    std::map<int, double> pops;
    for (const auto& [key, val] : params.at("populations").items()) {
      pops[std::stoi(key)] = val.get<double>();
    }
    return mixture_state(pops, dim);
  }
  if (kind == "coherent") {
    const auto& amp = params.at("amplitude");
    return coherent_state(Complex(amp.at(0).get<double>(),
                                  amp.at(1).get<double>()),
                          dim);
  }
  if (kind == "squeezed") {
    return squeezed_vacuum_state(params.at("r").get<double>(),
                                 params.value("phi", 0.0), dim);
  }
  if (kind == "thermal") {
    return thermal_state(params.at("mean_photons").get<double>(), dim);
  }
  if (kind == "matrix") {
    const auto& entries = j.at("matrix");
    if (static_cast<int>(entries.size()) != dim * dim) {
      throw std::invalid_argument("state file: matrix size != dim^2");
    }
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < dim; ++k) {
        const auto& e = entries.at(i * dim + k);
        m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    return make_density(std::move(m), j.value("label", std::string("matrix")));
  }
  throw std::invalid_argument("state file: unknown kind '" + kind + "'");
}

DensityOperator load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  Json j = Json::parse(in);
  return state_from_json(j);
}

Json state_to_json(const DensityOperator& rho) {
  Json entries = Json::array();
  for (int i = 0; i < rho.dim; ++i) {
    for (int k = 0; k < rho.dim; ++k) {
      entries.push_back({rho.matrix(i, k).real(), rho.matrix(i, k).imag()});
    }
  }
  Json j;
  j["dim"] = rho.dim;
  j["kind"] = "matrix";
  j["params"] = Json::object();
  j["matrix"] = std::move(entries);
  if (!rho.label.empty()) j["label"] = rho.label;
  return j;
}

void save_state(const DensityOperator& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << state_to_json(rho).dump(2) << "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
  std::string out = "alpha,g_min,g_max,n_min,r_min\n";
  for (const auto& r : rows) {
    out += format_double(r.alpha) + "," + format_double(r.g_min) + "," +
           format_double(r.g_max) + "," + std::to_string(r.n_min) + "," +
           format_double(r.r_min) + "\n";
  }
  return out;
}

Json curve_to_json(const std::vector<CurveRow>& rows, int cutoff) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"alpha", r.alpha},
                   {"g_min", r.g_min},
                   {"g_max", r.g_max},
                   {"n_min", r.n_min},
                   {"r_min", r.r_min}});
  }
  const ToleranceProfile& tol = default_tolerances();
  Json j;
  j["curve"] = std::move(arr);
  j["metadata"] = {{"cutoff", cutoff},
                   {"g_lower_bound", kGLowerBound},
                   {"tolerances",
                    {{"hermiticity", tol.hermiticity},
                     {"trace", tol.trace},
                     {"psd_floor", tol.psd_floor}}},
                   {"version", kVersion}};
  return j;
}

std::string wigner_to_csv(const WignerGrid& grid) {
  std::string out = "x,p,w\n";
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      out += format_double(grid.xs[i]) + "," + format_double(grid.xs[j]) +
             "," + format_double(grid.values(i, j)) + "\n";
    }
  }
  return out;
}

Json wigner_to_json(const WignerGrid& grid) {
  Json values = Json::array();
  for (int i = 0; i < grid.resolution; ++i) {
    Json row = Json::array();
    for (int j = 0; j < grid.resolution; ++j) row.push_back(grid.values(i, j));
    values.push_back(std::move(row));
  }
  Json j;
  j["extent"] = grid.extent;
  j["resolution"] = grid.resolution;
  j["min_value"] = grid.min_value;
  j["integral"] = grid.integral;
  j["values"] = std::move(values);
  j["metadata"] = {{"version", kVersion}};
  return j;
}

}  // namespace qgauss
