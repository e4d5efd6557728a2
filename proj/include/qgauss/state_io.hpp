#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qgauss/extremal.hpp"
#include "qgauss/fock.hpp"
#include "qgauss/gaussianity.hpp"

namespace qgauss {

using Json = nlohmann::json;

/// State-file schema, shared by every tool:
///   {"dim": int,
///    "kind": "fock"|"mixture"|"coherent"|"squeezed"|"thermal"|"matrix",
///    "params": {...},
///    "matrix": [[re, im], ...]            (row-major, kind == "matrix")}
/// params per kind:
///   fock:     {"n": int}
///   mixture:  {"populations": {"0": p0, "3": p3, ...}}
///   coherent: {"amplitude": [re, im]}
///   squeezed: {"r": double, "phi": double}
///   thermal:  {"mean_photons": double}
/// Matrix entries round-trip bit-exactly (shortest-round-trip printing).
DensityOperator state_from_json(const Json& j);
DensityOperator load_state(const std::string& path);

/// Serialize as kind == "matrix"; parse(dump(x)) reproduces the exact bits.
Json state_to_json(const DensityOperator& rho);
void save_state(const DensityOperator& rho, const std::string& path);

/// Shortest 17-significant-digit float rendering used by all CSV output
/// ('.' decimal point, locale-independent, round-trip safe).
std::string format_double(double v);

std::string curve_to_csv(const std::vector<CurveRow>& rows);
Json curve_to_json(const std::vector<CurveRow>& rows, int cutoff);

std::string wigner_to_csv(const WignerGrid& grid);
Json wigner_to_json(const WignerGrid& grid);

}  // namespace qgauss
