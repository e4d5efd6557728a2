#pragma once

namespace qgauss {

/// Shared numerical tolerance profile for state validation.
/// Defaults suit double precision at Fock cutoffs up to a few hundred.
struct ToleranceProfile {
  double hermiticity = 1e-12;   // max |rho_ij - conj(rho_ji)|
  double trace = 1e-10;         // |Tr(rho) - 1|
  double psd_floor = -1e-10;    // smallest eigenvalue must be >= this
};

/// Process-wide shared profile. Intended to be adjusted once at startup
/// (CLI flag overrides) and treated as read-only afterwards; concurrent
/// readers are safe under that discipline.
inline ToleranceProfile& active_tolerances() {
  static ToleranceProfile t{};
  return t;
}

inline const ToleranceProfile& default_tolerances() {
  return active_tolerances();
}

}  // namespace qgauss
