#pragma once

#include <complex>
#include <vector>

#include "core/intpoly.hpp"

namespace monoheight {

struct RootApprox {
  std::complex<double> value;
  double radius = 0.0;   // certified inclusion radius (0 for exact roots)
  int multiplicity = 1;
  bool exact_integer = false;
};

// All complex roots of a nonzero integer polynomial with multiplicities and
// residual-based inclusion radii. Multiplicities come from an exact
// square-free decomposition; integer roots are verified exactly and carry
// radius 0. Aberth-Ehrlich iteration does the rest. Throws
// Errc::non_convergence when the iteration cap is hit.
std::vector<RootApprox> poly_roots(const IntPoly& p, double target_radius = 1e-10);

}  // namespace monoheight
