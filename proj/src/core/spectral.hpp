#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "core/intmatrix.hpp"
#include "core/intpoly.hpp"
#include "core/poly_roots.hpp"

namespace monoheight {

struct SpectralData {
  IntPoly charpoly;
  std::vector<RootApprox> eigenvalues;  // descending modulus, char multiplicities
  double delta = 0.0;                   // spectral radius = dynamical degree
  double delta_radius = 0.0;
  int ell = 0;
  bool ell_exact = true;
  std::optional<int> rotation_period;   // common small period of dominant args
  double second_modulus_ratio = 0.0;    // max non-dominant |lambda| / delta
  std::vector<int> dominant;            // indices into eigenvalues
};

// One irreducible factor of the characteristic polynomial. Galois-conjugate
// eigenvalues share a Jordan structure, so a single largest block size per
// factor is exact.
struct IrreducibleFactor {
  IntPoly poly;
  int multiplicity = 1;   // multiplicity in the characteristic polynomial
  int largest_block = 1;  // largest Jordan block size of its eigenvalues
  std::vector<RootApprox> roots;
  bool has_dominant = false;
};

struct MapSpectrum {
  IntMatrix matrix;
  mpz_class determinant;
  SpectralData data;
  std::vector<IrreducibleFactor> factors;
  IntPoly minpoly;
};

// Full exact-first analysis. Throws Errc::singular_matrix when det(A) = 0,
// Errc::non_convergence / budget errors from the subroutines.
MapSpectrum analyze_map(const IntMatrix& a);

SpectralData analyze_spectrum(const IntMatrix& a);
double dynamical_degree(const IntMatrix& a, double* radius = nullptr);
int ell_of(const IntMatrix& a, bool* exact = nullptr);
IntPoly minimal_polynomial(const IntMatrix& a);

// Limit matrices L_r = lim A^(np+r) / ((np+r)^ell delta^(np+r)), one per
// residue class, when the dominant rotation is periodic and the limits are
// computable in closed form. `exact_limits` marks the all-integer-dominant
// path where the matrices are exact rationals rounded once to double.
struct LimitStructure {
  bool periodic = false;
  int period = 0;
  std::vector<std::vector<double>> limits;  // row-major n x n
  bool exact_limits = false;
};

// Requires det != 0 and rho(A) > 1 (degenerate otherwise). "aperiodic" comes
// back as periodic = false with an empty list.
LimitStructure dominant_limit_structure(const IntMatrix& a);
LimitStructure limit_structure(const MapSpectrum& ms);

// Dominant eigenvalue components with spectral projectors, available when
// ell = 0 is exact. Angles are classified as rational multiples of 2 pi
// (denominator <= 24) or irrational.
struct DominantComponent {
  std::complex<double> eigenvalue;
  double angle = 0.0;
  bool rational_angle = false;
  int num = 0, den = 1;                          // angle ~ 2 pi num / den
  std::vector<std::complex<double>> projector;   // row-major n x n
};
std::optional<std::vector<DominantComponent>> dominant_components(const MapSpectrum& ms);

}  // namespace monoheight
