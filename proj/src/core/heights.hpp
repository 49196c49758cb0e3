#pragma once

#include <optional>

#include "core/spectral.hpp"
#include "core/torus_point.hpp"

namespace monoheight {

enum class HeightMethod { closed_form_projector, closed_form_fibration, iterative_window };

const char* height_method_name(HeightMethod m);

struct HeightOptions {
  int n_max = 60;
  int window = 0;  // 0 = auto: 2 * rotation period when periodic, else 8
  double tolerance = 1e-9;
  bool force_iterative = false;
};

struct HeightEstimate {
  double value = 0.0;
  HeightMethod method = HeightMethod::closed_form_projector;
  int n_max = 0;
  int window = 0;
  double uncertainty = 0.0;
  bool exact_zero = false;
  bool ell_numeric = false;
};

// Shared spectral analysis for a map and its backward companion. Construction
// requires det(A) != 0 only; the height calls themselves reject degenerate
// dynamical degrees.
class CanonicalHeightEngine {
 public:
  explicit CanonicalHeightEngine(const IntMatrix& a);

  const IntMatrix& matrix() const { return fwd_.matrix; }
  const IntMatrix& backward_matrix_of() const { return bwd_.matrix; }
  const MapSpectrum& forward_spectrum() const { return fwd_; }
  const MapSpectrum& backward_spectrum() const { return bwd_; }

  HeightEstimate forward(const TorusPoint& p, const HeightOptions& opts = {}) const;
  HeightEstimate backward(const TorusPoint& p, const HeightOptions& opts = {}) const;
  HeightEstimate total(const TorusPoint& p, const HeightOptions& opts = {}) const;

  double lambda_max_abs() const;
  double lambda_max_radius() const;
  double lambda_min_abs() const;
  double lambda_min_radius() const;
  mpz_class abs_det() const;

 private:
  MapSpectrum fwd_;
  MapSpectrum bwd_;
};

HeightEstimate forward_canonical_height(const IntMatrix& a, const TorusPoint& p,
                                        const HeightOptions& opts = {});
HeightEstimate backward_canonical_height(const IntMatrix& a, const TorusPoint& p,
                                         const HeightOptions& opts = {});
HeightEstimate total_canonical_height(const IntMatrix& a, const TorusPoint& p,
                                      const HeightOptions& opts = {});

// Closed forms for a non-diagonalizable matrix with a single integer
// eigenvalue: the heights factor through the fibration pi = phi_{(A-lambda I)^ell}.
struct FibrationHeights {
  HeightEstimate forward;
  HeightEstimate backward;
  mpz_class lambda;
  int ell = 0;
  TorusPoint base_image;  // pi(P)
};
FibrationHeights fibration_height(const IntMatrix& a, const TorusPoint& p);

// True when the single-integer-eigenvalue non-diagonalizable hypothesis holds;
// lambda receives the eigenvalue.
bool fibration_hypothesis(const MapSpectrum& ms, mpz_class* lambda = nullptr);

// h_A(phi^n(P)) through the two-term linear recurrence solution; falls back to
// direct computation when |lambda_1| = |lambda_N| within radii.
double closed_form_orbit_height(const IntMatrix& a, const TorusPoint& p, int n,
                                const HeightOptions& opts = {});

}  // namespace monoheight
