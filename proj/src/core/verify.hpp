#pragma once

#include <optional>
#include <string>

#include "core/heights.hpp"

namespace monoheight {

// Pass/fail record for one named identity on one (matrix, point) instance.
// passed <=> hypotheses_met and residual <= tolerance.
struct VerificationReport {
  std::string identity_name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool hypotheses_met = false;
  std::string explanation;
  // N = 2 functional equation also carries the simple two-sided form
  std::optional<std::pair<double, double>> simple_form;
};

struct VerifyOptions {
  double tolerance = 1e-6;  // floor; verifiers widen by 3x reported uncertainty
  HeightOptions heights;
};

// Theorem thm:unique part (1):
//   hhat(phi_A P)/|l1 lN| + hhat(phi_A' P)/D = (1/|l1| + 1/|lN|) hhat(P).
VerificationReport verify_functional_equation(const IntMatrix& a, const TorusPoint& p,
                                              const VerifyOptions& opts = {});

// Three-term recurrence of H_n = hhat(phi^n P).
VerificationReport verify_recurrence(const IntMatrix& a, const TorusPoint& p, int n_terms,
                                     const VerifyOptions& opts = {});

// Theorem LB1: one modulus group -> hhat+ >= h; two groups -> hhat >= h.
VerificationReport verify_lower_bound(const IntMatrix& a, const TorusPoint& p,
                                      const VerifyOptions& opts = {});

// Silverman's 2x2 zero-height characterization against the fibration formula,
// checked symbolically on exponent tables.
VerificationReport verify_dim2_zero_height(const IntMatrix& a, const TorusPoint& p,
                                           const VerifyOptions& opts = {});

// pi(phi_A(P)) = phi_A|T(pi(P)) exactly on exponent tables.
VerificationReport verify_fibration_semiconjugacy(const IntMatrix& a, const TorusPoint& p,
                                                  const VerifyOptions& opts = {});

enum class Preperiodicity { yes, no, unknown };

struct PreperiodicityResult {
  Preperiodicity result = Preperiodicity::unknown;
  std::string certificate;
};

// Exact where possible: points with all-zero exponent tables are preperiodic
// (finite sign orbit); when no eigenvalue of A is a root of unity a nonzero
// exponent orbit cannot cycle. The residual regime falls back to explicit
// orbit detection and may report unknown.
PreperiodicityResult preperiodicity_test(const IntMatrix& a, const TorusPoint& p,
                                         int orbit_bound = 64);

}  // namespace monoheight
