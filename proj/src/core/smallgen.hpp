#pragma once

#include <optional>
#include <string>

#include "core/heights.hpp"

namespace monoheight {

struct ApproximationData {
  mpz_class y;                  // the common multiplier
  std::vector<mpz_class> ys;    // y_i = round(y z_i)
  double achieved = 0.0;        // max_i |y z_i - y_i|
};

// Witness for a point of small forward (or total) canonical height.
struct SmallHeightCertificate {
  TorusPoint point{1};
  double target_epsilon = 0.0;
  double predicted_bound = 0.0;
  HeightEstimate measured_forward;
  std::optional<HeightEstimate> measured_total;
  std::string construction;  // fibonacci_2x2 | dirichlet_forward | dirichlet_total
  ApproximationData approx;
};

// Example 2.4 family: P = (2^{F_k}, 2^{-F_{k+1}}) for A = [[2,1],[1,1]], with
// hhat+ = (log 2 / sqrt 5) gamma^{-k}.
SmallHeightCertificate fibonacci_points(int k);

struct DirichletOptions {
  double epsilon_prime = 0.01;  // simultaneous-approximation target
  long y_max = 1'000'000;
  long base_prime = 2;
  HeightOptions heights;
};

// Proposition of section 2: kernel of the dominant left spectral row; needs
// an irreducible characteristic polynomial with distinct positive real roots.
SmallHeightCertificate dirichlet_small_forward(const IntMatrix& a, const DirichletOptions& opts);

// Section 5: kernel of both the top and bottom spectral rows; N >= 3.
SmallHeightCertificate dirichlet_small_total(const IntMatrix& a, const DirichletOptions& opts);

}  // namespace monoheight
