#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "core/intmatrix.hpp"
#include "core/scaled.hpp"

namespace monoheight {

struct HeightValue {
  double value = 0.0;
  bool exact_zero = false;
};

// Point of G_m^N(Q) in factored form: a sign per coordinate plus a table
// prime -> exponent vector. Coordinate i equals
//   signs[i] * prod_p p^(exponents[p][i]).
// Normal form: every stored prime has at least one nonzero exponent.
class TorusPoint {
 public:
  explicit TorusPoint(int n);  // the all-ones point

  static TorusPoint from_rationals(const std::vector<mpq_class>& coords,
                                   const FactorBudget& budget = {});
  static TorusPoint from_factored(std::vector<int> signs,
                                  std::map<mpz_class, std::vector<mpz_class>> exponents);

  int dim() const { return n_; }
  const std::vector<int>& signs() const { return signs_; }
  const std::map<mpz_class, std::vector<mpz_class>>& exponents() const { return exps_; }

  bool is_root_of_unity() const { return exps_.empty(); }

  TorusPoint inverse() const;
  // exponentwise m-th power (m may be negative)
  TorusPoint power(const mpz_class& m) const;

  // Reconstructs the coordinates; exponents above the bit guard are refused.
  std::vector<mpq_class> to_rationals() const;

  bool operator==(const TorusPoint& o) const {
    return n_ == o.n_ && signs_ == o.signs_ && exps_ == o.exps_;
  }

  // Canonical serialization used as an orbit-set key.
  std::string key() const;

 private:
  friend TorusPoint apply_map(const IntMatrix& a, const TorusPoint& p);
  void normalize();
  int n_;
  std::vector<int> signs_;
  std::map<mpz_class, std::vector<mpz_class>> exps_;
};

// Monomial map action: every exponent vector e goes to A*e, signs follow the
// parity of the matrix rows.
TorusPoint apply_map(const IntMatrix& a, const TorusPoint& p);

// Weil height of the point (natural log scale), summed over the archimedean
// place and the primes of the table. exact_zero is decided symbolically.
HeightValue weil_height(const TorusPoint& p);

// Same quantity kept in scaled form; safe for exponents far beyond double
// range (they grow like delta^n along orbits).
Scaled weil_height_scaled(const TorusPoint& p);

}  // namespace monoheight
