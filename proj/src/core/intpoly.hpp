#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace monoheight {

struct FactorBudget {
  unsigned long trial_limit = 1'000'000;
  unsigned long rho_iterations = 20'000'000;
  unsigned long kronecker_candidates = 4'000'000;
};

// Dense univariate polynomial over Z, coefficients in ascending degree order.
// The zero polynomial has an empty coefficient vector.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static IntPoly constant(mpz_class v);
  static IntPoly monomial(const mpz_class& coeff, int degree);
  // (x - r)
  static IntPoly linear_root(const mpz_class& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& coeff(int k) const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& leading() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;
  std::complex<double> eval(const std::complex<double>& x) const;

  IntPoly derivative() const;
  IntPoly negate_variable() const;  // p(-x)

  mpz_class content() const;         // gcd of coefficients, sign of leading
  IntPoly primitive_part() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly operator*(const mpz_class& s) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly pow(unsigned e) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<mpz_class> c_;
};

// Exact division over Z; returns false if b does not divide a exactly.
bool try_divide_exact(const IntPoly& a, const IntPoly& b, IntPoly* quotient);

// Primitive gcd over Z (positive leading coefficient).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Yun square-free decomposition of the primitive part:
// p = +- prod q_i ^ m_i with q_i squarefree, pairwise coprime, m_i strictly
// increasing. Only factors of positive degree are returned.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// k-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned k);

// Integer roots with multiplicities (needs a factorization of the constant
// term, hence the budget).
std::vector<std::pair<mpz_class, int>> integer_roots(const IntPoly& p, const FactorBudget& budget = {});

// Exact irreducibility over Q for a nonconstant polynomial. Uses the rational
// root theorem for low degrees, a mod-p fast path, and Kronecker interpolation
// for the remaining factor degrees. Throws Errc::budget_exceeded if the
// divisor enumeration grows past the budget.
bool is_irreducible_over_q(const IntPoly& p, const FactorBudget& budget = {});

// Irreducible factors of a squarefree primitive polynomial (same machinery as
// the irreducibility test, applied recursively).
std::vector<IntPoly> factor_squarefree_over_q(const IntPoly& p, const FactorBudget& budget = {});

// Polynomials over Q, same conventions. Minimal surface: what the spectral
// code needs for Bezout identities.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { normalize(); }
  explicit RatPoly(const IntPoly& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpq_class& coeff(int k) const;
  const std::vector<mpq_class>& coeffs() const { return c_; }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  RatPoly operator*(const mpq_class& s) const;

  // Division with remainder: *this = q*d + r, deg r < deg d.
  void divmod(const RatPoly& d, RatPoly* q, RatPoly* r) const;

 private:
  void normalize();
  std::vector<mpq_class> c_;
};

// For coprime a, b finds u, v with u*a + v*b = 1.
void bezout_coprime(const RatPoly& a, const RatPoly& b, RatPoly* u, RatPoly* v);

}  // namespace monoheight
