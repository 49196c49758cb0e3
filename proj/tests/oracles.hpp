#pragma once

// Test-side oracles, deliberately independent of the library's factored-form
// machinery: heights by brute force over places of explicit rationals, the
// monomial action by direct rational exponentiation, and the golden-ratio
// closed form evaluated from its printed formula.

#include <gmpxx.h>

#include <cmath>
#include <vector>

namespace oracles {

inline double log_mpz(const mpz_class& n) {
  long e;
  double d = mpz_get_d_2exp(&e, n.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

// p-adic valuation by repeated exact division (test inputs are smooth).
inline long valuation(mpz_class n, const mpz_class& p) {
  long v = 0;
  if (n == 0) return 0;
  n = abs(n);
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

// Brute-force Weil height of a rational tuple: sum over v of
// log max(1, |x_1|_v, ..., |x_N|_v), places enumerated by trial division
// with small primes.
inline double weil_height_rationals(const std::vector<mpq_class>& xs) {
  std::vector<mpz_class> primes;
  for (long p = 2; p < 200; ++p) {
    bool is_p = p >= 2;
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) is_p = false;
    if (is_p) primes.emplace_back(p);
  }
  double h = 0.0;
  // leftover large prime factors
  for (const auto& x : xs) {
    mpz_class n = abs(x.get_num()), d = x.get_den();
    for (const auto& p : primes) {
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
      while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()))
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
    }
    if (n > 1) primes.push_back(n);
    if (d > 1) primes.push_back(d);
  }
  for (const auto& p : primes) {
    long worst = 0;
    for (const auto& x : xs) {
      long v = valuation(x.get_num(), p) - valuation(x.get_den(), p);
      worst = std::max(worst, -v);
    }
    h += static_cast<double>(worst) * log_mpz(p);
  }
  double arch = 0.0;
  for (const auto& x : xs)
    arch = std::max(arch, log_mpz(x.get_num()) - log_mpz(x.get_den()));
  h += std::max(0.0, arch);
  return h;
}

// Direct monomial action on rational coordinates.
inline std::vector<mpq_class> apply_map_rationals(const std::vector<std::vector<long>>& a,
                                                  const std::vector<mpq_class>& xs) {
  size_t n = xs.size();
  std::vector<mpq_class> out(n, mpq_class(1));
  for (size_t i = 0; i < n; ++i) {
    mpq_class acc(1);
    for (size_t j = 0; j < n; ++j) {
      long e = a[i][j];
      if (e == 0) continue;
      mpq_class base = xs[j];
      mpq_class pw(1);
      long k = std::labs(e);
      while (k-- > 0) pw *= base;
      if (e < 0) pw = 1 / pw;
      acc *= pw;
    }
    out[i] = acc;
  }
  return out;
}

// Example 2.4 closed form evaluated from the factored data of a point of
// G_m^2: (1/sqrt 5) * sum_v max(0, gamma log|x|_v + log|y|_v).
template <typename Point>
double golden_closed_form(const Point& p) {
  const double gamma = (1.0 + std::sqrt(5.0)) / 2.0;
  double total = 0.0;
  double ux = 0.0, uy = 0.0;
  for (const auto& [prime, e] : p.exponents()) {
    double lp = std::log(prime.get_d());
    double e0 = e[0].get_d(), e1 = e[1].get_d();
    // finite place: log|x|_p = -e0 log p
    total += std::max(0.0, gamma * (-e0 * lp) + (-e1 * lp));
    ux += e0 * lp;
    uy += e1 * lp;
  }
  total += std::max(0.0, gamma * ux + uy);
  return total / std::sqrt(5.0);
}

inline long fibonacci(int k) {
  long a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    long t = a + b;
    a = b;
    b = t;
  }
  return a;  // F_0 = 0, F_1 = 1, ...
}

}  // namespace oracles
