#include "core/factorize.hpp"

#include "core/error.hpp"

namespace monoheight {

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor of n (odd
// composite), or 0 when the iteration cap is exhausted.
mpz_class pollard_brent(const mpz_class& n, unsigned long max_iter) {
  gmp_randstate_t rs;
  gmp_randinit_mt(rs);
  gmp_randseed_ui(rs, 0x6d6f6e6fUL);

  unsigned long used = 0;
  for (unsigned long attempt = 1; used < max_iter; ++attempt) {
    mpz_class y, c, m(128), g(1), r(1), q(1), x, ys;
    mpz_urandomm(y.get_mpz_t(), rs, n.get_mpz_t());
    c = attempt;  // deterministic increments keep runs reproducible
    while (g == 1 && used < max_iter) {
      x = y;
      for (mpz_class i = 0; i < r; ++i) {
        y = (y * y + c) % n;
      }
      mpz_class k(0);
      while (k < r && g == 1 && used < max_iter) {
        ys = y;
        mpz_class lim = std::min(m, mpz_class(r - k));
        for (mpz_class i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
          ++used;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // backtrack
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        mpz_class d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        ++used;
        if (used >= max_iter) break;
      }
    }
    if (g != 1 && g != n) {
      gmp_randclear(rs);
      return g;
    }
  }
  gmp_randclear(rs);
  return 0;
}

void factor_rec(mpz_class n, std::map<mpz_class, unsigned>& out, const FactorBudget& budget,
                unsigned long& rho_left) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  // perfect power shortcut: rho struggles on p^k
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
        std::map<mpz_class, unsigned> sub;
        factor_rec(root, sub, budget, rho_left);
        for (const auto& [p, m] : sub) out[p] += m * static_cast<unsigned>(e);
        return;
      }
    }
  }
  mpz_class d = pollard_brent(n, rho_left);
  if (d == 0)
    fail(Errc::budget_exceeded,
         "factorization budget exceeded on cofactor with " +
             std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) + " digits");
  factor_rec(d, out, budget, rho_left);
  factor_rec(n / d, out, budget, rho_left);
}

}  // namespace

std::map<mpz_class, unsigned> factorize(const mpz_class& n, const FactorBudget& budget) {
  if (n < 1) fail(Errc::invalid_argument, "factorize expects n >= 1");
  std::map<mpz_class, unsigned> out;
  mpz_class m = n;
  // trial division: 2, 3, then 6k+-1
  for (mpz_class p : {mpz_class(2), mpz_class(3)}) {
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      out[p] += 1;
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    }
  }
  for (unsigned long p = 5; p <= budget.trial_limit && m > 1; p += 6) {
    for (unsigned long cand : {p, p + 2}) {
      if (mpz_class(cand) * cand > m) break;
      while (mpz_divisible_ui_p(m.get_mpz_t(), cand)) {
        out[mpz_class(cand)] += 1;
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), cand);
      }
    }
    if (mpz_class(p) * p > m) break;
  }
  if (m > 1) {
    if (mpz_class(budget.trial_limit) * budget.trial_limit > m || is_probable_prime(m)) {
      out[m] += 1;  // remaining cofactor below trial limit squared is prime
    } else {
      unsigned long rho_left = budget.rho_iterations;
      factor_rec(m, out, budget, rho_left);
    }
  }
  return out;
}

}  // namespace monoheight
