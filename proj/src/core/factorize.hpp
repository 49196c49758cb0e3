#pragma once

#include <gmpxx.h>

#include <map>

#include "core/intpoly.hpp"

namespace monoheight {

bool is_probable_prime(const mpz_class& n);

// Full factorization of n >= 1 into prime -> exponent. Trial division up to
// budget.trial_limit, then Pollard rho (Brent cycle) on the remaining
// cofactors. Throws Errc::budget_exceeded when the rho iteration cap runs out
// before the cofactor splits.
std::map<mpz_class, unsigned> factorize(const mpz_class& n, const FactorBudget& budget = {});

}  // namespace monoheight
