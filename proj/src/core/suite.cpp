#include "core/suite.hpp"

#include <atomic>
#include <future>
#include <random>

#include "core/error.hpp"

namespace monoheight {

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = d(rng);
  return a;
}

IntMatrix expanding_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
  while (true) {
    IntMatrix a = random_matrix(rng, n, lo, hi);
    if (a.det() == 0) continue;
    MapSpectrum ms = analyze_map(a);
    if (ms.data.delta > 1.0 + 1e-6) return a;
  }
}

TorusPoint exponent_point(std::mt19937_64& rng, int n, int emax) {
  std::uniform_int_distribution<int> de(-emax, emax), ds(0, 1);
  std::map<mpz_class, std::vector<mpz_class>> exps;
  for (long p : {2L, 3L, 5L}) {
    std::vector<mpz_class> v(n);
    for (int i = 0; i < n; ++i) v[i] = de(rng);
    exps[mpz_class(p)] = v;
  }
  std::vector<int> signs(n);
  for (int i = 0; i < n; ++i) signs[i] = ds(rng) ? 1 : -1;
  return TorusPoint::from_factored(signs, exps);
}

IntMatrix unimodular(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> dij(0, n - 1), dv(-2, 2), steps(3, 7);
  IntMatrix u = IntMatrix::identity(n);
  int s = steps(rng);
  for (int t = 0; t < s; ++t) {
    int i = dij(rng), j = dij(rng);
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e.at(i, j) = dv(rng);
    u = u * e;
  }
  return u;
}

IntMatrix single_eigenvalue_nondiag(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> dlam(2, 3), dsign(0, 1), dup(0, 1);
  int lam = dlam(rng) * (dsign(rng) ? 1 : -1);
  IntMatrix j(n);
  for (int i = 0; i < n; ++i) j.at(i, i) = lam;
  j.at(0, 1) = 1;  // at least one block of size 2
  for (int i = 1; i + 1 < n; ++i) j.at(i, i + 1) = dup(rng);
  IntMatrix u = unimodular(rng, n);
  mpz_class du = u.det();
  IntMatrix uinv = du > 0 ? u.adjugate() : u.adjugate() * mpz_class(-1);
  return u * j * uinv;
}

IntMatrix diagonalizable2x2(std::mt19937_64& rng) {
  while (true) {
    IntMatrix a = expanding_matrix(rng, 2, -3, 3);
    MapSpectrum ms = analyze_map(a);
    bool diag = true;
    for (const auto& f : ms.factors)
      if (f.largest_block > 1) diag = false;
    if (diag) return a;
  }
}

struct Case {
  std::string identity;
  IntMatrix matrix;
  TorusPoint point;
  int n_terms = 0;
};

VerificationReport run_case(const Case& c, const VerifyOptions& opts) {
  if (c.identity == "functional-eq") return verify_functional_equation(c.matrix, c.point, opts);
  if (c.identity == "recurrence") return verify_recurrence(c.matrix, c.point, c.n_terms, opts);
  if (c.identity == "lower-bound") return verify_lower_bound(c.matrix, c.point, opts);
  if (c.identity == "dim2-zero-height") return verify_dim2_zero_height(c.matrix, c.point, opts);
  if (c.identity == "fibration-semiconjugacy")
    return verify_fibration_semiconjugacy(c.matrix, c.point, opts);
  fail(Errc::invalid_argument, "unknown identity " + c.identity);
}

}  // namespace

IntMatrix random_expanding_matrix(unsigned long seed_mix, int dim, int lo, int hi) {
  std::mt19937_64 rng(seed_mix);
  return expanding_matrix(rng, dim, lo, hi);
}

TorusPoint random_exponent_point(unsigned long seed_mix, int dim, int emax) {
  std::mt19937_64 rng(seed_mix);
  return exponent_point(rng, dim, emax);
}

IntMatrix random_single_eigenvalue_nondiag(unsigned long seed_mix, int dim) {
  std::mt19937_64 rng(seed_mix);
  return single_eigenvalue_nondiag(rng, dim);
}

SuiteSummary run_suite(unsigned long seed, const SuiteCounts& counts, int workers,
                       const VerifyOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<Case> cases;

  for (int t = 0; t < counts.functional; ++t) {
    int n = (t % 3 == 2) ? 3 : 2;
    Case c{"functional-eq", expanding_matrix(rng, n, -3, 3), exponent_point(rng, n, 6)};
    cases.push_back(std::move(c));
  }
  for (int t = 0; t < counts.recurrence; ++t) {
    int n = (t % 3 == 2) ? 3 : 2;
    Case c{"recurrence", expanding_matrix(rng, n, -3, 3), exponent_point(rng, n, 6)};
    c.n_terms = 4;
    cases.push_back(std::move(c));
  }
  for (int t = 0; t < counts.lower_bound; ++t) {
    Case c{"lower-bound", diagonalizable2x2(rng), exponent_point(rng, 2, 6)};
    cases.push_back(std::move(c));
  }
  for (int t = 0; t < counts.zero_height; ++t) {
    IntMatrix a = single_eigenvalue_nondiag(rng, 2);
    TorusPoint p = exponent_point(rng, 2, 6);
    if (t % 2 == 0) {
      // designed zero-height case: a point in the kernel of the Silverman row
      mpz_class lambda = a.at(0, 0) + a.at(1, 1);
      mpz_divexact_ui(lambda.get_mpz_t(), lambda.get_mpz_t(), 2);
      mpz_class w0, w1;
      if (a.at(1, 0) != 0) {
        w0 = a.at(1, 0);
        w1 = a.at(1, 1) - lambda;
      } else {
        w0 = a.at(0, 0) - lambda;
        w1 = a.at(0, 1);
      }
      std::map<mpz_class, std::vector<mpz_class>> exps;
      if (w0 != 0 || w1 != 0) exps[mpz_class(2)] = {-w1, w0};
      p = TorusPoint::from_factored({1, 1}, exps);
    }
    cases.push_back(Case{"dim2-zero-height", a, p});
  }
  for (int t = 0; t < counts.semiconjugacy; ++t) {
    int n = (t % 2 == 0) ? 2 : 3;
    Case c{"fibration-semiconjugacy", single_eigenvalue_nondiag(rng, n),
           exponent_point(rng, n, 6)};
    cases.push_back(std::move(c));
  }

  std::vector<VerificationReport> reports(cases.size());
  if (workers <= 1) {
    for (size_t i = 0; i < cases.size(); ++i) reports[i] = run_case(cases[i], opts);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= cases.size()) return;
        reports[i] = run_case(cases[i], opts);
      }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w) futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }

  SuiteSummary summary;
  summary.seed = seed;
  auto stats_for = [&](const std::string& name) -> IdentityStats& {
    for (auto& s : summary.identities)
      if (s.name == name) return s;
    summary.identities.push_back({name, 0, 0, 0, 0});
    return summary.identities.back();
  };
  for (size_t i = 0; i < cases.size(); ++i) {
    IdentityStats& s = stats_for(cases[i].identity);
    ++s.cases;
    if (!reports[i].hypotheses_met) {
      ++s.hypothesis_skipped;
    } else if (reports[i].passed) {
      ++s.passed;
    } else {
      ++s.failed;
      summary.all_passed = false;
      if (summary.first_failure.empty())
        summary.first_failure = cases[i].identity + ": residual " +
                                std::to_string(reports[i].residual) + " > tolerance " +
                                std::to_string(reports[i].tolerance);
    }
  }
  return summary;
}

}  // namespace monoheight
