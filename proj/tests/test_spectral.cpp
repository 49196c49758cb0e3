#include "core/spectral.hpp"

#include <random>

#include "core/error.hpp"
#include "doctest.h"

using namespace monoheight;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<mpz_class>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

// random unimodular matrix: a product of elementary row additions
IntMatrix random_unimodular(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> dij(0, n - 1), dv(-2, 2), steps(4, 8);
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

}  // namespace

TEST_CASE("dynamical degree") {
  for (long d : {2L, 3L}) {
    for (int n : {2, 3}) {
      CHECK(dynamical_degree(IntMatrix::identity(n) * mpz_class(d)) == doctest::Approx(d));
      CHECK(dynamical_degree(IntMatrix::identity(n) * mpz_class(-d)) == doctest::Approx(d));
    }
  }
  double r = 0;
  double delta = dynamical_degree(mat({{2, 1}, {1, 1}}), &r);
  CHECK(delta == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  CHECK(r <= 1e-9);
  CHECK_THROWS_AS(dynamical_degree(mat({{1, 1}, {1, 1}})), Error);
}

TEST_CASE("rho(A^k) = rho(A)^k") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> d(-3, 3);
  int done = 0;
  while (done < 15) {
    int n = 2 + done % 3;
    IntMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = d(rng);
    if (a.det() == 0) continue;
    double base = dynamical_degree(a);
    for (int k = 2; k <= 4; ++k)
      CHECK(dynamical_degree(a.pow(k)) == doctest::Approx(std::pow(base, k)).epsilon(1e-8));
    ++done;
  }
}

TEST_CASE("backward dynamical degree is |lambda_1 ... lambda_{N-1}|") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> d(-3, 3);
  int done = 0;
  while (done < 20) {
    int n = 2 + done % 2;
    IntMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = d(rng);
    if (a.det() == 0) continue;
    MapSpectrum ms = analyze_map(a);
    double min_mod = std::abs(ms.data.eigenvalues.back().value);
    if (min_mod < 1e-9) continue;
    double expect = mpz_class(abs(a.det())).get_d() / min_mod;
    CHECK(dynamical_degree(backward_matrix(a)) == doctest::Approx(expect).epsilon(1e-7));
    ++done;
  }
}

TEST_CASE("ell") {
  CHECK(ell_of(mat({{2, 1}, {1, 1}})) == 0);  // squarefree characteristic polynomial
  CHECK(ell_of(mat({{2, 1}, {0, 2}})) == 1);
  CHECK(ell_of(mat({{2, 1, 0}, {0, 2, 1}, {0, 0, 2}})) == 2);  // rank chain 2, 1, 0
  CHECK(ell_of(IntMatrix::identity(3) * mpz_class(2)) == 0);   // semisimple repeated
  // dominant simple although another eigenvalue has a Jordan block
  CHECK(ell_of(mat({{3, 0, 0}, {0, 2, 1}, {0, 0, 2}})) == 0);
  // dominant block next to a simple smaller eigenvalue
  CHECK(ell_of(mat({{2, 1, 0}, {0, 2, 0}, {0, 0, 1}})) == 1);
}

TEST_CASE("ell matches the block structure of conjugated Jordan forms") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> dlam(-3, 3);
  std::vector<std::vector<int>> partitions = {{2},    {2, 1},    {3},      {2, 2},
                                              {3, 1}, {1, 1, 1}, {2, 1, 1}};
  for (const auto& part : partitions) {
    for (int rep = 0; rep < 4; ++rep) {
      int n = 0;
      for (int b : part) n += b;
      IntMatrix j(n);
      int pos = 0;
      std::vector<std::pair<int, int>> blocks;  // (lambda, size)
      for (int b : part) {
        int lam = 0;
        while (lam == 0) lam = dlam(rng);
        blocks.emplace_back(lam, b);
        for (int t = 0; t < b; ++t) {
          j.at(pos + t, pos + t) = lam;
          if (t + 1 < b) j.at(pos + t, pos + t + 1) = 1;
        }
        pos += b;
      }
      double best_mod = 0.0;
      int expected_ell = 0;
      for (const auto& [lam, b] : blocks) best_mod = std::max(best_mod, std::fabs(lam));
      for (const auto& [lam, b] : blocks)
        if (std::fabs(lam) == best_mod) expected_ell = std::max(expected_ell, b - 1);
      IntMatrix u = random_unimodular(rng, n);
      mpz_class du = u.det();
      REQUIRE(abs(du) == 1);
      IntMatrix uinv = du > 0 ? u.adjugate() : u.adjugate() * mpz_class(-1);
      IntMatrix a = u * j * uinv;
      bool exact = false;
      CHECK(ell_of(a, &exact) == expected_ell);
      CHECK(exact);
    }
  }
}

TEST_CASE("minimal polynomial") {
  IntMatrix a = mat({{2, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  IntPoly mu = minimal_polynomial(a);
  CHECK(mu == IntPoly::linear_root(mpz_class(2)) * IntPoly::linear_root(mpz_class(3)));
  CHECK(a.eval_poly(mu).is_zero());

  IntMatrix j = mat({{2, 1}, {0, 2}});
  CHECK(minimal_polynomial(j) == j.char_poly());
}

TEST_CASE("rotation periods") {
  CHECK(analyze_spectrum(mat({{2, 1}, {1, 1}})).rotation_period == 1);
  CHECK(analyze_spectrum(IntMatrix::identity(2) * mpz_class(-2)).rotation_period == 2);
  CHECK(analyze_spectrum(mat({{0, 2}, {2, 0}})).rotation_period == 2);
  CHECK(analyze_spectrum(mat({{0, -2}, {2, 0}})).rotation_period == 4);
  CHECK(analyze_spectrum(mat({{0, 0, 3}, {3, 0, 0}, {0, 3, 0}})).rotation_period == 3);
  // 1 + i sqrt 2: argument is not a small rational multiple of 2 pi
  CHECK_FALSE(analyze_spectrum(mat({{1, -2}, {1, 1}})).rotation_period.has_value());
}

TEST_CASE("limit structure: -d I has the two limit points I and -I") {
  LimitStructure ls = dominant_limit_structure(IntMatrix::identity(2) * mpz_class(-2));
  REQUIRE(ls.periodic);
  CHECK(ls.period == 2);
  CHECK(ls.exact_limits);
  REQUIRE(ls.limits.size() == 2);
  CHECK(ls.limits[0] == std::vector<double>{1, 0, 0, 1});
  CHECK(ls.limits[1] == std::vector<double>{-1, 0, 0, -1});
}

TEST_CASE("limit structure: golden-ratio projector") {
  LimitStructure ls = dominant_limit_structure(mat({{2, 1}, {1, 1}}));
  REQUIRE(ls.periodic);
  CHECK(ls.period == 1);
  REQUIRE(ls.limits.size() == 1);
  const auto& l = ls.limits[0];
  double s5 = std::sqrt(5.0);
  CHECK(l[0] == doctest::Approx((5.0 + s5) / 10.0).epsilon(1e-12));
  CHECK(l[1] == doctest::Approx(1.0 / s5).epsilon(1e-12));
  CHECK(l[2] == doctest::Approx(1.0 / s5).epsilon(1e-12));
  CHECK(l[3] == doctest::Approx((5.0 - s5) / 10.0).epsilon(1e-12));
}

TEST_CASE("limit structure: swap-by-two matrix") {
  LimitStructure ls = dominant_limit_structure(mat({{0, 2}, {2, 0}}));
  REQUIRE(ls.periodic);
  CHECK(ls.period == 2);
  CHECK(ls.exact_limits);
  CHECK(ls.limits[0] == std::vector<double>{1, 0, 0, 1});
  CHECK(ls.limits[1] == std::vector<double>{0, 1, 1, 0});
}

TEST_CASE("limit structure rejects dynamical degree 1") {
  CHECK_THROWS_AS(dominant_limit_structure(mat({{0, -1}, {1, 0}})), Error);
}

TEST_CASE("subdominant decay rate shows in the Frobenius distance") {
  struct Case {
    IntMatrix a;
    double ratio;
  };
  std::vector<Case> cases{{mat({{2, 1}, {0, 3}}), 2.0 / 3.0},
                          {mat({{0, -15}, {1, 8}}), 3.0 / 5.0}};
  for (const auto& c : cases) {
    LimitStructure ls = dominant_limit_structure(c.a);
    REQUIRE(ls.periodic);
    REQUIRE(ls.period == 1);
    const auto& l = ls.limits[0];
    double delta = dynamical_degree(c.a);
    std::vector<double> xs, ys;
    for (int n = 10; n <= 40; n += 3) {
      IntMatrix p = c.a.pow(n);
      double worst = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double v = p.at(i, j).get_d() / std::pow(delta, n) - l[i * 2 + j];
          worst = std::max(worst, std::fabs(v));
        }
      xs.push_back(n);
      ys.push_back(std::log(worst));
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = num / den;
    CHECK(slope == doctest::Approx(std::log(c.ratio)).epsilon(0.1));
  }
}
