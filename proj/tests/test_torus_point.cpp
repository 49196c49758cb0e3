#include "core/torus_point.hpp"

#include <random>

#include "core/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace monoheight;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<mpz_class>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

TorusPoint pt(const std::vector<mpq_class>& coords) { return TorusPoint::from_rationals(coords); }

std::vector<mpq_class> q(std::vector<const char*> strs) {
  std::vector<mpq_class> out;
  for (auto* s : strs) {
    mpq_class v(s);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

TorusPoint random_point(std::mt19937_64& rng, int n, int emax = 6) {
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

std::vector<std::vector<long>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<long>> rows(m.dim(), std::vector<long>(m.dim()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) rows[i][j] = m.at(i, j).get_si();
  return rows;
}

}  // namespace

TEST_CASE("factored form from rationals") {
  TorusPoint p = pt(q({"1", "1"}));
  CHECK(p.exponents().empty());
  CHECK(p.is_root_of_unity());

  p = pt(q({"2", "1/2"}));
  REQUIRE(p.exponents().count(2) == 1);
  CHECK(p.exponents().at(2)[0] == 1);
  CHECK(p.exponents().at(2)[1] == -1);

  p = pt(q({"12", "6"}));
  CHECK(p.exponents().at(2) == std::vector<mpz_class>{2, 1});
  CHECK(p.exponents().at(3) == std::vector<mpz_class>{1, 1});

  CHECK_THROWS_AS(pt(q({"0", "1"})), Error);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int t = 0; t < 40; ++t) {
    std::vector<mpq_class> coords;
    for (int i = 0; i < 3; ++i) {
      int num = d(rng), den = d(rng);
      if (num == 0) num = 7;
      if (den == 0) den = 3;
      mpq_class c(num, den);
      c.canonicalize();
      coords.push_back(c);
    }
    CHECK(pt(coords).to_rationals() == coords);
  }
}

TEST_CASE("monomial map action") {
  IntMatrix a = mat({{2, 1}, {1, 1}});
  TorusPoint p = pt(q({"2", "3"}));
  CHECK(apply_map(IntMatrix::identity(2), p) == p);
  CHECK(apply_map(a, p) == pt(q({"12", "6"})));

  // phi(x, y) = (x^2 y, y^2) for the section-4 matrix
  IntMatrix j = mat({{2, 1}, {0, 2}});
  CHECK(apply_map(j, p) == pt(q({"12", "9"})));

  // signs follow the row parities
  TorusPoint s = pt(q({"-2", "3"}));
  auto img = apply_map(a, s).to_rationals();
  CHECK(img[0] == 12);
  CHECK(img[1] == -6);

  CHECK_THROWS_AS(apply_map(IntMatrix::identity(3), p), Error);
}

TEST_CASE("weil height frozen examples") {
  CHECK(weil_height(pt(q({"1", "-1"}))).exact_zero);
  CHECK(weil_height(pt(q({"1", "-1"}))).value == 0.0);

  CHECK(weil_height(pt(q({"2", "3"}))).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(weil_height(pt(q({"2/3", "5"}))).value == doctest::Approx(std::log(15.0)).epsilon(1e-12));
}

TEST_CASE("inversion and powers") {
  TorusPoint p = pt(q({"2", "1/2"}));
  CHECK(p.inverse() == pt(q({"1/2", "2"})));
  CHECK(p.inverse().inverse() == p);
  CHECK(pt(q({"1", "1"})).inverse() == pt(q({"1", "1"})));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    TorusPoint r = random_point(rng, 2 + t % 3);
    long m = 1 + t % 5;
    double h1 = weil_height(r).value;
    double hm = weil_height(r.power(m)).value;
    CHECK(hm == doctest::Approx(m * h1).epsilon(1e-12));
  }
}

TEST_CASE("root-of-unity classification is symbolic") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 30; ++t) {
    TorusPoint p = random_point(rng, 2 + t % 3);
    CHECK(weil_height(p).exact_zero == p.is_root_of_unity());
    CHECK((weil_height(p).value == 0.0) == p.is_root_of_unity());
    IntMatrix a(2 + t % 3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) a.at(i, j) = d(rng);
    if (p.is_root_of_unity()) CHECK(apply_map(a, p).is_root_of_unity());
  }
}

TEST_CASE("functoriality and backward composition") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-3, 3);
  int done = 0;
  while (done < 25) {
    int n = 2 + done % 3;
    IntMatrix a(n), b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = d(rng);
        b.at(i, j) = d(rng);
      }
    TorusPoint p = random_point(rng, n);
    CHECK(apply_map(a, apply_map(b, p)) == apply_map(a * b, p));
    if (a.det() == 0) continue;
    // phi_{A'} ( phi_A (P) ) raises every exponent vector by |det A|
    TorusPoint lhs = apply_map(backward_matrix(a), apply_map(a, p));
    TorusPoint rhs = p.power(abs(a.det()));
    for (const auto& [prime, e] : rhs.exponents()) CHECK(lhs.exponents().at(prime) == e);
    ++done;
  }
}

TEST_CASE("factored heights match the rational brute-force oracle") {
  std::mt19937_64 rng(27);
  std::uniform_int_distribution<int> dc(-50, 50), dm(-3, 3);
  int done = 0;
  while (done < 100) {
    int n = 2 + done % 2;
    std::vector<mpq_class> coords;
    for (int i = 0; i < n; ++i) {
      int num = dc(rng), den = dc(rng);
      if (num == 0) num = 11;
      if (den <= 0) den = 1 - den;
      mpq_class c(num, den);
      c.canonicalize();
      coords.push_back(c);
    }
    IntMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = dm(rng);
    int k = done % 4;  // iterate up to 3 times
    TorusPoint p = pt(coords);
    std::vector<mpq_class> direct = coords;
    for (int s = 0; s < k; ++s) {
      p = apply_map(a, p);
      direct = oracles::apply_map_rationals(rows_of(a), direct);
    }
    double lib = weil_height(p).value;
    double oracle = oracles::weil_height_rationals(direct);
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-12));
    ++done;
  }
}

TEST_CASE("scaled heights survive astronomical exponents") {
  std::map<mpz_class, std::vector<mpz_class>> exps;
  mpz_class giant = mpz_class(1) << 1100;
  exps[mpz_class(2)] = {giant, -giant};
  TorusPoint p = TorusPoint::from_factored({1, 1}, exps);
  Scaled h = weil_height_scaled(p);
  // h = log(2) * 2^1100 from the finite place plus the same from the
  // archimedean one
  double expected_log = std::log(2.0 * std::log(2.0)) + 1100.0 * std::log(2.0);
  CHECK(h.log_value() == doctest::Approx(expected_log).epsilon(1e-9));
}
