#include "core/heights.hpp"

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

TorusPoint pt(std::vector<const char*> strs) {
  std::vector<mpq_class> out;
  for (auto* s : strs) {
    mpq_class v(s);
    v.canonicalize();
    out.push_back(v);
  }
  return TorusPoint::from_rationals(out);
}

TorusPoint pow2_point(long e1, long e2) {
  std::map<mpz_class, std::vector<mpz_class>> exps;
  exps[mpz_class(2)] = {mpz_class(e1), mpz_class(e2)};
  return TorusPoint::from_factored({1, 1}, exps);
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

IntMatrix random_expanding(std::mt19937_64& rng, int n, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  while (true) {
    IntMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = d(rng);
    if (a.det() == 0) continue;
    MapSpectrum ms = analyze_map(a);
    if (ms.data.delta > 1.0 + 1e-6) return a;
  }
}

}  // namespace

TEST_CASE("example 2.2: scalar maps reduce to the Weil height") {
  TorusPoint p = pt({"2", "3"});
  for (long d : {2L, 3L}) {
    HeightEstimate e = forward_canonical_height(IntMatrix::identity(2) * mpz_class(d), p);
    CHECK(e.value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(e.method == HeightMethod::closed_form_projector);
    CHECK(e.uncertainty == 0.0);
  }
  // backward coincides for positive scalar maps
  HeightEstimate b = backward_canonical_height(IntMatrix::identity(2) * mpz_class(2), p);
  CHECK(b.value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("example 2.3: negative scalar maps take the max with the inverse") {
  TorusPoint p = pt({"2", "3"});
  HeightEstimate e = forward_canonical_height(IntMatrix::identity(2) * mpz_class(-2), p);
  CHECK(e.value == doctest::Approx(std::log(6.0)).epsilon(1e-12));

  // h(P) and h(P^-1) differ here: h(2,3) = log 3, h(1/2,1/3) = log 6
  CHECK(weil_height(p).value == doctest::Approx(std::log(3.0)));
  CHECK(weil_height(p.inverse()).value == doctest::Approx(std::log(6.0)));
}

TEST_CASE("example 2.4: golden-ratio closed form") {
  IntMatrix a = mat({{2, 1}, {1, 1}});
  TorusPoint p = pow2_point(5, -8);
  HeightEstimate closed = forward_canonical_height(a, p);
  CHECK(closed.value == doctest::Approx(0.027951315841068965).epsilon(1e-9));

  HeightOptions iter;
  iter.force_iterative = true;
  iter.n_max = 60;
  HeightEstimate it = forward_canonical_height(a, p, iter);
  CHECK(it.method == HeightMethod::iterative_window);
  CHECK(std::fabs(it.value - closed.value) <= 1e-6);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    TorusPoint q = random_point(rng, 2);
    double oracle = oracles::golden_closed_form(q);
    CHECK(forward_canonical_height(a, q).value == doctest::Approx(oracle).epsilon(1e-9));
    HeightEstimate it2 = forward_canonical_height(a, q, iter);
    CHECK(std::fabs(it2.value - oracle) <= 1e-6);
  }
}

TEST_CASE("backward and total heights on the section-4 example") {
  IntMatrix a = mat({{2, 1}, {0, 2}});
  TorusPoint p = pt({"2", "3"});
  HeightEstimate f = forward_canonical_height(a, p);
  HeightEstimate b = backward_canonical_height(a, p);
  HeightEstimate t = total_canonical_height(a, p);
  CHECK(f.value == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-12));
  CHECK(t.value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.method == HeightMethod::closed_form_fibration);

  // root-of-unity point: exact zero both ways
  HeightEstimate z = total_canonical_height(a, pt({"1", "-1"}));
  CHECK(z.exact_zero);
  CHECK(z.value == 0.0);

  // (2, 1): zero height but not preperiodic
  HeightEstimate z2 = total_canonical_height(a, pt({"2", "1"}));
  CHECK(z2.exact_zero);
  CHECK(z2.value == 0.0);
}

TEST_CASE("fibration closed forms") {
  IntMatrix a = mat({{2, 1}, {0, 2}});
  FibrationHeights fh = fibration_height(a, pt({"2", "3"}));
  CHECK(fh.lambda == 2);
  CHECK(fh.ell == 1);
  CHECK(fh.forward.value == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-12));
  CHECK(fh.backward.value == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-12));
  // pi(P) = (y, 1)
  auto base = fh.base_image.to_rationals();
  CHECK(base[0] == 3);
  CHECK(base[1] == 1);

  FibrationHeights zero = fibration_height(a, pt({"2", "1"}));
  CHECK(zero.forward.exact_zero);
  CHECK(zero.forward.value == 0.0);

  FibrationHeights neg = fibration_height(mat({{-2, 1}, {0, -2}}), pt({"1", "2"}));
  CHECK(neg.forward.value == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-12));
  CHECK(neg.backward.value == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(fibration_height(mat({{2, 1}, {1, 1}}), pt({"2", "3"})), Error);
  CHECK_THROWS_AS(fibration_height(IntMatrix::identity(2) * mpz_class(2), pt({"2", "3"})),
                  Error);

  // the c = 0 branch of the 2x2 theorem, fibration on the first coordinate
  FibrationHeights sym = fibration_height(mat({{3, 0}, {1, 3}}), pt({"1", "5"}));
  CHECK(sym.forward.exact_zero);
  CHECK(sym.forward.value == 0.0);
}

TEST_CASE("fibration agrees with the iterative estimator") {
  IntMatrix a = mat({{2, 1}, {0, 2}});
  HeightOptions iter;
  iter.force_iterative = true;
  std::mt19937_64 rng(59);
  for (int t = 0; t < 10; ++t) {
    TorusPoint p = random_point(rng, 2, 4);
    HeightEstimate closed = forward_canonical_height(a, p);
    HeightEstimate it = forward_canonical_height(a, p, iter);
    CHECK(std::fabs(it.value - closed.value) <= it.uncertainty);
  }
}

TEST_CASE("scaling law under the map") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 15; ++t) {
    int n = 2 + t % 2;
    IntMatrix a = random_expanding(rng, n);
    TorusPoint p = random_point(rng, n);
    double delta = dynamical_degree(a);
    HeightEstimate hp = forward_canonical_height(a, p);
    HeightEstimate hfp = forward_canonical_height(a, apply_map(a, p));
    double tol = std::max(1e-6, 3.0 * (hp.uncertainty * delta + hfp.uncertainty));
    CHECK(std::fabs(hfp.value - delta * hp.value) <= tol);
  }
}

TEST_CASE("power scaling of the total height") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 10; ++t) {
    IntMatrix a = random_expanding(rng, 2);
    TorusPoint p = random_point(rng, 2, 4);
    long d = 2 + t % 3;
    HeightEstimate h1 = total_canonical_height(a, p);
    HeightEstimate hd = total_canonical_height(a, p.power(d));
    double tol = std::max(1e-6, 3.0 * (hd.uncertainty + d * h1.uncertainty));
    CHECK(std::fabs(hd.value - d * h1.value) <= tol);
  }
}

TEST_CASE("closed-form orbit heights match direct computation") {
  IntMatrix a = mat({{2, 1}, {1, 1}});
  TorusPoint p = pt({"2", "3"});
  HeightEstimate h0 = total_canonical_height(a, p);
  CHECK(closed_form_orbit_height(a, p, 0) == doctest::Approx(h0.value).epsilon(1e-9));
  TorusPoint p3 = apply_map(a.pow(3), p);
  double direct = total_canonical_height(a, p3).value;
  CHECK(closed_form_orbit_height(a, p, 3) == doctest::Approx(direct).epsilon(1e-6));

  // |lambda_1| = |lambda_N|: the closed form is singular, direct path used
  IntMatrix s = IntMatrix::identity(2) * mpz_class(2);
  TorusPoint q = pt({"2", "3"});
  double via = closed_form_orbit_height(s, q, 2);
  TorusPoint q2 = apply_map(s.pow(2), q);
  CHECK(via == doctest::Approx(total_canonical_height(s, q2).value).epsilon(1e-9));
}

TEST_CASE("aperiodic dominant pair: circle supremum path") {
  // eigenvalues 1 +- i sqrt 2, modulus sqrt 3
  IntMatrix a = mat({{1, -2}, {1, 1}});
  std::mt19937_64 rng(71);
  HeightOptions iter;
  iter.force_iterative = true;
  iter.n_max = 400;
  for (int t = 0; t < 10; ++t) {
    TorusPoint p = random_point(rng, 2, 4);
    HeightEstimate closed = forward_canonical_height(a, p);
    CHECK(closed.method == HeightMethod::closed_form_projector);
    // the supremum dominates every windowed sample and stays close to a
    // long-run window
    HeightEstimate it = forward_canonical_height(a, p, iter);
    CHECK(it.value <= closed.value + 1e-6 + closed.uncertainty);
    CHECK(closed.value - it.value <= it.uncertainty + 0.05 * closed.value + 1e-9);
    // same-modulus case of the lower bound: hhat+ >= h
    CHECK(closed.value >= weil_height(p).value - 1e-9);
  }
}

TEST_CASE("degenerate dynamical degree is rejected") {
  CHECK_THROWS_AS(forward_canonical_height(mat({{0, -1}, {1, 0}}), pt({"2", "3"})), Error);
  CHECK_THROWS_AS(forward_canonical_height(mat({{1, 1}, {0, 1}}), pt({"2", "3"})), Error);
}
