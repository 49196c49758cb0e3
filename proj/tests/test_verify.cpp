#include "core/verify.hpp"

#include <random>

#include "core/error.hpp"
#include "core/suite.hpp"
#include "doctest.h"

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

}  // namespace

TEST_CASE("functional equation on the worked examples") {
  VerificationReport r = verify_functional_equation(mat({{2, 1}, {1, 1}}), pt({"2", "3"}));
  CHECK(r.hypotheses_met);
  CHECK(r.passed);
  REQUIRE(r.simple_form.has_value());
  // simple two-dimensional form: lambda1 + lambda2 = 3
  CHECK(r.simple_form->first == doctest::Approx(r.simple_form->second).epsilon(1e-6));

  r = verify_functional_equation(mat({{2, 1}, {1, 1}}), pt({"1", "1"}));
  CHECK(r.passed);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);

  r = verify_functional_equation(IntMatrix::identity(2) * mpz_class(2), pt({"2", "3"}));
  CHECK(r.passed);

  r = verify_functional_equation(mat({{0, -1}, {1, 0}}), pt({"2", "3"}));
  CHECK_FALSE(r.hypotheses_met);
}

TEST_CASE("functional equation over random expanding instances") {
  int cases = 0;
  unsigned long mix = 1;
  while (cases < 60) {
    int n = (cases % 3 == 2) ? 3 : 2;
    IntMatrix a = random_expanding_matrix(mix++, n);
    TorusPoint p = random_exponent_point(mix++, n);
    VerificationReport r = verify_functional_equation(a, p);
    if (!r.hypotheses_met) continue;
    CHECK(r.passed);
    ++cases;
  }
}

TEST_CASE("recurrence identity") {
  VerificationReport r = verify_recurrence(mat({{2, 1}, {1, 1}}), pt({"1", "-1"}), 4);
  CHECK(r.passed);
  CHECK(r.residual == 0.0);

  r = verify_recurrence(mat({{2, 1}, {1, 1}}), pt({"2", "1"}), 4);
  CHECK(r.passed);

  r = verify_recurrence(mat({{3, 1}, {1, 2}}), pt({"2", "3"}), 3);
  CHECK(r.passed);
}

TEST_CASE("lower bound cases") {
  // hhat >= h for the golden matrix (two modulus groups)
  VerificationReport r = verify_lower_bound(
      mat({{2, 1}, {1, 1}}),
      TorusPoint::from_factored({1, 1}, {{mpz_class(2), {mpz_class(5), mpz_class(-8)}}}));
  CHECK(r.hypotheses_met);
  CHECK(r.passed);
  CHECK(r.rhs == doctest::Approx(13.0 * std::log(2.0)).epsilon(1e-12));

  // equality case for scalar maps (one group)
  r = verify_lower_bound(IntMatrix::identity(2) * mpz_class(3), pt({"2", "3"}));
  CHECK(r.hypotheses_met);
  CHECK(r.passed);
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));

  // three modulus groups: hypothesis filter
  r = verify_lower_bound(mat({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}), pt({"2", "3", "5"}));
  CHECK_FALSE(r.hypotheses_met);

  // non-diagonalizable: hypothesis filter
  r = verify_lower_bound(mat({{2, 1}, {0, 2}}), pt({"2", "3"}));
  CHECK_FALSE(r.hypotheses_met);
}

TEST_CASE("dim-2 zero-height characterization") {
  VerificationReport r = verify_dim2_zero_height(mat({{2, 1}, {0, 2}}), pt({"2", "1"}));
  CHECK(r.hypotheses_met);
  CHECK(r.passed);
  CHECK(r.lhs == 1.0);  // zero height confirmed on both sides

  r = verify_dim2_zero_height(mat({{2, 1}, {0, 2}}), pt({"2", "3"}));
  CHECK(r.passed);
  CHECK(r.lhs == 0.0);

  r = verify_dim2_zero_height(mat({{3, 0}, {1, 3}}), pt({"1", "5"}));
  CHECK(r.passed);
  CHECK(r.lhs == 1.0);

  r = verify_dim2_zero_height(mat({{2, 1}, {1, 1}}), pt({"2", "3"}));
  CHECK_FALSE(r.hypotheses_met);

  // the two symbolic characterizations agree on random instances
  unsigned long mix = 900;
  for (int t = 0; t < 30; ++t) {
    IntMatrix a = random_single_eigenvalue_nondiag(mix++, 2);
    TorusPoint p = random_exponent_point(mix++, 2);
    VerificationReport rr = verify_dim2_zero_height(a, p);
    if (!rr.hypotheses_met) continue;
    CHECK(rr.passed);
  }
}

TEST_CASE("fibration semiconjugacy") {
  VerificationReport r = verify_fibration_semiconjugacy(mat({{2, 1}, {0, 2}}), pt({"2", "3"}));
  CHECK(r.hypotheses_met);
  CHECK(r.passed);

  r = verify_fibration_semiconjugacy(mat({{2, 1}, {0, 2}}), pt({"1", "-1"}));
  CHECK(r.passed);

  unsigned long mix = 400;
  for (int t = 0; t < 20; ++t) {
    IntMatrix a = random_single_eigenvalue_nondiag(mix++, 3);
    TorusPoint p = random_exponent_point(mix++, 3);
    VerificationReport rr = verify_fibration_semiconjugacy(a, p);
    REQUIRE(rr.hypotheses_met);
    CHECK(rr.passed);
  }

  r = verify_fibration_semiconjugacy(mat({{2, 1}, {1, 1}}), pt({"2", "3"}));
  CHECK_FALSE(r.hypotheses_met);
}

TEST_CASE("preperiodicity certificates") {
  auto r = preperiodicity_test(mat({{2, 1}, {1, 1}}), pt({"-1", "1"}));
  CHECK(r.result == Preperiodicity::yes);

  r = preperiodicity_test(mat({{2, 1}, {1, 1}}), pt({"2", "1"}));
  CHECK(r.result == Preperiodicity::no);

  // zero canonical height without preperiodicity
  r = preperiodicity_test(mat({{2, 1}, {0, 2}}), pt({"2", "1"}));
  CHECK(r.result == Preperiodicity::no);
  CHECK(total_canonical_height(mat({{2, 1}, {0, 2}}), pt({"2", "1"})).exact_zero);

  // coordinate swap: genuine cycles with nonzero exponents
  r = preperiodicity_test(mat({{0, 1}, {1, 0}}), pt({"2", "3"}));
  CHECK(r.result == Preperiodicity::yes);

  // doubling swap: nonzero exponents cannot cycle
  r = preperiodicity_test(mat({{0, 2}, {2, 0}}), pt({"2", "3"}));
  CHECK(r.result == Preperiodicity::no);
}

TEST_CASE("preperiodic points have exact-zero canonical heights") {
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<int> ds(0, 1);
  unsigned long mix = 7000;
  for (int t = 0; t < 10; ++t) {
    int n = 2 + t % 2;
    IntMatrix a = random_expanding_matrix(mix++, n);
    std::vector<int> signs(n);
    for (int i = 0; i < n; ++i) signs[i] = ds(rng) ? 1 : -1;
    TorusPoint p = TorusPoint::from_factored(signs, {});
    REQUIRE(preperiodicity_test(a, p).result == Preperiodicity::yes);
    CHECK(forward_canonical_height(a, p).exact_zero);
    CHECK(backward_canonical_height(a, p).exact_zero);
    CHECK(total_canonical_height(a, p).value == 0.0);
  }
}

TEST_CASE("reports are deterministic") {
  IntMatrix a = mat({{2, 1}, {1, 1}});
  TorusPoint p = pt({"2", "3"});
  VerificationReport r1 = verify_functional_equation(a, p);
  VerificationReport r2 = verify_functional_equation(a, p);
  CHECK(r1.lhs == r2.lhs);
  CHECK(r1.rhs == r2.rhs);
  CHECK(r1.residual == r2.residual);
  CHECK(r1.passed == r2.passed);
}
