#include "core/jsonio.hpp"

#include "core/error.hpp"

namespace monoheight::jsonio {

namespace {

mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(Errc::invalid_argument, "not a decimal integer: " + j.get<std::string>());
    }
  }
  fail(Errc::invalid_argument, "expected an integer or a decimal string");
}

json mpz_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

}  // namespace

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows"))
    fail(Errc::invalid_argument, "matrix JSON needs a \"rows\" array");
  const json& rows = j.at("rows");
  if (!rows.is_array() || rows.empty())
    fail(Errc::invalid_argument, "matrix rows must be a nonempty array");
  int n = static_cast<int>(rows.size());
  if (j.contains("n") && j.at("n").get<int>() != n)
    fail(Errc::invalid_argument, "matrix \"n\" disagrees with the row count");
  std::vector<std::vector<mpz_class>> m;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(Errc::invalid_argument, "matrix rows must form a square matrix");
    std::vector<mpz_class> r;
    for (const auto& e : row) r.push_back(mpz_from_json(e));
    m.push_back(std::move(r));
  }
  return IntMatrix::from_rows(m);
}

json matrix_to_json(const IntMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.dim(); ++j) row.push_back(mpz_to_json(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", a.dim()}, {"rows", std::move(rows)}};
}

TorusPoint point_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::invalid_argument, "point JSON must be an object");
  if (j.contains("coords")) {
    std::vector<mpq_class> coords;
    for (const auto& c : j.at("coords")) {
      mpq_class v;
      try {
        if (c.is_number_integer()) v = mpq_class(static_cast<long>(c.get<long long>()));
        else if (c.is_string()) v = mpq_class(c.get<std::string>());
        else fail(Errc::invalid_argument, "coordinates must be integers or strings");
      } catch (const std::invalid_argument&) {
        fail(Errc::invalid_argument, "not a rational: " + c.dump());
      }
      v.canonicalize();
      coords.push_back(std::move(v));
    }
    return TorusPoint::from_rationals(coords);
  }
  if (j.contains("signs") && j.contains("primes")) {
    std::vector<int> signs = j.at("signs").get<std::vector<int>>();
    std::map<mpz_class, std::vector<mpz_class>> exps;
    for (const auto& [key, vec] : j.at("primes").items()) {
      mpz_class prime;
      try {
        prime = mpz_class(key);
      } catch (const std::invalid_argument&) {
        fail(Errc::invalid_argument, "prime keys must be decimal integers");
      }
      std::vector<mpz_class> e;
      for (const auto& x : vec) e.push_back(mpz_from_json(x));
      exps.emplace(std::move(prime), std::move(e));
    }
    return TorusPoint::from_factored(std::move(signs), std::move(exps));
  }
  fail(Errc::invalid_argument, "point JSON needs \"coords\" or \"signs\"+\"primes\"");
}

json point_to_json(const TorusPoint& p) {
  json primes = json::object();
  for (const auto& [prime, e] : p.exponents()) {
    json v = json::array();
    for (const auto& x : e) v.push_back(mpz_to_json(x));
    primes[prime.get_str()] = std::move(v);
  }
  return json{{"signs", p.signs()}, {"primes", std::move(primes)}};
}

json spectral_to_json(const SpectralData& sd) {
  json charpoly = json::array();
  for (int k = 0; k <= sd.charpoly.degree(); ++k)
    charpoly.push_back(mpz_to_json(sd.charpoly.coeff(k)));
  json eigen = json::array();
  for (const auto& e : sd.eigenvalues)
    eigen.push_back(json{{"re", e.value.real()},
                         {"im", e.value.imag()},
                         {"radius", e.radius},
                         {"multiplicity", e.multiplicity},
                         {"exact_integer", e.exact_integer}});
  json out{{"charpoly", std::move(charpoly)},
           {"delta", sd.delta},
           {"delta_radius", sd.delta_radius},
           {"ell", sd.ell},
           {"ell_provenance", sd.ell_exact ? "exact" : "numeric"},
           {"second_modulus_ratio", sd.second_modulus_ratio},
           {"eigenvalues", std::move(eigen)}};
  if (sd.rotation_period) out["rotation_period"] = *sd.rotation_period;
  else out["rotation_period"] = "aperiodic";
  return out;
}

json estimate_to_json(const HeightEstimate& e) {
  json out{{"value", e.value},
           {"method", height_method_name(e.method)},
           {"n_max", e.n_max},
           {"window", e.window},
           {"uncertainty", e.uncertainty},
           {"exact_zero", e.exact_zero}};
  if (e.ell_numeric) out["ell_provenance"] = "numeric";
  return out;
}

json report_to_json(const VerificationReport& r) {
  json out{{"identity", r.identity_name}, {"lhs", r.lhs},
           {"rhs", r.rhs},               {"residual", r.residual},
           {"tolerance", r.tolerance},   {"passed", r.passed},
           {"hypotheses_met", r.hypotheses_met}, {"explanation", r.explanation}};
  if (r.simple_form) {
    out["simple_lhs"] = r.simple_form->first;
    out["simple_rhs"] = r.simple_form->second;
  }
  return out;
}

json certificate_to_json(const SmallHeightCertificate& c) {
  json ys = json::array();
  for (const auto& y : c.approx.ys) ys.push_back(mpz_to_json(y));
  json out{{"construction", c.construction},
           {"point", point_to_json(c.point)},
           {"target_epsilon", c.target_epsilon},
           {"predicted_bound", c.predicted_bound},
           {"measured_forward", estimate_to_json(c.measured_forward)},
           {"approximation",
            json{{"y", mpz_to_json(c.approx.y)}, {"ys", std::move(ys)},
                 {"achieved", c.approx.achieved}}}};
  if (c.measured_total) out["measured_total"] = estimate_to_json(*c.measured_total);
  else out["measured_total"] = nullptr;
  return out;
}

json suite_to_json(const SuiteSummary& s) {
  json ids = json::array();
  for (const auto& st : s.identities)
    ids.push_back(json{{"name", st.name},
                       {"cases", st.cases},
                       {"passed", st.passed},
                       {"failed", st.failed},
                       {"hypothesis_skipped", st.hypothesis_skipped}});
  json out{{"seed", s.seed}, {"identities", std::move(ids)}, {"all_passed", s.all_passed}};
  if (!s.first_failure.empty()) out["first_failure"] = s.first_failure;
  return out;
}

HeightOptions height_options_from_json(const json& j) {
  HeightOptions opts;
  if (j.is_null()) return opts;
  if (j.contains("n_max")) opts.n_max = j.at("n_max").get<int>();
  if (j.contains("window")) opts.window = j.at("window").get<int>();
  if (j.contains("tolerance")) opts.tolerance = j.at("tolerance").get<double>();
  if (j.contains("force_iterative")) opts.force_iterative = j.at("force_iterative").get<bool>();
  if (opts.n_max <= 0 || opts.window < 0 || opts.tolerance <= 0)
    fail(Errc::invalid_argument, "numeric height options must be positive");
  return opts;
}

}  // namespace monoheight::jsonio
