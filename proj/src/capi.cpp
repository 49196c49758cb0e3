#include "monoheight.h"

#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/jsonio.hpp"

using namespace monoheight;
using jsonio::json;

struct mh_matrix {
  IntMatrix m;
};

struct mh_point {
  TorusPoint p;
};

namespace {

thread_local std::string g_last_error;

mh_status status_of(const Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case Errc::invalid_argument: return MH_ERROR_INVALID_ARGUMENT;
    case Errc::dimension_mismatch: return MH_ERROR_DIMENSION_MISMATCH;
    case Errc::singular_matrix: return MH_ERROR_SINGULAR_MATRIX;
    case Errc::degenerate_degree: return MH_ERROR_DEGENERATE_DEGREE;
    case Errc::hypothesis_not_met: return MH_ERROR_HYPOTHESIS;
    case Errc::budget_exceeded: return MH_ERROR_BUDGET_EXCEEDED;
    case Errc::non_convergence: return MH_ERROR_NONCONVERGENCE;
    case Errc::internal: return MH_ERROR_INTERNAL;
  }
  return MH_ERROR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
mh_status guarded(F&& f) {
  try {
    f();
    return MH_OK;
  } catch (const Error& e) {
    return status_of(e);
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return MH_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MH_ERROR_INTERNAL;
  }
}

json parse(const char* text, const char* what) {
  if (text == nullptr) fail(Errc::invalid_argument, std::string(what) + " is null");
  return json::parse(text);
}

json parse_or_null(const char* text) {
  if (text == nullptr) return json();
  return json::parse(text);
}

}  // namespace

extern "C" {

const char* mh_version(void) { return "0.1.0"; }

const char* mh_status_name(mh_status status) {
  switch (status) {
    case MH_OK: return "ok";
    case MH_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case MH_ERROR_DIMENSION_MISMATCH: return "dimension mismatch";
    case MH_ERROR_SINGULAR_MATRIX: return "singular matrix";
    case MH_ERROR_DEGENERATE_DEGREE: return "degenerate dynamical degree";
    case MH_ERROR_HYPOTHESIS: return "hypotheses not met";
    case MH_ERROR_BUDGET_EXCEEDED: return "budget exceeded";
    case MH_ERROR_NONCONVERGENCE: return "did not converge";
    case MH_ERROR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* mh_last_error_message(void) { return g_last_error.c_str(); }

void mh_string_free(char* s) { std::free(s); }

mh_status mh_matrix_from_json(const char* text, mh_matrix** out) {
  return guarded([&] {
    if (out == nullptr) fail(Errc::invalid_argument, "output handle is null");
    IntMatrix m = jsonio::matrix_from_json(parse(text, "matrix JSON"));
    *out = new mh_matrix{std::move(m)};
  });
}

mh_status mh_matrix_to_json(const mh_matrix* m, char** json_out) {
  return guarded([&] {
    if (m == nullptr || json_out == nullptr) fail(Errc::invalid_argument, "null argument");
    *json_out = dup_string(jsonio::matrix_to_json(m->m).dump());
  });
}

void mh_matrix_free(mh_matrix* m) { delete m; }

mh_status mh_point_from_json(const char* text, mh_point** out) {
  return guarded([&] {
    if (out == nullptr) fail(Errc::invalid_argument, "output handle is null");
    TorusPoint p = jsonio::point_from_json(parse(text, "point JSON"));
    *out = new mh_point{std::move(p)};
  });
}

mh_status mh_point_to_json(const mh_point* p, char** json_out) {
  return guarded([&] {
    if (p == nullptr || json_out == nullptr) fail(Errc::invalid_argument, "null argument");
    *json_out = dup_string(jsonio::point_to_json(p->p).dump());
  });
}

void mh_point_free(mh_point* p) { delete p; }

mh_status mh_analyze(const mh_matrix* m, char** json_out) {
  return guarded([&] {
    if (m == nullptr || json_out == nullptr) fail(Errc::invalid_argument, "null argument");
    MapSpectrum ms = analyze_map(m->m);
    json out{{"matrix", jsonio::matrix_to_json(ms.matrix)},
             {"det", ms.determinant.fits_slong_p() ? json(ms.determinant.get_si())
                                                   : json(ms.determinant.get_str())},
             {"backward_matrix", jsonio::matrix_to_json(backward_matrix(ms.matrix))},
             {"spectral", jsonio::spectral_to_json(ms.data)}};
    *json_out = dup_string(out.dump());
  });
}

mh_status mh_weil_height(const mh_point* p, double* value, int* exact_zero) {
  return guarded([&] {
    if (p == nullptr || value == nullptr) fail(Errc::invalid_argument, "null argument");
    HeightValue h = weil_height(p->p);
    *value = h.value;
    if (exact_zero) *exact_zero = h.exact_zero ? 1 : 0;
  });
}

mh_status mh_canonical_height(const mh_matrix* m, const mh_point* p, const char* which,
                              const char* options_json, char** json_out) {
  return guarded([&] {
    if (m == nullptr || p == nullptr || which == nullptr || json_out == nullptr)
      fail(Errc::invalid_argument, "null argument");
    HeightOptions opts = jsonio::height_options_from_json(parse_or_null(options_json));
    std::string w(which);
    HeightEstimate est;
    if (w == "forward") est = forward_canonical_height(m->m, p->p, opts);
    else if (w == "backward") est = backward_canonical_height(m->m, p->p, opts);
    else if (w == "total") est = total_canonical_height(m->m, p->p, opts);
    else fail(Errc::invalid_argument, "which must be forward, backward, or total");
    *json_out = dup_string(jsonio::estimate_to_json(est).dump());
  });
}

mh_status mh_verify(const mh_matrix* m, const mh_point* p, const char* identity,
                    const char* options_json, char** json_out) {
  return guarded([&] {
    if (m == nullptr || p == nullptr || identity == nullptr || json_out == nullptr)
      fail(Errc::invalid_argument, "null argument");
    json jopts = parse_or_null(options_json);
    VerifyOptions opts;
    if (!jopts.is_null()) {
      if (jopts.contains("tolerance")) opts.tolerance = jopts.at("tolerance").get<double>();
      opts.heights = jsonio::height_options_from_json(jopts);
    }
    std::string id(identity);
    json out;
    if (id == "preperiodic") {
      PreperiodicityResult r = preperiodicity_test(m->m, p->p);
      const char* verdict = r.result == Preperiodicity::yes
                                ? "yes"
                                : (r.result == Preperiodicity::no ? "no" : "unknown");
      out = json{{"identity", "preperiodic"},
                 {"result", verdict},
                 {"certificate", r.certificate}};
    } else if (id == "functional-eq") {
      out = jsonio::report_to_json(verify_functional_equation(m->m, p->p, opts));
    } else if (id == "recurrence") {
      int n_terms = 4;
      if (!jopts.is_null() && jopts.contains("n_terms"))
        n_terms = jopts.at("n_terms").get<int>();
      out = jsonio::report_to_json(verify_recurrence(m->m, p->p, n_terms, opts));
    } else if (id == "lower-bound") {
      out = jsonio::report_to_json(verify_lower_bound(m->m, p->p, opts));
    } else if (id == "dim2-zero-height") {
      out = jsonio::report_to_json(verify_dim2_zero_height(m->m, p->p, opts));
    } else if (id == "fibration-semiconjugacy") {
      out = jsonio::report_to_json(verify_fibration_semiconjugacy(m->m, p->p, opts));
    } else {
      fail(Errc::invalid_argument, "unknown identity " + id);
    }
    *json_out = dup_string(out.dump());
  });
}

mh_status mh_gen_small(const mh_matrix* m, const char* construction, const char* options_json,
                       char** json_out) {
  return guarded([&] {
    if (construction == nullptr || json_out == nullptr)
      fail(Errc::invalid_argument, "null argument");
    json jopts = parse_or_null(options_json);
    std::string c(construction);
    SmallHeightCertificate cert;
    if (c == "fibonacci") {
      int k = jopts.is_null() ? 5 : jopts.value("k", 5);
      cert = fibonacci_points(k);
    } else {
      if (m == nullptr) fail(Errc::invalid_argument, "construction needs a matrix");
      DirichletOptions opts;
      if (!jopts.is_null()) {
        opts.epsilon_prime = jopts.value("epsilon", opts.epsilon_prime);
        opts.y_max = jopts.value("y_max", opts.y_max);
        opts.base_prime = jopts.value("base_prime", opts.base_prime);
        if (jopts.contains("n_max")) opts.heights = jsonio::height_options_from_json(jopts);
      }
      if (opts.epsilon_prime <= 0 || opts.y_max <= 0 || opts.base_prime < 2)
        fail(Errc::invalid_argument, "gen-small options must be positive");
      if (c == "forward") cert = dirichlet_small_forward(m->m, opts);
      else if (c == "total") cert = dirichlet_small_total(m->m, opts);
      else fail(Errc::invalid_argument, "construction must be fibonacci, forward, or total");
    }
    *json_out = dup_string(jsonio::certificate_to_json(cert).dump());
  });
}

mh_status mh_suite(const char* options_json, char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) fail(Errc::invalid_argument, "null argument");
    json jopts = parse_or_null(options_json);
    unsigned long seed = 42;
    int parallel = 1;
    SuiteCounts counts;
    VerifyOptions vopts;
    if (!jopts.is_null()) {
      seed = jopts.value("seed", seed);
      parallel = jopts.value("parallel", parallel);
      if (jopts.contains("tolerance")) vopts.tolerance = jopts.at("tolerance").get<double>();
      if (jopts.contains("counts")) {
        const json& c = jopts.at("counts");
        counts.functional = c.value("functional", counts.functional);
        counts.recurrence = c.value("recurrence", counts.recurrence);
        counts.lower_bound = c.value("lower_bound", counts.lower_bound);
        counts.zero_height = c.value("zero_height", counts.zero_height);
        counts.semiconjugacy = c.value("semiconjugacy", counts.semiconjugacy);
      }
    }
    if (parallel < 1) fail(Errc::invalid_argument, "parallel must be at least 1");
    SuiteSummary s = run_suite(seed, counts, parallel, vopts);
    *json_out = dup_string(jsonio::suite_to_json(s).dump());
  });
}

}  // extern "C"
