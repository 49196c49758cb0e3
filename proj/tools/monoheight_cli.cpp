// Command-line front end for the monoheight shared library. All computation
// goes through the C interface in monoheight.h; this file only parses
// arguments, loads inputs, and formats results.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "monoheight.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitHypothesisNotMet = 3;

int exit_code_for(mh_status s) {
  switch (s) {
    case MH_OK: return kExitOk;
    case MH_ERROR_DEGENERATE_DEGREE:
    case MH_ERROR_HYPOTHESIS: return kExitHypothesisNotMet;
    default: return kExitInputError;
  }
}

[[noreturn]] void die(mh_status s) {
  std::cerr << "error (" << mh_status_name(s) << "): " << mh_last_error_message() << "\n";
  std::exit(exit_code_for(s));
}

// --matrix/--point accept inline JSON or a file path
std::string load_input(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) {
    std::cerr << "error: cannot open " << arg << "\n";
    std::exit(kExitInputError);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct MatrixHandle {
  mh_matrix* m = nullptr;
  explicit MatrixHandle(const std::string& arg) {
    mh_status s = mh_matrix_from_json(load_input(arg).c_str(), &m);
    if (s != MH_OK) die(s);
  }
  ~MatrixHandle() { mh_matrix_free(m); }
};

struct PointHandle {
  mh_point* p = nullptr;
  explicit PointHandle(const std::string& arg) {
    mh_status s = mh_point_from_json(load_input(arg).c_str(), &p);
    if (s != MH_OK) die(s);
  }
  ~PointHandle() { mh_point_free(p); }
};

std::string format_number(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

void print_table_rows(const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      print_table_rows(value, prefix.empty() ? key : prefix + "." + key);
  } else if (j.is_array()) {
    bool scalar_row = true;
    for (const auto& v : j)
      if (v.is_object() || v.is_array()) scalar_row = false;
    if (scalar_row) {
      std::string line;
      for (const auto& v : j) {
        if (!line.empty()) line += ", ";
        line += format_number(v);
      }
      std::printf("%-32s %s\n", prefix.c_str(), line.c_str());
    } else {
      int idx = 0;
      for (const auto& v : j) print_table_rows(v, prefix + "[" + std::to_string(idx++) + "]");
    }
  } else {
    std::printf("%-32s %s\n", prefix.c_str(), format_number(j).c_str());
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "json") std::cout << j.dump() << "\n";
  else print_table_rows(j, "");
}

template <typename F>
json run_or_die(F&& call) {
  char* out = nullptr;
  mh_status s = call(&out);
  if (s != MH_OK) die(s);
  json j = json::parse(out);
  mh_string_free(out);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical heights for monomial maps on the algebraic torus"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  app.add_option("--format", format, "output format: json or table")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  int n_max = 60;
  if (const char* env = std::getenv("MONOHEIGHT_NMAX")) n_max = std::atoi(env);
  int window = 0;
  double tol = 1e-9;
  bool force_iterative = false;

  auto add_height_flags = [&](CLI::App* cmd) {
    cmd->add_option("--nmax", n_max, "iteration budget for the windowed estimator");
    cmd->add_option("--window", window, "tail window length (0 = automatic)");
    cmd->add_option("--tol", tol, "comparison tolerance");
    cmd->add_flag("--iterative", force_iterative, "force the windowed estimator");
  };
  auto height_options = [&]() {
    json opts{{"n_max", n_max}, {"tolerance", tol}};
    if (window > 0) opts["window"] = window;
    if (force_iterative) opts["force_iterative"] = true;
    return opts;
  };

  // analyze
  std::string matrix_arg, point_arg;
  CLI::App* analyze = app.add_subcommand("analyze", "spectral report: delta, ell, A', det");
  analyze->add_option("--matrix", matrix_arg, "matrix JSON or file")->required();

  // height
  CLI::App* height = app.add_subcommand("height", "Weil height of a point");
  height->add_option("--point", point_arg, "point JSON or file")->required();

  // canheight
  std::string which = "forward";
  CLI::App* canheight = app.add_subcommand("canheight", "canonical height estimate");
  canheight->add_option("which", which, "forward | backward | total")
      ->check(CLI::IsMember({"forward", "backward", "total"}))
      ->required();
  canheight->add_option("--matrix", matrix_arg, "matrix JSON or file")->required();
  canheight->add_option("--point", point_arg, "point JSON or file")->required();
  add_height_flags(canheight);

  // verify
  std::string identity;
  int n_terms = 4;
  CLI::App* verify = app.add_subcommand("verify", "check a named identity");
  verify->add_option("identity", identity,
                     "functional-eq | recurrence | lower-bound | dim2-zero-height | "
                     "fibration-semiconjugacy | preperiodic")
      ->required();
  verify->add_option("--matrix", matrix_arg, "matrix JSON or file")->required();
  verify->add_option("--point", point_arg, "point JSON or file")->required();
  verify->add_option("--terms", n_terms, "orbit terms for the recurrence check");
  add_height_flags(verify);

  // gen-small
  std::string construction;
  int fib_k = 5;
  double epsilon = 0.01;
  long y_max = 1'000'000;
  long base_prime = 2;
  CLI::App* gen = app.add_subcommand("gen-small", "small-canonical-height certificates");
  gen->add_option("construction", construction, "fibonacci | forward | total")
      ->check(CLI::IsMember({"fibonacci", "forward", "total"}))
      ->required();
  gen->add_option("--matrix", matrix_arg, "matrix JSON or file (dirichlet constructions)");
  gen->add_option("--k", fib_k, "index of the fibonacci family point");
  gen->add_option("--epsilon", epsilon, "simultaneous-approximation target epsilon'");
  gen->add_option("--ymax", y_max, "multiplier search bound");
  gen->add_option("--base-prime", base_prime, "base prime of the constructed point");
  add_height_flags(gen);

  // suite
  unsigned long seed = 42;
  int parallel = 1;
  int count = 100;
  CLI::App* suite = app.add_subcommand("suite", "randomized property suites");
  suite->add_option("--seed", seed, "suite seed")->capture_default_str();
  suite->add_option("--count", count, "cases for the functional equation; others scale")
      ->capture_default_str();
  suite->add_option("--parallel", parallel, "worker threads")->capture_default_str();
  suite->add_option("--tol", tol, "residual tolerance floor");

  CLI11_PARSE(app, argc, argv);

  if (*analyze) {
    MatrixHandle m(matrix_arg);
    json j = run_or_die([&](char** out) { return mh_analyze(m.m, out); });
    emit(j, format);
    return kExitOk;
  }
  if (*height) {
    PointHandle p(point_arg);
    double value = 0;
    int exact_zero = 0;
    mh_status s = mh_weil_height(p.p, &value, &exact_zero);
    if (s != MH_OK) die(s);
    emit(json{{"value", value}, {"exact_zero", exact_zero != 0}}, format);
    return kExitOk;
  }
  if (*canheight) {
    MatrixHandle m(matrix_arg);
    PointHandle p(point_arg);
    json j = run_or_die([&](char** out) {
      return mh_canonical_height(m.m, p.p, which.c_str(), height_options().dump().c_str(), out);
    });
    emit(j, format);
    return kExitOk;
  }
  if (*verify) {
    MatrixHandle m(matrix_arg);
    PointHandle p(point_arg);
    json opts = height_options();
    opts["n_terms"] = n_terms;
    json j = run_or_die(
        [&](char** out) { return mh_verify(m.m, p.p, identity.c_str(), opts.dump().c_str(), out); });
    emit(j, format);
    if (identity == "preperiodic") return kExitOk;
    if (!j["hypotheses_met"].get<bool>()) return kExitHypothesisNotMet;
    return j["passed"].get<bool>() ? kExitOk : kExitVerificationFailed;
  }
  if (*gen) {
    json opts = height_options();
    opts["k"] = fib_k;
    opts["epsilon"] = epsilon;
    opts["y_max"] = y_max;
    opts["base_prime"] = base_prime;
    std::unique_ptr<MatrixHandle> m;
    if (!matrix_arg.empty()) m = std::make_unique<MatrixHandle>(matrix_arg);
    json j = run_or_die([&](char** out) {
      return mh_gen_small(m ? m->m : nullptr, construction.c_str(), opts.dump().c_str(), out);
    });
    emit(j, format);
    return kExitOk;
  }
  if (*suite) {
    json counts{{"functional", count},
                {"recurrence", count / 2},
                {"lower_bound", count / 2},
                {"zero_height", count / 5},
                {"semiconjugacy", count / 5}};
    json opts{{"seed", seed}, {"parallel", parallel}, {"tolerance", tol}, {"counts", counts}};
    json j = run_or_die([&](char** out) { return mh_suite(opts.dump().c_str(), out); });
    emit(j, format);
    return j["all_passed"].get<bool>() ? kExitOk : kExitVerificationFailed;
  }
  return kExitInputError;
}
