#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace monoheight {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  singular_matrix,
  degenerate_degree,
  hypothesis_not_met,
  budget_exceeded,
  non_convergence,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace monoheight
