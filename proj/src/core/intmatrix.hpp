#pragma once

#include <gmpxx.h>

#include <vector>

#include "core/intpoly.hpp"

namespace monoheight {

// Square matrix over Z with arbitrary-precision entries. All operations are
// exact; there is no overflow path.
class IntMatrix {
 public:
  explicit IntMatrix(int n);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

  int dim() const { return n_; }
  mpz_class& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const mpz_class& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  IntMatrix operator*(const IntMatrix& o) const;  // throws on dimension mismatch
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator*(const mpz_class& s) const;
  IntMatrix pow(unsigned long e) const;

  mpz_class trace() const;
  bool is_zero() const;
  // true iff this == lambda * I
  bool is_scalar(const mpz_class& lambda) const;

  // Exact determinant: cofactor expansion for n <= 3, Bareiss fraction-free
  // elimination above.
  mpz_class det() const;

  // Exact rank over Q.
  int rank() const;

  // Faddeev-LeVerrier: characteristic polynomial and adjugate in one pass.
  struct CharAdj;
  CharAdj char_and_adjugate() const;

  IntPoly char_poly() const;
  IntMatrix adjugate() const;

  // Exact evaluation p(A).
  IntMatrix eval_poly(const IntPoly& p) const;

 private:
  int n_;
  std::vector<mpz_class> a_;
};

struct IntMatrix::CharAdj {
  IntPoly charpoly;    // monic, det(xI - A)
  IntMatrix adjugate;  // classical adjoint, A * adj = det * I
};

// A' = sgn(det A) * adj(A) = |det A| * A^-1. Throws on singular input.
IntMatrix backward_matrix(const IntMatrix& a);

}  // namespace monoheight
