#include "core/intmatrix.hpp"

#include "core/error.hpp"

namespace monoheight {

IntMatrix::IntMatrix(int n) : n_(n) {
  if (n < 1) fail(Errc::invalid_argument, "matrix dimension must be >= 1");
  a_.assign(static_cast<size_t>(n) * n, mpz_class(0));
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      fail(Errc::invalid_argument, "matrix rows must form a square matrix");
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (n_ != o.n_) fail(Errc::dimension_mismatch, "matrix product: dimension mismatch");
  IntMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const mpz_class& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (n_ != o.n_) fail(Errc::dimension_mismatch, "matrix sum: dimension mismatch");
  IntMatrix r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (n_ != o.n_) fail(Errc::dimension_mismatch, "matrix difference: dimension mismatch");
  IntMatrix r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

IntMatrix IntMatrix::operator*(const mpz_class& s) const {
  IntMatrix r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
  return r;
}

IntMatrix IntMatrix::pow(unsigned long e) const {
  IntMatrix result = identity(n_);
  IntMatrix base = *this;
  while (e > 0) {
    if (e & 1ul) result = result * base;
    e >>= 1ul;
    if (e > 0) base = base * base;
  }
  return result;
}

mpz_class IntMatrix::trace() const {
  mpz_class t(0);
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

bool IntMatrix::is_scalar(const mpz_class& lambda) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? lambda : mpz_class(0))) return false;
  return true;
}

mpz_class IntMatrix::det() const {
  if (n_ == 1) return at(0, 0);
  if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  if (n_ == 3) {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  }
  IntMatrix m = *this;
  mpz_class prev(1);
  int sign = 1;
  for (int k = 0; k < n_ - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n_; ++r)
        if (m.at(r, k) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n_; ++j) swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n_; ++i)
      for (int j = k + 1; j < n_; ++j) {
        mpz_class v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n_ - 1, n_ - 1) : mpz_class(-m.at(n_ - 1, n_ - 1));
}

int IntMatrix::rank() const {
  // fraction-free elimination with column pivot scan
  IntMatrix m = *this;
  mpz_class prev(1);
  int row = 0;
  for (int col = 0; col < n_ && row < n_; ++col) {
    int piv = -1;
    for (int r = row; r < n_; ++r)
      if (m.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < n_; ++j) swap(m.at(row, j), m.at(piv, j));
    for (int i = row + 1; i < n_; ++i) {
      for (int j = col + 1; j < n_; ++j) {
        mpz_class v = m.at(i, j) * m.at(row, col) - m.at(i, col) * m.at(row, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
      m.at(i, col) = 0;
    }
    prev = m.at(row, col);
    ++row;
  }
  return row;
}

IntMatrix::CharAdj IntMatrix::char_and_adjugate() const {
  int n = n_;
  std::vector<mpz_class> c(n + 1);
  c[n] = 1;
  IntMatrix m(n);  // M_0 = 0
  IntMatrix last(n);
  for (int k = 1; k <= n; ++k) {
    // M_k = A*M_{k-1} + c_{n-k+1} * I
    m = (*this) * m;
    for (int i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
    last = m;
    IntMatrix am = (*this) * m;
    mpz_class t = am.trace();
    mpz_class q;
    mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = -q;
  }
  IntPoly charpoly{std::vector<mpz_class>(c)};
  // adj(A) = (-1)^(n-1) * M_n
  IntMatrix adj = (n % 2 == 0) ? (last * mpz_class(-1)) : last;
  return {charpoly, adj};
}

IntPoly IntMatrix::char_poly() const { return char_and_adjugate().charpoly; }
IntMatrix IntMatrix::adjugate() const { return char_and_adjugate().adjugate; }

IntMatrix IntMatrix::eval_poly(const IntPoly& p) const {
  IntMatrix acc(n_);
  if (p.is_zero()) return acc;
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * (*this);
    acc = acc + identity(n_) * p.coeff(k);
  }
  return acc;
}

IntMatrix backward_matrix(const IntMatrix& a) {
  auto ca = a.char_and_adjugate();
  mpz_class d = a.det();
  if (d == 0) fail(Errc::singular_matrix, "backward matrix needs a nonzero determinant");
  return d > 0 ? ca.adjugate : ca.adjugate * mpz_class(-1);
}

}  // namespace monoheight
