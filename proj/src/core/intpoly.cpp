#include "core/intpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "core/factorize.hpp"

namespace monoheight {

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(mpz_class v) {
  std::vector<mpz_class> c;
  if (v != 0) c.push_back(std::move(v));
  return IntPoly(std::move(c));
}

IntPoly IntPoly::monomial(const mpz_class& coeff, int degree) {
  std::vector<mpz_class> c(degree + 1, mpz_class(0));
  c[degree] = coeff;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::linear_root(const mpz_class& r) {
  return IntPoly(std::vector<mpz_class>{-r, 1});
}

const mpz_class& IntPoly::coeff(int k) const {
  static const mpz_class zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

const mpz_class& IntPoly::leading() const {
  if (c_.empty()) fail(Errc::invalid_argument, "leading coefficient of the zero polynomial");
  return c_.back();
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

std::complex<double> IntPoly::eval(const std::complex<double>& x) const {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

IntPoly IntPoly::derivative() const {
  std::vector<mpz_class> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return IntPoly(std::move(d));
}

IntPoly IntPoly::negate_variable() const {
  std::vector<mpz_class> d = c_;
  for (size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
  return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const {
  mpz_class g(0);
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (g == 0) return 0;
  if (!c_.empty() && c_.back() < 0) g = -g;
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  mpz_class g = content();
  std::vector<mpz_class> d = c_;
  for (auto& c : d) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const mpz_class& s) const {
  std::vector<mpz_class> c = c_;
  for (auto& x : c) x *= s;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const mpz_class& c = coeff(k);
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    mpz_class a = abs(c);
    if (a != 1 || k == 0) out << a.get_str();
    if (k > 0) {
      if (a != 1) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
    first = false;
  }
  return out.str();
}

bool try_divide_exact(const IntPoly& a, const IntPoly& b, IntPoly* quotient) {
  if (b.is_zero()) fail(Errc::invalid_argument, "polynomial division by zero");
  if (a.is_zero()) {
    if (quotient) *quotient = IntPoly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  RatPoly q, r;
  RatPoly(a).divmod(RatPoly(b), &q, &r);
  if (!r.is_zero()) return false;
  std::vector<mpz_class> qi(q.degree() + 1);
  for (int k = 0; k <= q.degree(); ++k) {
    const mpq_class& c = q.coeff(k);
    if (c.get_den() != 1) return false;
    qi[k] = c.get_num();
  }
  if (quotient) *quotient = IntPoly(std::move(qi));
  return true;
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  RatPoly x(a), y(b);
  while (!y.is_zero()) {
    RatPoly q, r;
    x.divmod(y, &q, &r);
    x = y;
    y = r;
  }
  std::vector<mpz_class> num(x.degree() + 1);
  mpz_class den(1);
  for (int k = 0; k <= x.degree(); ++k) den = den * x.coeff(k).get_den() / gcd(den, mpz_class(x.coeff(k).get_den()));
  for (int k = 0; k <= x.degree(); ++k) {
    mpq_class c = x.coeff(k) * mpq_class(den);
    num[k] = c.get_num();
  }
  return IntPoly(std::move(num)).primitive_part();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  if (p.is_zero()) fail(Errc::invalid_argument, "square-free decomposition of zero");
  std::vector<std::pair<IntPoly, int>> out;
  IntPoly f = p.primitive_part();
  if (f.degree() == 0) return out;

  // Yun's algorithm over Z with primitive gcds.
  IntPoly fp = f.derivative();
  IntPoly g = poly_gcd(f, fp);
  IntPoly b, c, d;
  if (!try_divide_exact(f, g, &b)) fail(Errc::internal, "yun: gcd does not divide");
  if (!try_divide_exact(fp, g, &c)) fail(Errc::internal, "yun: gcd does not divide derivative");
  d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    IntPoly a = poly_gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    IntPoly bn, cn;
    if (!try_divide_exact(b, a, &bn)) fail(Errc::internal, "yun: factor does not divide");
    if (!try_divide_exact(d, a, &cn)) fail(Errc::internal, "yun: factor does not divide remainder");
    b = bn;
    d = cn - b.derivative();
    ++i;
  }
  return out;
}

IntPoly cyclotomic(unsigned k) {
  if (k == 0) fail(Errc::invalid_argument, "cyclotomic index must be positive");
  // x^k - 1 divided by the cyclotomics of the proper divisors.
  std::vector<mpz_class> xk(k + 1, mpz_class(0));
  xk[0] = -1;
  xk[k] = 1;
  IntPoly num((std::vector<mpz_class>(xk)));
  for (unsigned d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    IntPoly phi = cyclotomic(d);
    IntPoly q;
    if (!try_divide_exact(num, phi, &q)) fail(Errc::internal, "cyclotomic division failed");
    num = q;
  }
  return num;
}

namespace {

std::vector<mpz_class> all_divisors(const mpz_class& n, const FactorBudget& budget) {
  std::map<mpz_class, unsigned> f = factorize(abs(n), budget);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : f) {
    size_t base = divs.size();
    mpz_class pk(1);
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Distinct-degree factor pattern sieve mod a prime q. Returns true when p is
// certified irreducible mod q (hence over Q). Leaves feasible proper factor
// degrees in *degrees when the test is inconclusive.
bool mod_p_irreducible(const IntPoly& p, uint64_t q, std::vector<char>* degree_possible) {
  int n = p.degree();
  auto mod = [&](const mpz_class& c) -> uint64_t {
    mpz_class r = c % static_cast<long>(q);
    if (r < 0) r += static_cast<long>(q);
    return r.get_ui();
  };
  std::vector<uint64_t> f(n + 1);
  for (int k = 0; k <= n; ++k) f[k] = mod(p.coeff(k));
  if (f[n] == 0) return false;  // leading coefficient vanishes: unusable prime

  auto mulmod = [&](uint64_t a, uint64_t b) { return (unsigned __int128)a * b % q; };
  auto polymod = [&](std::vector<uint64_t> a) {
    // reduce a modulo f (monic-ized)
    uint64_t inv = 1;
    {  // modular inverse of leading coefficient by Fermat
      uint64_t base = f[n], e = q - 2;
      uint64_t r = 1;
      while (e) {
        if (e & 1) r = mulmod(r, base);
        base = mulmod(base, base);
        e >>= 1;
      }
      inv = r;
    }
    std::vector<uint64_t> fm(f);
    for (auto& c : fm) c = mulmod(c, inv);
    while (a.size() > static_cast<size_t>(n)) {
      uint64_t lead = a.back();
      size_t d = a.size() - 1;
      if (lead != 0)
        for (int k = 0; k <= n; ++k) {
          uint64_t& t = a[d - n + k];
          t = (t + q - mulmod(lead, fm[k])) % q;
        }
      a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  };
  auto polymul = [&](const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    if (a.empty() || b.empty()) return std::vector<uint64_t>{};
    std::vector<uint64_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j])) % q;
    return polymod(std::move(c));
  };
  auto polygcd = [&](std::vector<uint64_t> a, std::vector<uint64_t> b) {
    while (!b.empty()) {
      // a mod b
      uint64_t invl;
      {
        uint64_t base = b.back(), e = q - 2, r = 1;
        while (e) {
          if (e & 1) r = mulmod(r, base);
          base = mulmod(base, base);
          e >>= 1;
        }
        invl = r;
      }
      while (a.size() >= b.size() && !a.empty()) {
        uint64_t c = mulmod(a.back(), invl);
        size_t shift = a.size() - b.size();
        for (size_t k = 0; k < b.size(); ++k) a[shift + k] = (a[shift + k] + q - mulmod(c, b[k])) % q;
        while (!a.empty() && a.back() == 0) a.pop_back();
      }
      std::swap(a, b);
    }
    return a;
  };

  // squarefree check mod q: gcd(f, f') must be constant, otherwise skip.
  std::vector<uint64_t> fv(f.begin(), f.end());
  while (!fv.empty() && fv.back() == 0) fv.pop_back();
  std::vector<uint64_t> fd;
  for (size_t k = 1; k < fv.size(); ++k) fd.push_back(mulmod(fv[k], k % q));
  while (!fd.empty() && fd.back() == 0) fd.pop_back();
  if (fd.empty()) return false;
  if (polygcd(fv, fd).size() > 1) return false;

  // Distinct-degree: compute x^(q^d) mod f incrementally, collect degrees of
  // irreducible factors.
  std::vector<uint64_t> xq = {0, 1};  // x
  auto frob = [&](std::vector<uint64_t> a) {
    // a^q mod f by square-and-multiply on the exponent q
    std::vector<uint64_t> r = {1}, base = std::move(a);
    uint64_t e = q;
    while (e) {
      if (e & 1) r = polymul(r, base);
      base = polymul(base, base);
      e >>= 1;
    }
    return r;
  };
  std::vector<int> factor_degrees;
  std::vector<uint64_t> rem = fv;
  std::vector<uint64_t> h = {0, 1};
  int d = 0;
  while (static_cast<int>(rem.size()) - 1 > 0) {
    ++d;
    if (2 * d > static_cast<int>(rem.size()) - 1) {
      factor_degrees.push_back(static_cast<int>(rem.size()) - 1);
      break;
    }
    h = frob(std::move(h));
    std::vector<uint64_t> hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + q - 1) % q;  // h - x
    while (!hx.empty() && hx.back() == 0) hx.pop_back();
    std::vector<uint64_t> g = polygcd(rem, hx);
    if (g.size() > 1) {
      int total = static_cast<int>(g.size()) - 1;
      for (int t = 0; t < total / d; ++t) factor_degrees.push_back(d);
      // rem /= g
      uint64_t invl;
      {
        uint64_t base = g.back(), e = q - 2, r = 1;
        while (e) {
          if (e & 1) r = mulmod(r, base);
          base = mulmod(base, base);
          e >>= 1;
        }
        invl = r;
      }
      std::vector<uint64_t> quot;
      std::vector<uint64_t> a = rem;
      quot.assign(a.size() - g.size() + 1, 0);
      for (int k = static_cast<int>(a.size() - g.size()); k >= 0; --k) {
        uint64_t c = mulmod(a[k + g.size() - 1], invl);
        quot[k] = c;
        if (c != 0)
          for (size_t t = 0; t < g.size(); ++t) a[k + t] = (a[k + t] + q - mulmod(c, g[t])) % q;
      }
      rem = quot;
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
      // re-reduce h mod new rem is unnecessary; keep reducing mod f
    }
  }
  if (factor_degrees.size() == 1 && factor_degrees[0] == n) return true;

  // Mark which proper factor degrees are consistent with this pattern.
  std::vector<char> reachable(n + 1, 0);
  reachable[0] = 1;
  for (int fd2 : factor_degrees)
    for (int s = n; s >= fd2; --s)
      if (reachable[s - fd2]) reachable[s] = 1;
  for (int dd = 1; dd <= n / 2; ++dd)
    if (!reachable[dd]) (*degree_possible)[dd] = 0;
  return false;
}

}  // namespace

std::vector<std::pair<mpz_class, int>> integer_roots(const IntPoly& p, const FactorBudget& budget) {
  if (p.is_zero()) fail(Errc::invalid_argument, "integer roots of the zero polynomial");
  std::vector<std::pair<mpz_class, int>> roots;
  IntPoly f = p.primitive_part();
  // strip x^k
  int zero_mult = 0;
  while (!f.is_zero() && f.coeff(0) == 0) {
    IntPoly q;
    try_divide_exact(f, IntPoly::monomial(1, 1), &q);
    f = q;
    ++zero_mult;
  }
  if (zero_mult > 0) roots.emplace_back(0, zero_mult);
  if (f.degree() < 1) return roots;

  std::vector<mpz_class> divs = all_divisors(f.coeff(0), budget);
  for (const mpz_class& d : divs) {
    for (int sign = 0; sign < 2; ++sign) {
      mpz_class r = sign ? -d : d;
      if (f.eval(r) != 0) continue;
      int mult = 0;
      IntPoly lin = IntPoly::linear_root(r);
      IntPoly q;
      while (try_divide_exact(f, lin, &q)) {
        f = q;
        ++mult;
      }
      roots.emplace_back(r, mult);
      if (f.degree() < 1) break;
    }
    if (f.degree() < 1) break;
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

namespace {

// First rational root of f, if any.
bool find_rational_root(const IntPoly& f, const FactorBudget& budget, mpq_class* root) {
  std::vector<mpz_class> dnum = all_divisors(f.coeff(0), budget);
  std::vector<mpz_class> dden = all_divisors(f.leading(), budget);
  for (const auto& a : dnum)
    for (const auto& b : dden) {
      for (int s = 0; s < 2; ++s) {
        mpq_class r(s ? -a : a, b);
        r.canonicalize();
        if (f.eval(r) == 0) {
          if (root) *root = r;
          return true;
        }
      }
    }
  return false;
}

// Kronecker search for a factor of degree d of the primitive polynomial f
// (no rational roots left). Returns true with the factor in *out.
bool kronecker_factor_of_degree(const IntPoly& f, int d, const FactorBudget& budget,
                                IntPoly* out) {
  std::vector<mpz_class> xs;
  std::vector<std::vector<mpz_class>> divsets;
  long candidate = 0;
  unsigned long total = 1;
  while (static_cast<int>(xs.size()) < d + 1) {
    mpz_class x(candidate);
    candidate = candidate > 0 ? -candidate : -candidate + 1;
    mpz_class v = f.eval(x);
    if (v == 0) continue;
    std::vector<mpz_class> ds = all_divisors(v, budget);
    size_t m = ds.size();
    for (size_t i = 0; i < m; ++i) ds.push_back(-ds[i]);
    total *= static_cast<unsigned long>(ds.size());
    if (total > budget.kronecker_candidates)
      fail(Errc::budget_exceeded, "Kronecker factor-candidate budget exceeded");
    xs.push_back(x);
    divsets.push_back(std::move(ds));
  }
  // sign of the factor is free, fix it through the first point
  divsets[0].resize(divsets[0].size() / 2);

  std::vector<size_t> idx(d + 1, 0);
  std::vector<mpq_class> vals(d + 1);
  while (true) {
    for (int k = 0; k <= d; ++k) vals[k] = mpq_class(divsets[k][idx[k]]);
    std::vector<mpq_class> g(d + 1, mpq_class(0));
    for (int k = 0; k <= d; ++k) {
      std::vector<mpq_class> basis{mpq_class(1)};
      mpq_class denom(1);
      for (int j = 0; j <= d; ++j) {
        if (j == k) continue;
        basis.push_back(0);
        for (int t = static_cast<int>(basis.size()) - 1; t > 0; --t)
          basis[t] = basis[t - 1] - mpq_class(xs[j]) * basis[t];
        basis[0] = -mpq_class(xs[j]) * basis[0];
        denom *= mpq_class(xs[k] - xs[j]);
      }
      mpq_class w = vals[k] / denom;
      for (int t = 0; t <= d; ++t) g[t] += basis[t] * w;
    }
    bool integral = true;
    std::vector<mpz_class> gi(d + 1);
    for (int t = 0; t <= d && integral; ++t) {
      mpq_class c = g[t];
      c.canonicalize();
      if (c.get_den() != 1) integral = false;
      else gi[t] = c.get_num();
    }
    if (integral && gi[d] != 0) {
      IntPoly cand{std::vector<mpz_class>(gi)};
      if (cand.degree() == d && try_divide_exact(f, cand, nullptr)) {
        *out = cand.primitive_part();
        return true;
      }
    }
    int pos = 0;
    while (pos <= d && ++idx[pos] == divsets[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos > d) break;
  }
  return false;
}

// Finds any nontrivial factor of a primitive polynomial, or reports
// irreducibility. Factors of minimal degree are found first.
bool find_nontrivial_factor(const IntPoly& f, const FactorBudget& budget, IntPoly* out) {
  int n = f.degree();
  if (n <= 1) return false;
  if (f.coeff(0) == 0) {
    *out = IntPoly::monomial(1, 1);
    return true;
  }
  mpq_class root;
  if (find_rational_root(f, budget, &root)) {
    // (den*x - num), primitive by canonicalization
    *out = IntPoly(std::vector<mpz_class>{-root.get_num(), root.get_den()});
    return true;
  }
  if (n <= 3) return false;

  std::vector<char> degree_possible(n / 2 + 1, 1);
  degree_possible[0] = 0;
  degree_possible[1] = 0;  // no rational roots
  for (uint64_t q : {10007ull, 10009ull, 10037ull, 10039ull, 10061ull}) {
    if (mod_p_irreducible(f, q, &degree_possible)) return false;
    bool any = false;
    for (int d = 2; d <= n / 2; ++d) any = any || degree_possible[d];
    if (!any) return false;
  }
  for (int d = 2; d <= n / 2; ++d) {
    if (!degree_possible[d]) continue;
    if (kronecker_factor_of_degree(f, d, budget, out)) return true;
  }
  return false;
}

}  // namespace

bool is_irreducible_over_q(const IntPoly& p, const FactorBudget& budget) {
  IntPoly f = p.primitive_part();
  if (f.degree() <= 0)
    fail(Errc::invalid_argument, "irreducibility is defined for nonconstant polynomials");
  if (f.degree() == 1) return true;
  IntPoly dummy;
  return !find_nontrivial_factor(f, budget, &dummy);
}

std::vector<IntPoly> factor_squarefree_over_q(const IntPoly& p, const FactorBudget& budget) {
  IntPoly f = p.primitive_part();
  if (f.degree() <= 0) fail(Errc::invalid_argument, "cannot factor a constant polynomial");
  std::vector<IntPoly> out;
  std::vector<IntPoly> work{f};
  while (!work.empty()) {
    IntPoly g = work.back();
    work.pop_back();
    IntPoly factor;
    if (g.degree() <= 1 || !find_nontrivial_factor(g, budget, &factor)) {
      out.push_back(g);
      continue;
    }
    IntPoly q;
    if (!try_divide_exact(g, factor, &q)) fail(Errc::internal, "found factor does not divide");
    work.push_back(factor);
    work.push_back(q.primitive_part());
  }
  std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_string() < b.to_string();
  });
  return out;
}

// ---- RatPoly ----

void RatPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly::RatPoly(const IntPoly& p) {
  c_.reserve(p.degree() + 1);
  for (int k = 0; k <= p.degree(); ++k) c_.emplace_back(p.coeff(k));
  normalize();
}

const mpq_class& RatPoly::coeff(int k) const {
  static const mpq_class zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const mpq_class& s) const {
  std::vector<mpq_class> c = c_;
  for (auto& x : c) x *= s;
  return RatPoly(std::move(c));
}

void RatPoly::divmod(const RatPoly& d, RatPoly* q, RatPoly* r) const {
  if (d.is_zero()) fail(Errc::invalid_argument, "polynomial division by zero");
  std::vector<mpq_class> rem = c_;
  std::vector<mpq_class> quo;
  int dd = d.degree();
  if (static_cast<int>(rem.size()) - 1 >= dd) quo.assign(rem.size() - dd, mpq_class(0));
  for (int k = static_cast<int>(rem.size()) - 1 - dd; k >= 0; --k) {
    mpq_class c = rem[k + dd] / d.c_[dd];
    quo[k] = c;
    if (c != 0)
      for (int t = 0; t <= dd; ++t) rem[k + t] -= c * d.c_[t];
  }
  if (q) *q = RatPoly(std::move(quo));
  if (r) *r = RatPoly(std::move(rem));
}

void bezout_coprime(const RatPoly& a, const RatPoly& b, RatPoly* u, RatPoly* v) {
  // extended Euclid
  RatPoly r0 = a, r1 = b;
  RatPoly u0(std::vector<mpq_class>{1}), u1;
  RatPoly v0, v1(std::vector<mpq_class>{1});
  while (!r1.is_zero()) {
    RatPoly q, r;
    r0.divmod(r1, &q, &r);
    RatPoly u2 = u0 - q * u1;
    RatPoly v2 = v0 - q * v1;
    r0 = r1;
    r1 = r;
    u0 = u1;
    u1 = u2;
    v0 = v1;
    v1 = v2;
  }
  if (r0.degree() != 0) fail(Errc::invalid_argument, "bezout: polynomials are not coprime");
  mpq_class inv = 1 / r0.coeff(0);
  *u = u0 * inv;
  *v = v0 * inv;
}

}  // namespace monoheight
