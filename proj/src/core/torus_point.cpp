#include "core/torus_point.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/factorize.hpp"

namespace monoheight {

TorusPoint::TorusPoint(int n) : n_(n), signs_(n, 1) {
  if (n < 1) fail(Errc::invalid_argument, "point dimension must be >= 1");
}

void TorusPoint::normalize() {
  for (auto it = exps_.begin(); it != exps_.end();) {
    bool all_zero = true;
    for (const auto& e : it->second)
      if (e != 0) {
        all_zero = false;
        break;
      }
    it = all_zero ? exps_.erase(it) : std::next(it);
  }
}

TorusPoint TorusPoint::from_rationals(const std::vector<mpq_class>& coords,
                                      const FactorBudget& budget) {
  int n = static_cast<int>(coords.size());
  TorusPoint p(n);
  for (int i = 0; i < n; ++i) {
    if (coords[i] == 0) fail(Errc::invalid_argument, "torus points have nonzero coordinates");
    if (coords[i] < 0) p.signs_[i] = -1;
    mpz_class num = abs(coords[i].get_num());
    mpz_class den = coords[i].get_den();
    for (const auto& [prime, e] : factorize(num, budget)) {
      auto& v = p.exps_[prime];
      if (v.empty()) v.assign(n, mpz_class(0));
      v[i] += static_cast<long>(e);
    }
    for (const auto& [prime, e] : factorize(den, budget)) {
      auto& v = p.exps_[prime];
      if (v.empty()) v.assign(n, mpz_class(0));
      v[i] -= static_cast<long>(e);
    }
  }
  p.normalize();
  return p;
}

TorusPoint TorusPoint::from_factored(std::vector<int> signs,
                                     std::map<mpz_class, std::vector<mpz_class>> exponents) {
  int n = static_cast<int>(signs.size());
  TorusPoint p(n);
  for (int s : signs)
    if (s != 1 && s != -1) fail(Errc::invalid_argument, "signs must be +1 or -1");
  p.signs_ = std::move(signs);
  for (auto& [prime, v] : exponents) {
    if (prime < 2 || !is_probable_prime(prime))
      fail(Errc::invalid_argument, "exponent table key " + prime.get_str() + " is not prime");
    if (static_cast<int>(v.size()) != n)
      fail(Errc::invalid_argument, "exponent vector length must match dimension");
  }
  p.exps_ = std::move(exponents);
  p.normalize();
  return p;
}

TorusPoint TorusPoint::inverse() const {
  TorusPoint p = *this;
  for (auto& [prime, v] : p.exps_)
    for (auto& e : v) e = -e;
  return p;
}

TorusPoint TorusPoint::power(const mpz_class& m) const {
  TorusPoint p = *this;
  if (mpz_even_p(m.get_mpz_t()))
    for (auto& s : p.signs_) s = 1;
  for (auto& [prime, v] : p.exps_)
    for (auto& e : v) e *= m;
  p.normalize();
  return p;
}

std::vector<mpq_class> TorusPoint::to_rationals() const {
  for (const auto& [prime, v] : exps_)
    for (const auto& e : v)
      if (mpz_sizeinbase(e.get_mpz_t(), 2) > 64 || prime.fits_ulong_p() == 0)
        fail(Errc::invalid_argument, "exponents too large to expand into rationals");
  std::vector<mpq_class> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = signs_[i];
  for (const auto& [prime, v] : exps_) {
    for (int i = 0; i < n_; ++i) {
      if (v[i] == 0) continue;
      mpz_class pk;
      mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), mpz_class(abs(v[i])).get_ui());
      if (v[i] > 0) out[i] *= mpq_class(pk);
      else out[i] /= mpq_class(pk);
    }
  }
  return out;
}

std::string TorusPoint::key() const {
  std::ostringstream os;
  for (int s : signs_) os << (s > 0 ? '+' : '-');
  for (const auto& [prime, v] : exps_) {
    os << '|' << prime.get_str();
    for (const auto& e : v) os << ',' << e.get_str();
  }
  return os.str();
}

TorusPoint apply_map(const IntMatrix& a, const TorusPoint& p) {
  if (a.dim() != p.dim()) fail(Errc::dimension_mismatch, "apply_map: dimension mismatch");
  int n = p.dim();
  // sign of coordinate i: product over j with sign -1 of (-1)^a_ij
  std::vector<int> signs(n, 1);
  for (int i = 0; i < n; ++i) {
    bool neg = false;
    for (int j = 0; j < n; ++j)
      if (p.signs()[j] < 0 && mpz_odd_p(a.at(i, j).get_mpz_t())) neg = !neg;
    signs[i] = neg ? -1 : 1;
  }
  std::map<mpz_class, std::vector<mpz_class>> exps;
  for (const auto& [prime, e] : p.exponents()) {
    std::vector<mpz_class> v(n, mpz_class(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (e[j] != 0) v[i] += a.at(i, j) * e[j];
    exps.emplace(prime, std::move(v));
  }
  // primes come from an already validated point, skip the primality pass
  TorusPoint q(n);
  q.signs_ = std::move(signs);
  q.exps_ = std::move(exps);
  q.normalize();
  return q;
}

namespace {

// Archimedean log-coordinates sum_p e_{p,i} log p, with a power-of-two shift
// applied when any exponent exceeds the double guard.
std::vector<double> arch_logs(const TorusPoint& p, long* shift_out) {
  size_t max_bits = 0;
  for (const auto& [prime, v] : p.exponents())
    for (const auto& e : v) max_bits = std::max(max_bits, mpz_sizeinbase(e.get_mpz_t(), 2));
  long shift = 0;
  if (max_bits > 900) shift = static_cast<long>(max_bits) - 500;
  std::vector<double> u(p.dim(), 0.0);
  for (const auto& [prime, v] : p.exponents()) {
    double lp = std::log(prime.get_d());
    for (int i = 0; i < p.dim(); ++i) {
      if (v[i] == 0) continue;
      double ei;
      if (shift == 0) {
        ei = v[i].get_d();
      } else {
        mpz_class t = v[i] >> static_cast<unsigned long>(shift);
        ei = t.get_d();
      }
      u[i] += ei * lp;
    }
  }
  *shift_out = shift;
  return u;
}

}  // namespace

Scaled weil_height_scaled(const TorusPoint& p) {
  Scaled h = Scaled::zero();
  for (const auto& [prime, v] : p.exponents()) {
    mpz_class worst(0);
    for (const auto& e : v)
      if (-e > worst) worst = -e;
    if (worst > 0) h = h.plus(Scaled::from_mpz_abs(worst).times(std::log(prime.get_d())));
  }
  long shift = 0;
  std::vector<double> u = arch_logs(p, &shift);
  double m = 0.0;
  for (double x : u) m = std::max(m, x);
  if (m > 0.0) {
    Scaled arch = Scaled::from_double(m);
    arch.exp2 += shift;
    h = h.plus(arch);
  }
  return h;
}

HeightValue weil_height(const TorusPoint& p) {
  HeightValue hv;
  hv.exact_zero = p.is_root_of_unity();
  Scaled h = weil_height_scaled(p);
  double v = h.value();
  if (std::isinf(v)) fail(Errc::internal, "weil height exceeds double range");
  hv.value = v;
  return hv;
}

}  // namespace monoheight
