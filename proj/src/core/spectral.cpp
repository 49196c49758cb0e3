#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/scaled.hpp"

namespace monoheight {

namespace {

constexpr int kMaxRotationDenominator = 24;
constexpr double kAngleTolerance = 1e-9;

// Relative separation below which dominance classification is considered
// ambiguous and ell falls back to the numeric growth estimator.
constexpr double kSeparationFloor = 1e-7;

double angular_radius(const RootApprox& r) {
  double m = std::abs(r.value);
  if (m == 0.0) return M_PI;
  return std::min(M_PI, r.radius / m);
}

// Smallest q <= cap such that angle ~ 2 pi k / q within tolerance.
bool rational_angle(double angle, double tol, int cap, int* num, int* den) {
  for (int q = 1; q <= cap; ++q) {
    double t = angle * q / (2.0 * M_PI);
    double k = std::round(t);
    if (std::fabs(t - k) * 2.0 * M_PI / q <= tol) {
      int kk = static_cast<int>(k) % q;
      if (kk < 0) kk += q;
      *num = kk;
      *den = q;
      return true;
    }
  }
  return false;
}

// Growth-slope estimator: slope of log(||A^n||_inf / delta^n) against log n.
double ell_growth_slope(const IntMatrix& a, double delta) {
  std::vector<double> xs, ys;
  IntMatrix p = a.pow(12);
  for (int n = 12; n <= 60; n += 4) {
    Scaled norm = Scaled::zero();
    for (int i = 0; i < a.dim(); ++i) {
      mpz_class row(0);
      for (int j = 0; j < a.dim(); ++j) row += abs(p.at(i, j));
      Scaled s = Scaled::from_mpz_abs(row);
      if (norm.less_than(s)) norm = s;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(norm.log_value() - n * std::log(delta));
    if (n < 60) p = p * a.pow(4);
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

// Loose sanity cross-check of the spectral radius against power iteration on
// a float copy.
void power_iteration_check(const IntMatrix& a, double delta) {
  int n = a.dim();
  std::vector<double> m(n * n);
  bool representable = true;
  for (int i = 0; i < n && representable; ++i)
    for (int j = 0; j < n; ++j) {
      m[i * n + j] = a.at(i, j).get_d();
      if (std::isinf(m[i * n + j])) representable = false;
    }
  if (!representable) return;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * i;
  double logsum = 0.0;
  const int steps = 200;
  for (int s = 0; s < steps; ++s) {
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += m[i * n + j] * v[j];
    double norm = 0.0;
    for (double x : w) norm = std::max(norm, std::fabs(x));
    if (norm == 0.0) return;  // landed in a kernel direction, inconclusive
    logsum += std::log(norm);
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  double est = std::exp(logsum / steps);
  if (std::fabs(est - delta) > 0.5 * std::max(1.0, delta))
    fail(Errc::internal, "power iteration disagrees with the characteristic-polynomial radius");
}

struct RatMat {
  int n = 0;
  std::vector<mpq_class> a;
  explicit RatMat(int nn) : n(nn), a(static_cast<size_t>(nn) * nn, mpq_class(0)) {}
  static RatMat from_int(const IntMatrix& m) {
    RatMat r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) r.at(i, j) = mpq_class(m.at(i, j));
    return r;
  }
  mpq_class& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const mpq_class& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  RatMat mul(const RatMat& o) const {
    RatMat r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < n; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }
  RatMat scale(const mpq_class& s) const {
    RatMat r = *this;
    for (auto& x : r.a) x *= s;
    return r;
  }
  RatMat add(const RatMat& o) const {
    RatMat r = *this;
    for (size_t k = 0; k < a.size(); ++k) r.a[k] += o.a[k];
    return r;
  }
};

// p(A) with rational coefficients, exact.
RatMat eval_ratpoly(const IntMatrix& a, const RatPoly& p) {
  int n = a.dim();
  RatMat acc(n);
  RatMat am = RatMat::from_int(a);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc.mul(am);
    for (int i = 0; i < n; ++i) acc.at(i, i) += p.coeff(k);
  }
  return acc;
}

}  // namespace

MapSpectrum analyze_map(const IntMatrix& a) {
  MapSpectrum ms{a, a.det(), {}, {}, {}};
  if (ms.determinant == 0)
    fail(Errc::singular_matrix, "monomial-map analysis needs det(A) != 0");

  auto ca = a.char_and_adjugate();
  ms.data.charpoly = ca.charpoly;

  // irreducible factors with char multiplicities
  for (const auto& [sf, mult] : squarefree_decomposition(ca.charpoly)) {
    for (const IntPoly& q : factor_squarefree_over_q(sf)) {
      IrreducibleFactor f;
      f.poly = q;
      f.multiplicity = mult;
      f.roots = poly_roots(q, 1e-9);
      for (auto& r : f.roots) r.multiplicity = mult;
      ms.factors.push_back(std::move(f));
    }
  }

  // global eigenvalue list
  for (const auto& f : ms.factors)
    ms.data.eigenvalues.insert(ms.data.eigenvalues.end(), f.roots.begin(), f.roots.end());
  std::sort(ms.data.eigenvalues.begin(), ms.data.eigenvalues.end(),
            [](const RootApprox& x, const RootApprox& y) {
              double mx = std::abs(x.value), my = std::abs(y.value);
              if (mx != my) return mx > my;
              if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
              return x.value.imag() > y.value.imag();
            });
  ms.data.delta = std::abs(ms.data.eigenvalues.front().value);
  ms.data.delta_radius = ms.data.eigenvalues.front().radius;

  // dominance by interval overlap
  double dlow = ms.data.delta - ms.data.delta_radius;
  double second = 0.0;
  for (int i = 0; i < static_cast<int>(ms.data.eigenvalues.size()); ++i) {
    const auto& r = ms.data.eigenvalues[i];
    double m = std::abs(r.value);
    if (m + r.radius >= dlow) ms.data.dominant.push_back(i);
    else second = std::max(second, m);
  }
  ms.data.second_modulus_ratio = second / ms.data.delta;

  // largest Jordan block per irreducible factor (rank chains are exact)
  for (auto& f : ms.factors) {
    if (f.multiplicity == 1) {
      f.largest_block = 1;
    } else {
      IntMatrix qa = a.eval_poly(f.poly);
      IntMatrix p = qa;
      int prev = p.rank();
      int k = 1;
      while (true) {
        IntMatrix p2 = p * qa;
        int r2 = p2.rank();
        if (r2 == prev) break;
        prev = r2;
        p = p2;
        ++k;
      }
      f.largest_block = k;
    }
    for (const auto& r : f.roots) {
      if (std::abs(r.value) + r.radius >= dlow) {
        f.has_dominant = true;
        break;
      }
    }
  }

  // minimal polynomial from the block data
  IntPoly mu = IntPoly::constant(1);
  for (const auto& f : ms.factors) mu = mu * f.poly.pow(static_cast<unsigned>(f.largest_block));
  if (!a.eval_poly(mu).is_zero()) fail(Errc::internal, "minimal polynomial does not annihilate");
  ms.minpoly = mu;

  // ell: max block among factors meeting the dominant modulus
  int ell_strict = 1, ell_loose = 1;
  for (const auto& f : ms.factors) {
    if (f.has_dominant) ell_strict = std::max(ell_strict, f.largest_block);
    // loose: count factors that only narrowly miss dominance
    for (const auto& r : f.roots) {
      double m = std::abs(r.value);
      if (dlow - (m + r.radius) < kSeparationFloor * (1.0 + ms.data.delta))
        ell_loose = std::max(ell_loose, f.largest_block);
    }
  }
  ell_loose = std::max(ell_loose, ell_strict);
  if (ell_strict == ell_loose) {
    ms.data.ell = ell_strict - 1;
    ms.data.ell_exact = true;
  } else {
    double slope = ell_growth_slope(a, ms.data.delta);
    double rounded = std::round(slope);
    if (std::fabs(slope - rounded) > 0.1)
      fail(Errc::non_convergence,
           "ell growth estimator is not near an integer (slope " + std::to_string(slope) + ")");
    int est = static_cast<int>(rounded);
    est = std::clamp(est, ell_strict - 1, ell_loose - 1);
    ms.data.ell = est;
    ms.data.ell_exact = false;
  }

  // rotation period of the dominant arguments
  for (int q = 1; q <= kMaxRotationDenominator && !ms.data.rotation_period; ++q) {
    bool ok = true;
    for (int idx : ms.data.dominant) {
      const auto& r = ms.data.eigenvalues[idx];
      double angle = r.exact_integer ? (r.value.real() < 0 ? M_PI : 0.0)
                                     : std::arg(r.value);
      double tol = kAngleTolerance + angular_radius(r);
      double t = angle * q / (2.0 * M_PI);
      if (std::fabs(t - std::round(t)) * 2.0 * M_PI / q > tol) {
        ok = false;
        break;
      }
    }
    if (ok) ms.data.rotation_period = q;
  }

  power_iteration_check(a, ms.data.delta);
  return ms;
}

SpectralData analyze_spectrum(const IntMatrix& a) { return analyze_map(a).data; }

double dynamical_degree(const IntMatrix& a, double* radius) {
  MapSpectrum ms = analyze_map(a);
  if (radius) *radius = ms.data.delta_radius;
  return ms.data.delta;
}

int ell_of(const IntMatrix& a, bool* exact) {
  MapSpectrum ms = analyze_map(a);
  if (exact) *exact = ms.data.ell_exact;
  return ms.data.ell;
}

IntPoly minimal_polynomial(const IntMatrix& a) { return analyze_map(a).minpoly; }

std::optional<std::vector<DominantComponent>> dominant_components(const MapSpectrum& ms) {
  if (ms.data.ell != 0 || !ms.data.ell_exact) return std::nullopt;
  const IntPoly& mu = ms.minpoly;
  int n = ms.matrix.dim();
  std::vector<DominantComponent> out;
  for (int idx : ms.data.dominant) {
    const RootApprox& r = ms.data.eigenvalues[idx];
    DominantComponent c;
    c.eigenvalue = r.value;
    c.angle = r.exact_integer ? (r.value.real() < 0 ? M_PI : 0.0) : std::arg(r.value);
    double tol = kAngleTolerance + angular_radius(r);
    c.rational_angle = rational_angle(c.angle, tol, kMaxRotationDenominator, &c.num, &c.den);

    // P = g(A) / mu'(lambda) with g = mu / (x - lambda); synthetic division.
    std::complex<double> lambda = r.value;
    int m = mu.degree();
    std::vector<std::complex<double>> g(m);  // coefficients of the quotient
    std::complex<double> carry = mu.coeff(m).get_d();
    for (int k = m - 1; k >= 0; --k) {
      g[k] = carry;
      carry = carry * lambda + mu.coeff(k).get_d();
    }
    std::complex<double> denom = mu.derivative().eval(lambda);
    if (std::abs(denom) == 0.0) fail(Errc::internal, "projector denominator vanished");
    // Horner on the matrix
    std::vector<std::complex<double>> acc(n * n, 0.0);
    auto add_diag = [&](std::complex<double> v) {
      for (int i = 0; i < n; ++i) acc[i * n + i] += v;
    };
    std::vector<double> ad(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ad[i * n + j] = ms.matrix.at(i, j).get_d();
    for (int k = m - 1; k >= 0; --k) {
      if (k < m - 1) {
        std::vector<std::complex<double>> next(n * n, 0.0);
        for (int i = 0; i < n; ++i)
          for (int t = 0; t < n; ++t) {
            std::complex<double> v = acc[i * n + t];
            if (v == 0.0) continue;
            for (int j = 0; j < n; ++j) next[i * n + j] += v * ad[t * n + j];
          }
        acc = std::move(next);
      }
      add_diag(g[k]);
    }
    c.projector.resize(n * n);
    for (int i = 0; i < n * n; ++i) c.projector[i] = acc[i] / denom;
    out.push_back(std::move(c));
  }
  return out;
}

LimitStructure limit_structure(const MapSpectrum& ms) {
  const SpectralData& sd = ms.data;
  if (sd.delta <= 1.0 + sd.delta_radius)
    fail(Errc::degenerate_degree, "dynamical degree is not above 1");
  LimitStructure ls;
  int n = ms.matrix.dim();

  bool all_dominant_integer = true;
  for (int idx : sd.dominant)
    if (!sd.eigenvalues[idx].exact_integer) all_dominant_integer = false;

  if (all_dominant_integer && sd.ell_exact) {
    // Exact rational limits via Bezout idempotents. Contributions come from
    // dominant integer eigenvalues whose factor has the maximal block size.
    bool any_negative = false;
    std::vector<std::pair<mpz_class, const IrreducibleFactor*>> contributing;
    for (const auto& f : ms.factors) {
      if (!f.has_dominant) continue;
      if (f.poly.degree() != 1 || f.poly.coeff(1) != 1)
        fail(Errc::internal, "integer dominant expected a monic linear factor");
      mpz_class lambda = -f.poly.coeff(0);  // factor is x - lambda
      if (lambda < 0) any_negative = true;
      if (f.largest_block == sd.ell + 1) contributing.emplace_back(lambda, &f);
    }
    int period = any_negative ? 2 : 1;
    int ell = sd.ell;

    RatMat zero(n);
    std::vector<RatMat> terms;  // T_lambda / (ell! * lambda^ell), signed
    std::vector<int> signs;
    mpz_class ell_fact(1);
    for (int k = 2; k <= ell; ++k) ell_fact *= k;
    for (const auto& [lambda, f] : contributing) {
      int s = f->largest_block;
      // mu = (x - lambda)^s * h
      IntPoly lin_pow = IntPoly::linear_root(lambda).pow(static_cast<unsigned>(s));
      IntPoly h;
      if (!try_divide_exact(ms.minpoly, lin_pow, &h))
        fail(Errc::internal, "minimal polynomial split failed");
      RatMat proj(n);
      if (h.degree() == 0) {
        // lambda is the only eigenvalue; the projector is the identity
        for (int i = 0; i < n; ++i) proj.at(i, i) = 1;
      } else {
        RatPoly u, v;
        bezout_coprime(RatPoly(lin_pow), RatPoly(h), &u, &v);
        proj = eval_ratpoly(ms.matrix, v * RatPoly(h));
      }
      // T = P * (A - lambda I)^ell
      IntMatrix nil = ms.matrix - IntMatrix::identity(n) * lambda;
      RatMat t = proj.mul(RatMat::from_int(nil.pow(static_cast<unsigned long>(ell))));
      mpz_class lam_pow(1);
      for (int k = 0; k < ell; ++k) lam_pow *= lambda;
      mpq_class denom = mpq_class(ell_fact * lam_pow);
      t = t.scale(1 / denom);
      terms.push_back(std::move(t));
      signs.push_back(lambda < 0 ? -1 : 1);
    }
    ls.periodic = true;
    ls.period = period;
    ls.exact_limits = true;
    for (int r = 0; r < period; ++r) {
      RatMat lim(n);
      for (size_t t = 0; t < terms.size(); ++t) {
        int sr = (signs[t] < 0 && (r % 2 == 1)) ? -1 : 1;
        lim = lim.add(sr < 0 ? terms[t].scale(mpq_class(-1)) : terms[t]);
      }
      std::vector<double> d(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i * n + j] = lim.at(i, j).get_d();
      ls.limits.push_back(std::move(d));
    }
    return ls;
  }

  if (sd.ell == 0 && sd.ell_exact && sd.rotation_period) {
    auto comps = dominant_components(ms);
    if (comps) {
      int p = *sd.rotation_period;
      ls.periodic = true;
      ls.period = p;
      ls.exact_limits = false;
      for (int r = 0; r < p; ++r) {
        std::vector<double> lim(n * n, 0.0);
        for (const auto& c : *comps) {
          // snapped phase exp(2 pi i num r / den); den divides p
          double phase = 2.0 * M_PI * c.num * r / c.den;
          std::complex<double> w(std::cos(phase), std::sin(phase));
          for (int k = 0; k < n * n; ++k) lim[k] += (w * c.projector[k]).real();
        }
        ls.limits.push_back(std::move(lim));
      }
      return ls;
    }
  }

  return ls;  // aperiodic / no closed form certified
}

LimitStructure dominant_limit_structure(const IntMatrix& a) {
  return limit_structure(analyze_map(a));
}

}  // namespace monoheight
