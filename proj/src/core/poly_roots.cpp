#include "core/poly_roots.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace monoheight {

namespace {

using cd = std::complex<double>;

// Coefficients as doubles, scaled by a common power of two so the largest
// magnitude is near 1 (roots are scale-invariant).
std::vector<double> scaled_coeffs(const IntPoly& p) {
  long max_e = -100000;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == 0) continue;
    long e;
    mpz_get_d_2exp(&e, p.coeff(k).get_mpz_t());
    max_e = std::max(max_e, e);
  }
  std::vector<double> c(p.degree() + 1, 0.0);
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == 0) continue;
    long e;
    double d = mpz_get_d_2exp(&e, p.coeff(k).get_mpz_t());
    c[k] = std::ldexp(d, static_cast<int>(e - max_e));
  }
  return c;
}

cd horner(const std::vector<double>& c, cd x) {
  cd acc(0.0, 0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cd horner_deriv(const std::vector<double>& c, cd x) {
  cd acc(0.0, 0.0);
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k)
    acc = acc * x + c[k] * static_cast<double>(k);
  return acc;
}

// Aberth-Ehrlich on a squarefree polynomial given by double coefficients.
std::vector<cd> aberth(const std::vector<double>& c) {
  int n = static_cast<int>(c.size()) - 1;
  if (n == 1) return {cd(-c[0] / c[1], 0.0)};
  double cauchy = 0.0;
  for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::fabs(c[k] / c[n]));
  double r0 = 1.0 + cauchy;
  std::vector<cd> z(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * (k + 0.25) / n + 0.42;
    z[k] = 0.7 * r0 * cd(std::cos(ang), std::sin(ang));
  }
  const int max_sweeps = 600;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      cd p = horner(c, z[k]);
      cd dp = horner_deriv(c, z[k]);
      if (std::abs(dp) == 0.0) {
        z[k] += cd(1e-6, 1e-6);
        worst = 1.0;
        continue;
      }
      cd nk = p / dp;
      cd s(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      cd denom = 1.0 - nk * s;
      cd w = (std::abs(denom) == 0.0) ? nk : nk / denom;
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-15) return z;
  }
  // final residual check before giving up
  double res = 0.0;
  for (int k = 0; k < n; ++k) {
    cd dp = horner_deriv(c, z[k]);
    if (std::abs(dp) == 0.0) res = 1.0;
    else res = std::max(res, static_cast<double>(n) * std::abs(horner(c, z[k]) / dp));
  }
  if (res < 1e-8) return z;
  fail(Errc::non_convergence, "root finding did not converge");
}

}  // namespace

std::vector<RootApprox> poly_roots(const IntPoly& p, double target_radius) {
  if (p.is_zero()) fail(Errc::invalid_argument, "roots of the zero polynomial");
  std::vector<RootApprox> out;
  IntPoly f = p.primitive_part();
  if (f.degree() == 0) return out;

  // zero roots
  int zero_mult = 0;
  while (f.coeff(0) == 0) {
    IntPoly q;
    try_divide_exact(f, IntPoly::monomial(1, 1), &q);
    f = q;
    ++zero_mult;
  }
  if (zero_mult > 0) out.push_back({cd(0.0, 0.0), 0.0, zero_mult, true});

  for (const auto& [q, mult] : squarefree_decomposition(f)) {
    std::vector<double> c = scaled_coeffs(q);
    std::vector<cd> roots = aberth(c);
    // pair complex conjugates exactly; real-axis snap for near-real roots
    std::vector<bool> used(roots.size(), false);
    std::vector<cd> fixed;
    for (size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      cd z = roots[i];
      double imag_tol = 1e-11 * (1.0 + std::abs(z));
      if (std::fabs(z.imag()) <= imag_tol) {
        fixed.push_back(cd(z.real(), 0.0));
        used[i] = true;
        continue;
      }
      size_t best = i;
      double bestd = std::numeric_limits<double>::max();
      for (size_t j = 0; j < roots.size(); ++j) {
        if (j == i || used[j]) continue;
        double d = std::abs(std::conj(z) - roots[j]);
        if (d < bestd) {
          bestd = d;
          best = j;
        }
      }
      if (best != i && bestd < 1e-6 * (1.0 + std::abs(z))) {
        cd avg = 0.5 * (z + std::conj(roots[best]));
        fixed.push_back(avg);
        fixed.push_back(std::conj(avg));
        used[i] = used[best] = true;
      } else {
        fixed.push_back(z);
        used[i] = true;
      }
    }
    for (cd z : fixed) {
      RootApprox r;
      r.multiplicity = mult;
      // exact integer detection
      double nearest = std::round(z.real());
      if (std::fabs(z.imag()) == 0.0 && std::fabs(z.real() - nearest) < 0.25 &&
          std::fabs(nearest) < 9.0e15) {
        mpz_class cand(nearest);
        if (q.eval(cand) == 0) {
          r.value = cd(nearest, 0.0);
          r.radius = 0.0;
          r.exact_integer = true;
          out.push_back(r);
          continue;
        }
      }
      // residual bound with inflation factor 4
      cd pv = horner(c, z);
      cd dv = horner_deriv(c, z);
      double rad;
      if (std::abs(dv) == 0.0) rad = 1.0;
      else rad = 4.0 * q.degree() * std::abs(pv) / std::abs(dv);
      rad = std::max(rad, 4.0e-16 * (1.0 + std::abs(z)));
      if (rad > target_radius)
        fail(Errc::non_convergence, "root radius " + std::to_string(rad) + " above target");
      r.value = z;
      r.radius = rad;
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const RootApprox& a, const RootApprox& b) {
    double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

}  // namespace monoheight
