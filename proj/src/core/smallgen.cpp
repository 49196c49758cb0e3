#include "core/smallgen.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace monoheight {

namespace {

TorusPoint base_power_point(long base, const std::vector<mpz_class>& ys) {
  int n = static_cast<int>(ys.size());
  std::map<mpz_class, std::vector<mpz_class>> exps;
  exps[mpz_class(base)] = ys;
  return TorusPoint::from_factored(std::vector<int>(n, 1), std::move(exps));
}

struct RealSpectrum {
  std::vector<double> lambdas;              // descending
  std::vector<std::vector<double>> proj;    // spectral projectors b_k c_k
  double r = 0.0;                           // max |b_ik c_kj|
  double radius_slack = 0.0;                // crude relative error of the projectors
};

// Distinct positive real spectrum with Lagrange projectors
//   P_k = prod_{j != k} (A - lambda_j I) / (lambda_k - lambda_j).
RealSpectrum real_spectrum(const MapSpectrum& ms) {
  int n = ms.matrix.dim();
  RealSpectrum out;
  std::vector<std::pair<double, double>> roots;  // (value, radius)
  for (const auto& e : ms.data.eigenvalues) {
    if (std::fabs(e.value.imag()) > std::max(e.radius, 1e-12))
      fail(Errc::hypothesis_not_met, "eigenvalues are not all real");
    if (e.value.real() <= e.radius)
      fail(Errc::hypothesis_not_met, "eigenvalues are not all positive");
    roots.emplace_back(e.value.real(), e.radius);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  std::vector<double> ad(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ad[i * n + j] = ms.matrix.at(i, j).get_d();
  for (int k = 0; k < n; ++k) {
    std::vector<double> p(n * n, 0.0);
    for (int i = 0; i < n; ++i) p[i * n + i] = 1.0;
    double denom = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      // p <- p * (A - lambda_j I)
      std::vector<double> next(n * n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) {
          double v = p[i * n + t];
          if (v == 0.0) continue;
          for (int c = 0; c < n; ++c) next[i * n + c] += v * ad[t * n + c];
          next[i * n + t] -= v * roots[j].first;
        }
      p = std::move(next);
      denom *= roots[k].first - roots[j].first;
    }
    for (auto& v : p) v /= denom;
    out.lambdas.push_back(roots[k].first);
    out.proj.push_back(std::move(p));
  }
  for (const auto& p : out.proj)
    for (double v : p) out.r = std::max(out.r, std::fabs(v));
  // error propagation: root radii against the spectral gaps
  double slack = 1e-13;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) slack += roots[j].second / std::fabs(roots[j].first - roots[k].first);
  out.radius_slack = slack;
  return out;
}

// Row of largest norm of a rank-one projector: a representative of the left
// spectral row c_k.
std::vector<double> dominant_row(const std::vector<double>& proj, int n) {
  int best = 0;
  double bestn = -1.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += proj[i * n + j] * proj[i * n + j];
    if (s > bestn) {
      bestn = s;
      best = i;
    }
  }
  std::vector<double> row(n);
  for (int j = 0; j < n; ++j) row[j] = proj[best * n + j];
  double norm = std::sqrt(bestn);
  for (auto& v : row) v /= norm;
  return row;
}

void normalize_maxabs(std::vector<double>* z) {
  double m = 0.0;
  for (double v : *z) m = std::max(m, std::fabs(v));
  if (m == 0.0) fail(Errc::internal, "zero kernel vector");
  for (auto& v : *z) v /= m;
}

double integrality_score(const std::vector<double>& z) {
  double worst = 0.0;
  for (double v : z) worst = std::max(worst, std::fabs(v - std::round(v)));
  return worst;
}

// Orthonormal basis of the joint kernel of the given rows, then the candidate
// direction with the best integrality at y = 1.
std::vector<double> kernel_direction(const std::vector<std::vector<double>>& rows_in, int n) {
  // orthonormalize the constraint rows so projection removes both components
  std::vector<std::vector<double>> rows;
  for (auto r : rows_in) {
    for (const auto& q : rows) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d += q[j] * r[j];
      for (int j = 0; j < n; ++j) r[j] -= d * q[j];
    }
    double norm = 0.0;
    for (double x : r) norm += x * x;
    if (norm > 1e-20) {
      norm = std::sqrt(norm);
      for (auto& x : r) x /= norm;
      rows.push_back(std::move(r));
    }
  }
  std::vector<std::vector<double>> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    for (const auto& r : rows) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d += r[j] * v[j];
      for (int j = 0; j < n; ++j) v[j] -= d * r[j];
    }
    for (const auto& b : basis) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d += b[j] * v[j];
      for (int j = 0; j < n; ++j) v[j] -= d * b[j];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm > 1e-16) {
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
  }
  if (basis.empty()) fail(Errc::internal, "kernel of the spectral rows is trivial");
  std::vector<std::vector<double>> candidates = basis;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      std::vector<double> s(n), d(n);
      for (int t = 0; t < n; ++t) {
        s[t] = basis[i][t] + basis[j][t];
        d[t] = basis[i][t] - basis[j][t];
      }
      candidates.push_back(std::move(s));
      candidates.push_back(std::move(d));
    }
  double best_score = 1e300;
  std::vector<double> best;
  for (auto& c : candidates) {
    normalize_maxabs(&c);
    double s = integrality_score(c);
    if (s < best_score) {
      best_score = s;
      best = c;
    }
  }
  return best;
}

ApproximationData search_multiplier(const std::vector<double>& z, double eps, long y_max) {
  int n = static_cast<int>(z.size());
  ApproximationData best;
  best.achieved = 1e300;

  auto consider = [&](long y) {
    std::vector<mpz_class> ys(n);
    bool nonzero = false;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = y * z[i];
      double r = std::round(t);
      ys[i] = mpz_class(r);
      if (ys[i] != 0) nonzero = true;
      worst = std::max(worst, std::fabs(t - r));
    }
    if (!nonzero) return false;
    if (worst < best.achieved) {
      best.y = y;
      best.ys = std::move(ys);
      best.achieved = worst;
    }
    return best.achieved < eps;
  };

  // continued-fraction shortcut in dimension 2: the non-unit coordinate is
  // approximated along its convergent denominators
  if (n == 2) {
    int unit = std::fabs(std::fabs(z[0]) - 1.0) < 1e-12 ? 0 : 1;
    double alpha = std::fabs(z[1 - unit]);
    double x = alpha;
    long p0 = 1, q0 = 0, p1 = 0, q1 = 1;
    for (int it = 0; it < 60; ++it) {
      double fl = std::floor(x);
      long a = static_cast<long>(fl);
      long p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > y_max || q2 <= 0) break;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      if (q2 >= 1 && consider(q2)) return best;
      double frac = x - fl;
      if (frac < 1e-15) break;
      x = 1.0 / frac;
    }
  }
  for (long y = 1; y <= y_max; ++y)
    if (consider(y)) return best;
  fail(Errc::budget_exceeded,
       "no multiplier up to " + std::to_string(y_max) + " reaches epsilon' (best " +
           std::to_string(best.achieved) + ")");
}

MapSpectrum gated_spectrum(const IntMatrix& a, int min_dim) {
  if (a.dim() < min_dim)
    fail(Errc::hypothesis_not_met,
         "construction needs dimension >= " + std::to_string(min_dim));
  MapSpectrum ms = analyze_map(a);
  if (!is_irreducible_over_q(ms.data.charpoly))
    fail(Errc::hypothesis_not_met, "characteristic polynomial is reducible");
  return ms;
}

}  // namespace

SmallHeightCertificate fibonacci_points(int k) {
  if (k < 2) fail(Errc::invalid_argument, "fibonacci family starts at k = 2");
  IntMatrix a = IntMatrix::from_rows({{mpz_class(2), mpz_class(1)}, {mpz_class(1), mpz_class(1)}});
  // F_1 = 1, F_2 = 1, ...
  mpz_class f0(1), f1(1);
  for (int i = 2; i < k; ++i) {
    mpz_class t = f0 + f1;
    f0 = f1;
    f1 = t;
  }
  mpz_class fk = f1, fk1 = f0 + f1;
  const double gamma = (1.0 + std::sqrt(5.0)) / 2.0;

  SmallHeightCertificate cert;
  cert.construction = "fibonacci_2x2";
  cert.point = base_power_point(2, {fk, -fk1});
  cert.predicted_bound = std::log(2.0) / std::sqrt(5.0) * std::pow(gamma, -k);
  cert.target_epsilon = std::pow(gamma, -k);
  cert.approx.y = fk;
  cert.approx.ys = {fk, -fk1};
  cert.approx.achieved = std::pow(gamma, -k);  // |gamma F_k - F_{k+1}|
  cert.measured_forward = forward_canonical_height(a, cert.point);
  return cert;
}

SmallHeightCertificate dirichlet_small_forward(const IntMatrix& a,
                                               const DirichletOptions& opts) {
  MapSpectrum ms = gated_spectrum(a, 2);
  RealSpectrum rs = real_spectrum(ms);
  int n = a.dim();

  std::vector<double> r1 = dominant_row(rs.proj[0], n);
  std::vector<double> z = kernel_direction({r1}, n);
  ApproximationData approx = search_multiplier(z, opts.epsilon_prime, opts.y_max);

  SmallHeightCertificate cert;
  cert.construction = "dirichlet_forward";
  cert.point = base_power_point(opts.base_prime, approx.ys);
  cert.target_epsilon = opts.epsilon_prime;
  double r_certified = rs.r * (1.0 + 4.0 * rs.radius_slack);
  cert.predicted_bound =
      2.0 * std::log(static_cast<double>(opts.base_prime)) * n * r_certified * approx.achieved;
  cert.approx = approx;
  cert.measured_forward = forward_canonical_height(a, cert.point, opts.heights);
  return cert;
}

SmallHeightCertificate dirichlet_small_total(const IntMatrix& a, const DirichletOptions& opts) {
  MapSpectrum ms = gated_spectrum(a, 3);
  RealSpectrum rs = real_spectrum(ms);
  int n = a.dim();

  std::vector<double> r1 = dominant_row(rs.proj[0], n);
  std::vector<double> rn = dominant_row(rs.proj[n - 1], n);
  std::vector<double> z = kernel_direction({r1, rn}, n);
  ApproximationData approx = search_multiplier(z, opts.epsilon_prime, opts.y_max);

  SmallHeightCertificate cert;
  cert.construction = "dirichlet_total";
  cert.point = base_power_point(opts.base_prime, approx.ys);
  cert.target_epsilon = opts.epsilon_prime;
  double r_certified = rs.r * (1.0 + 4.0 * rs.radius_slack);
  cert.predicted_bound =
      4.0 * std::log(static_cast<double>(opts.base_prime)) * n * r_certified * approx.achieved;
  cert.approx = approx;
  CanonicalHeightEngine engine(a);
  cert.measured_forward = engine.forward(cert.point, opts.heights);
  cert.measured_total = engine.total(cert.point, opts.heights);
  return cert;
}

}  // namespace monoheight
