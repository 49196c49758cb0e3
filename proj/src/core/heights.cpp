#include "core/heights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace monoheight {

const char* height_method_name(HeightMethod m) {
  switch (m) {
    case HeightMethod::closed_form_projector: return "closed_form_projector";
    case HeightMethod::closed_form_fibration: return "closed_form_fibration";
    case HeightMethod::iterative_window: return "iterative_window";
  }
  return "?";
}

namespace {

using cd = std::complex<double>;

// The limit height functional is a sum over places v of
//   weight_v * max(0, max_i (L y_v)_i)
// where y_v collects the local log-coordinates of the point. Finite places
// carry y = -e_p and weight log p, the archimedean place carries the
// coordinate logs with weight 1.
struct PlaceVec {
  double weight;
  std::vector<double> y;
};

constexpr size_t kClosedFormExponentBits = 500;

bool closed_form_places(const TorusPoint& p, std::vector<PlaceVec>* out) {
  int n = p.dim();
  std::vector<double> arch(n, 0.0);
  for (const auto& [prime, e] : p.exponents()) {
    double lp = std::log(prime.get_d());
    PlaceVec pv;
    pv.weight = lp;
    pv.y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (mpz_sizeinbase(e[i].get_mpz_t(), 2) > kClosedFormExponentBits) return false;
      double ei = e[i].get_d();
      pv.y[i] = -ei;
      arch[i] += ei * lp;
    }
    out->push_back(std::move(pv));
  }
  out->push_back({1.0, std::move(arch)});
  return true;
}

double functional(const std::vector<double>& L, const std::vector<PlaceVec>& places, int n) {
  double total = 0.0;
  for (const auto& pv : places) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += L[i * n + j] * pv.y[j];
      best = std::max(best, s);
    }
    total += pv.weight * best;
  }
  return total;
}

// ---- exact maximization over the dominant rotation circle ----
//
// For a single non-real dominant conjugate pair the orbit of phases is dense
// in the circle, so the limsup is the maximum over phi of
//   G(phi) = sum_v w_v * max(0, max_i s_{v,i}(phi)),
// each s a sinusoid c + a cos phi + b sin phi. G is piecewise sinusoidal in
// phi; its maximum is attained at a breakpoint (active index change or hinge
// crossing) or at the peak of the active sum on an arc. We collect those
// candidate angles and evaluate G directly at each.

struct Sinusoid {
  double c, a, b;
  double at(double phi) const { return c + a * std::cos(phi) + b * std::sin(phi); }
};

void roots_of(double c, double a, double b, std::vector<double>* out) {
  double r = std::hypot(a, b);
  if (r < 1e-300) return;
  double t = -c / r;
  if (t < -1.0 || t > 1.0) return;
  double psi = std::atan2(b, a);
  double d = std::acos(std::clamp(t, -1.0, 1.0));
  out->push_back(psi + d);
  out->push_back(psi - d);
}

double circle_sup(const std::vector<double>& m0, const std::vector<cd>& pc,
                  const std::vector<PlaceVec>& places, int n) {
  // sinusoids per place and coordinate
  std::vector<std::vector<Sinusoid>> s(places.size());
  for (size_t v = 0; v < places.size(); ++v) {
    s[v].resize(n);
    for (int i = 0; i < n; ++i) {
      double c = 0.0;
      cd w(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        c += m0[i * n + j] * places[v].y[j];
        w += pc[i * n + j] * places[v].y[j];
      }
      s[v][i] = {c, 2.0 * w.real(), -2.0 * w.imag()};
    }
  }
  auto eval = [&](double phi) {
    double total = 0.0;
    for (size_t v = 0; v < places.size(); ++v) {
      double best = 0.0;
      for (int i = 0; i < n; ++i) best = std::max(best, s[v][i].at(phi));
      total += places[v].weight * best;
    }
    return total;
  };

  std::vector<double> breaks;
  for (size_t v = 0; v < places.size(); ++v)
    for (int i = 0; i < n; ++i) {
      roots_of(s[v][i].c, s[v][i].a, s[v][i].b, &breaks);
      for (int j = i + 1; j < n; ++j)
        roots_of(s[v][i].c - s[v][j].c, s[v][i].a - s[v][j].a, s[v][i].b - s[v][j].b, &breaks);
    }
  for (auto& phi : breaks) {
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0) phi += 2.0 * M_PI;
  }
  breaks.push_back(0.0);
  breaks.push_back(2.0 * M_PI);
  std::sort(breaks.begin(), breaks.end());

  std::vector<double> candidates = breaks;
  for (size_t k = 0; k + 1 < breaks.size(); ++k) {
    double lo = breaks[k], hi = breaks[k + 1];
    if (hi - lo < 1e-14) continue;
    double mid = 0.5 * (lo + hi);
    candidates.push_back(mid);
    // active sum on this arc
    double A = 0.0, B = 0.0;
    for (size_t v = 0; v < places.size(); ++v) {
      int best = -1;
      double bv = 0.0;
      for (int i = 0; i < n; ++i) {
        double val = s[v][i].at(mid);
        if (val > bv) {
          bv = val;
          best = i;
        }
      }
      if (best >= 0) {
        A += places[v].weight * s[v][best].a;
        B += places[v].weight * s[v][best].b;
      }
    }
    double peak = std::atan2(B, A);
    for (double cand : {peak, peak + 2.0 * M_PI}) {
      if (cand > lo && cand < hi) candidates.push_back(cand);
    }
  }
  double best = 0.0;
  for (double phi : candidates) best = std::max(best, eval(phi));
  return best;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

// Closed-form evaluation from dominant components (ell = 0): enumerate the
// rational-phase configurations and take the circle supremum over the single
// irrational pair, if present. nullopt when the layout is out of scope
// (several independent irrational pairs, oversized phase lattice).
std::optional<double> component_value(const std::vector<DominantComponent>& comps,
                                      const std::vector<PlaceVec>& places, int n) {
  long q = 1;
  std::vector<const DominantComponent*> rational;
  std::vector<const DominantComponent*> irrational;
  for (const auto& c : comps) {
    if (c.rational_angle) {
      rational.push_back(&c);
      q = lcm_long(q, c.den);
      if (q > 2520) return std::nullopt;
    } else {
      irrational.push_back(&c);
    }
  }
  // irrational roots come in conjugate pairs; keep the upper-half
  // representatives and require a single pair
  std::vector<const DominantComponent*> pairs;
  for (const auto* c : irrational)
    if (c->angle > 0) pairs.push_back(c);
  if (pairs.size() * 2 != irrational.size()) return std::nullopt;
  if (pairs.size() > 1) return std::nullopt;

  double best = 0.0;
  for (long r = 0; r < q; ++r) {
    std::vector<double> m0(n * n, 0.0);
    for (const auto* c : rational) {
      double phase = 2.0 * M_PI * c->num * static_cast<double>(r) / c->den;
      cd w(std::cos(phase), std::sin(phase));
      for (int k = 0; k < n * n; ++k) m0[k] += (w * c->projector[k]).real();
    }
    if (pairs.empty()) {
      best = std::max(best, functional(m0, places, n));
    } else {
      best = std::max(best, circle_sup(m0, pairs[0]->projector, places, n));
    }
  }
  return best;
}

HeightEstimate windowed_estimate(const MapSpectrum& ms, const TorusPoint& p,
                                 const HeightOptions& opts) {
  HeightEstimate est;
  est.method = HeightMethod::iterative_window;
  est.ell_numeric = !ms.data.ell_exact;
  est.exact_zero = p.is_root_of_unity();

  int n_max = std::max(4, opts.n_max);
  int w = opts.window;
  if (w <= 0) w = ms.data.rotation_period ? 2 * *ms.data.rotation_period : 8;
  w = std::clamp(w, 1, n_max / 2);
  est.n_max = n_max;
  est.window = w;

  double logdelta = std::log(ms.data.delta);
  int ell = ms.data.ell;
  std::vector<double> q(n_max + 1, 0.0);
  TorusPoint cur = p;
  for (int k = 1; k <= n_max; ++k) {
    cur = apply_map(ms.matrix, cur);
    Scaled h = weil_height_scaled(cur);
    if (!h.is_zero())
      q[k] = std::exp(h.log_value() - ell * std::log(static_cast<double>(k)) - k * logdelta);
  }
  double last = 0.0, prev = 0.0;
  for (int k = n_max - w + 1; k <= n_max; ++k) last = std::max(last, q[k]);
  for (int k = std::max(1, n_max - 2 * w + 1); k <= n_max - w; ++k) prev = std::max(prev, q[k]);
  est.value = last;
  double drift = std::fabs(last - prev);
  // Polynomial-rate tails move slowly; scale the window drift accordingly.
  est.uncertainty = std::max(2.0 * drift * (1.0 + static_cast<double>(n_max) / w),
                             1e-12 * (1.0 + last));
  return est;
}

HeightEstimate forward_impl(const MapSpectrum& ms, const TorusPoint& p,
                            const HeightOptions& opts) {
  if (ms.matrix.dim() != p.dim())
    fail(Errc::dimension_mismatch, "matrix and point dimensions differ");
  if (ms.data.delta <= 1.0 + ms.data.delta_radius)
    fail(Errc::degenerate_degree,
         "dynamical degree " + std::to_string(ms.data.delta) + " is not above 1");

  if (!opts.force_iterative) {
    mpz_class lambda;
    if (fibration_hypothesis(ms, &lambda)) {
      // delegate so the caller gets the fibration closed form and its
      // symbolic zero test
      FibrationHeights fh = fibration_height(ms.matrix, p);
      return fh.forward;
    }
    std::vector<PlaceVec> places;
    if (closed_form_places(p, &places)) {
      int n = ms.matrix.dim();
      LimitStructure ls = limit_structure(ms);
      if (ls.periodic) {
        HeightEstimate est;
        est.method = HeightMethod::closed_form_projector;
        est.exact_zero = p.is_root_of_unity();
        est.n_max = 0;
        est.window = 0;
        double best = 0.0;
        for (const auto& lim : ls.limits) best = std::max(best, functional(lim, places, n));
        est.value = best;
        est.uncertainty = ls.exact_limits ? 0.0 : 5e-12 * (1.0 + best);
        est.ell_numeric = !ms.data.ell_exact;
        return est;
      }
      if (ms.data.ell == 0 && ms.data.ell_exact) {
        auto comps = dominant_components(ms);
        if (comps) {
          auto value = component_value(*comps, places, n);
          if (value) {
            HeightEstimate est;
            est.method = HeightMethod::closed_form_projector;
            est.exact_zero = p.is_root_of_unity();
            est.value = *value;
            est.uncertainty = 1e-10 * (1.0 + *value);
            return est;
          }
        }
      }
    }
  }
  return windowed_estimate(ms, p, opts);
}

}  // namespace

CanonicalHeightEngine::CanonicalHeightEngine(const IntMatrix& a)
    : fwd_(analyze_map(a)), bwd_(analyze_map(backward_matrix(a))) {}

HeightEstimate CanonicalHeightEngine::forward(const TorusPoint& p,
                                              const HeightOptions& opts) const {
  return forward_impl(fwd_, p, opts);
}

HeightEstimate CanonicalHeightEngine::backward(const TorusPoint& p,
                                               const HeightOptions& opts) const {
  if (bwd_.data.delta <= 1.0 + bwd_.data.delta_radius)
    fail(Errc::degenerate_degree, "backward dynamical degree is not above 1");
  return forward_impl(bwd_, p, opts);
}

HeightEstimate CanonicalHeightEngine::total(const TorusPoint& p,
                                            const HeightOptions& opts) const {
  HeightEstimate f = forward(p, opts);
  HeightEstimate b = backward(p, opts);
  HeightEstimate t;
  t.value = f.value + b.value;
  t.uncertainty = f.uncertainty + b.uncertainty;
  t.exact_zero = f.exact_zero && b.exact_zero;
  t.ell_numeric = f.ell_numeric || b.ell_numeric;
  if (f.method == HeightMethod::iterative_window || b.method == HeightMethod::iterative_window)
    t.method = HeightMethod::iterative_window;
  else if (f.method == HeightMethod::closed_form_fibration ||
           b.method == HeightMethod::closed_form_fibration)
    t.method = HeightMethod::closed_form_fibration;
  else
    t.method = HeightMethod::closed_form_projector;
  t.n_max = std::max(f.n_max, b.n_max);
  t.window = std::max(f.window, b.window);
  return t;
}

double CanonicalHeightEngine::lambda_max_abs() const { return fwd_.data.delta; }
double CanonicalHeightEngine::lambda_max_radius() const { return fwd_.data.delta_radius; }

double CanonicalHeightEngine::lambda_min_abs() const {
  return std::abs(fwd_.data.eigenvalues.back().value);
}

double CanonicalHeightEngine::lambda_min_radius() const {
  return fwd_.data.eigenvalues.back().radius;
}

mpz_class CanonicalHeightEngine::abs_det() const { return abs(fwd_.determinant); }

HeightEstimate forward_canonical_height(const IntMatrix& a, const TorusPoint& p,
                                        const HeightOptions& opts) {
  return forward_impl(analyze_map(a), p, opts);
}

HeightEstimate backward_canonical_height(const IntMatrix& a, const TorusPoint& p,
                                         const HeightOptions& opts) {
  MapSpectrum bwd = analyze_map(backward_matrix(a));
  if (bwd.data.delta <= 1.0 + bwd.data.delta_radius)
    fail(Errc::degenerate_degree, "backward dynamical degree is not above 1");
  return forward_impl(bwd, p, opts);
}

HeightEstimate total_canonical_height(const IntMatrix& a, const TorusPoint& p,
                                      const HeightOptions& opts) {
  CanonicalHeightEngine engine(a);
  return engine.total(p, opts);
}

bool fibration_hypothesis(const MapSpectrum& ms, mpz_class* lambda) {
  if (ms.factors.size() != 1) return false;
  const IrreducibleFactor& f = ms.factors.front();
  if (f.poly.degree() != 1 || f.poly.coeff(1) != 1) return false;
  if (f.multiplicity != ms.matrix.dim()) return false;
  if (f.largest_block < 2) return false;  // diagonalizable means A = lambda I
  if (lambda) *lambda = -f.poly.coeff(0);
  return true;
}

FibrationHeights fibration_height(const IntMatrix& a, const TorusPoint& p) {
  MapSpectrum ms = analyze_map(a);
  mpz_class lambda;
  if (!fibration_hypothesis(ms, &lambda))
    fail(Errc::hypothesis_not_met,
         "fibration heights need a non-diagonalizable matrix with a single integer eigenvalue");
  if (abs(lambda) < 2) fail(Errc::degenerate_degree, "single eigenvalue of modulus <= 1");
  if (a.dim() != p.dim()) fail(Errc::dimension_mismatch, "matrix and point dimensions differ");

  int ell = ms.factors.front().largest_block - 1;
  IntMatrix nil = a - IntMatrix::identity(a.dim()) * lambda;
  IntMatrix pi = nil.pow(static_cast<unsigned long>(ell));
  TorusPoint base = apply_map(pi, p);

  double hplus = weil_height(base).value;
  double hminus = weil_height(base.inverse()).value;
  double fact = 1.0;
  for (int k = 2; k <= ell; ++k) fact *= k;
  double denom = fact * std::pow(std::fabs(lambda.get_d()), ell);

  FibrationHeights out{{}, {}, lambda, ell, base};
  auto make = [&](double v) {
    HeightEstimate e;
    e.value = v;
    e.method = HeightMethod::closed_form_fibration;
    e.uncertainty = 0.0;
    e.exact_zero = base.is_root_of_unity();
    return e;
  };
  if (lambda > 0) {
    out.forward = make(hplus / denom);
    out.backward = make(hminus / denom);
  } else {
    double v = std::max(hplus, hminus) / denom;
    out.forward = make(v);
    out.backward = make(v);
  }
  return out;
}

double closed_form_orbit_height(const IntMatrix& a, const TorusPoint& p, int n,
                                const HeightOptions& opts) {
  if (n < 0) fail(Errc::invalid_argument, "orbit index must be nonnegative");
  CanonicalHeightEngine engine(a);
  double l1 = engine.lambda_max_abs(), r1 = engine.lambda_max_radius();
  double lN = engine.lambda_min_abs(), rN = engine.lambda_min_radius();
  if (std::fabs(l1 - lN) <= r1 + rN + 1e-12) {
    // closed form is singular; compute the orbit point directly
    TorusPoint q = p;
    for (int k = 0; k < n; ++k) q = apply_map(a, q);
    return engine.total(q, opts).value;
  }
  double h0 = engine.total(p, opts).value;
  double h1 = engine.total(apply_map(a, p), opts).value;
  double l1n = std::pow(l1, n), lNn = std::pow(lN, n);
  return ((l1 * lNn - l1n * lN) * h0 + (l1n - lNn) * h1) / (l1 - lN);
}

}  // namespace monoheight
