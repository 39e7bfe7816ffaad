#pragma once
// Oscillatory integrals with the Klein-Gordon phase
//
//   Phi(lambda) = t sqrt(lambda^2 + kappa^2) - x lambda
//
// on compact windows and on symbol-type tails, plus log-log decay fitting.
//
// Tail integrals support two modes. With taper_eps > 0 the integrand is
// damped by e^{-eps lambda} for a halving sequence of eps and Richardson-
// extrapolated to eps = 0 (order-2 in eps). With taper_eps = 0 the tail is
// evaluated exactly by rotating the contour 45 degrees at `analytic_from`;
// this requires the amplitude to be analytic and symbol-bounded of order
// <= -3/2 on the swept quadrant, and is the precision path.

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypkg/gamma.hpp"
#include "hypkg/quadrature.hpp"

namespace hypkg {

struct PhaseSpec {
  double kappa = 1.0;
  double x = 0.0;
  double t = 0.0;

  double ratio() const {
    if (t == 0.0) throw std::domain_error("PhaseSpec::ratio: t = 0");
    return x / t;
  }
  double phase(double lam) const {
    return t * std::sqrt(lam * lam + kappa * kappa) - x * lam;
  }
  cplx phase(const cplx& lam) const {
    return t * std::sqrt(lam * lam + kappa * kappa) - x * lam;
  }
  double dphase(double lam) const {
    return t * lam / std::sqrt(lam * lam + kappa * kappa) - x;
  }
  double d2phase(double lam) const {
    double s = std::sqrt(lam * lam + kappa * kappa);
    return t * kappa * kappa / (s * s * s);
  }
};

// Unique stationary point of sqrt(lambda^2+kappa^2) - (x/t) lambda,
// defined for |x| < |t|.
inline double stationary_point(double kappa, double x, double t) {
  if (!(std::abs(x) < std::abs(t)))
    throw std::domain_error("stationary_point: requires |x| < |t|");
  double u = x / t;
  return kappa * u / std::sqrt(1.0 - u * u);
}

struct OscResult {
  cplx value;
  double err;
};

struct OscOptions {
  double tol = 1e-10;
  double amp_freq = 0.0;  // extra frequency carried by the amplitude
  int max_refine = 3;
};

// int_lo^hi a(lambda) e^{i Phi(lambda)} dlambda, a smooth on [lo, hi].
// Panels are sized to at most a quarter period of the fastest oscillation;
// the error estimate compares embedded lower-order panels.
template <class Amp>
OscResult integrate_compact(Amp&& a, double lo, double hi, const PhaseSpec& ph,
                            const OscOptions& opt = {}) {
  if (!(hi > lo)) throw std::invalid_argument("integrate_compact: empty interval");
  auto f = [&](double lam) { return cplx(a(lam)) * std::exp(cplx(0.0, ph.phase(lam))); };
  double omega = std::abs(ph.t) + std::abs(ph.x) + opt.amp_freq;
  double width = 0.5 * pi_v / std::max(omega, 1.0);
  int panels = std::max(1, (int)std::ceil((hi - lo) / width));
  const GaussRule& hi_rule = gauss_rule(15);
  const GaussRule& lo_rule = gauss_rule(7);
  cplx best{};
  double err = 0.0;
  for (int pass = 0; pass <= opt.max_refine; ++pass) {
    cplx v15 = integrate_panels(f, lo, hi, panels, hi_rule);
    cplx v7 = integrate_panels(f, lo, hi, panels, lo_rule);
    best = v15;
    err = std::abs(v15 - v7);
    if (err <= opt.tol * std::max(1.0, std::abs(v15))) break;
    panels *= 2;
  }
  return {best, err};
}

struct TailOptions {
  double tol = 1e-10;
  double support_start = 0.0;   // amplitude vanishes below this
  double analytic_from = 0.0;   // amplitude analytic for Re lambda >= this;
                                // 0 means support_start + 2
  double lambda_cap = 2.0e5;    // hard truncation safety for tapered mode
  double amp_freq = 0.0;        // extra frequency carried by the amplitude
};

namespace detail {

// Decide the tapered-mode truncation point: (lam/L)^d e^{-eps(lam-L)} below
// cut relative to the scale at L.
inline double taper_cutoff(double d, double eps, double L, double cut) {
  double lam = L + 1.0;
  for (int i = 0; i < 200; ++i) {
    double v = d * std::log(lam / L) - eps * (lam - L);
    if (v < std::log(cut)) break;
    lam *= 1.25;
  }
  return lam;
}

}  // namespace detail

// int_{support}^infty a(lambda) e^{i Phi(lambda)} dlambda for a symbol-type
// amplitude |a| ~ lambda^order. See the header comment for the two modes.
inline OscResult integrate_symbol_tail(const std::function<cplx(const cplx&)>& a,
                                       double order, const PhaseSpec& ph,
                                       double taper_eps, const TailOptions& opt = {}) {
  double L0 = opt.analytic_from > 0.0 ? opt.analytic_from : opt.support_start + 2.0;
  if (L0 < opt.support_start) throw std::invalid_argument("integrate_symbol_tail: analytic_from below support");
  const GaussRule& hi_rule = gauss_rule(15);
  const GaussRule& lo_rule = gauss_rule(7);
  double omega = std::abs(ph.t) + std::abs(ph.x) + opt.amp_freq;
  double width = 0.5 * pi_v / std::max(omega, 1.0);

  if (taper_eps > 0.0) {
    // four tapers eps, eps/2, eps/4, eps/8 accumulated in one sweep
    const int m = 4;
    double eps[m];
    eps[0] = taper_eps;
    for (int j = 1; j < m; ++j) eps[j] = 0.5 * eps[j - 1];
    double cut = std::min(opt.tol, 1e-12) * 1e-2;
    double lam_max = std::min(opt.lambda_cap,
                              detail::taper_cutoff(order, eps[m - 1], L0, cut));
    auto sweep = [&](int panels, cplx out[m]) {
      for (int j = 0; j < m; ++j) out[j] = 0.0;
      double lo = opt.support_start, hi = lam_max;
      double h = (hi - lo) / panels;
      for (int p = 0; p < panels; ++p) {
        double pa = lo + p * h, mid = pa + 0.5 * h;
        for (size_t i = 0; i < hi_rule.x.size(); ++i) {
          double lam = mid + 0.5 * h * hi_rule.x[i];
          cplx g = a(cplx(lam)) * std::exp(cplx(0.0, ph.phase(lam))) *
                   (0.5 * h * hi_rule.w[i]);
          double e3 = std::exp(-eps[m - 1] * lam);
          double e2 = e3 * e3, e1 = e2 * e2, e0 = e1 * e1;
          out[3] += g * e3;
          out[2] += g * e2;
          out[1] += g * e1;
          out[0] += g * e0;
        }
      }
    };
    int panels = std::max(1, (int)std::ceil((lam_max - opt.support_start) / width));
    cplx s[m], s2[m];
    sweep(panels, s);
    sweep(2 * panels, s2);
    double quad_err = 0.0;
    for (int j = 0; j < m; ++j) quad_err = std::max(quad_err, std::abs(s2[j] - s[j]));
    // Richardson toward eps = 0 on the halving sequence (Neville tableau)
    cplx tab[m];
    for (int j = 0; j < m; ++j) tab[j] = s2[j];
    double extrap_err = 0.0;
    for (int lvl = 1; lvl < m; ++lvl) {
      double f = std::pow(2.0, lvl);  // order-1 steps in eps
      for (int j = 0; j < m - lvl; ++j)
        tab[j] = tab[j + 1] + (tab[j + 1] - tab[j]) / (f - 1.0);
      extrap_err = std::abs(tab[0] - tab[1]);
    }
    return {tab[0], extrap_err + 4.0 * quad_err};
  }

  // direct mode: real-axis panels to L0, then a rotated ray
  if (order > -1.5)
    throw std::invalid_argument(
        "integrate_symbol_tail: direct mode needs symbol order <= -3/2; use a taper");
  auto f = [&](double lam) { return a(cplx(lam)) * std::exp(cplx(0.0, ph.phase(lam))); };
  cplx finite{};
  double finite_err = 0.0;
  if (L0 > opt.support_start + 1e-14) {
    int panels = std::max(1, (int)std::ceil((L0 - opt.support_start) / width));
    cplx v15 = integrate_panels(f, opt.support_start, L0, panels, hi_rule);
    cplx v7 = integrate_panels(f, opt.support_start, L0, panels, lo_rule);
    finite = v15;
    finite_err = std::abs(v15 - v7);
    if (finite_err > opt.tol * std::max(1.0, std::abs(v15))) {
      cplx w15 = integrate_panels(f, opt.support_start, L0, 2 * panels, hi_rule);
      finite_err = std::abs(w15 - v15);
      finite = w15;
    }
  }
  // ray direction: decaying side of e^{i Phi} as lambda -> infinity
  double slope = ph.t - ph.x;  // asymptotic d(Phi)/d(lambda)
  double dir = slope >= 0.0 ? 1.0 : -1.0;
  cplx eith = cplx(std::sqrt(0.5), dir * std::sqrt(0.5));
  double rate = std::abs(slope) * std::sqrt(0.5);
  double s0 = std::min(4.0, 1.0 / std::max(rate, 0.05));
  // s range: decay e^{-rate s} or, if the slope degenerates, the |order|
  // power alone
  double s_needed = rate > 1e-8 ? (45.0 / rate) : L0 * std::pow(1e-14, 1.0 / order);
  double u_max = std::log1p(std::min(s_needed, 1e9) / s0) + 0.5;
  auto g = [&](double u) {
    double eu = std::exp(u);
    cplx lam = cplx(L0) + eith * (s0 * (eu - 1.0));
    return a(lam) * std::exp(cplx(0.0, 1.0) * ph.phase(lam)) * eith * (s0 * eu);
  };
  int upanels = std::max(2, (int)std::ceil(u_max / 0.5));
  cplx t15 = integrate_panels(g, 0.0, u_max, upanels, hi_rule);
  cplx t7 = integrate_panels(g, 0.0, u_max, upanels, lo_rule);
  double tail_err = std::abs(t15 - t7);
  if (tail_err > opt.tol * std::max(1.0, std::abs(finite + t15))) {
    cplx u15 = integrate_panels(g, 0.0, u_max, 2 * upanels, hi_rule);
    tail_err = std::abs(u15 - t15);
    t15 = u15;
  }
  return {finite + t15, finite_err + tail_err};
}

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;   // log-scale intercept
  double stderr_slope = 0.0;
  double rss = 0.0;         // residual sum of squares in log space
  int npts = 0;
};

// Least-squares slope of log|v| against log t. Requires >= 3 points,
// positive times and magnitudes.
inline DecayFit fit_decay(std::span<const double> ts, std::span<const double> vs) {
  size_t m = ts.size();
  if (m != vs.size() || m < 3)
    throw std::invalid_argument("fit_decay: need >= 3 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> X(m), Y(m);
  for (size_t i = 0; i < m; ++i) {
    if (!(ts[i] > 0.0) || !(vs[i] > 0.0))
      throw std::invalid_argument("fit_decay: times and magnitudes must be positive");
    X[i] = std::log(ts[i]);
    Y[i] = std::log(vs[i]);
    sx += X[i]; sy += Y[i]; sxx += X[i] * X[i]; sxy += X[i] * Y[i];
  }
  double dm = static_cast<double>(m);
  double denom = dm * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("fit_decay: degenerate abscissae");
  DecayFit fitres;
  fitres.npts = static_cast<int>(m);
  fitres.slope = (dm * sxy - sx * sy) / denom;
  fitres.intercept = (sy - fitres.slope * sx) / dm;
  for (size_t i = 0; i < m; ++i) {
    double e = Y[i] - fitres.intercept - fitres.slope * X[i];
    fitres.rss += e * e;
  }
  if (m > 2)
    fitres.stderr_slope = std::sqrt(fitres.rss / (dm - 2.0) * dm / denom);
  return fitres;
}

// Same fit after dividing out the small-time logarithmic factor (1 - log t);
// requires t < e so the factor stays positive.
inline DecayFit fit_decay_log_corrected(std::span<const double> ts,
                                        std::span<const double> vs) {
  std::vector<double> adj(vs.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    double f = 1.0 - std::log(ts[i]);
    if (!(f > 0.0))
      throw std::invalid_argument("fit_decay_log_corrected: requires 1 - log t > 0");
    adj[i] = vs[i] / f;
  }
  return fit_decay(ts, adj);
}

}  // namespace hypkg
