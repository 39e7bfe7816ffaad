#pragma once
// Quadrature building blocks: Gauss-Legendre rules (nodes from Newton
// iteration on the Legendre recurrence, computed once per order) and a
// tanh-sinh rule on (0,1) for endpoint-singular integrands.

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hypkg {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

namespace detail {

inline GaussRule make_gauss_rule(int m) {
  GaussRule rule;
  rule.x.resize(m);
  rule.w.resize(m);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double pm = 0, dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pm = p1;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = pm / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[m - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[i] = w;
    rule.w[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.x[m / 2] = 0.0;
  return rule;
}

}  // namespace detail

inline const GaussRule& gauss_rule(int m) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, detail::make_gauss_rule(m)).first;
  return it->second;
}

// Single-panel Gauss-Legendre; result type follows the integrand.
template <class F>
auto integrate_gl(F&& f, double a, double b, const GaussRule& rule) {
  using R = decltype(f(a));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  R acc{};
  for (size_t i = 0; i < rule.x.size(); ++i)
    acc += rule.w[i] * f(mid + half * rule.x[i]);
  return R(acc * half);
}

template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule) {
  using R = decltype(f(a));
  R acc{};
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) acc += integrate_gl(f, a + p * h, a + (p + 1) * h, rule);
  return acc;
}

// tanh-sinh on (0, 1). The integrand receives (t, 1-t) so both endpoints
// can be resolved without cancellation. Doubles the node density until the
// change drops below tol (relative to the accumulated value) or max_level.
template <class F>
auto tanh_sinh_01(F&& f, double tol = 1e-13, int max_level = 10) {
  using R = decltype(f(0.5, 0.5));
  const double pi_half = 1.57079632679489661923;
  auto node = [&](double u, double& t, double& omt, double& w) {
    double s = pi_half * std::sinh(u);
    double c = std::cosh(s);
    w = pi_half * std::cosh(u) / (2.0 * c * c);
    // t = (1 + tanh s)/2 computed stably at both ends
    t = 1.0 / (1.0 + std::exp(-2.0 * s));
    omt = 1.0 / (1.0 + std::exp(2.0 * s));
  };
  // u_max = 5 keeps the worst allowed endpoint singularity (exponent -3/4)
  // below 1e-15; weights underflow harmlessly past it.
  const double u_max = 5.0;
  double h = 1.0;
  double t, omt, w;
  node(0.0, t, omt, w);
  R acc = f(t, omt) * w;
  // level 0: u = +-1, +-2, +-3, +-4; each level halves h adding midpoints
  auto add_points = [&](double step, double start) {
    R s{};
    for (double u = start; u <= u_max + 1e-12; u += step) {
      node(u, t, omt, w);
      if (w > 1e-290) s += f(t, omt) * w;
      node(-u, t, omt, w);
      if (w > 1e-290) s += f(t, omt) * w;
    }
    return s;
  };
  acc += add_points(1.0, 1.0);
  R total = acc * h;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    acc += add_points(2.0 * h, h);
    R next = acc * h;
    double change = std::abs(next - total);
    total = next;
    if (change <= tol * std::max(std::abs(total), 1e-300) && level >= 3) break;
  }
  return total;
}

}  // namespace hypkg
