#pragma once
// Strichartz admissibility, data-regularity exponents, and the critical
// power ladder for the semilinear Klein-Gordon problem on H^n, with a
// brute-force grid oracle for the minimal regularity.
//
// Conventions: exponent points carry (1/p, 1/q). Strict and non-strict
// inequalities are honored literally with tolerance kTol. The n = 2
// admissible set uses the strict triangle; n >= 3 the closed one.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypkg/model.hpp"

namespace hypkg {

inline constexpr double kTol = 1e-9;

struct ExponentPoint {
  double inv_p = 0.0, inv_q = 0.0;
};

struct ExponentCouple {
  double inv_p = 0.0, inv_q = 0.0, inv_p_tilde = 0.0, inv_q_tilde = 0.0;
};

// gamma_0(n) = 1/2 + 1/(n-1) + sqrt((1/2 + 1/(n-1))^2 + 2/(n-1))
inline double strauss_gamma0(int n) {
  if (n < 2) throw std::invalid_argument("strauss_gamma0: n >= 2");
  double a = 0.5 + 1.0 / (n - 1);
  return a + std::sqrt(a * a + 2.0 / (n - 1));
}

// (1/p, 1/q) in (0, 1/2] x (0, 1/2) with 1/p >= ((n-1)/2)(1/2 - 1/q)
// (strict for n = 2), together with the endpoint (0, 1/2).
inline bool is_admissible(int n, const ExponentPoint& pt) {
  if (n < 2) throw std::invalid_argument("is_admissible: n >= 2");
  if (std::abs(pt.inv_p) <= kTol && std::abs(pt.inv_q - 0.5) <= kTol) return true;
  if (!(pt.inv_p > kTol) || !(pt.inv_p <= 0.5 + kTol)) return false;
  if (!(pt.inv_q > kTol) || !(pt.inv_q < 0.5 - kTol)) return false;
  double line = 0.5 * (n - 1) * (0.5 - pt.inv_q);
  if (n == 2) return pt.inv_p > line + kTol;
  return pt.inv_p >= line - kTol;
}

// sigma(p, q) = (n+1)/2 (1/2 - 1/q) + max{0, (n-1)/2 (1/2 - 1/q) - 1/p} on
// the square [0, 1/2] x (0, 1/2) plus the endpoint (0, 1/2).
inline double sigma_pq(int n, const ExponentPoint& pt) {
  bool endpoint = std::abs(pt.inv_p) <= kTol && std::abs(pt.inv_q - 0.5) <= kTol;
  bool in_square = pt.inv_p >= -kTol && pt.inv_p <= 0.5 + kTol &&
                   pt.inv_q > kTol && pt.inv_q < 0.5 - kTol;
  if (!endpoint && !in_square)
    throw std::domain_error("sigma_pq: point outside the exponent square");
  double gap = 0.5 - pt.inv_q;
  return 0.5 * (n + 1) * gap + std::max(0.0, 0.5 * (n - 1) * gap - pt.inv_p);
}

// H^{s1, q1} embeds in H^{s2, q2} iff s1 - s2 >= n/q1 - n/q2 >= 0.
inline bool sobolev_embeds(int n, double s1, double q1, double s2, double q2) {
  if (!(q1 > 0.0) || !(q2 > 0.0))
    throw std::invalid_argument("sobolev_embeds: exponents must be positive");
  double drop = n / q1 - n / q2;
  return drop >= -kTol && (s1 - s2) >= drop - kTol;
}

struct CriticalPowers {
  double gamma0, gamma1, gamma2, gamma_conf, gamma3, gamma4;
};

inline CriticalPowers critical_powers(int n) {
  if (n < 2) throw std::invalid_argument("critical_powers: n >= 2");
  CriticalPowers cp{};
  cp.gamma0 = strauss_gamma0(n);
  cp.gamma1 = 1.0 + 3.0 / n;
  cp.gamma2 = 1.0 + 2.0 / (0.5 * (n - 1) + 2.0 / (n - 1));
  cp.gamma_conf = 1.0 + 4.0 / (n - 1);
  if (n == 2) {
    cp.gamma3 = cp.gamma4 = std::numeric_limits<double>::quiet_NaN();
    return cp;
  }
  if (n <= 5) {
    double b = 0.5 * (6 - n) + 2.0 / (n - 1);
    cp.gamma3 = (0.5 * (n + 6) + 2.0 / (n - 1) + std::sqrt(4.0 * n + b * b)) / n;
    cp.gamma4 = 1.0 + 4.0 / (n - 2);
  } else {
    cp.gamma3 = 1.0 + 2.0 / (0.5 * (n - 1) - 1.0 / (n - 1));
    double c = 0.5 * (n - 3) + 3.0 / (n + 1);
    cp.gamma4 = 0.5 * (n - 1) + 3.0 / (n + 1) -
                std::sqrt(c * c - 4.0 * (n - 1) / (n + 1));
  }
  return cp;
}

inline double sigma1_curve(int n, double g) {
  return 0.25 * (n + 1) -
         ((n + 1.0) * (n + 5.0) / (8.0 * n)) / (g - 0.5 * (n + 1) / n);
}
inline double sigma2_curve(int n, double g) {
  return 0.25 * (n + 1) - 1.0 / (g - 1.0);
}
inline double sigma3_curve(int n, double g) {
  return 0.5 * n - 2.0 / (g - 1.0);
}
// n = 2 small-power curve (3/2)(1/2 - 1/gamma)
inline double sigma1_tilde_2d(double g) { return 0.75 - 1.5 / g; }

struct CurveValues {
  double sigma1, sigma2, sigma3;
};
inline CurveValues regularity_curves(int n, double g) {
  return {sigma1_curve(n, g), sigma2_curve(n, g), sigma3_curve(n, g)};
}

struct ConditionsSmall {
  bool adm = false, adm_tilde = false, b = false, c = false;
  bool d_i = false, d_ii = false, e = false;
  bool all() const { return adm && adm_tilde && b && c && d_i && d_ii && e; }
};

inline ConditionsSmall conditions_small(int n, double g, const ExponentCouple& w) {
  ConditionsSmall cs;
  cs.adm = is_admissible(n, {w.inv_p, w.inv_q});
  cs.adm_tilde = is_admissible(n, {w.inv_p_tilde, w.inv_q_tilde});
  cs.b = w.inv_q + w.inv_q_tilde >= (n - 1.0) / (n + 1.0) - kTol;
  cs.c = std::abs(g * w.inv_p + w.inv_p_tilde - 1.0) <= kTol;
  cs.d_i = g * w.inv_q + w.inv_q_tilde >= 1.0 - kTol;
  cs.d_ii = (2.0 * n / (n - 1.0) * g - (n + 1.0) / (n - 1.0)) * w.inv_q +
                w.inv_q_tilde <=
            (n + 1.0) / (n - 1.0) + kTol;
  cs.e = w.inv_q < 1.0 / g - kTol;  // q > gamma, strict
  return cs;
}

struct ConditionsLarge {
  bool a = false, a_tilde = false, c = false;
  bool d_i = false, d_ii = false, e = false;
  bool all() const { return a && a_tilde && c && d_i && d_ii && e; }
};

inline ConditionsLarge conditions_large(int n, double g, const ExponentCouple& w) {
  ConditionsLarge cl;
  cl.a = w.inv_p <= 0.5 * (n - 1) * (0.5 - w.inv_q) + kTol;
  cl.a_tilde = w.inv_p_tilde <= 0.5 * (n - 1) * (0.5 - w.inv_q_tilde) + kTol;
  cl.c = std::abs(g * w.inv_p + w.inv_p_tilde - 1.0) <= kTol;
  cl.d_i = g * w.inv_q + w.inv_q_tilde >= 1.0 - kTol;
  cl.d_ii = w.inv_p + n * w.inv_q <= 2.0 / (g - 1.0) + kTol;
  cl.e = w.inv_q < 1.0 / g - kTol;
  return cl;
}

// joint-space reductions of the large-power system
inline bool large_first_reduction(int n, const ExponentCouple& w) {
  return w.inv_p + w.inv_p_tilde + 1.0 >=
         n * (1.0 - w.inv_q - w.inv_q_tilde) - kTol;
}
inline bool large_second_reduction(int n, double g, const ExponentCouple& w) {
  return w.inv_p + w.inv_p_tilde + 1.0 >= (g - 1.0) * n * w.inv_q - kTol;
}

struct QPlanePoint {
  double inv_q = 0.0, inv_qt = 0.0;
};

// intersection of the lines (b) and (d.i): the small-power minimizing vertex
inline QPlanePoint vertex_q1(int n, double g) {
  double invq = (2.0 / (n + 1)) / (g - 1.0);
  return {invq, (n - 1.0) / (n + 1.0) - invq};
}

// large-power vertex in the (1/p, 1/q) plane
inline ExponentPoint vertex_p2q2(int n, double g) {
  double invp = (n - 1.0) / (n + 1.0) * (0.5 * n - 2.0 / (g - 1.0));
  double invq = (4.0 / (g - 1.0) - 0.5 * (n - 1.0)) / (n + 1.0);
  return {invp, invq};
}

struct VertexPairQ {
  double inv_q2, inv_qt2, inv_q3, inv_qt3;
};

// large-power vertices in the (1/q, 1/q~) plane
inline VertexPairQ vertices_q2q3(int n, double g) {
  VertexPairQ v{};
  v.inv_q2 = (4.0 / (g - 1.0) - 0.5 * (n - 1.0)) / (n + 1.0);
  v.inv_qt2 = n / (n + 1.0) * g - (4.0 / (n + 1.0)) / (g - 1.0) + 0.5 -
              2.0 / (n - 1.0) - 4.0 / (n + 1.0);
  v.inv_q3 = (4.0 / (n + 1.0)) / (g - 1.0) - 0.5 * (n + 3.0) / (n + 1.0) / g;
  v.inv_qt3 = 1.5 * (n - 1.0) / (n + 1.0) - (4.0 / (n + 1.0)) / (g - 1.0);
  return v;
}

enum class RegularityBranch { near_one, sigma1, sigma2, sigma3 };

inline std::string branch_name(RegularityBranch b) {
  switch (b) {
    case RegularityBranch::near_one: return "near_one";
    case RegularityBranch::sigma1: return "sigma1";
    case RegularityBranch::sigma2: return "sigma2";
    case RegularityBranch::sigma3: return "sigma3";
  }
  return "?";
}

struct RegularityReport {
  int n = 3;
  double gamma = 2.0;
  RegularityBranch branch = RegularityBranch::near_one;
  double sigma_min = 0.0;
  bool infimum_open = false;
  ExponentCouple witness{};
  bool witness_feasible = false;
  double oracle_sigma = std::numeric_limits<double>::quiet_NaN();
  double oracle_gap = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

// feasible point of the small-power system at a pinned 1/q (used for the
// closed small branches); returns feasibility
inline bool complete_small_witness(int n, double g, double invq, double invqt,
                                   ExponentCouple& w) {
  double lo = std::max(1.0 / (2.0 * g), 0.5 * (n - 1) * (0.5 - invq));
  double hi = std::min(0.5, (1.0 - 0.5 * (n - 1) * (0.5 - invqt)) / g);
  if (n == 2) lo = std::max(lo, 0.5 * (0.5 - invq) + 1e-7);  // strict triangle
  if (lo > hi + kTol) return false;
  double invp = 0.5 * (lo + hi);
  w = {invp, invq, 1.0 - g * invp, invqt};
  return conditions_small(n, g, w).all();
}

// scan the (d.ii) edge of the large-power system for an exactly-attaining
// witness; returns feasibility
inline bool find_large_witness(int n, double g, ExponentCouple& w) {
  const int steps = 4000;
  for (int i = 0; i <= steps; ++i) {
    double invq = 0.5 * i / steps;
    if (invq <= 0.0 || invq >= 1.0 / g) continue;  // square, condition (e)
    double invp = 2.0 / (g - 1.0) - n * invq;
    if (invp < 0.0 || invp > 0.5 + kTol) continue;
    invp = std::min(invp, 0.5);
    if (invp > 0.5 * (n - 1) * (0.5 - invq) + kTol) continue;  // (a)
    double invpt = 1.0 - g * invp;
    if (invpt < -kTol || invpt > 0.5 + kTol) continue;
    invpt = std::clamp(invpt, 0.0, 0.5);
    double qt_lo = std::max(1.0 - g * invq, 1e-12);
    double qt_hi = std::min(0.5, 0.5 - 2.0 / (n - 1.0) * invpt);  // (a~)
    if (qt_lo > qt_hi + kTol) continue;
    double invqt = 0.5 * (std::max(qt_lo, 0.0) + qt_hi);
    ExponentCouple cand{invp, invq, invpt, invqt};
    if (conditions_large(n, g, cand).all()) {
      w = cand;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Minimal data regularity for global well-posedness at power gamma: branch,
// value, openness of the infimum, and a condition-satisfying witness couple.
inline RegularityReport min_regularity(int n, double g) {
  if (n < 2) throw std::invalid_argument("min_regularity: n >= 2");
  if (!(g > 1.0)) throw std::invalid_argument("min_regularity: gamma must exceed 1");
  CriticalPowers cp = critical_powers(n);
  RegularityReport rep;
  rep.n = n;
  rep.gamma = g;

  auto near_one_witness = [&](double offset) {
    ExponentCouple w;
    double invpt = std::max(1.0 - 0.5 * g, 0.0);
    // when 1/p~ degenerates to 0 the tilde pair must sit on the isolated
    // admissible endpoint (0, 1/2) exactly
    double invqt = invpt <= kTol ? 0.5 : 0.5 - offset;
    if (g <= 1.0 + 2.0 / n + kTol) {
      w = {0.5, 0.5 - offset, invpt, invqt};
    } else {
      // approach point on the (d.ii) boundary at 1/q~ = 1/2
      double invq = (n + 3.0) / (2.0 * (2.0 * n * g - n - 1.0));
      w = {0.5, invq, invpt, invqt};
    }
    return w;
  };

  if (n == 2) {
    if (g <= 2.0 + kTol) {
      rep.branch = RegularityBranch::near_one;
      rep.sigma_min = 0.0;
      rep.infimum_open = true;
      rep.witness = near_one_witness(1e-4);
    } else if (g <= 3.0 + kTol) {
      rep.branch = RegularityBranch::sigma1;
      rep.sigma_min = sigma1_tilde_2d(g);
      rep.infimum_open = true;  // condition (e) q > gamma binds strictly
      double invq = 1.0 / g - 1e-6;
      double invp = 0.5 * (1.0 / (2.0 * g) + 1.0 / g);
      double qt_lo = std::max({1.0 - g * invq, 1.0 / 3.0 - invq, 1e-6});
      double qt_hi = std::min(0.5 - 1e-6, 3.0 - (4.0 * g - 3.0) * invq);
      rep.witness = {invp, invq, 1.0 - g * invp, 0.5 * (qt_lo + qt_hi)};
      rep.witness_feasible = conditions_small(n, g, rep.witness).all();
    } else if (g < 5.0 - kTol) {
      rep.branch = RegularityBranch::sigma2;
      rep.sigma_min = sigma2_curve(2, g);  // 3/4 - 1/(gamma-1)
      rep.infimum_open = false;
      QPlanePoint v = vertex_q1(2, g);
      rep.witness_feasible =
          detail::complete_small_witness(2, g, v.inv_q, v.inv_qt, rep.witness);
    } else {
      rep.branch = RegularityBranch::sigma3;
      rep.sigma_min = sigma3_curve(2, g);  // 1 - 2/(gamma-1)
      rep.infimum_open = true;             // no closed cap in 2D
      rep.witness_feasible = detail::find_large_witness(2, g, rep.witness);
    }
    if (rep.branch == RegularityBranch::near_one)
      rep.witness_feasible = conditions_small(n, g, rep.witness).all();
    return rep;
  }

  if (g > cp.gamma4 + kTol)
    throw std::invalid_argument("min_regularity: gamma beyond the large-power cap");
  if (g <= cp.gamma1 + kTol) {
    rep.branch = RegularityBranch::near_one;
    rep.sigma_min = 0.0;
    rep.infimum_open = true;
    rep.witness = near_one_witness(1e-4);
    rep.witness_feasible = conditions_small(n, g, rep.witness).all();
  } else if (g <= cp.gamma2 + kTol) {
    rep.branch = RegularityBranch::sigma1;
    rep.sigma_min = sigma1_curve(n, g);
    rep.infimum_open = false;
    double invq = ((n + 5.0) / (4.0 * n)) / (g - 0.5 * (n + 1) / n);
    rep.witness = {1.0 / (2.0 * g), invq, 0.5, 0.5 - 1.0 / (n - 1.0)};
    rep.witness_feasible = conditions_small(n, g, rep.witness).all();
  } else if (g <= cp.gamma_conf + kTol) {
    rep.branch = RegularityBranch::sigma2;
    rep.sigma_min = sigma2_curve(n, g);
    rep.infimum_open = false;
    QPlanePoint v = vertex_q1(n, g);
    rep.witness_feasible =
        detail::complete_small_witness(n, g, v.inv_q, v.inv_qt, rep.witness);
  } else {
    rep.branch = RegularityBranch::sigma3;
    rep.sigma_min = sigma3_curve(n, g);
    rep.witness_feasible = detail::find_large_witness(n, g, rep.witness);
    rep.infimum_open = !rep.witness_feasible;
  }
  return rep;
}

struct OracleResult {
  double sigma = std::numeric_limits<double>::quiet_NaN();
  ExponentCouple witness{};
  bool feasible = false;
  bool from_small_system = false;
};

// Exhaustive midpoint-grid search at resolution h = 1/resolution over both
// condition systems, with 1/p~ eliminated through (c). Deterministic: the
// first minimizer in lexicographic scan order wins.
inline OracleResult oracle_min_sigma(int n, double g, int resolution = 400) {
  if (resolution < 8 || resolution % 2 != 0)
    throw std::invalid_argument("oracle_min_sigma: resolution must be even, >= 8");
  double h = 1.0 / resolution;
  int half = resolution / 2;
  std::vector<double> grid(half);
  for (int i = 0; i < half; ++i) grid[i] = (i + 0.5) * h;
  OracleResult best;

  // small system: sigma = (n+1)/2 (1/2 - 1/q) decreases with 1/q, so walk
  // 1/q downward and stop at the first feasible slice
  for (int iq = half - 1; iq >= 0 && !best.feasible; --iq) {
    double invq = grid[iq];
    if (!(invq < 1.0 / g - kTol)) continue;  // (e)
    for (int ip = half - 1; ip >= 0; --ip) {
      double invp = grid[ip];
      double invpt = 1.0 - g * invp;
      if (invpt < -kTol || invpt > 0.5 + kTol) continue;
      if (!is_admissible(n, {invp, invq})) continue;
      bool found = false;
      for (int it = half - 1; it >= 0; --it) {
        ExponentCouple w{invp, invq, invpt, grid[it]};
        if (conditions_small(n, g, w).all()) {
          best.sigma = sigma_pq(n, {invp, invq});
          best.witness = w;
          best.feasible = true;
          best.from_small_system = true;
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }

  // large system: sigma = n (1/2 - 1/q) - 1/p
  for (int iq = 0; iq < half; ++iq) {
    double invq = grid[iq];
    if (!(invq < 1.0 / g - kTol)) continue;
    for (int ip = 0; ip < half; ++ip) {
      double invp = grid[ip];
      double s = n * (0.5 - invq) - invp;
      if (best.feasible && s >= best.sigma) continue;
      double invpt = 1.0 - g * invp;
      if (invpt < -kTol || invpt > 0.5 + kTol) continue;
      for (int it = half - 1; it >= 0; --it) {
        ExponentCouple w{invp, invq, invpt, grid[it]};
        if (conditions_large(n, g, w).all()) {
          best.sigma = s;
          best.witness = w;
          best.feasible = true;
          best.from_small_system = false;
          break;
        }
      }
    }
  }
  return best;
}

inline RegularityReport min_regularity_with_oracle(int n, double g,
                                                   int resolution = 400) {
  RegularityReport rep = min_regularity(n, g);
  OracleResult orc = oracle_min_sigma(n, g, resolution);
  if (orc.feasible) {
    rep.oracle_sigma = orc.sigma;
    rep.oracle_gap = orc.sigma - rep.sigma_min;
  }
  return rep;
}

}  // namespace hypkg
