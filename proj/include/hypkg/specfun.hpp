#pragma once
// Spherical analysis on H^n: the c-function and Plancherel density, the
// Harish-Chandra expansion coefficients, and the elementary spherical
// function phi_lambda(r) with representation switching:
//
//   r <= 1 (or slow oscillation)   Gauss 2F1 at z = -sinh^2 r
//   r > 1, |lambda| >= 0.25        Harish-Chandra expansion
//   r > 1, |lambda| <  0.25        Euler integral (tanh-sinh), which stays
//                                  stable through the c-function pole at 0

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hypkg/gamma.hpp"
#include "hypkg/hyp2f1.hpp"
#include "hypkg/model.hpp"
#include "hypkg/quadrature.hpp"

namespace hypkg {

inline constexpr int kGammaCoeffCap = 512;

// c(lambda) = Gamma(2 rho)/Gamma(rho) * Gamma(i lambda)/Gamma(i lambda + rho).
// Poles at lambda = 0 and wherever i lambda + rho hits a Gamma pole.
inline cplx c_function(const ModelParams& mp, const cplx& lam) {
  double rho = mp.rho();
  cplx il = cplx(0.0, 1.0) * lam;
  return std::exp(log_gamma(cplx(2.0 * rho)) - log_gamma(cplx(rho)) +
                  log_gamma(il) - log_gamma(il + rho));
}

// 1/c(lambda), written pole-free at lambda = 0 via 1/Gamma(i lambda) =
// i lambda / Gamma(1 + i lambda).
inline cplx c_inverse(const ModelParams& mp, const cplx& lam) {
  double rho = mp.rho();
  cplx il = cplx(0.0, 1.0) * lam;
  return il * std::exp(log_gamma(cplx(rho)) - log_gamma(cplx(2.0 * rho)) +
                       log_gamma(il + rho) - log_gamma(1.0 + il));
}

// |c(lambda)|^{-2} for real lambda; vanishes quadratically at 0.
inline double plancherel_density(const ModelParams& mp, double lam) {
  if (lam == 0.0) return 0.0;
  return std::norm(c_inverse(mp, cplx(lam)));
}

// Analytic continuation of the density off the real axis:
// |c|^{-2}(lambda) = c(lambda)^{-1} c(-lambda)^{-1}.
inline cplx plancherel_analytic(const ModelParams& mp, const cplx& lam) {
  return c_inverse(mp, lam) * c_inverse(mp, -lam);
}

struct CoeffTable {
  std::vector<cplx> coeff;  // Gamma_k, k = 0..K
};

namespace detail {

inline cplx gamma_coeff_denom(int k, const cplx& lam) {
  cplx d = double(k) * (double(k) - cplx(0.0, 1.0) * lam);
  if (std::abs(d) < 1e-12 * k)
    throw std::domain_error("gamma_coeffs: recurrence pole (lambda = -ik)");
  return d;
}

}  // namespace detail

// Recurrence Gamma_0 = 1, Gamma_k = rho(rho-1)/(k(k - i lambda)) *
// sum_{j<k} (k-j) Gamma_j, kept O(K) per step with two running sums.
inline CoeffTable gamma_coeffs(const ModelParams& mp, const cplx& lam, int K) {
  if (K < 0 || K > kGammaCoeffCap)
    throw std::invalid_argument("gamma_coeffs: K out of range");
  double rho = mp.rho();
  double fac = rho * (rho - 1.0);
  CoeffTable tab;
  tab.coeff.reserve(K + 1);
  tab.coeff.push_back(1.0);
  cplx T = 1.0;  // sum of Gamma_j, j <= k-1
  cplx S = 1.0;  // sum_{j<k} (k-j) Gamma_j at the current k
  for (int k = 1; k <= K; ++k) {
    cplx g = (fac == 0.0) ? cplx(0.0) : fac / detail::gamma_coeff_denom(k, lam) * S;
    tab.coeff.push_back(g);
    T += g;
    S += T;
  }
  return tab;
}

struct HcSum {
  cplx sum;           // sum_k Gamma_k e^{-2kr}
  double tail_bound;  // geometric estimate of the dropped tail
  int terms;
};

// Adaptive Harish-Chandra coefficient sum at radius r.
inline HcSum hc_sum(const ModelParams& mp, const cplx& lam, double r,
                    double tol_abs = 1e-14) {
  double rho = mp.rho();
  double fac = rho * (rho - 1.0);
  cplx acc = 1.0;
  if (fac == 0.0) return {acc, 0.0, 1};  // n = 3: series terminates
  double q = std::exp(-2.0 * r);
  double qk = 1.0;
  cplx T = 1.0, S = 1.0;
  int small_run = 0;
  double m = 0.0;
  for (int k = 1; k <= kGammaCoeffCap; ++k) {
    cplx g = fac / detail::gamma_coeff_denom(k, lam) * S;
    qk *= q;
    acc += g * qk;
    T += g;
    S += T;
    m = std::abs(g) * qk;
    if (m <= tol_abs) {
      if (++small_run >= 2) return {acc, m * q / (1.0 - q), k + 1};
    } else {
      small_run = 0;
    }
  }
  return {acc, m * q / (1.0 - q), kGammaCoeffCap + 1};
}

struct HcValue {
  cplx value;
  double err;  // truncation estimate
};

// Phi_lambda(r) = (2 sinh r)^{-rho} e^{i lambda r} sum_k Gamma_k e^{-2kr}.
inline HcValue big_phi(const ModelParams& mp, const cplx& lam, double r,
                       double tol = 1e-14) {
  if (!(r > 0.0)) throw std::domain_error("big_phi: requires r > 0");
  double rho = mp.rho();
  double pref = std::pow(2.0 * std::sinh(r), -rho);
  HcSum hs = hc_sum(mp, lam, r, tol);
  cplx osc = std::exp(cplx(0.0, r) * lam);
  return {pref * osc * hs.sum, pref * std::abs(osc) * hs.tail_bound};
}

// phi via the Harish-Chandra assembly c(lam) Phi_lam + c(-lam) Phi_{-lam};
// for real lambda the two terms are conjugate.
inline HcValue phi_hc(const ModelParams& mp, double lam, double r,
                      double tol = 1e-14) {
  if (lam == 0.0) throw std::domain_error("phi_hc: c-function pole at lambda = 0");
  HcValue p = big_phi(mp, cplx(lam), r, tol);
  cplx c = c_function(mp, cplx(lam));
  return {cplx(2.0 * (c * p.value).real(), 0.0), 2.0 * std::abs(c) * p.err};
}

namespace detail {

// Euler integral for 2F1(a, b; c; z), z <= 0, Re b > 0, Re(c - b) > 0:
// Gamma(c) / (Gamma(b) Gamma(c-b)) int_0^1 t^{b-1} (1-t)^{c-b-1} (1-zt)^{-a} dt.
inline cplx phi_euler(const ModelParams& mp, const cplx& lam, double r) {
  double rho = mp.rho();
  cplx a = 0.5 * rho + cplx(0.0, 0.5) * lam;
  cplx b = 0.5 * rho - cplx(0.0, 0.5) * lam;
  cplx c = 0.5 * mp.n;
  double s2 = std::sinh(r) * std::sinh(r);  // -z
  cplx pref = std::exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b));
  cplx bm1 = b - 1.0, cbm1 = c - b - 1.0;
  auto f = [&](double t, double omt) {
    return std::exp(bm1 * std::log(t) + cbm1 * std::log(omt) -
                    a * std::log1p(s2 * t));
  };
  return pref * tanh_sinh_01(f, 1e-14);
}

inline cplx phi_2f1(const ModelParams& mp, const cplx& lam, double r) {
  double rho = mp.rho();
  cplx a = 0.5 * rho + cplx(0.0, 0.5) * lam;
  cplx b = 0.5 * rho - cplx(0.0, 0.5) * lam;
  double z = -std::sinh(r) * std::sinh(r);
  return gauss_2f1(a, b, cplx(0.5 * mp.n), z);
}

}  // namespace detail

// phi_lambda(r), lambda real or in the strip |Im lambda| < rho.
inline cplx spherical_phi(const ModelParams& mp, const cplx& lam, double r) {
  if (!(r >= 0.0)) throw std::domain_error("spherical_phi: requires r >= 0");
  if (std::abs(lam.imag()) >= mp.rho() && lam.imag() != 0.0)
    throw std::domain_error("spherical_phi: lambda outside |Im| < rho strip");
  if (r == 0.0) return 1.0;
  if (lam.imag() == 0.0) {
    double l = std::abs(lam.real());
    if (r <= 1.0) {
      // the series cancellation grows like e^{lambda r}; switch to the
      // expansion once the product is large
      if (l * r <= 12.0) return detail::phi_2f1(mp, lam, r);
      return phi_hc(mp, lam.real(), r).value;
    }
    if (l >= 0.25) return phi_hc(mp, lam.real(), r).value;
    return detail::phi_euler(mp, lam, r);
  }
  if (r <= 3.0) return detail::phi_2f1(mp, lam, r);
  HcValue p = big_phi(mp, lam, r), q = big_phi(mp, -lam, r);
  return c_function(mp, lam) * p.value + c_function(mp, -lam) * q.value;
}

inline double phi(const ModelParams& mp, double lam, double r) {
  return spherical_phi(mp, cplx(lam), r).real();
}

inline double phi_zero(const ModelParams& mp, double r) {
  return phi(mp, 0.0, r);
}

// Ground envelope shape (1 + r) e^{-rho r}; phi_0 <= C * this with a
// dimension-dependent constant that callers fit over their grid.
inline double phi_envelope(const ModelParams& mp, double r) {
  return (1.0 + r) * std::exp(-mp.rho() * r);
}

}  // namespace hypkg
