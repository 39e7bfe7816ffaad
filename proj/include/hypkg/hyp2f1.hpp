#pragma once
// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1 and complex
// parameters: power series on [0, 1), Pfaff transformation z -> z/(z-1)
// for z < 0. This covers the library's use sites (z = -sinh^2 r <= 0).

#include <complex>
#include <stdexcept>

#include "hypkg/gamma.hpp"

namespace hypkg {

struct Hyp2f1Options {
  double tol = 1e-15;     // relative term cutoff
  int max_terms = 10000;  // series cap; exceeded => runtime_error
};

namespace detail {

inline cplx hyp2f1_series(const cplx& a, const cplx& b, const cplx& c, double w,
                          const Hyp2f1Options& opt) {
  cplx sum = 1.0, term = 1.0;
  int small_run = 0;
  for (int k = 0; k < opt.max_terms; ++k) {
    double dk = static_cast<double>(k);
    term *= (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * w;
    sum += term;
    if (std::abs(term) <= opt.tol * std::abs(sum)) {
      if (++small_run >= 2) return sum;
    } else {
      small_run = 0;
    }
  }
  throw std::runtime_error("gauss_2f1: series did not converge within term cap");
}

}  // namespace detail

inline cplx gauss_2f1(const cplx& a, const cplx& b, const cplx& c, double z,
                      const Hyp2f1Options& opt = {}) {
  if (detail::is_nonpositive_integer(c))
    throw std::domain_error("gauss_2f1: c is a nonpositive integer");
  if (!(z < 1.0)) throw std::domain_error("gauss_2f1: requires z < 1");
  if (z == 0.0) return 1.0;
  if (z > 0.0) return detail::hyp2f1_series(a, b, c, z, opt);
  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)); maps z < 0
  // into w in (0,1). The prefactor attaches to the first parameter, so
  // swapping a and b exercises an independent evaluation path.
  double w = z / (z - 1.0);
  cplx pref = std::exp(-a * std::log1p(-z));
  return pref * detail::hyp2f1_series(a, c - b, c, w, opt);
}

inline double gauss_2f1(double a, double b, double c, double z,
                        const Hyp2f1Options& opt = {}) {
  return gauss_2f1(cplx(a), cplx(b), cplx(c), z, opt).real();
}

}  // namespace hypkg
