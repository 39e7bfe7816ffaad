#pragma once
// Model parameters for real hyperbolic space H^n.

#include <cmath>
#include <stdexcept>

namespace hypkg {

struct ModelParams {
  int n = 3;                  // dimension, >= 2
  double kappa = 1.0;         // spectral shift, > 0
  double kappa_tilde = 2.0;   // weight shift, > rho(n)

  double rho() const { return 0.5 * (n - 1); }

  void validate() const {
    if (n < 2) throw std::invalid_argument("ModelParams: n must be >= 2");
    if (!(kappa > 0.0)) throw std::invalid_argument("ModelParams: kappa must be > 0");
    if (!(kappa_tilde > rho()))
      throw std::invalid_argument("ModelParams: kappa_tilde must exceed rho = (n-1)/2");
  }
};

inline ModelParams make_params(int n, double kappa = 1.0,
                               double kappa_tilde = std::nan("")) {
  ModelParams mp;
  mp.n = n;
  mp.kappa = kappa;
  mp.kappa_tilde = std::isnan(kappa_tilde) ? mp.rho() + 1.0 : kappa_tilde;
  mp.validate();
  return mp;
}

}  // namespace hypkg
