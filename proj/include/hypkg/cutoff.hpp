#pragma once
// C^2 partition of unity on the spectral axis: chi0 + chi_inf == 1, chi0
// supported in |lambda| <= kappa + 1, equal to 1 on |lambda| <= kappa, with
// a quintic smoothstep joint on [kappa, kappa + 1].

#include <cmath>

namespace hypkg {

// 6u^5 - 15u^4 + 10u^3, clamped: C^2 ramp from 0 to 1 on [0, 1]
inline double smoothstep_quintic(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

struct CutoffPair {
  double kappa = 1.0;

  double chi0(double lam) const {
    return 1.0 - smoothstep_quintic(std::abs(lam) - kappa);
  }
  double chi_inf(double lam) const {
    return smoothstep_quintic(std::abs(lam) - kappa);
  }
};

}  // namespace hypkg
