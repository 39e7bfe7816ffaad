#pragma once
// Complex log-gamma and friends.
//
// Scheme: Stirling asymptotic series (Bernoulli tail) after an upward shift
// to |z| >= 12, reflection formula for Re z < 1/2. Accuracy ~1e-13 relative
// over the arguments this library uses (imaginary parts up to a few thousand).

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hypkg {

using cplx = std::complex<double>;

inline constexpr double pi_v = 3.14159265358979323846264338327950288;

namespace detail {

// B_{2k} / (2k (2k-1)), k = 1..8
inline constexpr double stirling_coeff[] = {
    1.0 / 12.0,    -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,  -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
};

inline bool is_nonpositive_integer(const cplx& z, double tol = 1e-13) {
  if (z.imag() != 0.0) return false;
  double r = z.real();
  return r < 0.5 && std::abs(r - std::round(r)) <= tol * std::max(1.0, std::abs(r));
}

// log sin(pi z) on a branch continuous in Im z, stable for large |Im z|.
// Only used inside the reflection formula; any branch offset is harmless
// there because downstream consumers exponentiate or take real parts of
// conjugate-symmetric combinations.
inline cplx log_sin_pi(const cplx& z) {
  if (std::abs(z.imag()) < 1.0) return std::log(std::sin(pi_v * z));
  if (z.imag() > 0.0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| < 1
    cplx w = std::exp(cplx(0.0, 2.0 * pi_v) * z);
    return cplx(-0.69314718055994530942, 0.5 * pi_v) - cplx(0.0, pi_v) * z +
           std::log(1.0 - w);
  }
  return std::conj(log_sin_pi(std::conj(z)));
}

inline cplx log_gamma_stirling(const cplx& z) {
  const double half_log_2pi = 0.91893853320467274178;
  cplx res = (z - 0.5) * std::log(z) - z + half_log_2pi;
  cplx zi2 = 1.0 / (z * z), zp = 1.0 / z;
  for (double c : stirling_coeff) {
    res += c * zp;
    zp *= zi2;
  }
  return res;
}

}  // namespace detail

// Principal-branch log Gamma for Re z >= 1/2; for Re z < 1/2 the value is
// obtained by reflection and is exact up to a possible multiple of 2 pi i in
// the imaginary part. Throws on poles.
inline cplx log_gamma(cplx z) {
  if (std::isnan(z.real()) || std::isnan(z.imag()))
    throw std::domain_error("log_gamma: nan argument");
  if (detail::is_nonpositive_integer(z))
    throw std::domain_error("log_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) {
    const double log_pi = 1.14472988584940017414;
    return log_pi - detail::log_sin_pi(z) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (std::abs(z) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return detail::log_gamma_stirling(z) - shift;
}

inline cplx gamma_fn(const cplx& z) { return std::exp(log_gamma(z)); }

// 1/Gamma, entire: returns 0 at the poles of Gamma.
inline cplx reciprocal_gamma(const cplx& z) {
  if (detail::is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

}  // namespace hypkg
