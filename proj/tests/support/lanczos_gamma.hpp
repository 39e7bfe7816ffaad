#pragma once
// Independent gamma implementation (Lanczos g = 7 with reflection) used only
// as a cross-check against the library's Stirling-based log_gamma. Kept
// deliberately separate from the library code paths.

#include <cmath>
#include <complex>

namespace testsupport {

inline std::complex<double> lanczos_gamma(std::complex<double> z) {
  static const double pi = 3.14159265358979323846264338327950288;
  static const double p[9] = {0.99999999999980993,    676.5203681218851,
                              -1259.1392167224028,    771.32342877765313,
                              -176.61502916214059,    12.507343278686905,
                              -0.13857109526572012,   9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  std::complex<double> x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  std::complex<double> t = z + 7.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace testsupport
