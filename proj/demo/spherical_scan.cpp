// scans the spherical function across evaluation routes and, for n = 3,
// reports the worst deviation from the closed form sin(lambda r)/(lambda sinh r)

#include <cmath>
#include <cstdio>

#include "hypkg/specfun.hpp"

int main() {
  using namespace hypkg;
  ModelParams mp = make_params(3);

  double worst = 0.0, worst_l = 0.0, worst_r = 0.0;
  for (int i = 1; i <= 60; ++i) {
    double lambda = 0.1 + 9.9 * (i - 1) / 59.0;
    for (int j = 1; j <= 60; ++j) {
      double r = 0.05 + 4.95 * (j - 1) / 59.0;
      cplx got = spherical_phi(mp, cplx(lambda), r);
      double want = std::sin(lambda * r) / (lambda * std::sinh(r));
      double err = std::abs(got - want);
      if (err > worst) worst = err, worst_l = lambda, worst_r = r;
    }
  }
  std::printf("n = 3 spherical function vs closed form on [0.1,10] x [0.05,5]\n");
  std::printf("worst |phi - closed| = %.3e at lambda = %.3f, r = %.3f\n", worst,
              worst_l, worst_r);

  std::printf("\nsample profile at lambda = 2 (n = 4):\n");
  ModelParams mp4 = make_params(4);
  std::printf("%8s %22s %22s %12s\n", "r", "re phi", "phi0", "envelope");
  for (double r : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0})
    std::printf("%8.2f %22.15e %22.15e %12.5e\n", r,
                spherical_phi(mp4, cplx(2.0), r).real(), phi_zero(mp4, r),
                phi_envelope(mp4, r));
  return worst < 1e-8 ? 0 : 1;
}
