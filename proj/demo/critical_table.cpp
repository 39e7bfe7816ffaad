// prints the critical power table and the minimal regularity ladder at a few
// sample powers for each dimension

#include <cstdio>

#include "hypkg/strichartz.hpp"

int main() {
  using namespace hypkg;

  std::printf("critical powers by dimension\n");
  std::printf("%3s %10s %10s %10s %10s %10s %10s\n", "n", "gamma0", "gamma1",
              "gamma2", "gamma_conf", "gamma3", "gamma4");
  for (int n = 2; n <= 8; ++n) {
    CriticalPowers cp = critical_powers(n);
    std::printf("%3d %10.6f %10.6f %10.6f %10.6f %10.6f %10.6f\n", n, cp.gamma0,
                cp.gamma1, cp.gamma2, cp.gamma_conf, cp.gamma3, cp.gamma4);
  }

  std::printf("\nminimal regularity ladder, n = 3\n");
  std::printf("%8s %10s %12s %8s\n", "gamma", "sigma_min", "branch", "open");
  for (double g : {1.5, 2.0, 2.2, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0}) {
    RegularityReport rep = min_regularity(3, g);
    std::printf("%8.3f %10.6f %12s %8s\n", g, rep.sigma_min,
                branch_name(rep.branch).c_str(), rep.infimum_open ? "yes" : "no");
  }
  return 0;
}
