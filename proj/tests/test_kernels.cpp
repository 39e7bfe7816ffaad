#include <catch2/catch_amalgamated.hpp>

#include "hypkg/kernels.hpp"

using namespace hypkg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double rel_err(const cplx& got, const cplx& want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("cutoff pair is an exact partition of unity", "[cutoff]") {
  CutoffPair cut{1.0};
  for (double lam = 0.0; lam <= 3.0; lam += 0.01)
    CHECK(cut.chi0(lam) + cut.chi_inf(lam) == 1.0);
  CHECK(cut.chi0(0.5) == 1.0);
  CHECK(cut.chi0(2.0) == 0.0);
  CHECK(cut.chi_inf(2.0) == 1.0);
  // even in lambda
  CHECK(cut.chi0(-1.3) == cut.chi0(1.3));
}

TEST_CASE("low-frequency kernel golden values", "[w0]") {
  // mpmath 30-digit oracles, frozen before the implementation
  KernelOptions ko;
  ko.tol = 1e-12;
  ModelParams m3 = make_params(3);
  SigmaSpec s0{};
  CHECK(rel_err(kernel_w0(m3, s0, 0.0, 1.25, ko).value,
                cplx(1.219315465448633861895248)) < 1e-11);
  CHECK(rel_err(kernel_w0(m3, s0, 0.0, 0.0, ko).value,
                cplx(2.357142857142857142857143)) < 1e-12);
  CHECK(rel_err(kernel_w0(m3, s0, 3.0, 0.5, ko).value,
                cplx(-0.07221128830248635596111408, -1.619800220630366212791739)) < 1e-11);
  CHECK(rel_err(kernel_w0(make_params(4), s0, 0.0, 2.0, ko).value,
                cplx(0.0937623776602927999846434)) < 1e-11);
  CHECK(rel_err(kernel_w0(make_params(2), s0, 2.0, 1.5, ko).value,
                cplx(-2.253776269825459744738692, 1.216895994878662461685856)) < 1e-11);
}

TEST_CASE("high-frequency kernel golden values", "[winf]") {
  ModelParams m3 = make_params(3);  // kappa_tilde defaults to 2
  KernelOptions ko;
  ko.tol = 1e-12;

  SECTION("harish-chandra split, contour mode, r >= 1") {
    ko.mode = TailMode::direct;
    cplx v = kernel_winf(m3, SigmaSpec{3.0, 0.0, false}, 2.0, 1.0, ko).value;
    CHECK(rel_err(v, cplx(0.01196752562307867069060965,
                          -0.1232918157843982198383025)) < 1e-12);
  }
  SECTION("tapered mode agrees within its reported error") {
    ko.mode = TailMode::direct;
    KernelSample dir = kernel_winf(m3, SigmaSpec{3.0, 0.0, false}, 2.0, 1.0, ko);
    ko.mode = TailMode::tapered;
    KernelSample tap = kernel_winf(m3, SigmaSpec{3.0, 0.0, false}, 2.0, 1.0, ko);
    CHECK(std::abs(dir.value - tap.value) <= 4.0 * (dir.err + tap.err));
    CHECK(dir.err < 1e-9);
  }
  SECTION("r < 1 integrates the full spherical function (tapered)") {
    ko.mode = TailMode::tapered;
    KernelSample s = kernel_winf(m3, SigmaSpec{1.5, 0.0, false}, 5.0, 0.3, ko);
    cplx gold(-0.02581175116789988359688813, -0.1999249772247561504852046);
    // the extrapolated value must land inside its own error estimate
    CHECK(std::abs(s.value - gold) <= s.err);
    CHECK(rel_err(s.value, gold) < 2e-5);
  }
  SECTION("r = 0 uses the analytic plancherel density") {
    ko.mode = TailMode::direct;
    cplx v = kernel_winf(m3, SigmaSpec{4.0, 0.0, false}, 4.0, 0.0, ko).value;
    CHECK(rel_err(v, cplx(-0.02507321117352739866138189,
                          0.01716905156657259850958096)) < 1e-11);
  }
}

TEST_CASE("analytic family prefactor", "[family]") {
  ModelParams m3 = make_params(3);
  // e^{sigma^2} / Gamma((n+1)/2 - sigma) at sigma = 1.5
  CHECK_THAT(family_prefactor(m3, SigmaSpec{1.5, 0.0, true}).real(),
             WithinRel(5.352881730326239818040064, 1e-13));
  // vanishes at the gamma poles sigma = (n+1)/2, (n+1)/2 + 1, ...
  CHECK(std::abs(family_prefactor(m3, SigmaSpec{2.0, 0.0, true})) == 0.0);
  CHECK(std::abs(family_prefactor(m3, SigmaSpec{3.0, 0.0, true})) == 0.0);
  CHECK(std::abs(kernel_winf(m3, SigmaSpec{2.0, 0.0, true}, 1.0, 1.5).value) == 0.0);
  // prefactor multiplies the kernel linearly (sigma = 2.75 sits between poles)
  KernelOptions ko;
  ko.mode = TailMode::direct;
  cplx bare = kernel_winf(m3, SigmaSpec{2.75, 0.0, false}, 2.0, 1.5, ko).value;
  cplx fam = kernel_winf(m3, SigmaSpec{2.75, 0.0, true}, 2.0, 1.5, ko).value;
  cplx pre = family_prefactor(m3, SigmaSpec{2.75, 0.0, true});
  CHECK(std::abs(pre) > 0.0);
  CHECK(rel_err(fam, pre * bare) < 1e-13);
  // off the pole line the prefactor is finite and nonzero
  cplx pc = family_prefactor(m3, SigmaSpec{cplx(2.0, 1.0), 0.0, true});
  CHECK(std::abs(pc) > 0.0);
}

TEST_CASE("kernel split and reality structure", "[w]") {
  ModelParams m3 = make_params(3);
  SigmaSpec s{3.0, 0.0, false};
  KernelOptions ko;
  ko.mode = TailMode::direct;
  ko.tol = 1e-11;
  KernelSplit ks = kernel_w(m3, s, 2.0, 1.5, ko);
  CHECK(ks.total.value == ks.w0.value + ks.winf.value);
  // w_{-t} = conj(w_t) for real sigma
  KernelSplit kb = kernel_w(m3, s, -2.0, 1.5, ko);
  CHECK(rel_err(kb.w0.value, std::conj(ks.w0.value)) < 1e-10);
  CHECK(rel_err(kb.winf.value, std::conj(ks.winf.value)) < 1e-10);
  CHECK(rel_err(kb.total.value, std::conj(ks.total.value)) < 1e-10);
}

TEST_CASE("low-frequency kernel via the dimension-three closed form", "[w0]") {
  // library path vs a locally assembled amplitude using sin(lr)/(l sinh r)
  ModelParams m3 = make_params(3);
  SigmaSpec s0{};
  KernelOptions ko;
  ko.tol = 1e-10;
  for (double t : {0.5, 2.0})
    for (double r : {0.3, 1.0, 2.5}) {
      cplx lib = kernel_w0(m3, s0, t, r, ko).value;
      CutoffPair cut{m3.kappa};
      auto amp = [&](double lam) -> cplx {
        double c0 = cut.chi0(lam);
        if (c0 == 0.0) return 0.0;
        return c0 * lam * lam * std::sin(lam * r) / (lam * std::sinh(r));
      };
      PhaseSpec ph{m3.kappa, 0.0, t};
      OscOptions oo;
      oo.tol = 1e-10;
      oo.amp_freq = r;
      cplx closed = 2.0 * integrate_compact(amp, 0.0, m3.kappa + 1.0, ph, oo).value;
      INFO("t " << t << " r " << r);
      CHECK(rel_err(lib, closed) < 1e-6);
    }
}

TEST_CASE("low-frequency kernel stays under the ground envelope", "[w0]") {
  // sup over a (t, r) grid of |w0|/phi_0 is finite and stable under refinement
  ModelParams m3 = make_params(3);
  SigmaSpec s0{};
  KernelOptions ko;
  ko.tol = 1e-9;
  auto sup_over = [&](double dt, double dr) {
    double sup = 0.0;
    for (double t = 0.1; t <= 4.0 + 1e-9; t += dt)
      for (double r = 0.0; r <= 6.0 + 1e-9; r += dr)
        sup = std::max(sup,
                       std::abs(kernel_w0(m3, s0, t, r, ko).value) / phi_zero(m3, r));
    return sup;
  };
  double coarse = sup_over(0.78, 1.2);
  double fine = sup_over(0.39, 0.6);
  CHECK(std::isfinite(fine));
  CHECK(fine <= coarse * 1.05);
  // the sup is controlled by the t = 0, r = 0 value of the spectral measure
  CHECK(fine <= 2.357142857142857142857143 * 1.01);
}

TEST_CASE("high-frequency kernel obeys the large-r envelope", "[winf]") {
  // |winf(t=1, r)| <= C r^{-1} e^{-rho r} on r in [3, 8]; measured C ~ 0.31
  ModelParams m3 = make_params(3);
  SigmaSpec s{3.0, 0.0, false};
  KernelOptions ko;
  ko.mode = TailMode::direct;
  ko.tol = 1e-12;
  for (double r = 3.0; r <= 8.0 + 1e-9; r += 0.5) {
    double v = std::abs(kernel_winf(m3, s, 1.0, r, ko).value);
    INFO("r = " << r);
    CHECK(v * r * std::exp(m3.rho() * r) <= 0.5);
  }
}

TEST_CASE("split spectral orders reproduce the single-order slopes", "[winf]") {
  // splitting the total order (n+1)/2 between the two weight factors moves
  // the fitted large-time slope by less than 0.1
  ModelParams m3 = make_params(3);
  KernelOptions ko;
  ko.mode = TailMode::tapered;
  ko.tol = 1e-9;
  std::vector<double> ts{8, 16, 32, 64};
  auto slope_for = [&](const SigmaSpec& s) {
    std::vector<double> vs;
    for (double t : ts) vs.push_back(std::abs(kernel_winf(m3, s, t, 1.0, ko).value));
    return fit_decay(ts, vs).slope;
  };
  double single = slope_for(SigmaSpec{2.0, 0.0, false});
  CHECK_THAT(slope_for(SigmaSpec{1.25, 0.75, false}), WithinAbs(single, 0.1));
  CHECK_THAT(slope_for(SigmaSpec{0.5, 1.5, false}), WithinAbs(single, 0.1));
}

TEST_CASE("kunze-stein factor", "[ks]") {
  ModelParams m3 = make_params(3);
  SECTION("zero kernel gives zero") {
    std::vector<double> rs{0.0, 1.0, 2.0}, ks(3, 0.0);
    CHECK(kunze_stein_rhs(m3, 4.0, rs, ks).value == 0.0);
  }
  SECTION("phi_0 kernel matches a doubled-resolution evaluation") {
    auto value_at = [&](double h) {
      std::vector<double> rs, ks;
      for (double r = 0.0; r <= 40.0 + 1e-9; r += h) {
        rs.push_back(r);
        ks.push_back(phi_zero(m3, r));
      }
      return kunze_stein_rhs(m3, 4.0, rs, ks);
    };
    KsResult base = value_at(0.25);
    KsResult fine = value_at(0.125);
    CHECK(base.value > 0.0);
    CHECK_THAT(fine.value, WithinRel(base.value, 1e-10));
    CHECK(base.tail_bound < 1e-10);
    // frozen measured value
    CHECK_THAT(base.value, WithinRel(3.489432099819328, 1e-12));
  }
  SECTION("input validation") {
    std::vector<double> rs{0.0, 1.0}, ks{1.0, 1.0};
    CHECK_THROWS_AS(kunze_stein_rhs(m3, 2.0, rs, ks), std::invalid_argument);
    std::vector<double> bad{1.0, 0.5};
    CHECK_THROWS_AS(kunze_stein_rhs(m3, 4.0, bad, ks), std::invalid_argument);
  }
}

TEST_CASE("radial propagator", "[propagator]") {
  ModelParams m3 = make_params(3);
  auto fhat = [](double lam) { return std::exp(-lam * lam); };
  auto ghat = [](double lam) { return lam * std::exp(-lam * lam); };
  auto zero = [](double) { return 0.0; };
  std::vector<double> rg{0.4, 1.0, 2.0, 3.0};

  SECTION("t = 0 recovers the exact inverse transform") {
    PropagatorResult p = radial_propagate(m3, fhat, zero, 0.0, rg);
    for (size_t i = 0; i < rg.size(); ++i) {
      double r = rg[i];
      double exact =
          std::sqrt(pi_v) * r * std::exp(-0.25 * r * r) / (4.0 * std::sinh(r));
      CHECK_THAT(p.u[i], WithinRel(exact, 1e-12));
    }
    // with zero ghat the velocity vanishes identically at t = 0
    for (double ut : p.ut) CHECK_THAT(ut, WithinAbs(0.0, 1e-14));
  }
  SECTION("spectral energy is a time invariant") {
    PropagatorResult p0 = radial_propagate(m3, fhat, ghat, 0.0, rg);
    CHECK(p0.energy > 0.0);
    for (double t : {0.7, 3.3, 9.1}) {
      PropagatorResult pt = radial_propagate(m3, fhat, ghat, t, rg);
      CHECK_THAT(pt.energy, WithinRel(p0.energy, 1e-12));
    }
  }
  SECTION("time derivative matches a centered difference") {
    double h = 5e-5;
    PropagatorResult pa = radial_propagate(m3, fhat, ghat, 1.5 - h, rg);
    PropagatorResult pb = radial_propagate(m3, fhat, ghat, 1.5 + h, rg);
    PropagatorResult pc = radial_propagate(m3, fhat, ghat, 1.5, rg);
    for (size_t i = 0; i < rg.size(); ++i)
      CHECK_THAT((pb.u[i] - pa.u[i]) / (2.0 * h), WithinAbs(pc.ut[i], 1e-6));
  }
  SECTION("spectral truncation is converged") {
    PropagatorResult a = radial_propagate(m3, fhat, ghat, 2.0, rg);
    PropagatorResult b = radial_propagate(m3, fhat, ghat, 2.0, rg, 16.0);
    for (size_t i = 0; i < rg.size(); ++i)
      CHECK_THAT(a.u[i], WithinAbs(b.u[i], 1e-12));
  }
}
