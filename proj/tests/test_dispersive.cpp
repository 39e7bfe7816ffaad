#include <catch2/catch_amalgamated.hpp>

#include "hypkg/dispersive.hpp"

using namespace hypkg;
using Catch::Matchers::WithinAbs;

TEST_CASE("large-time dispersive report, n = 3, q = 4", "[dispersive]") {
  ModelParams mp = make_params(3);
  DispersiveReport rep = dispersive_report(mp, 4.0, false);
  REQUIRE(rep.rows.size() == 4);
  CHECK_FALSE(rep.small_time);
  CHECK_FALSE(rep.log_corrected);
  // low-frequency order (n+1)(1/2 - 1/q) = 1
  CHECK_THAT(rep.sigma_low, WithinAbs(1.0, 1e-14));
  // rows decrease in t and the outer piece dies off much faster
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].combined < rep.rows[i - 1].combined);
    CHECK(rep.rows[i].ks_outer < rep.rows[i - 1].ks_outer);
  }
  CHECK(rep.rows.back().ks_outer < 1e-4 * rep.rows.back().ks_inner);
  // no sup-norm piece in the large-time regime
  for (const auto& row : rep.rows) CHECK(row.sup_high == 0.0);
  // inner kunze-stein slope sits in the theorem window (measured -1.63);
  // the combined fit is steeper because the outer piece contaminates the
  // first point (measured -1.92)
  CHECK_THAT(rep.fit_inner.slope, WithinAbs(-1.5, 0.2));
  CHECK(rep.fit_combined.slope < -1.5);
  CHECK(rep.fit_combined.slope > -2.2);
  CHECK_THAT(rep.expected_inner, WithinAbs(-1.5, 1e-14));
}

TEST_CASE("small-time dispersive report, n = 3, q = 4", "[dispersive]") {
  ModelParams mp = make_params(3);
  DispersiveReport rep = dispersive_report(mp, 4.0, true);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.small_time);
  CHECK_FALSE(rep.log_corrected);
  // critical-line order for the high part: Re = (n+1)/2
  CHECK_THAT(rep.sigma_high.real(), WithinAbs(2.0, 1e-14));
  CHECK(rep.sigma_high.imag() != 0.0);
  // values grow as t -> 0, driven by the sup piece; inner part plateaus
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].combined > rep.rows[i - 1].combined);
    CHECK(rep.rows[i].sup_high > 0.0);
  }
  CHECK(std::abs(rep.fit_inner.slope) < 0.15);
  // expected sup rate -(n-1)(1/2 - 1/q) = -0.5; measured -0.73 over this
  // window (cutoff edge term plus the r < 1 path entering the sup)
  CHECK_THAT(rep.expected_sup, WithinAbs(-0.5, 1e-14));
  CHECK(rep.fit_sup.slope < -0.55);
  CHECK(rep.fit_sup.slope > -0.9);
  CHECK(rep.fit_combined.slope < -0.5);
  CHECK(rep.fit_combined.slope > -0.85);
}

TEST_CASE("small-time dispersive report, n = 2 log model", "[dispersive]") {
  ModelParams mp = make_params(2);
  DispersiveReport rep = dispersive_report(mp, 4.0, true);
  CHECK(rep.log_corrected);
  // combined values track C t^{-1/4} (1 - log t)^{1/2} within a factor 3
  CHECK(rep.ratio_spread >= 1.0);
  CHECK(rep.ratio_spread <= 3.0);
}

TEST_CASE("dispersive report validation", "[dispersive]") {
  ModelParams mp = make_params(3);
  CHECK_THROWS_AS(dispersive_report(mp, 2.0, false), std::invalid_argument);
}
