#include <cmath>

#include "doctest.h"
#include "pdregion/bands.hpp"
#include "pdregion/error.hpp"
#include "support.hpp"

using namespace pdregion;

namespace {

// Re D(jw) = d - T M w^2 for G3 = 1/((T s + 1)(M s + d)), so the margin
// (Re D - sigma) / |D|^2 changes sign at sqrt((d - sigma) / (T M)).
double g3_edge(double sigma) { return std::sqrt((0.5 - sigma) / (0.02 * 0.3)); }

GridSpec grid(double w_min, double w_max, int ppd = 100) {
  GridSpec g;
  g.w_min = w_min;
  g.w_max = w_max;
  g.points_per_decade = ppd;
  return g;
}

FrequencyBand siso_band(const RationalFunction& g, double sigma, const GridSpec& scan = {}) {
  return pd_band(RationalMatrix(g), PassivityIndex(sigma), scan, BandMode::siso_exact);
}

RationalMatrix random_mimo(testing::Gen& gen) {
  std::vector<std::vector<RationalFunction>> e(2, std::vector<RationalFunction>(2));
  for (auto& row : e) {
    for (auto& x : row) x = gen.stable_system(3);
  }
  return RationalMatrix(e);
}

}  // namespace

TEST_SUITE("bands") {
  TEST_CASE("G3 band at sigma = 1/3 and the first failing grid point") {
    const FrequencyBand b = siso_band(testing::g3(), 1.0 / 3.0, grid(1e-3, 1e2));
    REQUIRE(b.intervals.size() == 1);
    CHECK(b.intervals[0].lo.w == 0.0);
    CHECK(b.intervals[0].hi.w == doctest::Approx(5.27046).epsilon(1e-6));
    CHECK(b.intervals[0].hi.provenance == EdgeProvenance::refined);
    CHECK(std::abs(b.intervals[0].hi.w - g3_edge(1.0 / 3.0)) <= 1e-6 * g3_edge(1.0 / 3.0));
    CHECK(b.refined);
    CHECK(first_failing_grid_point(testing::g3(), 1.0 / 3.0, 0.01) == doctest::Approx(5.3703).epsilon(1e-5));
  }

  TEST_CASE("reported grid points for the G3 family") {
    CHECK(first_failing_grid_point(testing::g3(), 0.0, 0.01) == doctest::Approx(9.3325).epsilon(1e-5));
    CHECK(first_failing_grid_point(testing::g3(), -0.5, 0.01) == doctest::Approx(13.1826).epsilon(1e-5));
    CHECK(first_failing_grid_point(testing::g3(), 0.2, 0.01) == doctest::Approx(7.0795).epsilon(1e-5));
    // The analytic edge lies in the decade step below the reported point.
    CHECK(g3_edge(0.0) > std::pow(10.0, 0.96));
    CHECK(g3_edge(0.0) < std::pow(10.0, 0.97));
    CHECK_THROWS_AS(first_failing_grid_point(testing::g1(), 0.1, 0.01), DomainError);
  }

  TEST_CASE("degenerate and empty bands") {
    const FrequencyBand point = siso_band(testing::g3(), 0.5);
    REQUIRE(point.intervals.size() == 1);
    CHECK(point.intervals[0].lo.w == 0.0);
    CHECK(point.intervals[0].hi.w == 0.0);
    CHECK(critical_grid_frequency(testing::g3(), 0.5, point, 0.01) == 0.0);

    const FrequencyBand none = siso_band(testing::g2(), 0.0);
    CHECK(none.empty());
    REQUIRE(none.skipped.size() == 1);
    CHECK(none.skipped[0] == 0.0);
  }

  TEST_CASE("scan errors") {
    CHECK_THROWS_AS(siso_band(testing::g3(), 0.0, grid(1.0, 1.0)), DomainError);
    CHECK_THROWS_AS(siso_band(testing::g3(), 0.0, grid(1.0, 10.0, 5)), DomainError);
    const MarginFn always_pole = [](double) -> MarginSample { throw PoleError("pole", 0, 0, 0.0); };
    CHECK_THROWS_AS(scan_band(always_pole, grid(1.0, 10.0), true), DomainError);
    CHECK_THROWS_AS(pd_band(testing::g4(), PassivityIndex(0.1), {}, BandMode::siso_exact), DomainError);
  }

  TEST_CASE("refined edges match the closed form") {
    for (double sigma : {-0.5, -0.2, 0.0, 0.2, 1.0 / 3.0}) {
      const FrequencyBand b = siso_band(testing::g3(), sigma);
      REQUIRE(b.intervals.size() == 1);
      const double want = g3_edge(sigma);
      CHECK(std::abs(b.intervals[0].hi.w - want) <= 1e-6 * want);
    }
  }

  TEST_CASE("contraction") {
    const GridSpec scan;
    ContractionResult c = contraction_check(RationalMatrix(testing::g3()), 0.2, 0.5, scan);
    CHECK(c.contained);
    CHECK_FALSE(c.witness.has_value());
    CHECK(c.band1.intervals[0].hi.w == doctest::Approx(7.0711).epsilon(1e-4));
    CHECK(c.band2.intervals[0].hi.w == 0.0);

    c = contraction_check(RationalMatrix(testing::g3()), -0.5, 0.0, scan);
    CHECK(c.contained);
    CHECK(c.band1.intervals[0].hi.w == doctest::Approx(12.910).epsilon(1e-4));
    CHECK(c.band2.intervals[0].hi.w == doctest::Approx(9.129).epsilon(1e-4));

    CHECK_THROWS_AS(contraction_check(RationalMatrix(testing::g3()), 0.3, 0.3, scan), DomainError);
    CHECK_THROWS_AS(contraction_check(RationalMatrix(testing::g3()), 0.5, 0.2, scan), DomainError);

    const PassivityIndex third(1.0 / 3.0), half(0.5);
    c = contraction_check(testing::g4(), third, half, scan);
    CHECK(c.contained);
  }

  TEST_CASE("band membership") {
    const FrequencyBand b = siso_band(testing::g3(), 0.0);
    CHECK(b.contains(0.0));
    CHECK(b.contains(9.0));
    CHECK(b.contains(b.intervals[0].hi.w));
    CHECK(b.contains(g3_edge(0.0) * (1.0 - 1e-7)));
    CHECK_FALSE(b.contains(9.2));
  }

  TEST_CASE("exact band samples lie inside the estimated band") {
    testing::Gen gen(51);
    const GridSpec scan = grid(1e-2, 1e2, 20);
    int exact_holding = 0;
    for (int i = 0; i < 30; ++i) {
      const RationalMatrix g = random_mimo(gen);
      const RealMatrix x = gen.symmetric(2, -1.0, 1.0);
      const PassivityIndex sigma(RealMatrix(gen.uniform(0.01, 0.3) * (x * x.transpose() + 0.1 * RealMatrix::Identity(2, 2))));
      const MarginFn exact = band_margin(g, sigma, BandMode::mimo_exact);
      const MarginFn estimated = band_margin(g, sigma, BandMode::mimo_estimated);
      std::vector<double> ws = scan.samples();
      ws.insert(ws.begin(), 0.0);
      for (double w : ws) {
        MarginSample e;
        try {
          e = exact(w);
        } catch (const Error&) {
          continue;
        }
        if (!e.holds) continue;
        ++exact_holding;
        CHECK(estimated(w).holds);
      }
      const FrequencyBand be = pd_band(g, sigma, scan, BandMode::mimo_exact);
      const FrequencyBand bn = pd_band(g, sigma, scan, BandMode::mimo_estimated);
      for (const BandInterval& iv : be.intervals) {
        // The estimated band is never refined, so only grid-valued edges are comparable.
        if (iv.lo.provenance != EdgeProvenance::refined) CHECK(bn.contains(iv.lo.w));
        if (iv.hi.provenance != EdgeProvenance::refined) CHECK(bn.contains(iv.hi.w));
      }
    }
    CHECK(exact_holding > 100);
  }

  TEST_CASE("raising a scalar index contracts the band") {
    testing::Gen gen(52);
    const GridSpec scan = grid(1e-2, 1e2, 50);
    for (int i = 0; i < 40; ++i) {
      const RationalFunction g = gen.stable_system(4);
      const double s1 = gen.uniform(0.01, 1.0);
      const double s2 = s1 + gen.uniform(0.01, 1.0);
      const ContractionResult c = contraction_check(RationalMatrix(g), s1, s2, scan);
      INFO("witness ", c.witness.value_or(-1.0));
      CHECK(c.contained);
    }
  }

  TEST_CASE("doubling the grid density leaves refined edges in place") {
    testing::Gen gen(53);
    std::vector<std::pair<RationalFunction, double>> cases;
    for (double sigma : {-0.5, 0.0, 0.2, 1.0 / 3.0}) cases.emplace_back(testing::g3(), sigma);
    for (int i = 0; i < 20; ++i) cases.emplace_back(gen.stable_system(3), gen.uniform(-0.5, 0.5));
    for (const auto& [g, sigma] : cases) {
      const FrequencyBand coarse = siso_band(g, sigma, grid(1e-2, 1e2, 50));
      const FrequencyBand fine = siso_band(g, sigma, grid(1e-2, 1e2, 100));
      REQUIRE(coarse.intervals.size() == fine.intervals.size());
      for (std::size_t k = 0; k < coarse.intervals.size(); ++k) {
        const BandEdge& a = coarse.intervals[k].hi;
        const BandEdge& b = fine.intervals[k].hi;
        if (a.provenance != EdgeProvenance::refined || b.provenance != EdgeProvenance::refined) continue;
        CHECK(b.w <= a.w * (1.0 + 1e-6));
        CHECK(std::abs(b.w - a.w) <= 1e-6 * a.w);
      }
    }
  }
}
