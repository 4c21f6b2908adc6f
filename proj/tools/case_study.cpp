#include <cmath>
#include <cstdio>

#include "cli.hpp"
#include "pdregion/bands.hpp"
#include "pdregion/genpass.hpp"
#include "pdregion/margins.hpp"
#include "pdregion/passivity.hpp"
#include "pdregion/tfparse.hpp"

namespace pdregion::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v == 0.0 ? 0.0 : v);
  return buf;
}

// True when the band is one interval from 0 to the end of the scan.
bool covers_scan(const FrequencyBand& b) {
  return b.intervals.size() == 1 && b.intervals[0].lo.w == 0.0 &&
         b.intervals[0].hi.provenance == EdgeProvenance::scan_limit;
}

}  // namespace

std::vector<SummaryRow> case_study_summary() {
  const RationalFunction g1 = parse_expression("1/(0.1*s+0.5)");
  const RationalFunction g2 = parse_expression("1/(s*(0.3*s+0.5))");
  const RationalFunction g3 = parse_expression("1/((0.02*s+1)*(0.3*s+0.5))");
  const RationalFunction gc = parse_expression("0.1/(0.02*s+1)");
  const RationalMatrix g4({{g3, gc}, {gc, g1}});
  const GridSpec grid;
  std::vector<SummaryRow> rows;

  const double sigmas[] = {-0.5, -0.2, 0.0, 0.2, 0.5};
  const char* expected[] = {"13.1826", "10.9648", "9.3325", "7.0795", "0.0000"};
  for (int i = 0; i < 5; ++i) {
    const FrequencyBand band = pd_band(RationalMatrix(g3), PassivityIndex(sigmas[i]), grid, BandMode::siso_exact);
    const double c = critical_grid_frequency(g3, sigmas[i], band, 0.01);
    const std::string got = fmt("%.4f", c);
    rows.push_back({"G3 critical grid frequency, sigma=" + fmt("%g", sigmas[i]), got, expected[i], got == expected[i]});
  }

  {
    const FrequencyBand band = pd_band(RationalMatrix(g3), PassivityIndex(1.0 / 3.0), grid, BandMode::siso_exact);
    const double edge = band.empty() ? 0.0 : band.intervals.front().hi.w;
    rows.push_back({"G3 band edge, sigma=1/3", fmt("%.5f", edge), "5.27046", std::abs(edge - 5.27046) <= 1e-5});
    const std::string gp = fmt("%.4f", first_failing_grid_point(g3, 1.0 / 3.0, 0.01));
    rows.push_back({"G3 first failing grid point, sigma=1/3", gp, "5.3703", gp == "5.3703"});
  }

  for (const auto& [s, want] : {std::pair{1.0 / 3.0, PassivityVerdict::passive},
                                std::pair{1.0, PassivityVerdict::not_passive}}) {
    const PassivityReport r = of_passivity_check(g1, s, grid);
    const bool oracle_agrees = r.oracle_verdict && (r.oracle_verdict->stable && r.oracle_verdict->min_real_part >= -1e-9) ==
                                                       (want == PassivityVerdict::passive);
    rows.push_back({"G1 output-feedback verdict, sigma=" + fmt("%.4g", s), to_string(r.verdict), to_string(want),
                    r.verdict == want && oracle_agrees});
  }

  for (double s : {0.0, 0.1, 1.0}) {
    const FrequencyBand band = pd_band(RationalMatrix(g2), PassivityIndex(s), grid, BandMode::siso_exact);
    rows.push_back({"G2 PD band, sigma=" + fmt("%g", s), band.empty() ? "empty" : "nonempty", "empty", band.empty()});
  }
  {
    const std::vector<AxisResidue> res = axis_residues(g2);
    const double r0 = res.empty() ? 0.0 : res.front().residue.real();
    rows.push_back({"G2 residue at s=0", fmt("%.6g", r0), "2", std::abs(r0 - 2.0) <= 1e-9});
  }

  {
    const PassivityIndex third(1.0 / 3.0);
    const bool low = pd_check_mimo_necessary(g4, third, std::pow(10.0, 0.3)).holds;
    const bool high = pd_check_mimo_necessary(g4, third, std::pow(10.0, 0.7)).holds;
    rows.push_back({"G4 numerical range in PD(I/3) at w=10^0.3", low ? "inside" : "outside", "inside", low});
    rows.push_back({"G4 numerical range in PD(I/3) at w=10^0.7", high ? "inside" : "outside", "outside", !high});
    double onset = 0.0;
    for (double w : range_sampling()) {
      if (!pd_check_mimo_necessary(g4, third, w).holds) {
        onset = w;
        break;
      }
    }
    rows.push_back({"G4 first sampled failure", fmt("%.4f", onset), "5.0119", fmt("%.4f", onset) == "5.0119"});
  }

  for (const auto& [s, want] : {std::pair{0.4, PassivityVerdict::passive},
                                std::pair{0.6, PassivityVerdict::not_passive}}) {
    const PassivityReport r = gen_full_passivity(g3, s, ROperator::differentiator(), grid);
    rows.push_back({"G3 differential passivity, sigma=" + fmt("%g", s), to_string(r.verdict), to_string(want),
                    r.verdict == want});
  }
  {
    const PassivityReport r = gen_full_passivity(g2, -1.0, ROperator::differentiator(), grid);
    rows.push_back({"G2 differential passivity, sigma=-1", to_string(r.verdict), "passive",
                    r.verdict == PassivityVerdict::passive});
  }

  {
    bool all = true;
    for (const RationalFunction* g : {&g1, &g2, &g3}) {
      all = all && covers_scan(gen_pd_band(derivative_output_system(*g), 0.1, ROperator::identity(), grid));
    }
    rows.push_back({"G1, G2, G3 derivative-output PD at sigma=0.1", all ? "all hold" : "violation", "all hold", all});
    for (const auto& [s, want] : {std::pair{0.3, true}, std::pair{1.0, false}}) {
      const bool holds = covers_scan(gen_pd_band(derivative_output_system(g2), s, ROperator::identity(), grid));
      rows.push_back({"G2 derivative-output PD, sigma=" + fmt("%g", s), holds ? "holds" : "fails",
                      want ? "holds" : "fails", holds == want});
    }
  }

  for (const auto& [name, g] : {std::pair{"G1", &g1}, std::pair{"G3", &g3}}) {
    const WaterbedResult w = waterbed_identity(*g, 1.0);
    rows.push_back({std::string(name) + " waterbed identity at a=1", fmt("%.6f", w.rhs_quadrature), "0.500000",
                    std::abs(w.lhs - 0.5) <= 1e-9 && w.abs_error <= 1e-6});
  }

  {
    bool inside = true;
    for (double w : grid.samples()) inside = inside && pd_check_siso(g1, 0.1, w).holds;
    rows.push_back({"G1 inside PD(0.1) on the Nichols grid", inside ? "inside" : "outside", "inside", inside});
  }
  return rows;
}

std::string summary_table(const std::vector<SummaryRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-48s %-14s %-14s %s\n", "item", "computed", "expected", "status");
  out += line;
  for (const SummaryRow& r : rows) {
    std::snprintf(line, sizeof line, "%-48s %-14s %-14s %s\n", r.item.c_str(), r.computed.c_str(),
                  r.expected.c_str(), r.ok ? "ok" : "MISMATCH");
    out += line;
  }
  return out;
}

}  // namespace pdregion::cli
