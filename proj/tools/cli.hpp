#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pdregion/plot.hpp"
#include "pdregion/rational.hpp"

namespace pdregion::cli {

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 holds / passive, 1 fails / not passive, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SummaryRow {
  std::string item;
  std::string computed;
  std::string expected;
  bool ok = false;
};

/// Case-study suite on the four reference systems.
std::vector<SummaryRow> case_study_summary();
std::string summary_table(const std::vector<SummaryRow>& rows);

/// Figure data shared by the plot command and the case-study export.
PlotBundle nyquist_plot(const RationalFunction& g, const std::vector<double>& sigmas, const GridSpec& grid);
PlotBundle nichols_plot(const RationalFunction& g, const std::vector<double>& sigmas, const GridSpec& grid);
PlotBundle range_plot(const RationalMatrix& g, const PassivityIndex& sigma, const std::vector<double>& freqs,
                      int boundary_points);
/// Samples of the log grid 10^-3 .. 10^2 in steps of 0.1 decade.
std::vector<double> range_sampling();

}  // namespace pdregion::cli
