#pragma once

#include <string>
#include <vector>

#include "pdregion/genpass.hpp"
#include "pdregion/pdcore.hpp"
#include "pdregion/report.hpp"

namespace pdregion {

struct CurvePoint {
  double w = 0.0;
  Complex z;
  std::string extra;
};

struct Curve {
  std::string name;
  std::vector<CurvePoint> points;
};

struct Annotation {
  Complex at;
  std::string text;
};

enum class PlotFormat { csv, json, svg };

/// Plot data in plane coordinates. Generalized regions are carried as
/// per-frequency slices since they have no single geometry.
struct PlotBundle {
  std::string title;
  std::string x_label = "Re";
  std::string y_label = "Im";
  std::vector<Curve> curves;
  std::vector<PDRegion> regions;
  std::vector<RegionSlice> slices;
  std::vector<Annotation> annotations;
};

/// Rows name,w,re,im,extra, one per curve point.
std::string to_csv(const PlotBundle& b, int precision = 6);
Json to_json(const PlotBundle& b, int precision = 6);
/// SVG 1.1 on a fixed 800 x 600 canvas. The view box covers the 2nd to 98th
/// percentile of the finite curve coordinates plus bounded regions, with equal
/// axis scaling; everything is clipped to the plot area.
std::string to_svg(const PlotBundle& b, int precision = 6);
std::string render(const PlotBundle& b, PlotFormat f, int precision = 6);

}  // namespace pdregion
