#include "pdregion/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pdregion {

namespace {

std::string num(double v, int precision) {
  if (!std::isfinite(v)) return "";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string slice_kind_name(SliceKind k) {
  switch (k) {
    case SliceKind::disk:
      return "disk";
    case SliceKind::disk_complement:
      return "disk_complement";
    case SliceKind::half_plane:
      return "half_plane";
    case SliceKind::whole_plane:
      break;
  }
  return "whole_plane";
}

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 60.0;
constexpr double kTop = 40.0;
constexpr double kPlotW = 700.0;
constexpr double kPlotH = 500.0;
constexpr double kBounded = 1e6;  // regions larger than this do not widen the view

const char* const kPalette[] = {"#d95f02", "#1b9e77", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};

double percentile(std::vector<double> v, double q, bool upper) {
  std::sort(v.begin(), v.end());
  const double idx = q * static_cast<double>(v.size() - 1);
  return v[static_cast<std::size_t>(upper ? std::ceil(idx) : std::floor(idx))];
}

struct View {
  double xmid = 0.0;
  double ymid = 0.0;
  double scale = 1.0;

  double px(double x) const { return std::clamp(kLeft + kPlotW / 2.0 + (x - xmid) * scale, -1e5, 1e5); }
  double py(double y) const { return std::clamp(kTop + kPlotH / 2.0 - (y - ymid) * scale, -1e5, 1e5); }
  double len(double d) const { return std::min(d * scale, 1e6); }
};

View make_view(const PlotBundle& b) {
  std::vector<double> xs{0.0};
  std::vector<double> ys{0.0};
  for (const Curve& c : b.curves) {
    for (const CurvePoint& p : c.points) {
      if (std::isfinite(p.z.real()) && std::isfinite(p.z.imag())) {
        xs.push_back(p.z.real());
        ys.push_back(p.z.imag());
      }
    }
  }
  double xmin = percentile(xs, 0.02, false);
  double xmax = percentile(xs, 0.98, true);
  double ymin = percentile(ys, 0.02, false);
  double ymax = percentile(ys, 0.98, true);
  for (const PDRegion& r : b.regions) {
    if ((r.kind == RegionKind::of_disk || r.kind == RegionKind::of_disk_complement) && r.radius < kBounded) {
      xmin = std::min(xmin, r.center.real() - r.radius);
      xmax = std::max(xmax, r.center.real() + r.radius);
      ymin = std::min(ymin, r.center.imag() - r.radius);
      ymax = std::max(ymax, r.center.imag() + r.radius);
    }
  }
  double dx = xmax - xmin;
  double dy = ymax - ymin;
  if (!(dx > 0.0)) dx = 2.0;
  if (!(dy > 0.0)) dy = 2.0;
  View v;
  v.xmid = (xmin + xmax) / 2.0;
  v.ymid = (ymin + ymax) / 2.0;
  v.scale = std::min(kPlotW / (1.1 * dx), kPlotH / (1.1 * dy));
  return v;
}

}  // namespace

std::string to_csv(const PlotBundle& b, int precision) {
  std::string out = "name,w,re,im,extra\n";
  for (const Curve& c : b.curves) {
    for (const CurvePoint& p : c.points) {
      out += csv_field(c.name) + ',' + num(p.w, precision) + ',' + num(p.z.real(), precision) + ',' +
             num(p.z.imag(), precision) + ',' + csv_field(p.extra) + '\n';
    }
  }
  return out;
}

Json to_json(const PlotBundle& b, int precision) {
  Json curves = Json::array();
  for (const Curve& c : b.curves) {
    Json pts = Json::array();
    for (const CurvePoint& p : c.points) {
      Json row{{"w", number(p.w, precision)}, {"re", number(p.z.real(), precision)}, {"im", number(p.z.imag(), precision)}};
      if (!p.extra.empty()) row["extra"] = p.extra;
      pts.push_back(row);
    }
    curves.push_back({{"name", c.name}, {"points", pts}});
  }
  Json regions = Json::array();
  for (const PDRegion& r : b.regions) regions.push_back(to_json(r, precision));
  Json slices = Json::array();
  for (const RegionSlice& s : b.slices) {
    Json row{{"w", number(s.w, precision)}, {"kind", slice_kind_name(s.kind)}};
    if (s.kind == SliceKind::disk || s.kind == SliceKind::disk_complement) {
      row["center"] = complex_json(s.center, precision);
      row["radius"] = number(s.radius, precision);
    } else if (s.kind == SliceKind::half_plane) {
      row["normal"] = complex_json(s.normal, precision);
    }
    slices.push_back(row);
  }
  Json notes = Json::array();
  for (const Annotation& a : b.annotations) notes.push_back({{"at", complex_json(a.at, precision)}, {"text", a.text}});
  return Json{{"title", b.title},  {"x_label", b.x_label}, {"y_label", b.y_label},   {"curves", curves},
              {"regions", regions}, {"slices", slices},     {"annotations", notes}};
}

std::string to_svg(const PlotBundle& b, int precision) {
  const View v = make_view(b);
  auto f = [precision](double x) { return num(x, precision); };
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<title>" + xml_escape(b.title) + "</title>\n";
  s += "<defs><clipPath id=\"plot\"><rect x=\"" + f(kLeft) + "\" y=\"" + f(kTop) + "\" width=\"" + f(kPlotW) +
       "\" height=\"" + f(kPlotH) + "\"/></clipPath></defs>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + f(kWidth) + "\" height=\"" + f(kHeight) + "\" fill=\"white\"/>\n";
  s += "<g clip-path=\"url(#plot)\">\n";

  const std::string plot_rect = "x=\"" + f(kLeft) + "\" y=\"" + f(kTop) + "\" width=\"" + f(kPlotW) + "\" height=\"" +
                                f(kPlotH) + "\"";
  for (const PDRegion& r : b.regions) {
    switch (r.kind) {
      case RegionKind::of_disk:
        s += "<circle cx=\"" + f(v.px(r.center.real())) + "\" cy=\"" + f(v.py(r.center.imag())) + "\" r=\"" +
             f(v.len(r.radius)) + "\" fill=\"#7b3294\" fill-opacity=\"0.25\" stroke=\"#7b3294\"/>\n";
        break;
      case RegionKind::of_disk_complement:
        s += "<rect " + plot_rect + " fill=\"#7b3294\" fill-opacity=\"0.25\"/>\n";
        s += "<circle cx=\"" + f(v.px(r.center.real())) + "\" cy=\"" + f(v.py(r.center.imag())) + "\" r=\"" +
             f(v.len(r.radius)) + "\" fill=\"white\" stroke=\"#7b3294\"/>\n";
        break;
      case RegionKind::half_plane_re_nonneg:
      case RegionKind::if_half_plane: {
        const double x = std::max(kLeft, v.px(r.kind == RegionKind::if_half_plane ? r.shift : 0.0));
        s += "<rect x=\"" + f(x) + "\" y=\"" + f(kTop) + "\" width=\"" + f(std::max(0.0, kLeft + kPlotW - x)) +
             "\" height=\"" + f(kPlotH) + "\" fill=\"#7b3294\" fill-opacity=\"0.25\"/>\n";
        break;
      }
      case RegionKind::generalized:
        break;
    }
  }
  // At most a dozen slice outlines keep the picture readable.
  const std::size_t stride = std::max<std::size_t>(1, b.slices.size() / 12);
  for (std::size_t i = 0; i < b.slices.size(); i += stride) {
    const RegionSlice& sl = b.slices[i];
    if (sl.kind != SliceKind::disk && sl.kind != SliceKind::disk_complement) continue;
    s += "<circle cx=\"" + f(v.px(sl.center.real())) + "\" cy=\"" + f(v.py(sl.center.imag())) + "\" r=\"" +
         f(v.len(sl.radius)) + "\" fill=\"none\" stroke=\"#7b3294\" stroke-opacity=\"0.5\"" +
         (sl.kind == SliceKind::disk_complement ? " stroke-dasharray=\"4 3\"" : "") + "/>\n";
  }

  s += "<line x1=\"" + f(kLeft) + "\" y1=\"" + f(v.py(0.0)) + "\" x2=\"" + f(kLeft + kPlotW) + "\" y2=\"" +
       f(v.py(0.0)) + "\" stroke=\"#999999\"/>\n";
  s += "<line x1=\"" + f(v.px(0.0)) + "\" y1=\"" + f(kTop) + "\" x2=\"" + f(v.px(0.0)) + "\" y2=\"" +
       f(kTop + kPlotH) + "\" stroke=\"#999999\"/>\n";

  for (std::size_t ci = 0; ci < b.curves.size(); ++ci) {
    const char* color = kPalette[ci % std::size(kPalette)];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
             "\"/>\n";
      }
      pts.clear();
    };
    for (const CurvePoint& p : b.curves[ci].points) {
      if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += f(v.px(p.z.real())) + ',' + f(v.py(p.z.imag()));
    }
    flush();
  }
  for (const Annotation& a : b.annotations) {
    s += "<text x=\"" + f(v.px(a.at.real())) + "\" y=\"" + f(v.py(a.at.imag())) +
         "\" font-size=\"11\" font-family=\"sans-serif\">" + xml_escape(a.text) + "</text>\n";
  }
  s += "</g>\n";
  s += "<rect " + plot_rect + " fill=\"none\" stroke=\"black\"/>\n";

  const double x_lo = v.xmid - kPlotW / 2.0 / v.scale;
  const double x_hi = v.xmid + kPlotW / 2.0 / v.scale;
  const double y_lo = v.ymid - kPlotH / 2.0 / v.scale;
  const double y_hi = v.ymid + kPlotH / 2.0 / v.scale;
  auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    s += "<text x=\"" + f(x) + "\" y=\"" + f(y) + "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"" +
         anchor + "\">" + xml_escape(text) + "</text>\n";
  };
  label(kLeft, kTop + kPlotH + 15.0, num(x_lo, 4), "start");
  label(kLeft + kPlotW, kTop + kPlotH + 15.0, num(x_hi, 4), "end");
  label(kLeft - 4.0, kTop + kPlotH, num(y_lo, 4), "end");
  label(kLeft - 4.0, kTop + 10.0, num(y_hi, 4), "end");
  label(kLeft + kPlotW / 2.0, kHeight - 10.0, b.x_label, "middle");
  label(15.0, kTop + kPlotH / 2.0, b.y_label, "middle");
  label(kWidth / 2.0, 20.0, b.title, "middle");
  for (std::size_t ci = 0; ci < b.curves.size(); ++ci) {
    const double y = kTop + 15.0 + 14.0 * static_cast<double>(ci);
    s += "<text x=\"" + f(kLeft + kPlotW - 8.0) + "\" y=\"" + f(y) + "\" font-size=\"11\" font-family=\"sans-serif\" " +
         "text-anchor=\"end\" fill=\"" + kPalette[ci % std::size(kPalette)] + "\">" + xml_escape(b.curves[ci].name) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render(const PlotBundle& b, PlotFormat fmt, int precision) {
  switch (fmt) {
    case PlotFormat::csv:
      return to_csv(b, precision);
    case PlotFormat::json:
      return to_json(b, precision).dump(2) + "\n";
    case PlotFormat::svg:
      return to_svg(b, precision);
  }
  return {};
}

}  // namespace pdregion
