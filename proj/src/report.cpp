#include "pdregion/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace pdregion {

Json number(double v, int digits) {
  if (!std::isfinite(v)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero in output
}

Json complex_json(Complex z, int digits) { return Json::array({number(z.real(), digits), number(z.imag(), digits)}); }

namespace {

Json edge_json(const BandEdge& e, int digits) {
  return Json{{"w", number(e.w, digits)}, {"provenance", to_string(e.provenance)}, {"margin", number(e.margin, digits)}};
}

Json list(const std::vector<double>& v, int digits) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x, digits));
  return a;
}

}  // namespace

Json to_json(const FrequencyBand& band, int digits) {
  Json iv = Json::array();
  for (const BandInterval& i : band.intervals) iv.push_back({{"lo", edge_json(i.lo, digits)}, {"hi", edge_json(i.hi, digits)}});
  return Json{{"intervals", iv},
              {"grid",
               {{"w_min", number(band.grid.w_min, digits)},
                {"w_max", number(band.grid.w_max, digits)},
                {"points_per_decade", band.grid.points_per_decade},
                {"scale", band.grid.scale == GridScale::log ? "log" : "linear"}}},
              {"refined", band.refined},
              {"skipped_poles", list(band.skipped, digits)},
              {"singular_samples", list(band.singular_samples, digits)}};
}

Json to_json(const PassivityReport& rep, int digits) {
  Json res = Json::array();
  for (const AxisResidue& r : rep.axis_pole_residues) {
    res.push_back({{"frequency", number(r.frequency, digits)},
                   {"residue", complex_json(r.residue, digits)},
                   {"simple", r.simple},
                   {"ok", r.ok}});
  }
  Json out{{"verdict", to_string(rep.verdict)},
           {"sigma", number(rep.sigma, digits)},
           {"winding_number", rep.winding_number ? Json(*rep.winding_number) : Json(nullptr)},
           {"unstable_poles", rep.unstable_poles},
           {"containment_violations", list(rep.containment_violations, digits)},
           {"min_containment_margin", number(rep.min_containment_margin, digits)},
           {"min_margin_frequency", number(rep.min_margin_frequency, digits)},
           {"forbidden_point_hit", rep.forbidden_point_hit},
           {"forbidden_point_distance", number(rep.forbidden_point_distance, digits)},
           {"axis_pole_residues", res},
           {"strict_finite_range", rep.strict_finite_range},
           {"tangent_at_infinity", rep.tangent_at_infinity}};
  if (rep.oracle_verdict) {
    out["oracle"] = {{"stable", rep.oracle_verdict->stable},
                     {"min_real_part", number(rep.oracle_verdict->min_real_part, digits)},
                     {"argmin_frequency", number(rep.oracle_verdict->argmin_frequency, digits)}};
  } else {
    out["oracle"] = nullptr;
  }
  out["notes"] = rep.notes;
  return out;
}

Json to_json(const RobustnessResult& r, int digits) {
  return Json{{"d_min", number(r.d_min, digits)},
              {"argmin_frequency", number(r.argmin_frequency, digits)},
              {"tangent_at_infinity", r.tangent_at_infinity},
              {"range", {number(r.w_min, digits), number(r.w_max, digits)}}};
}

Json to_json(const WaterbedResult& r, int digits) {
  return Json{{"lhs", number(r.lhs, digits)},
              {"rhs_quadrature", number(r.rhs_quadrature, digits)},
              {"abs_error", number(r.abs_error, digits)},
              {"a", number(r.a, digits)},
              {"relative_degree", r.relative_degree},
              {"panels", r.panels}};
}

Json to_json(const WaterbedBound& r, int digits) {
  return Json{{"lhs", number(r.lhs, digits)},
              {"bound", number(r.bound, digits)},
              {"printed_bound", number(r.printed_bound, digits)},
              {"satisfied", r.satisfied},
              {"min_varsigma_low", number(r.min_varsigma_low, digits)}};
}

Json to_json(const SisoCheck& c, int digits) {
  return Json{{"holds", c.holds}, {"margin", number(c.margin, digits)}, {"tolerance", number(c.tolerance, digits)}};
}

Json to_json(const MimoExactCheck& c, int digits) {
  Json out{{"holds", c.holds},
           {"lambda_min", number(c.lambda_min_value, digits)},
           {"tolerance", number(c.tolerance, digits)}};
  if (c.pencil) {
    const PencilReport& p = *c.pencil;
    out["pencil"] = {{"forward_min", p.forward_min ? number(*p.forward_min, digits) : Json(nullptr)},
                     {"forward_threshold", 2},
                     {"kernel_dimension", p.kernel_dimension},
                     {"kernel_psd", p.kernel_psd},
                     {"forward_verdict", p.forward_verdict},
                     {"reversed_max", p.reversed_max ? number(*p.reversed_max, digits) : Json(nullptr)},
                     {"reversed_threshold", 0.5}};
  }
  return out;
}

Json to_json(const MimoNecessaryCheck& c, int digits) {
  return Json{{"holds", c.holds},
              {"verdict", to_string(c.verdict)},
              {"worst_point", complex_json(c.worst_point, digits)},
              {"slack", number(c.slack, digits)},
              {"tolerance", number(c.tolerance, digits)}};
}

Json to_json(const IfCheck& c, int digits) {
  return Json{{"holds", c.holds},
              {"lambda_min", number(c.lambda_min_value, digits)},
              {"tolerance", number(c.tolerance, digits)}};
}

Json to_json(const PDRegion& r, int digits) {
  Json out{{"kind", to_string(r.kind)}};
  switch (r.kind) {
    case RegionKind::of_disk:
    case RegionKind::of_disk_complement:
      out["center"] = complex_json(r.center, digits);
      out["radius"] = number(r.radius, digits);
      break;
    case RegionKind::if_half_plane:
      out["shift"] = number(r.shift, digits);
      break;
    default:
      break;
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string to_string(RegionKind k) {
  switch (k) {
    case RegionKind::of_disk:
      return "of_disk";
    case RegionKind::of_disk_complement:
      return "of_disk_complement";
    case RegionKind::half_plane_re_nonneg:
      return "half_plane_re_nonneg";
    case RegionKind::if_half_plane:
      return "if_half_plane";
    case RegionKind::generalized:
      return "generalized";
  }
  return "unknown";
}

}  // namespace pdregion
