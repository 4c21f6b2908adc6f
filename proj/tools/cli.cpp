#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pdregion/error.hpp"
#include "pdregion/genpass.hpp"
#include "pdregion/hermitian.hpp"
#include "pdregion/margins.hpp"
#include "pdregion/passivity.hpp"
#include "pdregion/report.hpp"
#include "pdregion/tfparse.hpp"

namespace pdregion::cli {

namespace {

enum class Mode { siso, mimo_exact, mimo_estimated, if_mode, generalized };

struct Options {
  std::string system;
  std::optional<double> sigma;
  std::string sigma_matrix;
  std::string sigma_list;
  std::string freq;
  std::string mode;
  int ppd = 100;
  double w_min = 1e-3;
  double w_max = 1e3;
  bool linear = false;
  bool report_grid_point = false;
  double a = 1.0;
  std::optional<double> w_c;
  std::optional<double> delta;
  std::string r_op = "s";
  int angles = 720;
  int boundary_points = 90;
  std::string kind = "nyquist";
  int precision = 6;
  std::string out;
  std::string format;
  bool reproduce = false;
  std::string figure_dir;
};

struct Outcome {
  std::string text;
  int code = 0;
};

struct LoadedSystem {
  std::string name;
  RationalMatrix g;
};

LoadedSystem load_system(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    const SystemFile f = load_system_file(arg);
    return {f.name, parse_system(f)};
  }
  if (std::filesystem::path(arg).extension() == ".json") throw DomainError("no such system file: '" + arg + "'");
  return {arg, RationalMatrix(parse_expression(arg))};
}

const RationalFunction& scalar_system(const LoadedSystem& s, const char* what) {
  if (!s.g.is_scalar()) throw DomainError(std::string(what) + " needs a single-input single-output system");
  return s.g(0, 0);
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) throw DomainError("not a number: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

PassivityIndex matrix_index(const std::string& arg) {
  std::string text = arg;
  if (text.find('[') == std::string::npos) {
    std::ifstream in(arg);
    if (!in) throw DomainError("cannot open sigma matrix file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("sigma matrix is not valid JSON: ") + e.what());
  }
  if (j.is_number()) return PassivityIndex(j.get<double>());
  if (!j.is_array() || j.empty()) throw DomainError("sigma matrix must be a non-empty array of rows");
  const std::size_t n = j.size();
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw DomainError("sigma matrix must be square");
    for (std::size_t k = 0; k < n; ++k) {
      if (!j[i][k].is_number()) throw DomainError("sigma matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
  }
  return PassivityIndex(m, 1e-12);
}

PassivityIndex single_index(const Options& o) {
  if (!o.sigma_matrix.empty()) return matrix_index(o.sigma_matrix);
  return PassivityIndex(o.sigma.value_or(0.0));
}

std::vector<PassivityIndex> index_list(const Options& o) {
  if (o.sigma_list.empty()) return {single_index(o)};
  std::vector<PassivityIndex> out;
  for (double s : parse_list(o.sigma_list)) out.emplace_back(s);
  return out;
}

double scalar_sigma(const PassivityIndex& s) { return s.scalar(); }

Json sigma_json(const PassivityIndex& s, int digits) {
  if (s.is_scalar()) return number(s.scalar(), digits);
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < s.matrix().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < s.matrix().cols(); ++k) row.push_back(number(s.matrix()(i, k), digits));
    rows.push_back(row);
  }
  return rows;
}

Mode parse_mode(const std::string& m, const RationalMatrix& g) {
  if (m.empty()) return g.is_scalar() ? Mode::siso : Mode::mimo_exact;
  if (m == "siso") return Mode::siso;
  if (m == "mimo-exact") return Mode::mimo_exact;
  if (m == "mimo-estimated") return Mode::mimo_estimated;
  if (m == "if") return Mode::if_mode;
  return Mode::generalized;
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::siso:
      return "siso";
    case Mode::mimo_exact:
      return "mimo-exact";
    case Mode::mimo_estimated:
      return "mimo-estimated";
    case Mode::if_mode:
      return "if";
    case Mode::generalized:
      return "generalized";
  }
  return "?";
}

BandMode band_mode(Mode m) {
  switch (m) {
    case Mode::siso:
      return BandMode::siso_exact;
    case Mode::mimo_exact:
      return BandMode::mimo_exact;
    case Mode::mimo_estimated:
      return BandMode::mimo_estimated;
    default:
      return BandMode::if_mode;
  }
}

ROperator parse_operator(const std::string& r) {
  if (r == "1" || r == "identity") return ROperator::identity();
  if (r == "s" || r == "differentiator") return ROperator::differentiator();
  return ROperator::custom(parse_expression(r));
}

GridSpec grid_of(const Options& o) {
  GridSpec g;
  g.w_min = o.w_min;
  g.w_max = o.w_max;
  g.points_per_decade = o.ppd;
  g.scale = o.linear ? GridScale::linear : GridScale::log;
  g.validate();
  return g;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v == 0.0 ? 0.0 : v);
  return buf;
}

std::string general(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v == 0.0 ? 0.0 : v);
  return buf;
}

std::string band_text(const FrequencyBand& b, int precision) {
  if (b.empty()) return "{}";
  std::string out;
  for (const BandInterval& i : b.intervals) {
    if (!out.empty()) out += " U ";
    if (i.lo.w == i.hi.w) {
      out += "{" + general(i.lo.w, precision) + "}";
    } else {
      out += "[" + general(i.lo.w, precision) + ", " + general(i.hi.w, precision) + "]";
    }
  }
  return out;
}

// ---------------------------------------------------------------- commands

Outcome cmd_check(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  if (o.freq.empty()) throw DomainError("check needs --freq");
  const double w = parse_number(o.freq);
  const PassivityIndex sigma = single_index(o);
  const Mode mode = parse_mode(o.mode, sys.g);
  const int d = o.precision;
  Json rep{{"command", "check"}, {"system", sys.name}, {"mode", mode_name(mode)}, {"w", number(w, d)},
           {"sigma", sigma_json(sigma, d)}};
  bool holds = false;
  switch (mode) {
    case Mode::siso: {
      const RationalFunction& g = scalar_system(sys, "siso mode");
      const double s = scalar_sigma(sigma);
      rep["region"] = to_json(pd_region(sigma, FeedbackMode::output_feedback), d);
      rep["value"] = complex_json(g.freq(w), d);
      try {
        const SisoCheck c = pd_check_siso(g, s, w);
        rep["result"] = to_json(c, d);
        holds = c.holds;
      } catch (const SingularFeedbackError&) {
        rep["result"] = {{"holds", true}, {"margin", 0.0}, {"singular_loop", true}};
        holds = true;
      }
      break;
    }
    case Mode::mimo_exact: {
      const MimoExactCheck c = pd_check_mimo_exact(sys.g, sigma, w);
      rep["result"] = to_json(c, d);
      holds = c.holds;
      break;
    }
    case Mode::mimo_estimated: {
      rep["region"] = to_json(pd_region(sigma, FeedbackMode::output_feedback), d);
      const MimoNecessaryCheck c = pd_check_mimo_necessary(sys.g, sigma, w, o.angles);
      rep["result"] = to_json(c, d);
      rep["numerical_radius"] = number(numerical_radius(sys.g.freq(w)), d);
      holds = c.holds;
      break;
    }
    case Mode::if_mode: {
      rep["region"] = to_json(pd_region(sigma, FeedbackMode::input_feedforward), d);
      const IfCheck c = pd_check_if(sys.g, sigma, w);
      rep["result"] = to_json(c, d);
      holds = c.holds;
      break;
    }
    case Mode::generalized: {
      const RationalFunction& g = scalar_system(sys, "generalized mode");
      const ROperator r = parse_operator(o.r_op);
      rep["operator"] = to_text(r.R);
      const GeneralizedPDSample smp = gen_pd_sample(g, scalar_sigma(sigma), r, w);
      rep["result"] = {{"holds", smp.holds}, {"margin", number(smp.margin, d)}};
      rep["slice"] = describe(region_slice(scalar_sigma(sigma), r.R.freq(w), w), d);
      holds = smp.holds;
      break;
    }
  }
  rep["holds"] = holds;
  return {dump(rep), holds ? 0 : 1};
}

Outcome cmd_band(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  const GridSpec grid = grid_of(o);
  const Mode mode = parse_mode(o.mode, sys.g);
  const int d = o.precision;
  Json bands = Json::array();
  std::string table = "sigma        band                                 grid_point\n";
  bool all_nonempty = true;
  for (const PassivityIndex& sigma : index_list(o)) {
    FrequencyBand band;
    if (mode == Mode::generalized) {
      band = gen_pd_band(scalar_system(sys, "generalized mode"), scalar_sigma(sigma), parse_operator(o.r_op), grid);
    } else {
      band = pd_band(sys.g, sigma, grid, band_mode(mode));
    }
    all_nonempty = all_nonempty && !band.empty();
    Json entry{{"sigma", sigma_json(sigma, d)}, {"band", to_json(band, d)}, {"nonempty", !band.empty()}};
    std::string grid_point = "-";
    if (o.report_grid_point) {
      const RationalFunction& g = scalar_system(sys, "--report-grid-point");
      try {
        const double c = critical_grid_frequency(g, scalar_sigma(sigma), band, 1.0 / grid.points_per_decade);
        entry["critical_grid_point"] = number(c, d);
        grid_point = fixed(c, 4);
      } catch (const DomainError&) {
        entry["critical_grid_point"] = nullptr;
        grid_point = "none";
      }
    }
    bands.push_back(entry);
    char line[256];
    const std::string s_text = sigma.is_scalar() ? general(sigma.scalar(), d) : "matrix";
    std::snprintf(line, sizeof line, "%-12s %-36s %s\n", s_text.c_str(), band_text(band, d).c_str(),
                  grid_point.c_str());
    table += line;
  }
  const int code = all_nonempty ? 0 : 1;
  if (o.format == "table") return {table, code};
  Json rep{{"command", "band"}, {"system", sys.name}, {"mode", mode_name(mode)}, {"bands", bands}};
  return {dump(rep), code};
}

Outcome cmd_passivize(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  const RationalFunction& g = scalar_system(sys, "passivize");
  const double sigma = scalar_sigma(single_index(o));
  const GridSpec grid = grid_of(o);
  const Mode mode = parse_mode(o.mode, sys.g);
  const PassivityReport rep = mode == Mode::generalized ? gen_full_passivity(g, sigma, parse_operator(o.r_op), grid)
                                                        : of_passivity_check(g, sigma, grid);
  Json out{{"command", "passivize"},
           {"system", sys.name},
           {"mode", mode == Mode::generalized ? "generalized" : "output-feedback"},
           {"report", to_json(rep, o.precision)}};
  return {dump(out), rep.verdict == PassivityVerdict::passive ? 0 : 1};
}

Outcome cmd_robust(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  const RationalFunction& g = scalar_system(sys, "robust");
  const double sigma = scalar_sigma(single_index(o));
  const RobustnessResult r = robustness_distance(g, sigma, grid_of(o));
  Json out{{"command", "robust"}, {"system", sys.name}, {"sigma", number(sigma, o.precision)},
           {"result", to_json(r, o.precision)}};
  bool ok = r.d_min > 0.0;
  if (o.delta) {
    const bool admissible = *o.delta < r.d_min;
    out["delta"] = number(*o.delta, o.precision);
    out["delta_admissible"] = admissible;
    ok = ok && admissible;
  }
  return {dump(out), ok ? 0 : 1};
}

Outcome cmd_waterbed(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  const RationalFunction& g = scalar_system(sys, "waterbed");
  const WaterbedResult r = waterbed_identity(g, o.a);
  Json out{{"command", "waterbed"}, {"system", sys.name}, {"identity", to_json(r, o.precision)}};
  bool ok = r.abs_error <= 1e-6;
  if (o.w_c) {
    if (!o.sigma) throw DomainError("the waterbed bound needs --sigma together with --wc");
    const WaterbedBound b = waterbed_bound(g, *o.sigma, *o.w_c, o.a, grid_of(o));
    out["bound"] = to_json(b, o.precision);
    ok = ok && b.satisfied;
  }
  return {dump(out), ok ? 0 : 1};
}

Outcome cmd_range(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  const std::vector<double> freqs = o.freq.empty() ? range_sampling() : parse_list(o.freq);
  const bool with_check = o.sigma || !o.sigma_matrix.empty();
  const PassivityIndex sigma = single_index(o);
  const int d = o.precision;
  if (o.format == "csv" || o.format == "svg") {
    const PlotBundle b = range_plot(sys.g, sigma, freqs, o.boundary_points);
    return {render(b, o.format == "csv" ? PlotFormat::csv : PlotFormat::svg, d), 0};
  }
  Json rows = Json::array();
  bool all_hold = true;
  for (double w : freqs) {
    const ComplexMatrix gw = sys.g.freq(w);
    const NumericalRangeBoundary nr = numerical_range(gw, o.boundary_points);
    Json pts = Json::array();
    for (Complex z : nr.boundary_points) pts.push_back(complex_json(z, d));
    Json row{{"w", number(w, d)}, {"numerical_radius", number(numerical_radius(gw), d)}};
    if (with_check) {
      const MimoNecessaryCheck c = pd_check_range_value(gw, sigma, o.angles);
      row["necessary"] = to_json(c, d);
      all_hold = all_hold && c.holds;
    }
    row["boundary"] = pts;
    rows.push_back(row);
  }
  Json out{{"command", "range"}, {"system", sys.name}, {"samples", rows}};
  if (with_check) {
    out["sigma"] = sigma_json(sigma, d);
    out["region"] = to_json(pd_region(sigma, FeedbackMode::output_feedback), d);
  }
  return {dump(out), all_hold ? 0 : 1};
}

std::vector<double> sigma_scalars(const Options& o) {
  if (!o.sigma_list.empty()) return parse_list(o.sigma_list);
  if (o.sigma) return {*o.sigma};
  return {};
}

PlotBundle band_chart(const LoadedSystem& sys, const Options& o) {
  const GridSpec grid = grid_of(o);
  const Mode mode = parse_mode(o.mode, sys.g);
  PlotBundle b;
  b.title = sys.name + " PD margin";
  b.x_label = "log10 w";
  b.y_label = "margin";
  for (const PassivityIndex& sigma : index_list(o)) {
    const MarginFn fn = band_margin(sys.g, sigma, band_mode(mode));
    Curve c;
    c.name = sigma.is_scalar() ? "margin sigma=" + general(sigma.scalar(), o.precision) : "margin";
    for (double w : grid.samples()) {
      CurvePoint p;
      p.w = w;
      try {
        const MarginSample m = fn(w);
        p.z = Complex(std::log10(w), m.margin);
        p.extra = m.holds ? "holds" : "fails";
      } catch (const Error&) {
        p.z = Complex(std::log10(w), std::numeric_limits<double>::quiet_NaN());
        p.extra = "skipped";
      }
      c.points.push_back(p);
    }
    b.curves.push_back(std::move(c));
  }
  return b;
}

PlotBundle generalized_plot(const RationalFunction& g, const std::string& name, double sigma, const ROperator& r,
                            const GridSpec& grid, bool derivative_output) {
  PlotBundle b;
  b.title = name + (derivative_output ? " derivative-output PD region" : " generalized PD region");
  Curve c;
  c.name = name;
  const RationalFunction sys = derivative_output ? derivative_output_system(g) : g;
  const ROperator op = derivative_output ? ROperator::identity() : r;
  for (double w : grid.samples()) {
    CurvePoint p;
    p.w = w;
    try {
      const GeneralizedPDSample s = gen_pd_sample(sys, sigma, op, w);
      p.z = g.freq(w);
      p.extra = s.holds ? "holds" : "fails";
      b.slices.push_back(derivative_output ? derivative_output_slice(sigma, w) : region_slice(sigma, r.R.freq(w), w));
    } catch (const Error&) {
      p.z = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
      p.extra = "skipped";
    }
    c.points.push_back(p);
  }
  b.curves.push_back(std::move(c));
  return b;
}

PlotFormat plot_format(const std::string& f) {
  if (f == "csv") return PlotFormat::csv;
  if (f == "json") return PlotFormat::json;
  return PlotFormat::svg;
}

Outcome cmd_plot(const Options& o) {
  const LoadedSystem sys = load_system(o.system);
  const GridSpec grid = grid_of(o);
  PlotBundle b;
  if (o.kind == "nyquist") {
    b = nyquist_plot(scalar_system(sys, "a Nyquist plot"), sigma_scalars(o), grid);
  } else if (o.kind == "nichols") {
    b = nichols_plot(scalar_system(sys, "a Nichols plot"), sigma_scalars(o), grid);
  } else if (o.kind == "band") {
    b = band_chart(sys, o);
  } else if (o.kind == "range") {
    b = range_plot(sys.g, single_index(o), o.freq.empty() ? range_sampling() : parse_list(o.freq), o.boundary_points);
  } else {
    const bool deriv = o.kind == "derivative-output";
    b = generalized_plot(scalar_system(sys, "a generalized plot"), sys.name, o.sigma.value_or(0.0),
                         parse_operator(o.r_op), grid, deriv);
  }
  if (b.title.rfind(sys.name, 0) != 0) b.title = sys.name + " " + b.title;
  return {render(b, plot_format(o.format.empty() ? "svg" : o.format), o.precision), 0};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + p.string() + "'");
  f << text;
}

void export_figures(const std::string& dir, int precision) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const RationalFunction g1 = parse_expression("1/(0.1*s+0.5)");
  const RationalFunction g2 = parse_expression("1/(s*(0.3*s+0.5))");
  const RationalFunction g3 = parse_expression("1/((0.02*s+1)*(0.3*s+0.5))");
  const RationalMatrix g4({{g3, parse_expression("0.1/(0.02*s+1)")}, {parse_expression("0.1/(0.02*s+1)"), g1}});
  const GridSpec grid;
  const auto emit = [&](const std::string& stem, const PlotBundle& b) {
    write_file(fs::path(dir) / (stem + ".csv"), to_csv(b, precision));
    write_file(fs::path(dir) / (stem + ".svg"), to_svg(b, precision));
  };
  emit("nyquist_g1", nyquist_plot(g1, {1.0, 1.0 / 3.0}, grid));
  emit("nyquist_g2", nyquist_plot(g2, {1.0 / 3.0}, grid));
  emit("nyquist_g3", nyquist_plot(g3, {1.0 / 3.0}, grid));
  emit("nichols_g1", nichols_plot(g1, {0.1}, grid));
  emit("range_g4", range_plot(g4, PassivityIndex(1.0 / 3.0), range_sampling(), 90));
  emit("differential_g2", generalized_plot(g2, "G2", -1.0, ROperator::differentiator(), grid, false));
  emit("differential_g3", generalized_plot(g3, "G3", 0.4, ROperator::differentiator(), grid, false));
  for (double s : {0.1, 0.5, 1.0}) {
    emit("derivative_output_g3_" + general(s, 2), generalized_plot(g3, "G3", s, ROperator::identity(), grid, true));
  }
}

Outcome cmd_reproduce(const Options& o) {
  const std::vector<SummaryRow> rows = case_study_summary();
  bool ok = true;
  for (const SummaryRow& r : rows) ok = ok && r.ok;
  if (!o.figure_dir.empty()) export_figures(o.figure_dir, o.precision);
  if (o.format == "json") {
    Json arr = Json::array();
    for (const SummaryRow& r : rows) {
      arr.push_back({{"item", r.item}, {"computed", r.computed}, {"expected", r.expected}, {"ok", r.ok}});
    }
    return {dump(Json{{"command", "reproduce"}, {"rows", arr}, {"all_ok", ok}}), ok ? 0 : 1};
  }
  return {summary_table(rows), ok ? 0 : 1};
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const PoleError*>(&e)) return "pole_error";
  if (dynamic_cast<const SingularFeedbackError*>(&e)) return "singular_feedback";
  if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence_error";
  return "error";
}

void add_system(CLI::App* sub, Options& o) {
  sub->add_option("system", o.system, "System JSON file or transfer-function expression in s")->required();
}

void add_sigma(CLI::App* sub, Options& o, bool with_list) {
  sub->add_option("--sigma", o.sigma, "Scalar passivity index");
  sub->add_option("--sigma-matrix", o.sigma_matrix, "Symmetric index as JSON rows, inline or in a file");
  if (with_list) sub->add_option("--sigma-list", o.sigma_list, "Comma-separated scalar indices");
}

void add_grid(CLI::App* sub, Options& o) {
  sub->add_option("--ppd", o.ppd, "Grid points per decade")->check(CLI::Range(10, 100000));
  sub->add_option("--wmin", o.w_min, "Lowest grid frequency (rad/s)");
  sub->add_option("--wmax", o.w_max, "Highest grid frequency (rad/s)");
  sub->add_flag("--linear", o.linear, "Linearly spaced grid");
}

const std::vector<std::string> kModes{"siso", "mimo-exact", "mimo-estimated", "if", "generalized"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Positive-damping regions, frequency bands and passivity checks for LTI systems", "pdregion"};
  app.fallthrough();
  app.add_option("--precision", o.precision, "Significant digits in output")->check(CLI::Range(1, 17));
  app.add_option("--out", o.out, "Write output to this file instead of stdout");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg", "table"}));
  app.add_flag("--reproduce-paper", o.reproduce, "Run the case-study suite and print a summary table");
  app.add_option("--figure-dir", o.figure_dir, "With --reproduce-paper: also write figure data here");

  CLI::App* check = app.add_subcommand("check", "PD condition at one frequency");
  add_system(check, o);
  add_sigma(check, o, false);
  check->add_option("--freq", o.freq, "Frequency w (rad/s)")->required();
  check->add_option("--mode", o.mode, "Check to run")->check(CLI::IsMember(kModes));
  check->add_option("--r", o.r_op, "Multiplier for generalized mode: 1, s or an expression");
  check->add_option("--angles", o.angles, "Directions for the numerical-range search")->check(CLI::Range(8, 1000000));

  CLI::App* band = app.add_subcommand("band", "PD frequency band");
  add_system(band, o);
  add_sigma(band, o, true);
  add_grid(band, o);
  band->add_option("--mode", o.mode, "Check used on the grid")->check(CLI::IsMember(kModes));
  band->add_option("--r", o.r_op, "Multiplier for generalized mode");
  band->add_flag("--report-grid-point", o.report_grid_point, "Also report the first failing grid frequency");

  CLI::App* passivize = app.add_subcommand("passivize", "Full output-feedback passivity verdict");
  add_system(passivize, o);
  add_sigma(passivize, o, false);
  add_grid(passivize, o);
  passivize->add_option("--mode", o.mode, "siso (default) or generalized")->check(CLI::IsMember({"siso", "generalized"}));
  passivize->add_option("--r", o.r_op, "Multiplier for generalized mode (only s is supported)");

  CLI::App* robust = app.add_subcommand("robust", "Distance from the Nyquist locus to the PD disk boundary");
  add_system(robust, o);
  add_sigma(robust, o, false);
  add_grid(robust, o);
  robust->add_option("--delta", o.delta, "Perturbation size to test against the distance");

  CLI::App* waterbed = app.add_subcommand("waterbed", "Poisson conservation identity and damping bound");
  add_system(waterbed, o);
  add_sigma(waterbed, o, false);
  add_grid(waterbed, o);
  waterbed->add_option("--a", o.a, "Evaluation point a > 0");
  waterbed->add_option("--wc", o.w_c, "Band edge for the damping bound");

  CLI::App* range = app.add_subcommand("range", "Numerical range of G(jw) and the necessary PD check");
  add_system(range, o);
  add_sigma(range, o, false);
  range->add_option("--freq", o.freq, "Comma-separated frequencies (default: 10^-3 .. 10^2 in 0.1 decades)");
  range->add_option("--angles", o.angles, "Directions for the containment search")->check(CLI::Range(8, 1000000));
  range->add_option("--boundary-points", o.boundary_points, "Boundary samples per frequency")
      ->check(CLI::Range(8, 100000));

  CLI::App* plot = app.add_subcommand("plot", "Figure data as CSV, JSON or SVG");
  add_system(plot, o);
  add_sigma(plot, o, true);
  add_grid(plot, o);
  plot->add_option("--kind", o.kind, "Figure kind")
      ->check(CLI::IsMember({"nyquist", "nichols", "band", "range", "generalized", "derivative-output"}));
  plot->add_option("--freq", o.freq, "Frequencies for range plots");
  plot->add_option("--mode", o.mode, "Check used for band charts")->check(CLI::IsMember(kModes));
  plot->add_option("--r", o.r_op, "Multiplier for generalized plots");
  plot->add_option("--boundary-points", o.boundary_points, "Boundary samples per frequency")
      ->check(CLI::Range(8, 100000));

  app.require_subcommand(0, 1);

  std::vector<const char*> argv{"pdregion"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome res;
    if (o.reproduce) {
      res = cmd_reproduce(o);
    } else if (check->parsed()) {
      res = cmd_check(o);
    } else if (band->parsed()) {
      res = cmd_band(o);
    } else if (passivize->parsed()) {
      res = cmd_passivize(o);
    } else if (robust->parsed()) {
      res = cmd_robust(o);
    } else if (waterbed->parsed()) {
      res = cmd_waterbed(o);
    } else if (range->parsed()) {
      res = cmd_range(o);
    } else if (plot->parsed()) {
      res = cmd_plot(o);
    } else {
      err << app.help();
      return 2;
    }
    if (o.out.empty()) {
      out << res.text;
    } else {
      write_file(o.out, res.text);
    }
    return res.code;
  } catch (const std::exception& e) {
    Json j{{"error", {{"type", error_type(e)}, {"message", e.what()}}}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) j["error"]["offset"] = pe->offset();
    out << dump(j);
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------- figures

std::vector<double> range_sampling() {
  std::vector<double> out;
  for (int k = -30; k <= 20; ++k) out.push_back(std::pow(10.0, k / 10.0));
  return out;
}

PlotBundle nyquist_plot(const RationalFunction& g, const std::vector<double>& sigmas, const GridSpec& grid) {
  PlotBundle b;
  b.title = "Nyquist";
  Curve pos{"G(jw)", {}};
  Curve neg{"G(-jw)", {}};
  for (double w : grid.samples()) {
    Complex z(std::numeric_limits<double>::quiet_NaN(), 0.0);
    try {
      z = g.freq(w);
    } catch (const PoleError&) {
    }
    pos.points.push_back({w, z, ""});
    neg.points.push_back({-w, std::conj(z), ""});
  }
  b.curves.push_back(std::move(pos));
  b.curves.push_back(std::move(neg));
  for (double s : sigmas) {
    b.regions.push_back(pd_region(PassivityIndex(s), FeedbackMode::output_feedback));
    if (s != 0.0) b.annotations.push_back({Complex(1.0 / s, 0.0), "1/sigma=" + general(1.0 / s, 4)});
  }
  return b;
}

PlotBundle nichols_plot(const RationalFunction& g, const std::vector<double>& sigmas, const GridSpec& grid) {
  PlotBundle b;
  b.title = "Nichols";
  b.x_label = "phase (deg)";
  b.y_label = "gain (dB)";
  Curve c{"G", {}};
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (double w : grid.samples()) {
    try {
      const Complex z = g.freq(w);
      double phase = std::arg(z) * 180.0 / std::numbers::pi;
      if (std::isfinite(prev)) phase -= 360.0 * std::round((phase - prev) / 360.0);  // keep the phase continuous
      prev = phase;
      c.points.push_back({w, Complex(phase, 20.0 * std::log10(std::abs(z))), ""});
    } catch (const PoleError&) {
      c.points.push_back({w, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0), "pole"});
    }
  }
  b.curves.push_back(std::move(c));
  for (double s : sigmas) {
    if (!(s > 0.0)) continue;
    Curve bound{"PD bound sigma=" + general(s, 4), {}};
    for (int k = -179; k <= 179; ++k) {
      const double phase = 0.5 * k;
      const auto db = nichols_bound(s, phase * std::numbers::pi / 180.0);
      if (db) bound.points.push_back({std::numeric_limits<double>::quiet_NaN(), Complex(phase, *db), ""});
    }
    b.curves.push_back(std::move(bound));
  }
  return b;
}

PlotBundle range_plot(const RationalMatrix& g, const PassivityIndex& sigma, const std::vector<double>& freqs,
                      int boundary_points) {
  PlotBundle b;
  b.title = "Numerical range";
  for (double w : freqs) {
    const ComplexMatrix gw = g.freq(w);
    const NumericalRangeBoundary nr = numerical_range(gw, boundary_points);
    Curve c{"W(G) w=" + general(w, 4), {}};
    for (std::size_t i = 0; i < nr.boundary_points.size(); ++i) {
      c.points.push_back({w, nr.boundary_points[i], general(nr.angles[i], 6)});
    }
    if (!c.points.empty()) c.points.push_back(c.points.front());  // close the outline
    b.curves.push_back(std::move(c));
  }
  b.regions.push_back(pd_region(sigma, FeedbackMode::output_feedback));
  return b;
}

}  // namespace pdregion::cli
