#pragma once

// JSON / CSV / SVG output. JSON objects are std::map backed, so keys come out
// sorted; numbers use shortest round-trip formatting. Non-finite doubles are
// written as the strings "inf", "-inf" and "nan".

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qharm/chi_measure.hpp"
#include "qharm/minimax.hpp"
#include "qharm/rates.hpp"
#include "qharm/regularity.hpp"
#include "qharm/two_constants.hpp"
#include "qharm/uniqueness.hpp"

namespace qharm::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Scalars

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return {buf, end};
}

inline json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

inline json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline json num_array(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Geometry and polynomials

inline json to_json(const Point& p) {
  json a = json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

inline json to_json(const ShapeDescriptor& s) {
  json params = std::visit(
      overloaded{
          [](const Disk& d) { return json{{"center", to_json(d.center)}, {"radius", d.radius}}; },
          [](const Circle& c) { return json{{"center", to_json(c.center)}, {"radius", c.radius}}; },
          [](const Annulus& a) {
            return json{{"center", to_json(a.center)}, {"inner", a.inner}, {"outer", a.outer}};
          },
          [](const Segment& g) { return json{{"a", to_json(g.a)}, {"b", to_json(g.b)}}; },
          [](const Rectangle& r) { return json{{"hi", to_json(r.hi)}, {"lo", to_json(r.lo)}}; },
          [](const FinitePoints& f) {
            json pts = json::array();
            for (const auto& p : f.points) pts.push_back(to_json(p));
            return json{{"points", pts}};
          },
          [](const UnionOf& u) {
            json parts = json::array();
            for (const auto& p : u.parts) parts.push_back(to_json(p));
            return json{{"parts", parts}};
          },
      },
      s.shape);
  return {{"kind", s.kind()}, {"params", params}};
}

inline json to_json(const HarmonicPoly& p) {
  const auto& s = p.spec();
  json center = json::array();
  for (int a = 0; a < s.dim; ++a) center.push_back(s.center[static_cast<std::size_t>(a)]);
  return {{"dim", s.dim}, {"max_degree", s.max_degree}, {"center", center}, {"coeffs", num_array(p.coeffs())}};
}

inline json optional_poly(const std::optional<HarmonicPoly>& p) { return p ? to_json(*p) : json(nullptr); }

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const DecayReport& r) {
  json exact = json::array();
  for (bool b : r.exact) exact.push_back(b);
  return {{"classification", to_string(r.classification)},
          {"deviations", num_array(r.deviations)},
          {"exact", exact},
          {"liminf_estimate", num(r.liminf_estimate)},
          {"limsup_estimate", num(r.limsup_estimate)},
          {"root_rates", num_array(r.root_rates)},
          {"theta", r.theta},
          {"window_first", r.window_first},
          {"window_last", r.window_last}};
}

inline json to_json(const ApproxResult& r) {
  return {{"degree", r.degree}, {"deviation", num(r.deviation)}, {"is_exact", r.is_exact}, {"poly", to_json(r.poly)}};
}

inline json to_json(const RegularityProfile& p) {
  return {{"x0", to_json(p.x0)},
          {"r", p.r},
          {"ratios", num_array(p.ratios)},
          {"growth_estimate", num(p.growth_estimate)},
          {"verdict", to_string(p.verdict)},
          {"window", p.window},
          {"witness", optional_poly(p.witness)},
          {"witness_degree", p.witness_degree},
          {"witness_on_E", num(p.witness_on_E)},
          {"witness_on_ball", num(p.witness_on_ball)}};
}

inline json to_json(const RegularityScan& s) {
  json profiles = json::array();
  for (const auto& p : s.profiles) profiles.push_back(to_json(p));
  return {{"profiles", profiles}, {"verdict", to_string(s.verdict)}};
}

inline json to_json(const TwoConstantsReport& r, bool with_ratios = false) {
  json j{{"alpha", r.alpha},
         {"eps", r.eps},
         {"K_label", r.K_label},
         {"degree", r.degree},
         {"seed", r.seed},
         {"worst_ratio", num(r.worst_ratio)},
         {"worst_T", num(r.worst_T)},
         {"fitted_C", num(r.fitted_C)},
         {"samples_tested", r.samples_tested},
         {"samples_skipped", r.samples_skipped},
         {"violations", r.violations},
         {"adversarial_ratio", num(r.adversarial_ratio)}};
  if (with_ratios) j["ratios"] = num_array(r.ratios);
  return j;
}

inline json to_json(const AdversarialResult& a) {
  return {{"t_grid", num_array(a.t_grid)},
          {"best_value", num_array(a.best_value)},
          {"ratio", num_array(a.ratio)},
          {"adversarial_ratio", num(a.adversarial_ratio)}};
}

inline json to_json(const SublevelCheck& c) {
  return {{"inside", c.inside}, {"max_chi0", num(c.max_chi0)}, {"points_tested", c.points_tested}};
}

inline json to_json(const NullChiEvidence& ev) {
  return {{"is_null", ev.is_null},
          {"annihilated", ev.annihilated},
          {"min_chi0", num(ev.min_chi0)},
          {"witness", to_json(ev.witness)},
          {"points_tested", ev.points_tested},
          {"points_excluded", ev.points_excluded},
          {"null_polynomial", optional_poly(ev.null_polynomial)}};
}

inline json to_json(const ChainRecord& r) {
  return {{"m", r.m},
          {"dev_K", num(r.dev_K)},
          {"norm_E", num(r.norm_E)},
          {"norm_K", num(r.norm_K)},
          {"norm_Udelta", num(r.norm_Udelta)},
          {"norm_U", num(r.norm_U)},
          {"norm_U_measured", num(r.norm_U_measured)},
          {"predicted_bound", num(r.predicted_bound)}};
}

inline json to_json(const HypothesisChecks& h) {
  return {{"qh_class", to_string(h.qh_class)},
          {"E_nonnull_chi", h.E_nonnull_chi},
          {"E_annihilated", h.E_annihilated},
          {"K_regular_evidence", to_string(h.K_regular_evidence)}};
}

inline json to_json(const UniquenessReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return {{"records", records},
          {"decay", to_json(r.decay)},
          {"d_estimate", num(r.d_estimate)},
          {"eps_margin", num(r.eps_margin)},
          {"b", num(r.b)},
          {"M", num(r.M)},
          {"C", num(r.C)},
          {"L", num(r.L)},
          {"f_norm_K", num(r.f_norm_K)},
          {"f_norm_E", num(r.f_norm_E)},
          {"f_bound_K", num(r.f_bound_K)},
          {"slope", num(r.slope)},
          {"predicted_slope", num(r.predicted_slope)},
          {"min_chi0", num(r.min_chi0)},
          {"U_size", r.U_size},
          {"eq4_holds", r.eq4_holds},
          {"eq5_holds", r.eq5_holds},
          {"eq7_holds", r.eq7_holds},
          {"hypothesis_checks", to_json(r.hypothesis_checks)},
          {"conclusion", to_string(r.conclusion)},
          {"notes", r.notes}};
}

// ---------------------------------------------------------------------------
// CSV: header row, comma separated, LF endings.

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }

  Csv& row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    return *this;
  }

  std::string str() const { return out_.str(); }

 private:
  std::size_t width_;
  std::ostringstream out_;
};

inline std::vector<std::string> point_header(int dim) {
  return dim == 3 ? std::vector<std::string>{"x", "y", "z"} : std::vector<std::string>{"x", "y"};
}

inline std::string points_csv(const SampledSet& s) {
  Csv csv(point_header(s.empty() ? 2 : s.dim()));
  for (const auto& p : s.points) {
    std::vector<std::string> cells;
    for (double c : p.coords()) cells.push_back(format_double(c));
    csv.row(cells);
  }
  return csv.str();
}

inline std::string chi_field_csv(const ChiField& f) {
  const int dim = f.grid.empty() ? 2 : f.grid.front().dim();
  auto header = point_header(dim);
  header.insert(header.end(), {"chi0", "converged"});
  Csv csv(header);
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    std::vector<std::string> cells;
    for (double c : f.grid[i].coords()) cells.push_back(format_double(c));
    cells.push_back(format_double(f.chi0[i]));
    cells.push_back(f.converged[i] ? "1" : "0");
    csv.row(cells);
  }
  return csv.str();
}

// ---------------------------------------------------------------------------
// SVG

struct Rgb {
  int r, g, b;
};

/// 8-stop viridis ramp, t in [0, 1] interpolated linearly between stops.
inline constexpr Rgb kViridis[8] = {{68, 1, 84},     {70, 50, 127},   {54, 92, 141},  {39, 127, 142},
                                    {31, 161, 135}, {74, 194, 109}, {159, 218, 58}, {253, 231, 37}};

inline std::string viridis_hex(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 7;
  const int i = std::min(6, static_cast<int>(t));
  const double w = t - i;
  auto mix = [&](int a, int b) { return static_cast<int>(std::lround(a + w * (b - a))); };
  const Rgb& lo = kViridis[i];
  const Rgb& hi = kViridis[i + 1];
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b));
  return buf;
}

/// Heatmap of chi_0 on a 2D grid: one square per grid point, sized by the
/// grid spacing. Points are plotted with y up.
inline std::string chi_field_svg(const ChiField& f, double spacing, const std::string& title) {
  if (f.grid.empty() || f.grid.front().dim() != 2) throw std::invalid_argument("svg heatmap needs a 2D field");
  double x0 = f.grid.front()[0], x1 = x0, y0 = f.grid.front()[1], y1 = y0;
  for (const auto& p : f.grid) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double h = spacing > 0 ? spacing : 0.05;
  const double span = std::max(x1 - x0, y1 - y0) + h;
  const double px = 400.0 / span;
  const int W = 420, H = 470;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const double cx = 10 + (f.grid[i][0] - x0) * px;
    const double cy = 30 + (y1 - f.grid[i][1]) * px;
    o << "<rect x=\"" << format_double(cx) << "\" y=\"" << format_double(cy) << "\" width=\""
      << format_double(h * px) << "\" height=\"" << format_double(h * px) << "\" fill=\"" << viridis_hex(f.chi0[i])
      << "\"/>\n";
  }
  // Color bar, 0 at left.
  for (int k = 0; k < 40; ++k)
    o << "<rect x=\"" << 10 + k * 10 << "\" y=\"" << H - 25 << "\" width=\"10\" height=\"10\" fill=\""
      << viridis_hex(k / 39.0) << "\"/>\n";
  o << "<text x=\"10\" y=\"" << H - 2 << "\" font-size=\"10\">0</text>\n";
  o << "<text x=\"400\" y=\"" << H - 2 << "\" font-size=\"10\">1</text>\n";
  o << "</svg>\n";
  return o.str();
}

struct Series {
  std::string name;
  std::vector<double> x, y;
  std::string color;
};

/// Semilog (log10 y) line plot. Non-positive or non-finite values are skipped.
inline std::string semilog_svg(const std::vector<Series>& series, const std::string& title, const std::string& xlabel) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  if (xmin > xmax) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax == ymin) ymax = ymin + 1;
  const double L = 60, T = 30, W = 400, Hh = 260;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * W; };
  auto sy = [&](double ly) { return T + (ymax - ly) / (ymax - ymin) * Hh; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"340\">\n";
  o << "<text x=\"" << L << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W << "\" height=\"" << Hh
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e)
    o << "<text x=\"5\" y=\"" << format_double(sy(e) + 4) << "\" font-size=\"10\">1e" << e << "</text>\n";
  o << "<text x=\"" << L + W / 2 << "\" y=\"" << T + Hh + 30 << "\" font-size=\"12\">" << xlabel << "</text>\n";
  int legend = 0;
  for (const auto& s : series) {
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0) || !std::isfinite(s.y[i])) continue;
      o << format_double(sx(s.x[i])) << ',' << format_double(sy(std::log10(s.y[i]))) << ' ';
    }
    o << "\"/>\n";
    o << "<text x=\"" << L + W + 5 << "\" y=\"" << T + 15 + 15 * legend++ << "\" font-size=\"10\" fill=\"" << s.color
      << "\">" << s.name << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Files

/// Writes via a temporary sibling and a rename, so readers never see a
/// partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace qharm::io
