#pragma once

// Scenario configs (JSON) and the per-subcommand runners behind the CLI.
//
// Top-level keys: schema_version (required, 1), command, label, seed, scene,
// function, params. Unknown keys are rejected at every level. See the README
// for the per-command params.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/io.hpp"

namespace qharm::scenario {

using io::json;

/// Raised for anything wrong with the config itself; maps to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3 };

// Strict view of a JSON object: every key must be consumed before finish().
class Reader {
 public:
  Reader(const json& j, std::string ctx) : j_(j), ctx_(std::move(ctx)) {
    if (!j_.is_object()) throw ConfigError(ctx_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(ctx_ + ": missing key '" + key + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  template <class T>
  T get(const std::string& key) {
    const json& v = raw(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError(ctx_ + "." + key + ": wrong type");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    return has(key) ? get<T>(key) : fallback;
  }

  Reader sub(const std::string& key) { return {raw(key), ctx_ + "." + key}; }

  std::string path(const std::string& key) const { return ctx_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(ctx_ + ": unknown key '" + k + "'");
  }

 private:
  const json& j_;
  std::string ctx_;
  std::set<std::string> seen_;
};

inline Point point_from(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ConfigError(ctx + ": expected a coordinate array");
  std::vector<double> c;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(ctx + ": coordinates must be numbers");
    c.push_back(v.get<double>());
  }
  try {
    return Point::from(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

inline ShapeDescriptor shape_from(const json& j, const std::string& ctx) {
  Reader r(j, ctx);
  const auto kind = r.get<std::string>("kind");
  Reader p = r.sub("params");
  auto pt = [&](const std::string& k) { return point_from(p.raw(k), p.path(k)); };
  std::optional<ShapeDescriptor> out;
  if (kind == "disk") {
    auto c = pt("center");
    out = Disk{c, p.get<double>("radius")};
  } else if (kind == "circle") {
    auto c = pt("center");
    out = Circle{c, p.get<double>("radius")};
  } else if (kind == "annulus") {
    auto c = pt("center");
    const double inner = p.get<double>("inner");
    out = Annulus{c, inner, p.get<double>("outer")};
  } else if (kind == "segment") {
    auto a = pt("a");
    out = Segment{a, pt("b")};
  } else if (kind == "rectangle") {
    auto lo = pt("lo");
    out = Rectangle{lo, pt("hi")};
  } else if (kind == "finite_points") {
    FinitePoints f;
    const auto& arr = p.raw("points");
    if (!arr.is_array()) throw ConfigError(p.path("points") + ": expected an array");
    for (const auto& v : arr) f.points.push_back(point_from(v, p.path("points")));
    out = std::move(f);
  } else if (kind == "union_of") {
    UnionOf u;
    const auto& arr = p.raw("parts");
    if (!arr.is_array()) throw ConfigError(p.path("parts") + ": expected an array");
    for (const auto& v : arr) u.parts.push_back(shape_from(v, p.path("parts")));
    out = std::move(u);
  } else {
    throw ConfigError(ctx + ": unknown shape kind '" + kind + "'");
  }
  p.finish();
  r.finish();
  try {
    validate(*out);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  return *out;
}

inline HarmonicPoly poly_from(const json& j, const std::string& ctx) {
  Reader r(j, ctx);
  BasisSpec spec;
  spec.dim = r.get<int>("dim");
  spec.max_degree = r.get<int>("max_degree");
  if (r.has("center")) {
    auto c = point_from(r.raw("center"), r.path("center"));
    for (int a = 0; a < c.dim(); ++a) spec.center[static_cast<std::size_t>(a)] = c[a];
  }
  auto coeffs = r.get<std::vector<double>>("coeffs");
  r.finish();
  try {
    return {spec, Eigen::Map<const Eigen::VectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()))};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

inline TargetFunction function_from(const json& j, const std::string& ctx) {
  Reader r(j, ctx);
  const auto kind = r.get<std::string>("kind");
  const json empty = json::object();
  Reader p(r.has("params") ? r.raw("params") : empty, ctx + ".params");
  std::optional<TargetFunction> f;
  auto axis = [&] {
    int a = p.get<int>("axis", 0);
    if (a < 0 || a > 2) throw ConfigError(p.path("axis") + ": must be 0, 1 or 2");
    return a;
  };
  if (kind == "zero")
    f = targets::zero();
  else if (kind == "constant")
    f = targets::constant(p.get<double>("c"));
  else if (kind == "coordinate")
    f = targets::coordinate(axis());
  else if (kind == "abs_coordinate")
    f = targets::abs_coordinate(axis());
  else if (kind == "pole" || kind == "pole_tail") {
    const double q = p.get<double>("q");
    if (!(std::abs(q) > 0)) throw ConfigError(p.path("q") + ": must be nonzero");
    f = kind == "pole" ? targets::pole(q) : targets::pole_tail(q, p.get<int>("degree"));
  } else if (kind == "harmonic_poly")
    f = targets::harmonic(poly_from(p.raw("poly"), p.path("poly")));
  else if (kind == "table") {
    std::vector<Point> pts;
    const auto& arr = p.raw("points");
    if (!arr.is_array()) throw ConfigError(p.path("points") + ": expected an array");
    for (const auto& v : arr) pts.push_back(point_from(v, p.path("points")));
    auto values = p.get<std::vector<double>>("values");
    if (values.size() != pts.size()) throw ConfigError(ctx + ": table points and values differ in length");
    f = targets::table(pts, values);
  } else
    throw ConfigError(ctx + ": unknown function kind '" + kind + "'");
  p.finish();
  r.finish();
  return *f;
}

struct Options {
  std::filesystem::path out_dir = ".";
  bool refine = false;
  std::optional<std::uint64_t> seed;
  bool svg = true;
  std::ostream* log = &std::cout;
};

struct ShapeEntry {
  ShapeDescriptor shape;
  double mesh;
};

// Parsed top-level config; `params` is still raw and consumed per command.
struct Config {
  std::string command;
  std::string label;
  std::uint64_t seed = 1;
  std::map<std::string, ShapeEntry> scene;
  std::optional<double> delta;
  std::optional<TargetFunction> function;
  json function_json;
  json params = json::object();
  bool refine = false;

  double mesh_scale() const { return refine ? 0.5 : 1.0; }

  SampledSet sample(const std::string& name) const {
    auto it = scene.find(name);
    if (it == scene.end()) throw ConfigError("scene: missing set '" + name + "'");
    auto s = sample_shape(it->second.shape, it->second.mesh * mesh_scale());
    s.label = name;
    return s;
  }

  SampledShape shape(const std::string& name) const {
    auto it = scene.find(name);
    if (it == scene.end()) throw ConfigError("scene: missing set '" + name + "'");
    return {it->second.shape, it->second.mesh * mesh_scale()};
  }

  const TargetFunction& target() const {
    if (!function) throw ConfigError("config: this command needs a 'function'");
    return *function;
  }
};

inline Config parse_config(const json& j, const std::string& command, const Options& opt) {
  Reader r(j, "config");
  const int version = r.get<int>("schema_version");
  if (version != io::kSchemaVersion)
    throw ConfigError("config: unsupported schema_version " + std::to_string(version));
  Config c;
  c.command = command;
  if (r.has("command")) {
    auto cmd = r.get<std::string>("command");
    if (cmd != command) throw ConfigError("config: written for '" + cmd + "', run as '" + command + "'");
  }
  c.label = r.get<std::string>("label", "scenario");
  c.seed = r.get<std::uint64_t>("seed", 1);
  if (opt.seed) c.seed = *opt.seed;
  c.refine = opt.refine;
  if (r.has("scene")) {
    Reader s = r.sub("scene");
    for (const char* name : {"K", "E", "D"}) {
      if (!s.has(name)) continue;
      Reader e = s.sub(name);
      ShapeEntry entry{shape_from(e.raw("shape"), e.path("shape")), e.get<double>("mesh")};
      if (!(entry.mesh > 0)) throw ConfigError(e.path("mesh") + ": must be > 0");
      e.finish();
      c.scene.emplace(name, std::move(entry));
    }
    if (s.has("delta")) c.delta = s.get<double>("delta");
    s.finish();
  }
  if (r.has("function")) {
    c.function_json = r.raw("function");
    c.function = function_from(c.function_json, "config.function");
  }
  if (r.has("params")) {
    c.params = r.raw("params");
    if (!c.params.is_object()) throw ConfigError("config.params: expected an object");
  }
  r.finish();
  return c;
}

inline json header(const Config& c) {
  json h{{"schema_version", io::kSchemaVersion}, {"command", c.command}, {"label", c.label}, {"refine", c.refine}};
  json scene = json::object();
  for (const auto& [name, e] : c.scene) scene[name] = {{"shape", io::to_json(e.shape)}, {"mesh", e.mesh}};
  if (c.delta) scene["delta"] = *c.delta;
  h["scene"] = scene;
  if (c.function) h["function"] = c.function_json;
  return h;
}

inline BasisSpec basis_from(Reader& p, int dim, int degree) {
  BasisSpec spec{dim, degree, {0, 0, 0}};
  if (p.has("center")) {
    auto c = point_from(p.raw("center"), p.path("center"));
    if (c.dim() != dim) throw ConfigError(p.path("center") + ": dimension differs from the scene");
    for (int a = 0; a < dim; ++a) spec.center[static_cast<std::size_t>(a)] = c[a];
  }
  return spec;
}

class Writer {
 public:
  explicit Writer(const Options& opt) : opt_(opt) {}
  void text(const std::string& name, const std::string& content) const {
    io::write_atomic(opt_.out_dir / name, content);
    *opt_.log << "wrote " << (opt_.out_dir / name).string() << "\n";
  }
  void json_file(const std::string& name, const json& j) const { text(name, io::dump(j)); }
  bool svg() const { return opt_.svg; }

 private:
  const Options& opt_;
};

// ---------------------------------------------------------------------------

inline void run_approx(const Config& c, const Options& opt) {
  Reader p(c.params, "config.params");
  const int m_max = p.get<int>("m_max", 20);
  const int window = p.get<int>("window", 6);
  const double theta = p.get<double>("theta", kDefaultTheta);
  auto K = c.sample("K");
  auto spec = basis_from(p, K.dim(), m_max);
  p.finish();
  check_spec(spec);
  if (window < 3 || window > m_max) throw ConfigError("approx: window must lie in [3, m_max]");
  if (!(theta > 0 && theta < 1)) throw ConfigError("approx: theta must lie in (0, 1)");

  auto seq = deviation_sequence(c.target(), K, m_max, spec);
  auto rep = classify(seq, window, theta);

  Writer w(opt);
  io::Csv dev({"m", "deviation", "is_exact"});
  io::Csv rates({"m", "root_rate"});
  json approximants = json::array();
  for (std::size_t m = 0; m < seq.size(); ++m) {
    dev.row({std::to_string(m), io::format_double(seq[m].deviation), seq[m].is_exact ? "1" : "0"});
    if (m > 0) rates.row({std::to_string(m), io::format_double(rep.root_rates[m])});
    approximants.push_back(io::to_json(seq[m]));
  }
  w.text("deviations.csv", dev.str());
  w.text("root_rates.csv", rates.str());
  json out = header(c);
  out["decay"] = io::to_json(rep);
  out["approximants"] = approximants;
  out["K_size"] = K.size();
  w.json_file("decay_report.json", out);
  if (w.svg()) {
    io::Series s{"deviation", {}, {}, "#3b528b"};
    for (std::size_t m = 0; m < seq.size(); ++m) {
      s.x.push_back(static_cast<double>(m));
      s.y.push_back(seq[m].deviation);
    }
    w.text("deviations.svg", io::semilog_svg({s}, c.label + ": best approximation deviation", "m"));
  }
  *opt.log << "classification " << to_string(rep.classification) << " limsup " << io::format_double(rep.limsup_estimate)
           << " liminf " << io::format_double(rep.liminf_estimate) << "\n";
}

inline ChiParams chi_params_from(Reader& p, int dim) {
  ChiParams chi;
  if (p.has("chi")) {
    Reader q = p.sub("chi");
    chi.epsilon_grid = q.get<std::vector<double>>("epsilon_grid", chi.epsilon_grid);
    chi.alpha_per_epsilon = q.get<int>("alpha_per_epsilon", chi.alpha_per_epsilon);
    chi.surrogate_degree = q.get<int>("surrogate_degree", chi.surrogate_degree);
    chi.tolerance = q.get<double>("tolerance", chi.tolerance);
    q.finish();
  }
  try {
    check_params(chi, dim);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return chi;
}

inline void run_chi(const Config& c, const Options& opt) {
  Reader p(c.params, "config.params");
  auto E = c.sample("E");
  auto D = c.sample("D");
  auto chi = chi_params_from(p, E.dim());
  Reader g = p.sub("grid");
  GridSpec grid;
  grid.lo = point_from(g.raw("lo"), g.path("lo"));
  grid.hi = point_from(g.raw("hi"), g.path("hi"));
  auto counts = g.get<std::vector<int>>("counts");
  g.finish();
  const int e_samples = p.get<int>("e_samples", 16);
  p.finish();
  if (static_cast<int>(counts.size()) != E.dim()) throw ConfigError("chi: grid.counts needs one entry per axis");
  for (std::size_t a = 0; a < counts.size(); ++a) grid.counts[a] = counts[a];
  if (e_samples < 0) throw ConfigError("chi: e_samples must be >= 0");

  ChiSolver solver(E, D, chi);
  auto field = chi_field(grid_points(grid, D), solver);
  auto ev = null_chi_evidence(field, E, solver, null_chi_gap(grid, E));

  // chi_0 on (a stride of) E's own samples, which should be ~0.
  json on_e = json::array();
  double on_e_max = 0.0;
  if (e_samples > 0) {
    const std::size_t stride = std::max<std::size_t>(1, E.size() / static_cast<std::size_t>(e_samples));
    for (std::size_t i = 0; i < E.size(); i += stride) {
      const double v = solver.chi0_at(E.points[i]).chi0;
      on_e_max = std::max(on_e_max, v);
      on_e.push_back({{"point", io::to_json(E.points[i])}, {"chi0", io::num(v)}});
    }
  }

  Writer w(opt);
  w.text("chi_field.csv", io::chi_field_csv(field));
  json out = header(c);
  out["evidence"] = io::to_json(ev);
  out["chi0_on_E"] = on_e;
  out["chi0_on_E_max"] = io::num(on_e_max);
  out["field_min"] = io::num(field.chi0.empty() ? 0.0 : *std::min_element(field.chi0.begin(), field.chi0.end()));
  out["field_max"] = io::num(field.chi0.empty() ? 0.0 : *std::max_element(field.chi0.begin(), field.chi0.end()));
  out["grid_points"] = field.grid.size();
  out["epsilon_grid"] = io::num_array(chi.epsilon_grid);
  out["surrogate_degree"] = chi.surrogate_degree;
  w.json_file("null_verdict.json", out);
  if (w.svg() && E.dim() == 2) w.text("chi_field.svg", io::chi_field_svg(field, grid_spacing(grid), c.label + ": chi_0"));
  *opt.log << "is_null " << ev.is_null << " annihilated " << ev.annihilated << " min_chi0 "
           << io::format_double(ev.min_chi0) << "\n";
}

inline void run_regularity(const Config& c, const Options& opt) {
  Reader p(c.params, "config.params");
  auto E = c.sample("E");
  auto x0 = point_from(p.raw("x0"), p.path("x0"));
  const double r = p.get<double>("r");
  const int m_max = p.get<int>("m_max", 10);
  const int window = p.get<int>("window", 3);
  const bool scan = p.get<bool>("scan", false);
  RegularityParams rp;
  rp.theta = p.get<double>("theta", rp.theta);
  rp.ball_mesh = p.get<double>("ball_mesh", rp.ball_mesh) * c.mesh_scale();
  rp.annihilation_tol = p.get<double>("annihilation_tol", rp.annihilation_tol);
  p.finish();
  if (x0.dim() != E.dim()) throw ConfigError("regularity: x0 dimension differs from E");

  RegularityScan result;
  if (scan)
    result = regularity_scan(E, x0, r, m_max, window, rp);
  else {
    result.profiles.push_back(regularity_profile(E, x0, r, m_max, window, rp));
    result.verdict = result.profiles.front().verdict;
  }

  Writer w(opt);
  io::Csv csv({"r", "m", "rho_m"});
  for (const auto& prof : result.profiles)
    for (std::size_t m = 0; m < prof.ratios.size(); ++m)
      csv.row({io::format_double(prof.r), std::to_string(m + 1), io::format_double(prof.ratios[m])});
  w.text("regularity.csv", csv.str());
  json out = header(c);
  out["result"] = io::to_json(result);
  w.json_file("regularity.json", out);
  *opt.log << "verdict " << to_string(result.verdict) << "\n";
  for (const auto& prof : result.profiles)
    if (prof.witness) {
      *opt.log << "witness (r = " << io::format_double(prof.r) << ", degree " << prof.witness_degree << "):";
      for (Eigen::Index i = 0; i < prof.witness->coeffs().size(); ++i)
        *opt.log << " " << io::format_double(prof.witness->coeffs()(i));
      *opt.log << "\n";
    }
}

inline void run_two_constants(const Config& c, const Options& opt) {
  Reader p(c.params, "config.params");
  auto E = c.sample("E");
  auto K = c.sample("K");
  auto D = c.sample("D");
  const double alpha = p.get<double>("alpha", 0.2);
  const double eps = p.get<double>("eps", 0.2);
  auto degrees = p.get<std::vector<int>>("degrees", {10});
  const int n = p.get<int>("n_samples", 500);
  auto t_grid = p.get<std::vector<double>>("t_grid", {1, 10, 100, 1000});
  const int adv_degree = p.get<int>("adversarial_degree", degrees.empty() ? 10 : degrees.front());
  const bool sub = p.get<bool>("sublevel_check", true);
  const bool dump = p.get<bool>("dump_ratios", true);
  auto spec = basis_from(p, E.dim(), adv_degree);
  p.finish();
  if (degrees.empty()) throw ConfigError("two-constants: degrees is empty");
  try {
    check_exponents(alpha, eps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  Writer w(opt);
  json reports = json::array();
  io::Csv ratios({"degree", "sample", "ratio"});
  for (int deg : degrees) {
    auto rep = verify_random(E, K, D, alpha, eps, deg, n, c.seed, spec.center);
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
      ratios.row({std::to_string(deg), std::to_string(i), io::format_double(rep.ratios[i])});
    reports.push_back(io::to_json(rep));
    *opt.log << "degree " << deg << " worst_ratio " << io::format_double(rep.worst_ratio) << " fitted_C "
             << io::format_double(rep.fitted_C) << " violations " << rep.violations << "\n";
  }
  auto adv = adversarial_search(E, K, D, alpha, eps, adv_degree, t_grid, spec.center);
  for (auto& r : reports)
    if (r["degree"] == adv_degree) r["adversarial_ratio"] = io::num(adv.adversarial_ratio);
  json out = header(c);
  out["seed"] = c.seed;
  out["random"] = reports;
  out["adversarial"] = io::to_json(adv);
  out["adversarial"]["degree"] = adv_degree;
  if (sub) out["sublevel"] = io::to_json(check_sublevel(E, K, D, alpha));
  w.json_file("two_constants.json", out);
  if (dump) w.text("ratios.csv", ratios.str());
  *opt.log << "adversarial_ratio " << io::format_double(adv.adversarial_ratio) << "\n";
}

inline UniquenessConfig uniqueness_from(Reader& p, std::uint64_t seed, double scale) {
  UniquenessConfig u;
  u.delta = p.get<double>("delta", u.delta);
  u.b = p.get<double>("b", u.b);
  u.alpha = p.get<double>("alpha", u.alpha);
  u.beta = p.get<double>("beta", u.beta);
  u.eps_margin = p.get<double>("eps_margin", u.eps_margin);
  u.m_max = p.get<int>("m_max", u.m_max);
  u.window = p.get<int>("window", u.window);
  u.theta = p.get<double>("theta", u.theta);
  u.surrogate_degree = p.get<int>("surrogate_degree", u.surrogate_degree);
  u.neighborhood_mesh = p.get<double>("neighborhood_mesh", u.neighborhood_mesh) * scale;
  u.chi_grid = p.get<int>("chi_grid", u.chi_grid);
  u.regularity_radius = p.get<double>("regularity_radius", u.regularity_radius);
  u.regularity_m_max = p.get<int>("regularity_m_max", u.regularity_m_max);
  u.regularity_window = p.get<int>("regularity_window", u.regularity_window);
  u.two_constants_samples = p.get<int>("two_constants_samples", u.two_constants_samples);
  u.slope_slack = p.get<double>("slope_slack", u.slope_slack);
  u.seed = seed;
  try {
    check_config(u);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return u;
}

inline void run_uniqueness(const Config& c, const Options& opt) {
  Reader p(c.params, "config.params");
  auto cfg = uniqueness_from(p, c.seed, c.mesh_scale());
  p.finish();
  if (!c.delta) throw ConfigError("uniqueness: scene.delta is required");
  Scene scene;
  try {
    scene = make_scene(c.shape("K"), c.shape("E"), c.shape("D"), *c.delta);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  auto rep = run_pipeline(c.target(), scene, cfg);

  Writer w(opt);
  io::Csv chain({"m", "dev_K", "norm_E", "norm_K", "norm_Udelta", "norm_U", "norm_U_measured", "predicted_bound"});
  for (const auto& r : rep.records)
    chain.row({std::to_string(r.m), io::format_double(r.dev_K), io::format_double(r.norm_E),
               io::format_double(r.norm_K), io::format_double(r.norm_Udelta), io::format_double(r.norm_U),
               io::format_double(r.norm_U_measured), io::format_double(r.predicted_bound)});
  w.text("chain.csv", chain.str());
  json out = header(c);
  out["seed"] = c.seed;
  out["report"] = io::to_json(rep);
  w.json_file("uniqueness.json", out);
  w.json_file("verdict.json", {{"schema_version", io::kSchemaVersion},
                               {"label", c.label},
                               {"conclusion", to_string(rep.conclusion)},
                               {"hypothesis_checks", io::to_json(rep.hypothesis_checks)},
                               {"slope", io::num(rep.slope)},
                               {"predicted_slope", io::num(rep.predicted_slope)},
                               {"f_bound_K", io::num(rep.f_bound_K)},
                               {"notes", rep.notes}});
  if (w.svg() && rep.U_size > 0) {
    io::Series u{"norm_U", {}, {}, "#21918c"}, b{"predicted_bound", {}, {}, "#fde725"},
        m{"norm_U_measured", {}, {}, "#440154"};
    for (const auto& r : rep.records) {
      for (auto* s : {&u, &b, &m}) s->x.push_back(r.m);
      u.y.push_back(r.norm_U);
      b.y.push_back(r.predicted_bound);
      m.y.push_back(r.norm_U_measured);
    }
    w.text("chain.svg", io::semilog_svg({u, m, b}, c.label + ": norm on U", "m"));
  }
  *opt.log << "conclusion " << to_string(rep.conclusion) << "\n";
  for (const auto& n : rep.notes) *opt.log << "note: " << n << "\n";
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"approx", "chi", "regularity", "two-constants", "uniqueness"};
  return c;
}

/// Loads, validates and runs one scenario. Returns the process exit code;
/// messages go to `err`.
inline int run(const std::string& command, const std::filesystem::path& config_path, const Options& opt,
               std::ostream& err = std::cerr) {
  try {
    json j;
    try {
      j = json::parse(io::read_file(config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError(config_path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    auto cfg = parse_config(j, command, opt);
    if (command == "approx")
      run_approx(cfg, opt);
    else if (command == "chi")
      run_chi(cfg, opt);
    else if (command == "regularity")
      run_regularity(cfg, opt);
    else if (command == "two-constants")
      run_two_constants(cfg, opt);
    else if (command == "uniqueness")
      run_uniqueness(cfg, opt);
    else
      throw ConfigError("unknown command '" + command + "'");
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace qharm::scenario
