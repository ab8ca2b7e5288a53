#include "gbt/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gbt {

using nlohmann::ordered_json;

#ifndef GBT_VERSION
#define GBT_VERSION "0.0.0"
#endif

std::string tool_version() { return GBT_VERSION; }

namespace {

const std::vector<std::pair<Stage, const char*>> kStageNames{
    {Stage::metric, "metric"}, {Stage::curvature, "curvature"}, {Stage::equilibria, "equilibria"},
    {Stage::locus, "locus"},   {Stage::verdict, "verdict"},     {Stage::oracle, "oracle"},
    {Stage::compare, "compare"},
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json vec(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

ordered_json strings(const std::vector<std::string>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

ordered_json box_json(const Box& b) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < b.dim(); ++i) a.push_back(ordered_json::array({number(b.lo[i]), number(b.hi[i])}));
  return a;
}

ordered_json system_json(const VectorField& original, const VectorField& vf, const AnalysisOptions& options,
                         const std::vector<std::string>& notes) {
  ordered_json s;
  s["name"] = original.name;
  s["file"] = options.source;
  s["states"] = strings(original.states);
  s["params"] = strings(original.params);
  ordered_json bindings = ordered_json::object();
  for (const auto& [k, v] : options.params)
    if (std::find(original.params.begin(), original.params.end(), k) != original.params.end())
      bindings[k] = to_string(v);
  s["bindings"] = bindings;
  s["unbound"] = strings(vf.params);
  s["degree"] = original.degree();
  ordered_json comps = ordered_json::array();
  for (std::size_t i = 0; i < vf.components.size(); ++i)
    comps.push_back({{"state", vf.states[i]}, {"rhs", vf.components[i].to_string()}});
  s["components"] = comps;
  s["notes"] = strings(notes);
  return s;
}

ordered_json provenance_json(const AnalysisOptions& o, const std::set<Stage>& stages) {
  ordered_json p;
  p["tool"] = "gbt";
  p["version"] = tool_version();
  p["schema_version"] = kReportSchemaVersion;
  ordered_json st = ordered_json::array();
  for (const auto& [s, name] : kStageNames)
    if (stages.count(s)) st.push_back(name);
  p["stages"] = st;
  p["box"] = box_json(o.box);
  p["convention"] = to_string(o.convention);
  p["tolerances"] = {
      {"equilibrium_residual", number(o.equilibria.residual_tol)},
      {"equilibrium_min_width", number(o.equilibria.min_width)},
      {"locus_den", number(o.locus.den_tol)},
      {"locus_cluster_radius", number(o.locus.cluster_radius)},
      {"locus_coarse_depth", o.locus.coarse_depth},
      {"symmetry", number(o.locus.symmetry_tol)},
      {"ode", number(o.oracle.integration.tol)},
      {"ode_t_max", number(o.oracle.integration.t_max)},
      {"ode_escape_radius", number(o.oracle.integration.escape_radius)},
      {"center", number(o.oracle.center_tol)},
      {"center_min_samples", o.oracle.center_min_samples},
      {"return_map_samples", o.oracle.samples},
      {"return_map_noise", number(o.oracle.noise)},
  };
  return p;
}

std::set<Stage> closure(std::set<Stage> s) {
  if (s.count(Stage::compare)) s.insert({Stage::verdict, Stage::oracle});
  if (s.count(Stage::verdict)) s.insert({Stage::equilibria, Stage::locus});
  if (s.count(Stage::locus)) s.insert(Stage::curvature);
  if (s.count(Stage::curvature)) s.insert(Stage::metric);
  return s;
}

ordered_json skeleton() {
  ordered_json r;
  r["schema_version"] = kReportSchemaVersion;
  r["system"] = nullptr;
  r["metric"] = nullptr;
  r["curvature"] = nullptr;
  r["topology"] = nullptr;
  r["locus"] = nullptr;
  r["verdict"] = nullptr;
  r["oracle"] = nullptr;
  r["agreement"] = nullptr;
  r["errors"] = ordered_json::array();
  r["provenance"] = nullptr;
  return r;
}

void add_error(ordered_json& report, const std::string& stage, const std::string& kind, const std::string& message) {
  report["errors"].push_back({{"stage", stage}, {"kind", kind}, {"message", message}});
}

}  // namespace

ordered_json metric_json(const MetricTensor& g) {
  ordered_json m;
  m["coordinates"] = strings(g.coords);
  m["diagonal"] = g.diagonal;
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j)
      if (!g(i, j).is_zero()) entries.push_back({{"i", i}, {"j", j}, {"value", g(i, j).to_string()}});
  m["components"] = entries;
  return m;
}

ordered_json curvature_json(const ScalarCurvature& r, const VectorField& vf) {
  ordered_json c;
  c["convention"] = to_string(r.convention);
  c["value"] = r.value.to_string();
  c["variables"] = strings(r.value.variables());
  c["numerator_degree"] = r.value.numerator().total_degree();
  c["denominator_degree"] = r.value.denominator().total_degree();
  c["numerator_terms"] = r.value.numerator().size();
  c["denominator_terms"] = r.value.denominator().size();
  ordered_json origin = nullptr;
  if (vf.params.empty()) {
    const RationalFunction v = r.value.with_variables(vf.states);
    std::vector<BigRational> zero(vf.states.size(), BigRational(0));
    try {
      origin = to_string(v.evaluate(zero));
    } catch (const PoleError&) {
    }
  }
  c["origin_value"] = origin;
  return c;
}

namespace {

std::string classification(const Equilibrium& e) {
  if (e.kind == EquilibriumKind::linear_center) return "linear-center (nonlinearly inconclusive)";
  return to_string(e.kind);
}

}  // namespace

ordered_json topology_json(const TopologyReport& t) {
  ordered_json out;
  ordered_json eqs = ordered_json::array();
  for (const auto& e : t.equilibria) {
    ordered_json j;
    j["point"] = vec(e.point);
    j["radius"] = number(e.radius);
    j["certified"] = e.certified;
    ordered_json jac = ordered_json::array();
    for (const auto& row : e.jacobian) jac.push_back(vec(row));
    j["jacobian"] = jac;
    j["trace"] = number(e.trace);
    j["det"] = number(e.det);
    j["kind"] = to_string(e.kind);
    j["classification"] = classification(e);
    j["index"] = e.index ? ordered_json(*e.index) : ordered_json(nullptr);
    j["residual"] = number(e.residual);
    j["warning"] = e.warning;
    eqs.push_back(j);
  }
  out["equilibria"] = eqs;
  out["chi"] = t.chi;
  out["sign"] = to_string(t.sign);
  out["notes"] = strings(t.notes);
  return out;
}

ordered_json locus_json(const SingularLocus& l) {
  ordered_json out;
  out["box"] = box_json(l.box);
  out["tol"] = number(l.tol);
  ordered_json pts = ordered_json::array();
  for (const auto& c : l.points)
    pts.push_back({{"point", vec(c.point)},
                   {"radius", number(c.radius)},
                   {"extended", c.extended},
                   {"samples", c.samples.size()},
                   {"spacing", number(c.spacing)}});
  out["points"] = pts;
  ordered_json ind = ordered_json::array();
  for (const auto& p : l.indeterminate) ind.push_back({{"point", vec(p.point)}, {"diverges", p.diverges}});
  out["indeterminate"] = ind;
  out["symmetric"] = l.symmetric;
  out["notes"] = strings(l.notes);
  return out;
}

ordered_json verdict_json(const GbtVerdict& v) {
  ordered_json out;
  out["sign"] = to_string(v.sign);
  out["chi"] = v.chi;
  out["limit_cycle_count"] = v.limit_cycle_count;
  out["periodic_only"] = v.periodic_only;
  out["notes"] = strings(v.notes);
  return out;
}

ordered_json oracle_json(const OracleResult& o, const std::optional<RadialReduction>& radial) {
  ordered_json out;
  out["section"] = {{"origin", vec(o.section.origin)},
                    {"direction", vec(o.section.direction)},
                    {"r_lo", number(o.section.r_lo)},
                    {"r_hi", number(o.section.r_hi)}};
  ordered_json cycles = ordered_json::array();
  for (const auto& c : o.cycles)
    cycles.push_back({{"radius", number(c.radius)},
                      {"point", vec(c.point)},
                      {"period", number(c.period)},
                      {"stability", to_string(c.stability)},
                      {"P_prime", number(c.p_prime)},
                      {"isolated", c.isolated}});
  out["cycles"] = cycles;
  out["center_detected"] = o.center_detected;
  out["defined_samples"] = o.defined_samples;
  out["max_displacement"] = number(o.max_displacement);
  out["flags"] = strings(o.flags);
  if (radial) {
    ordered_json rc = ordered_json::array();
    for (const auto& c : radial->cycles) rc.push_back({{"radius", number(c.radius)}, {"stability", to_string(c.stability)}});
    out["radial"] = {{"g", radial->g.to_string()}, {"rdot", radial->rdot.to_string()}, {"cycles", rc}};
  } else {
    out["radial"] = nullptr;
  }
  return out;
}

std::string to_string(Stage s) {
  for (const auto& [k, name] : kStageNames)
    if (k == s) return name;
  return "metric";
}

std::set<Stage> parse_stages(const std::string& text) {
  std::set<Stage> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& [k, name] : kStageNames) out.insert(k);
      continue;
    }
    auto it = std::find_if(kStageNames.begin(), kStageNames.end(), [&](const auto& p) { return item == p.second; });
    if (it == kStageNames.end()) throw std::invalid_argument("unknown stage '" + item + "'");
    out.insert(it->first);
  }
  if (out.empty()) throw std::invalid_argument("no stages selected");
  return out;
}

Box parse_box(const std::string& text) {
  Box b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("box interval '" + item + "' is not of the form a:b");
    const double lo = parse_double(item.substr(0, colon)), hi = parse_double(item.substr(colon + 1));
    if (!(lo < hi)) throw std::invalid_argument("box interval '" + item + "' is empty");
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  }
  if (b.dim() == 0) throw std::invalid_argument("empty box");
  return b;
}

std::pair<std::string, BigRational> parse_binding(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("parameter binding '" + text + "' is not of the form NAME=VALUE");
  const std::string name = trim(text.substr(0, eq));
  if (name.empty()) throw std::invalid_argument("parameter binding '" + text + "' has no name");
  try {
    return {name, parse_rational(trim(text.substr(eq + 1)))};
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter binding '" + text + "' has no rational value");
  }
}

AnalysisResult analyze(const VectorField& original, const AnalysisOptions& options) {
  AnalysisResult res;
  ordered_json& report = res.report;
  report = skeleton();
  const std::set<Stage> stages = closure(options.stages);
  report["provenance"] = provenance_json(options, stages);

  std::vector<std::string> notes;
  std::map<std::string, BigRational> bindings;
  for (const auto& [k, v] : options.params) {
    if (std::find(original.states.begin(), original.states.end(), k) != original.states.end()) {
      add_error(report, "system", "usage", "'" + k + "' is a state variable, not a parameter");
      res.exit_code = exit_usage;
      report["system"] = system_json(original, original, options, notes);
      return res;
    }
    if (std::find(original.params.begin(), original.params.end(), k) == original.params.end()) {
      notes.push_back("parameter " + k + " is not a symbol of this system; binding ignored");
      continue;
    }
    bindings[k] = v;
  }
  const VectorField vf = specialize(original, bindings);
  report["system"] = system_json(original, vf, options, notes);

  auto fail = [&](Stage s, const std::string& kind, const std::string& msg, int code) {
    add_error(report, to_string(s), kind, msg);
    res.exit_code = std::max(res.exit_code, code);
  };
  std::set<Stage> failed;
  auto ready = [&](Stage s, std::initializer_list<Stage> deps) {
    if (!stages.count(s)) return false;
    for (Stage d : deps)
      if (failed.count(d)) {
        failed.insert(s);
        add_error(report, to_string(s), "skipped", "skipped because stage " + to_string(d) + " failed");
        return false;
      }
    return true;
  };
  auto needs_numeric = [&](Stage s) {
    if (!vf.params.empty()) {
      std::string names;
      for (const auto& p : vf.params) names += (names.empty() ? "" : ", ") + p;
      fail(s, "usage", "unbound parameters: " + names + "; bind them with --param NAME=VALUE", exit_usage);
      failed.insert(s);
      return false;
    }
    if (vf.dimension() != 2) {
      fail(s, "usage", "stage needs a planar system", exit_usage);
      failed.insert(s);
      return false;
    }
    if (options.box.dim() != 2) {
      fail(s, "usage", "the box must be planar", exit_usage);
      failed.insert(s);
      return false;
    }
    return true;
  };

  std::optional<MetricTensor> metric;
  std::optional<ScalarCurvature> curvature;
  std::optional<TopologyReport> topology;
  std::optional<SingularLocus> locus;
  std::optional<GbtVerdict> verdict;
  std::optional<OracleResult> oracle;

  if (ready(Stage::metric, {})) {
    try {
      metric = gbt_metric(vf);
      report["metric"] = metric_json(*metric);
    } catch (const std::exception& e) {
      failed.insert(Stage::metric);
      fail(Stage::metric, "numeric", e.what(), exit_numeric);
    }
  }
  if (ready(Stage::curvature, {Stage::metric})) {
    try {
      curvature = curvature_of(*metric, options.convention);
      report["curvature"] = curvature_json(*curvature, vf);
    } catch (const std::exception& e) {
      failed.insert(Stage::curvature);
      fail(Stage::curvature, "numeric", e.what(), exit_numeric);
    }
  }
  if (ready(Stage::equilibria, {}) && needs_numeric(Stage::equilibria)) {
    try {
      topology = euler_characteristic(find_equilibria(vf, options.box, options.equilibria));
      report["topology"] = topology_json(*topology);
    } catch (const std::exception& e) {
      failed.insert(Stage::equilibria);
      fail(Stage::equilibria, "numeric", e.what(), exit_numeric);
    }
  }
  if (ready(Stage::locus, {Stage::curvature}) && needs_numeric(Stage::locus)) {
    try {
      std::vector<Polynomial> hints;
      for (std::size_t i = 0; i < metric->dim(); ++i) hints.push_back(metric->g[i][i].numerator());
      ScalarCurvature planar{curvature->value.with_variables(vf.states), curvature->convention};
      locus = singular_locus(planar, options.box, options.locus, hints);
      report["locus"] = locus_json(*locus);
    } catch (const std::exception& e) {
      failed.insert(Stage::locus);
      fail(Stage::locus, "numeric", e.what(), exit_numeric);
    }
  }
  if (ready(Stage::verdict, {Stage::equilibria, Stage::locus})) {
    verdict = gbt_limit_cycle_verdict(*topology, *locus, options.locus.symmetry_tol);
    report["verdict"] = verdict_json(*verdict);
  }
  if (ready(Stage::oracle, {}) && needs_numeric(Stage::oracle)) {
    try {
      Section section = default_section(options.box);
      if (options.section_direction) {
        section.direction = *options.section_direction;
        section.r_lo = section.r_hi = 0;
      }
      oracle = find_limit_cycles(vf, options.box, section, options.oracle);
      report["oracle"] = oracle_json(*oracle, radial_reduction(vf));
    } catch (const std::exception& e) {
      failed.insert(Stage::oracle);
      fail(Stage::oracle, "numeric", e.what(), exit_numeric);
    }
  }
  if (ready(Stage::compare, {Stage::verdict, Stage::oracle})) {
    Agreement a = compare(*verdict, *oracle, !original.params.empty());
    report["agreement"] = {{"status", to_string(a.status)}, {"notes", strings(a.notes)}};
  }
  return res;
}

AnalysisResult analyze_file(const std::string& path, const AnalysisOptions& options) {
  AnalysisOptions opts = options;
  if (opts.source.empty()) opts.source = path;
  try {
    return analyze(load_system(path), opts);
  } catch (const FileError& e) {
    AnalysisResult r;
    r.report = skeleton();
    r.report["provenance"] = provenance_json(opts, closure(opts.stages));
    add_error(r.report, "parse", "file", e.what());
    r.exit_code = exit_parse;
    return r;
  } catch (const ParseError& e) {
    AnalysisResult r;
    r.report = skeleton();
    r.report["provenance"] = provenance_json(opts, closure(opts.stages));
    add_error(r.report, "parse", "syntax", e.what());
    r.exit_code = exit_parse;
    return r;
  }
}

std::string dump_report(const ordered_json& report) { return report.dump(2) + "\n"; }

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

CurvatureGrid curvature_grid(const ScalarCurvature& r, const std::vector<std::string>& coords, const Box& box,
                             int n) {
  if (box.dim() != 2 || coords.size() != 2) throw std::invalid_argument("curvature grids need a planar box");
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  for (const auto& v : r.value.variables())
    if (std::find(coords.begin(), coords.end(), v) == coords.end())
      throw std::invalid_argument("curvature depends on unbound symbol " + v);
  const RationalFunction value = r.value.with_variables(coords);
  CurvatureGrid g;
  std::string out = "s1,s2,R\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = box.lo[0] + (box.hi[0] - box.lo[0]) * i / (n - 1);
      const double y = box.lo[1] + (box.hi[1] - box.lo[1]) * j / (n - 1);
      const std::vector<BigRational> exact{BigRational(x), BigRational(y)};
      const std::vector<double> approx{x, y};
      out += format_double(x) + "," + format_double(y) + ",";
      ++g.points;
      if (value.denominator().evaluate(exact) == 0) {
        ++g.poles;
      } else {
        const double v = value.evaluate(std::span<const double>(approx));
        if (std::isfinite(v)) out += format_double(v);
        else ++g.poles;
      }
      out += "\n";
    }
  }
  g.csv = std::move(out);
  return g;
}

std::string hilbert_text(const HilbertTable& table) {
  std::ostringstream os;
  os << std::setw(8) << "n" << std::setw(22) << "H_gbt(n)" << std::setw(16) << "H/n^2" << "\n";
  for (const auto& row : table.rows) {
    std::ostringstream ratio;
    ratio << std::fixed << std::setprecision(6) << row.ratio;
    os << std::setw(8) << row.n << std::setw(22) << row.h.get_str() << std::setw(16) << ratio.str() << "\n";
  }
  if (!table.bounds.empty()) {
    os << "\n" << std::setw(8) << "k" << std::setw(10) << "degree" << std::setw(28) << "lower bound" << "\n";
    for (const auto& b : table.bounds)
      os << std::setw(8) << b.k << std::setw(10) << b.degree << std::setw(28)
         << ("H(" + std::to_string(b.degree) + ") >= " + to_string(b.lower_bound)) << "\n";
  }
  return os.str();
}

std::string hilbert_csv(const HilbertTable& table) {
  std::string out = "n,H_gbt,n_squared,n_squared_log_n,ratio\n";
  for (const auto& row : table.rows)
    out += std::to_string(row.n) + "," + row.h.get_str() + "," + format_double(row.n_squared) + "," +
           format_double(row.n_squared_log_n) + "," + format_double(row.ratio) + "\n";
  if (!table.bounds.empty()) {
    out += "\nk,degree,lower_bound\n";
    for (const auto& b : table.bounds)
      out += std::to_string(b.k) + "," + std::to_string(b.degree) + "," + to_string(b.lower_bound) + "\n";
  }
  return out;
}

}  // namespace gbt
