#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "gbt/report.hpp"

using namespace gbt;

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct Common {
  std::string system;
  std::vector<std::string> params;
  std::string box = "-3:3,-3:3";
  std::string convention = "paper";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("system,--system", c.system, "System file")->required();
  cmd->add_option("--param", c.params, "Parameter binding NAME=VALUE (repeatable)");
  cmd->add_option("--box", c.box, "Search box a:b,c:d")->capture_default_str();
  cmd->add_option("--convention", c.convention, "Curvature sign convention")
      ->check(CLI::IsMember({"paper", "standard"}))
      ->capture_default_str();
}

// Throws std::invalid_argument on malformed values.
AnalysisOptions base_options(const Common& c) {
  AnalysisOptions o;
  for (const auto& p : c.params) {
    auto [name, value] = parse_binding(p);
    o.params[name] = value;
  }
  o.box = parse_box(c.box);
  o.convention = c.convention == "standard" ? CurvatureConvention::standard : CurvatureConvention::paper;
  o.source = c.system;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-based limit-cycle analysis of planar polynomial systems"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Common common;
  std::string stages = "all", report_path, csv_path, section;
  int grid = 0;
  AnalysisOptions defaults;
  double tol_residual = defaults.equilibria.residual_tol, tol_den = defaults.locus.den_tol,
         tol_cluster = defaults.locus.cluster_radius, tol_symmetry = defaults.locus.symmetry_tol,
         tol_ode = defaults.oracle.integration.tol, tol_center = defaults.oracle.center_tol;

  auto* analyze_cmd = app.add_subcommand("analyze", "Run the analysis pipeline and write a JSON report");
  add_common(analyze_cmd, common);
  analyze_cmd->add_option("--stages", stages, "Comma-separated stages, or all")->capture_default_str();
  analyze_cmd->add_option("--report", report_path, "Report file (default: stdout)");
  analyze_cmd->add_option("--section", section, "Return-map ray direction dx,dy");
  analyze_cmd->add_option("--grid", grid, "Also write an N x N curvature grid to --csv");
  analyze_cmd->add_option("--csv", csv_path, "Curvature grid CSV file");
  analyze_cmd->add_option("--tol-residual", tol_residual, "Equilibrium residual")->capture_default_str();
  analyze_cmd->add_option("--tol-den", tol_den, "Relative zero test for den(R)")->capture_default_str();
  analyze_cmd->add_option("--tol-cluster", tol_cluster, "Locus cluster radius")->capture_default_str();
  analyze_cmd->add_option("--tol-symmetry", tol_symmetry, "Central symmetry tolerance")->capture_default_str();
  analyze_cmd->add_option("--tol-ode", tol_ode, "Integrator local error target")->capture_default_str();
  analyze_cmd->add_option("--tol-center", tol_center, "Return-map identity tolerance")->capture_default_str();

  auto* curv_cmd = app.add_subcommand("curvature", "Print the scalar curvature, optionally as a CSV grid");
  Common curv_common;
  add_common(curv_cmd, curv_common);
  int curv_grid = 0;
  std::string curv_csv;
  curv_cmd->add_option("--grid", curv_grid, "Grid resolution N (N x N points)");
  curv_cmd->add_option("--csv", curv_csv, "CSV output file (default: stdout when --grid is given)");

  auto* hilbert_cmd = app.add_subcommand("hilbert-table", "Tabulate the GBT Hilbert-number formula");
  long nmax = 10, k = 3;
  bool bounds = false;
  std::string hilbert_csv_path;
  hilbert_cmd->add_option("--nmax", nmax, "Largest degree n")->capture_default_str();
  hilbert_cmd->add_flag("--bounds", bounds, "Append Christopher-Lloyd lower bounds");
  hilbert_cmd->add_option("--k", k, "Largest k for the bounds")->capture_default_str();
  hilbert_cmd->add_option("--csv", hilbert_csv_path, "Also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*analyze_cmd) {
      AnalysisOptions o = base_options(common);
      o.stages = parse_stages(stages);
      o.equilibria.residual_tol = tol_residual;
      o.locus.den_tol = tol_den;
      o.locus.cluster_radius = tol_cluster;
      o.locus.symmetry_tol = tol_symmetry;
      o.oracle.integration.tol = tol_ode;
      o.oracle.center_tol = tol_center;
      if (!section.empty()) {
        std::vector<double> d;
        std::stringstream ss(section);
        std::string item;
        while (std::getline(ss, item, ',')) d.push_back(std::stod(item));
        if (d.size() != 2) throw std::invalid_argument("--section needs two components");
        o.section_direction = d;
      }
      if (grid > 0 && csv_path.empty()) throw std::invalid_argument("--grid needs --csv");
      AnalysisResult r = analyze_file(common.system, o);
      const std::string text = dump_report(r.report);
      if (report_path.empty()) std::cout << text;
      else if (!write_file(report_path, text)) {
        std::cerr << "error: cannot write " << report_path << "\n";
        return exit_usage;
      }
      for (const auto& e : r.report["errors"])
        std::cerr << "error [" << e["stage"].get<std::string>() << "]: " << e["message"].get<std::string>() << "\n";
      if (grid > 0 && r.exit_code != exit_parse) {
        VectorField vf = specialize(load_system(common.system), {});
        std::map<std::string, BigRational> b;
        for (const auto& [name, value] : o.params)
          if (std::find(vf.params.begin(), vf.params.end(), name) != vf.params.end()) b[name] = value;
        vf = specialize(vf, b);
        ScalarCurvature rc = curvature_of(gbt_metric(vf), o.convention);
        CurvatureGrid g = curvature_grid(rc, vf.states, o.box, grid);
        if (2 * g.poles > g.points)
          std::cerr << "warning: " << g.poles << " of " << g.points << " grid points are poles\n";
        if (!write_file(csv_path, g.csv)) return exit_usage;
      }
      return r.exit_code;
    }

    if (*curv_cmd) {
      AnalysisOptions o = base_options(curv_common);
      VectorField vf;
      try {
        vf = load_system(curv_common.system);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
      }
      std::map<std::string, BigRational> b;
      for (const auto& [name, value] : o.params) {
        if (std::find(vf.params.begin(), vf.params.end(), name) != vf.params.end()) b[name] = value;
        else std::cerr << "note: parameter " << name << " is not a symbol of this system; binding ignored\n";
      }
      vf = specialize(vf, b);
      ScalarCurvature rc = curvature_of(gbt_metric(vf), o.convention);
      if (curv_grid <= 0 || !curv_csv.empty()) std::cout << rc.value.to_string() << "\n";
      if (curv_grid > 0) {
        CurvatureGrid g = curvature_grid(rc, vf.states, o.box, curv_grid);
        if (2 * g.poles > g.points)
          std::cerr << "warning: " << g.poles << " of " << g.points << " grid points are poles\n";
        if (curv_csv.empty()) std::cout << g.csv;
        else if (!write_file(curv_csv, g.csv)) return exit_usage;
      }
      return exit_ok;
    }

    if (*hilbert_cmd) {
      HilbertTable t = growth_table(nmax, bounds ? k : 0);
      std::cout << hilbert_text(t);
      if (!hilbert_csv_path.empty() && !write_file(hilbert_csv_path, hilbert_csv(t))) return exit_usage;
      return exit_ok;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
  return exit_ok;
}
