#ifndef GBT_REPORT_HPP
#define GBT_REPORT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "gbt/equilibria.hpp"
#include "gbt/oracle.hpp"
#include "gbt/riemann.hpp"
#include "gbt/sysdsl.hpp"
#include "gbt/verdict.hpp"

namespace gbt {

inline constexpr const char* kReportSchemaVersion = "1.0";
std::string tool_version();

enum class Stage { metric, curvature, equilibria, locus, verdict, oracle, compare };
std::string to_string(Stage s);

/// Comma-separated stage names; "all" selects every stage. Throws
/// std::invalid_argument for unknown names.
std::set<Stage> parse_stages(const std::string& text);

/// "a:b,c:d" -> [a,b] x [c,d]. Throws std::invalid_argument.
Box parse_box(const std::string& text);

/// "N=V" -> (N, V). Throws std::invalid_argument.
std::pair<std::string, BigRational> parse_binding(const std::string& text);

/// Exit codes of the command-line tool.
enum ExitCode { exit_ok = 0, exit_usage = 1, exit_parse = 2, exit_numeric = 3 };

struct AnalysisOptions {
  std::map<std::string, BigRational> params;
  Box box = Box::square(-3, 3, 2);
  std::set<Stage> stages{Stage::metric, Stage::curvature, Stage::equilibria, Stage::locus,
                         Stage::verdict, Stage::oracle, Stage::compare};
  CurvatureConvention convention = CurvatureConvention::paper;
  EquilibriumOptions equilibria;
  LocusOptions locus;
  OracleOptions oracle;
  /// Ray direction for the return map; the default section is used when absent.
  std::optional<std::vector<double>> section_direction;
  /// Echoed as system.file.
  std::string source;
};

struct AnalysisResult {
  nlohmann::ordered_json report;
  int exit_code = exit_ok;
};

/// Runs the requested stages (plus the stages they depend on) and assembles
/// the report. Stage failures are recorded under "errors".
AnalysisResult analyze(const VectorField& vf, const AnalysisOptions& options = {});

/// Loads and analyzes a system file; file and parse errors give exit_parse.
AnalysisResult analyze_file(const std::string& path, const AnalysisOptions& options = {});

/// Report fragments.
nlohmann::ordered_json metric_json(const MetricTensor& g);
nlohmann::ordered_json curvature_json(const ScalarCurvature& r, const VectorField& vf);
nlohmann::ordered_json topology_json(const TopologyReport& t);
nlohmann::ordered_json locus_json(const SingularLocus& l);
nlohmann::ordered_json verdict_json(const GbtVerdict& v);
nlohmann::ordered_json oracle_json(const OracleResult& o, const std::optional<RadialReduction>& radial);

/// Report text: two-space indentation, trailing newline.
std::string dump_report(const nlohmann::ordered_json& report);

/// Shortest round-trip decimal.
std::string format_double(double v);

struct CurvatureGrid {
  std::string csv;
  std::size_t points = 0;
  std::size_t poles = 0;
};

/// N x N grid over a planar box with header "s1,s2,R"; poles are empty cells.
/// `coords` names the two axes; R may not depend on anything else.
CurvatureGrid curvature_grid(const ScalarCurvature& r, const std::vector<std::string>& coords, const Box& box,
                             int n);

/// Aligned text and CSV renderings of a growth table.
std::string hilbert_text(const HilbertTable& table);
std::string hilbert_csv(const HilbertTable& table);

}  // namespace gbt

#endif
