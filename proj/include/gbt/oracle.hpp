#ifndef GBT_ORACLE_HPP
#define GBT_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gbt/algebra/horner.hpp"
#include "gbt/interval.hpp"
#include "gbt/sysdsl.hpp"
#include "gbt/verdict.hpp"

namespace gbt {

struct IntegrateOptions {
  /// Mixed absolute/relative local error target, in [1e-12, 1e-3].
  double tol = 1e-10;
  std::size_t max_steps = 2'000'000;
  /// Stop when any |x_i| exceeds this.
  double escape_radius = 1e6;
  bool record = true;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> x;
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double max_error_estimate = 0.0;
  bool escaped = false;
  bool underflow = false;
  std::string reason;
};

/// Compiled right-hand side of a specialized system, optionally time-reversed.
class FlowField {
public:
  explicit FlowField(const VectorField& vf, double direction = 1.0);
  std::size_t dim() const { return f_.size(); }
  void operator()(const double* x, double* out) const;

private:
  std::vector<HornerForm> f_;
  double direction_;
};

/// Adaptive Dormand-Prince 5(4) with FSAL. Throws std::invalid_argument for
/// unbound parameters or tol outside [1e-12, 1e-3].
Trajectory integrate(const VectorField& vf, const std::vector<double>& x0, double t0, double t1,
                     const IntegrateOptions& options = {});

/// Ray {origin + r * direction, r > 0}. Forward returns cross it
/// counterclockwise (cross(direction, x - origin) goes from - to +).
struct Section {
  std::vector<double> origin{0.0, 0.0};
  std::vector<double> direction{1.0, 0.0};
  double r_lo = 0.0;  // 0 selects a default from the box
  double r_hi = 0.0;
};

struct ReturnResult {
  bool returned = false;
  double r = 0.0;
  double time = 0.0;
  std::string flag;  // "escape", "no-return", "underflow"
};

struct ReturnOptions {
  double tol = 1e-11;
  double t_max = 1e3;
  double escape_radius = 1e3;
};

/// First return of the flow (or the reversed flow when `backward`) to the ray.
ReturnResult return_map(const FlowField& field, const Section& section, double r, bool backward,
                        const ReturnOptions& options = {});

enum class Stability { stable, unstable, semi_stable };
std::string to_string(Stability s);

struct CycleFinding {
  std::vector<double> point;
  double radius = 0.0;  // distance from the section origin
  double period = 0.0;
  Stability stability = Stability::stable;
  double p_prime = 1.0;
  bool isolated = true;
};

struct OracleOptions {
  ReturnOptions integration;
  int samples = 48;
  double center_tol = 1e-6;
  int center_min_samples = 20;
  /// |P(r) - r| below this never counts as a sign.
  double noise = 1e-8;
};

struct OracleResult {
  std::vector<CycleFinding> cycles;
  bool center_detected = false;
  Section section;
  int defined_samples = 0;
  double max_displacement = 0.0;
  std::vector<std::string> flags;
};

/// Default section for a box: ray s2 = 0, s1 > 0 from the origin, up to 98%
/// of the distance to the box edge.
Section default_section(const Box& box);

OracleResult find_limit_cycles(const VectorField& vf, const Box& box, Section section,
                               const OracleOptions& options = {});

struct RadialCycle {
  double radius = 0.0;
  Stability stability = Stability::stable;
};

/// dr/dt = r g(r^2) for fields of the form
///   ds1/dt = -s2 + s1 g(s1^2 + s2^2),  ds2/dt = s1 + s2 g(s1^2 + s2^2).
struct RadialReduction {
  Polynomial g;     // in "u" (plus any unbound parameters)
  Polynomial rdot;  // in "r"
  std::vector<RadialCycle> cycles;  // only when g has no parameters
};

std::optional<RadialReduction> radial_reduction(const VectorField& vf);

enum class AgreementStatus { agree, partial, disagree };
std::string to_string(AgreementStatus s);

struct Agreement {
  AgreementStatus status = AgreementStatus::disagree;
  std::vector<std::string> notes;
};

/// agree iff the cycle counts match and periodic-only matches center-detected;
/// partial when exactly one of the two matches.
Agreement compare(const GbtVerdict& gbt, const OracleResult& oracle, bool parameterized_family = false);

}  // namespace gbt

#endif
