#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbt/equilibria.hpp"
#include "gbt/oracle.hpp"

namespace gbt {

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::semi_stable: return "semi-stable";
  }
  return "semi-stable";
}

std::string to_string(AgreementStatus s) {
  switch (s) {
    case AgreementStatus::agree: return "agree";
    case AgreementStatus::partial: return "partial";
    case AgreementStatus::disagree: return "disagree";
  }
  return "disagree";
}

Section default_section(const Box& box) {
  Section s;
  s.r_hi = 0.98 * box.hi[0];
  s.r_lo = s.r_hi / 50;
  return s;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

struct Sample {
  double r = 0;
  ReturnResult fwd, bwd;
  // Sign of P(r) - r in forward-time convention; 0 when unknown or in the noise.
  int sign(double noise) const {
    if (fwd.returned && std::abs(fwd.r - r) > noise) return fwd.r > r ? 1 : -1;
    if (bwd.returned && std::abs(bwd.r - r) > noise) return bwd.r > r ? -1 : 1;
    return 0;
  }
};

// Multiplier exp(integral of div f) over one period, integrated in the
// direction in which the orbit attracts.
std::optional<double> divergence_multiplier(const VectorField& vf, const std::vector<double>& point, double period,
                                            bool reverse, double tol) {
  VectorField aug;
  aug.states = {vf.states[0], vf.states[1], "w#"};
  const double sgn = reverse ? -1.0 : 1.0;
  const Polynomial div = vf.components[0].derivative(vf.states[0]) + vf.components[1].derivative(vf.states[1]);
  for (const auto& c : vf.components) aug.components.push_back((c * BigRational(sgn)).with_variables(aug.states));
  aug.components.push_back((div * BigRational(sgn)).with_variables(aug.states));
  IntegrateOptions opts;
  opts.tol = std::max(tol, 1e-12);
  opts.record = false;
  Trajectory tr = integrate(aug, {point[0], point[1], 0.0}, 0.0, period, opts);
  if (tr.escaped || tr.underflow || !tr.reason.empty()) return std::nullopt;
  return std::exp(sgn * tr.x.back()[2]);
}

}  // namespace

OracleResult find_limit_cycles(const VectorField& vf, const Box& box, Section section, const OracleOptions& options) {
  if (vf.dimension() != 2) throw std::invalid_argument("limit-cycle search needs a planar system");
  if (!vf.is_specialized()) throw std::invalid_argument("limit-cycle search needs numeric values for every parameter");
  if (section.r_hi <= 0) {
    // Distance from the origin to the box edge along the ray.
    double reach = 1e300;
    for (std::size_t i = 0; i < 2; ++i) {
      const double d = section.direction[i];
      if (d > 0) reach = std::min(reach, (box.hi[i] - section.origin[i]) / d);
      if (d < 0) reach = std::min(reach, (box.lo[i] - section.origin[i]) / d);
    }
    section.r_hi = 0.98 * reach;
  }
  if (section.r_lo <= 0) section.r_lo = section.r_hi / 50;
  const double norm = std::hypot(section.direction[0], section.direction[1]);
  if (norm == 0) throw std::invalid_argument("section direction must be nonzero");
  section.direction = {section.direction[0] / norm, section.direction[1] / norm};

  FlowField forward(vf, 1.0), backward(vf, -1.0);
  OracleResult out;
  out.section = section;

  const int n = std::max(options.samples, 2);
  std::vector<Sample> samples(n);
  for (int k = 0; k < n; ++k) {
    Sample& s = samples[k];
    s.r = section.r_lo + (section.r_hi - section.r_lo) * k / (n - 1);
    s.fwd = return_map(forward, section, s.r, false, options.integration);
    s.bwd = return_map(backward, section, s.r, true, options.integration);
  }

  int no_return = 0;
  for (const auto& s : samples) {
    if (!s.fwd.returned) ++no_return;
    if (s.fwd.returned) {
      ++out.defined_samples;
      out.max_displacement = std::max(out.max_displacement, std::abs(s.fwd.r - s.r));
    }
  }
  if (no_return)
    out.flags.push_back(std::to_string(no_return) + " of " + std::to_string(n) +
                        " forward seeds did not return (escape or no-return within t_max)");

  // Center test.
  bool linear_center = false;
  {
    HornerForm f0(vf.components[0]), f1(vf.components[1]);
    const double residual = std::max(std::abs(f0.evaluate(section.origin)), std::abs(f1.evaluate(section.origin)));
    if (residual <= 1e-12) {
      auto j = jacobian(vf);
      Matrix2 m;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) m[a][b] = HornerForm(j[a][b]).evaluate(section.origin);
      linear_center = classify(m) == EquilibriumKind::linear_center;
    }
  }
  int center_samples = out.defined_samples;
  double center_disp = out.max_displacement;
  if (linear_center && center_samples < options.center_min_samples && samples[0].fwd.returned) {
    // Too few seeds returned: resample the leading run where the map is defined.
    int k = 0;
    while (k + 1 < n && samples[k + 1].fwd.returned) ++k;
    if (k > 0) {
      center_samples = 0;
      center_disp = 0;
      for (int i = 0; i < n; ++i) {
        const double r = samples[0].r + (samples[k].r - samples[0].r) * i / (n - 1);
        ReturnResult rr = return_map(forward, section, r, false, options.integration);
        if (!rr.returned) continue;
        ++center_samples;
        center_disp = std::max(center_disp, std::abs(rr.r - r));
      }
      out.flags.push_back("center test resampled on [" + fmt(samples[0].r) + ", " + fmt(samples[k].r) +
                          "] where the return map is defined");
    }
  }
  const bool uniform = center_samples >= options.center_min_samples && center_disp <= options.center_tol;
  if (uniform && linear_center) {
    out.center_detected = true;
    return out;
  }
  if (uniform)
    out.flags.push_back("return map is the identity within " + fmt(options.center_tol) +
                        " but the section origin is not a linear center; no center declared");

  auto displacement = [&](double r, bool use_forward, double& period) -> std::optional<double> {
    ReturnResult rr = use_forward ? return_map(forward, section, r, false, options.integration)
                                  : return_map(backward, section, r, true, options.integration);
    if (!rr.returned) return std::nullopt;
    period = rr.time;
    // Forward-time sign convention for both maps.
    return use_forward ? rr.r - r : r - rr.r;
  };

  for (int k = 0; k + 1 < n; ++k) {
    const int a = samples[k].sign(options.noise), b = samples[k + 1].sign(options.noise);
    if (a == 0 || b == 0 || a == b) continue;
    const bool stable = a > 0;
    // Refine on the contracting direction: forward for stable, backward for unstable.
    bool use_forward = stable ? (samples[k].fwd.returned && samples[k + 1].fwd.returned)
                              : !(samples[k].bwd.returned && samples[k + 1].bwd.returned);
    double lo = samples[k].r, hi = samples[k + 1].r, period = 0;
    auto dlo = displacement(lo, use_forward, period);
    if (!dlo) {
      use_forward = !use_forward;
      dlo = displacement(lo, use_forward, period);
    }
    if (!dlo || !displacement(hi, use_forward, period)) {
      out.flags.push_back("bracket [" + fmt(lo) + ", " + fmt(hi) + "] could not be refined");
      continue;
    }
    const double sign_lo = *dlo > 0 ? 1 : -1;
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto dm = displacement(mid, use_forward, period);
      if (!dm) break;
      if ((*dm > 0 ? 1 : -1) == sign_lo) lo = mid;
      else hi = mid;
    }
    CycleFinding c;
    c.radius = 0.5 * (lo + hi);
    c.point = {section.origin[0] + c.radius * section.direction[0], section.origin[1] + c.radius * section.direction[1]};
    c.stability = stable ? Stability::stable : Stability::unstable;
    // Return-map derivative by central differences (forward map when defined).
    const double delta = 1e-5 * std::max(1.0, c.radius);
    ReturnResult p_minus = return_map(forward, section, c.radius - delta, false, options.integration);
    ReturnResult p_plus = return_map(forward, section, c.radius + delta, false, options.integration);
    ReturnResult at = return_map(forward, section, c.radius, false, options.integration);
    if (p_minus.returned && p_plus.returned) {
      c.p_prime = (p_plus.r - p_minus.r) / (2 * delta);
    } else {
      ReturnResult b_minus = return_map(backward, section, c.radius - delta, true, options.integration);
      ReturnResult b_plus = return_map(backward, section, c.radius + delta, true, options.integration);
      if (b_minus.returned && b_plus.returned) c.p_prime = 2 * delta / (b_plus.r - b_minus.r);
    }
    if (at.returned) {
      c.period = at.time;
    } else {
      ReturnResult back = return_map(backward, section, c.radius, true, options.integration);
      c.period = back.returned ? back.time : period;
    }
    if (!(c.p_prime > 0) || !std::isfinite(c.p_prime) || !(p_minus.returned && p_plus.returned)) {
      // The secant is unresolved when the map expands or contracts too strongly.
      if (auto m = divergence_multiplier(vf, c.point, c.period, !stable, options.integration.tol)) {
        c.p_prime = *m;
        out.flags.push_back("cycle near r = " + fmt(c.radius) +
                            ": derivative taken from the divergence integral over one period");
      }
    }
    c.isolated = std::abs(c.p_prime - 1) > 1e-3;
    if (!c.isolated) {
      c.stability = Stability::semi_stable;
      out.flags.push_back("cycle near r = " + fmt(c.radius) + " has |P'-1| <= 1e-3; isolation not established");
    }
    if (stable != (c.p_prime < 1) && c.isolated)
      out.flags.push_back("cycle near r = " + fmt(c.radius) + ": derivative " + fmt(c.p_prime) +
                          " disagrees with the bracket sign pattern");
    out.cycles.push_back(std::move(c));
  }
  return out;
}

Agreement compare(const GbtVerdict& gbt, const OracleResult& oracle, bool parameterized_family) {
  Agreement a;
  const bool counts = gbt.limit_cycle_count == static_cast<int>(oracle.cycles.size());
  const bool periodic = gbt.periodic_only == oracle.center_detected;
  if (counts && periodic) a.status = AgreementStatus::agree;
  else if (counts || periodic) a.status = AgreementStatus::partial;
  else a.status = AgreementStatus::disagree;
  a.notes.push_back("cycle count: GBT " + std::to_string(gbt.limit_cycle_count) + ", oracle " +
                    std::to_string(oracle.cycles.size()) + (counts ? " (match)" : " (mismatch)"));
  a.notes.push_back(std::string("periodic-only: GBT ") + (gbt.periodic_only ? "true" : "false") +
                    ", oracle center-detected " + (oracle.center_detected ? "true" : "false") +
                    (periodic ? " (match)" : " (mismatch)"));
  if (gbt.sign == GbtSign::undetermined) a.notes.push_back("GBT sign undetermined");
  if (parameterized_family)
    a.notes.push_back("GBT side for the parameterized family: asserted, not reproduced here");
  return a;
}

}  // namespace gbt
