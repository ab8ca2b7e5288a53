// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "gbt/report.hpp"
#include "reference_forms.hpp"

using namespace gbt;

namespace {

std::string sys(const char* name) { return std::string(GBT_SYSTEMS_DIR) + "/" + name; }

const Box kBox = Box::square(-3, 3, 2);
const char* kCorpus[] = {"ex01.sys", "ex01a.sys", "ex02.sys", "ex02a.sys", "ex03.sys", "rotation.sys"};
const char* kPlanarExamples[] = {"ex01.sys", "ex02.sys", "ex03.sys"};

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

std::string str(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ScalarCurvature curvature(const char* name) { return curvature_of(gbt_metric(load_system(sys(name)))); }

BigRational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return BigRational(d(rng), den);
}

BigRational exact_at(const RationalFunction& f, double x, double y) {
  const std::vector<BigRational> p{BigRational(x), BigRational(y)};
  return f.evaluate(p);
}

BigRational exact_at(const Polynomial& f, const BigRational& x, const BigRational& y) {
  const std::vector<BigRational> p{x, y};
  return f.evaluate(p);
}

BigRational exact_at(const RationalFunction& f, const BigRational& x, const BigRational& y) {
  const std::vector<BigRational> p{x, y};
  return f.evaluate(p);
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  ScalarCurvature r = curvature("ex03.sys");
  const RationalFunction expected = reference::example03_curvature();
  o.check(r.value.with_variables({"s1", "s2"}) == expected, "R = " + expected.to_string() + " (canonical equality)");
  const RationalFunction v = r.value.with_variables({"s1", "s2"});
  const BigRational r00 = exact_at(v, BigRational(0), BigRational(0));
  const BigRational r10 = exact_at(v, BigRational(1), BigRational(0));
  o.check(r00 == 1, "R(0,0) = " + to_string(r00));
  o.check(r10 == BigRational(1, 20), "R(1,0) = " + to_string(r10));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const RationalFunction engine = curvature("ex01.sys").value.with_variables({"s1", "s2"});
  const RationalFunction reference = reference::example01_curvature();
  const BigRational e0 = exact_at(engine, BigRational(0), BigRational(0));
  const BigRational t0 = exact_at(reference, BigRational(0), BigRational(0));
  o.check(e0 == -1, "engine R(0,0) = " + to_string(e0));
  o.check(e0 == t0, "reference form at (0,0) = " + to_string(t0));

  std::mt19937_64 rng(20240611);
  int mismatches = 0;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const BigRational x = random_rational(rng, -2, 2, 1000), y = random_rational(rng, -2, 2, 1000);
    const BigRational a = abs(exact_at(engine, x, y)), b = abs(exact_at(reference, x, y));
    const double rel = b == 0 ? (a == 0 ? 0.0 : 1.0) : std::abs(BigRational((a - b) / b).get_d());
    worst = std::max(worst, rel);
    if (rel > 1e-9) {
      ++mismatches;
      o.note("mismatch at (" + to_string(x) + ", " + to_string(y) + "): |engine| " + str(a.get_d()) +
             ", |reference| " + str(b.get_d()));
    }
  }
  o.check(mismatches == 0, "|R| agrees at 20 random rational points in [-2,2]^2, worst relative difference " +
                               str(worst) + ", mismatches " + std::to_string(mismatches));
  o.check(engine == reference, "compatibility: engine and reference forms are identical rational functions");
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto jac_at_origin = [](const char* name) {
    JacobianMatrix j = jacobian(load_system(sys(name)));
    const std::vector<BigRational> zero{BigRational(0), BigRational(0)};
    BigRational m[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m[a][b] = j[a][b].evaluate(zero);
    return std::pair<BigRational, BigRational>{m[0][0] + m[1][1], m[0][0] * m[1][1] - m[0][1] * m[1][0]};
  };
  auto [t1, d1] = jac_at_origin("ex01.sys");
  o.check(t1 == -2 && d1 == 2, "ex01 Tr = " + to_string(t1) + ", det = " + to_string(d1));
  auto [t2, d2] = jac_at_origin("ex02.sys");
  o.check(t2 == 8 && d2 == 17, "ex02 Tr = " + to_string(t2) + ", det = " + to_string(d2));
  for (const char* name : kPlanarExamples) {
    TopologyReport topo = euler_characteristic(find_equilibria(load_system(sys(name)), kBox));
    std::string kinds;
    for (const auto& e : topo.equilibria) kinds += (kinds.empty() ? "" : ", ") + to_string(e.kind);
    o.check(topo.chi == 1 && topo.sign == GbtSign::positive,
            std::string(name) + ": chi = " + std::to_string(topo.chi) + ", sign " + to_string(topo.sign) + " (" +
                kinds + ")");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  VectorField vf = load_system(sys("ex03.sys"));
  MetricTensor g = gbt_metric(vf);
  ScalarCurvature r = curvature_of(g);
  SingularLocus locus = singular_locus(r, kBox, {}, {g.g[0][0].numerator(), g.g[1][1].numerator()});
  const bool one = locus.points.size() == 1;
  o.check(one && std::abs(locus.points[0].point[0]) <= 1e-6 && std::abs(locus.points[0].point[1] + 1) <= 1e-6 &&
              !locus.points[0].extended,
          one ? "singular locus = {(" + str(locus.points[0].point[0]) + ", " + str(locus.points[0].point[1]) + ")}"
              : "singular locus has " + std::to_string(locus.points.size()) + " pieces");
  const BigRational den_at = exact_at(r.value.denominator(), BigRational(0), BigRational(1));
  o.note("den(R) at (0,1) = " + to_string(den_at) + "; (0,1) is not a pole, the pole sits at (0,-1)");
  o.check(!locus.symmetric, "symmetry = false");
  GbtVerdict v = gbt_limit_cycle_verdict(euler_characteristic(find_equilibria(vf, kBox)), locus);
  o.check(v.limit_cycle_count == 0 && v.periodic_only,
          "verdict: count " + std::to_string(v.limit_cycle_count) + ", periodic-only " +
              (v.periodic_only ? "true" : "false"));
  return o;
}

Outcome criterion5() {
  Outcome o;
  {
    OracleResult r = find_limit_cycles(load_system(sys("ex01.sys")), kBox, default_section(kBox));
    const bool ok = r.cycles.size() == 1 && std::abs(r.cycles[0].radius - 1) <= 1e-6 &&
                    r.cycles[0].stability == Stability::unstable;
    o.check(ok, "ex01: " + std::to_string(r.cycles.size()) + " cycle(s)" +
                    (r.cycles.empty() ? "" : ", r = " + str(r.cycles[0].radius) + " " + to_string(r.cycles[0].stability)));
  }
  {
    OracleResult r = find_limit_cycles(load_system(sys("ex02.sys")), kBox, default_section(kBox));
    const bool ok = r.cycles.size() == 2 && std::abs(r.cycles[0].radius - 1) <= 1e-6 &&
                    r.cycles[0].stability == Stability::stable && std::abs(r.cycles[1].radius - 2) <= 1e-6 &&
                    r.cycles[1].stability == Stability::unstable;
    std::string desc;
    for (const auto& c : r.cycles) desc += " r = " + str(c.radius) + " " + to_string(c.stability) + ";";
    o.check(ok, "ex02: " + std::to_string(r.cycles.size()) + " cycle(s):" + desc);
  }
  {
    VectorField vf = load_system(sys("ex03.sys"));
    Section s;
    s.direction = {0.0, 1.0};
    s.r_lo = 0.02;
    s.r_hi = 0.8;
    OracleResult r = find_limit_cycles(vf, kBox, s);
    // Independent sweep over 20 radii.
    FlowField f(vf);
    double worst = 0;
    int returned = 0;
    for (int i = 0; i < 20; ++i) {
      const double radius = 0.04 * (i + 1);
      ReturnResult rr = return_map(f, s, radius, false);
      if (!rr.returned) continue;
      ++returned;
      worst = std::max(worst, std::abs(rr.r - radius));
    }
    o.check(r.center_detected && r.cycles.empty() && returned == 20 && worst <= 1e-6,
            "ex03: center-detected " + std::string(r.center_detected ? "true" : "false") + ", max |P(r)-r| over " +
                std::to_string(returned) + " radii in (0, 0.8] = " + str(worst));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  o.check(hilbert_number(2) == 4 && hilbert_number(3) == 24 && hilbert_number(4) == 60,
          "H_gbt(2,3,4) = " + hilbert_number(2).get_str() + ", " + hilbert_number(3).get_str() + ", " +
              hilbert_number(4).get_str());
  const double ratio = BigRational(hilbert_number(10000), BigInt(10000) * 10000).get_d();
  o.check(ratio > 7.99, "H_gbt(10^4)/10^8 = " + str(ratio));
  o.check(christopher_lloyd_bound(3) == 25, "Christopher-Lloyd bound at k = 3: " + to_string(christopher_lloyd_bound(3)));
  bool bez = true;
  for (long n = 1; n <= 20; ++n) bez = bez && bezout_bound(n, n) == n * n;
  o.check(bez, "bezout_bound(n, n) = n^2 for n = 1..20");
  return o;
}

Outcome criterion7() {
  Outcome o;
  o.check(curvature("rotation.sys").value.is_zero(), "rotation: R = 0");
  {
    VectorField flat = parse_system("ds1/dt = 2*s1 - s2/3\nds2/dt = s1 + 5*s2\n");
    o.check(curvature_of(gbt_metric(flat)).value.is_zero(), "constant metric of a linear field: R = 0");
    VectorField sep = parse_system("ds1/dt = s1^3\nds2/dt = s2^2 + 1\n");
    o.check(curvature_of(gbt_metric(sep)).value.is_zero(), "separable metric 18 s1^4 ds1^2 + 8 s2^2 ds2^2: R = 0");
  }
  for (const char* name : kCorpus) {
    VectorField vf = load_system(sys(name));
    MetricTensor g = gbt_metric(vf);
    MetricTensor inv = metric_inverse(g);
    ChristoffelSet gamma = christoffel(g, inv);
    const std::size_t n = g.dim();
    bool sym = true, anti = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t s = 0; s < n; ++s) sym = sym && gamma(a, x, s) == gamma(a, s, x);
    RiemannTensor rm = riemann_tensor(gamma);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t s = 0; s < n; ++s)
          for (std::size_t l = 0; l < n; ++l) anti = anti && rm(a, x, s, l) == -rm(a, x, l, s);
    ScalarCurvature generic = scalar_curvature(g, inv, rm);
    ScalarCurvature liouville = scalar_curvature_2d_diagonal(g);
    ScalarCurvature standard = scalar_curvature(g, inv, riemann_tensor(gamma, CurvatureConvention::standard));
    o.check(sym, std::string(name) + ": Christoffel symmetry");
    o.check(anti, std::string(name) + ": Riemann antisymmetry in the last two indices");
    o.check(generic.value == liouville.value, std::string(name) + ": generic pipeline = Liouville shortcut");
    o.check(standard.value == -generic.value, std::string(name) + ": convention flag flips the sign");
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (const char* name : {"ex01.sys", "ex03.sys"}) {
    const RationalFunction r = curvature(name).value.with_variables({"s1", "s2"});
    const RationalFunction d1 = r.derivative("s1"), d2 = r.derivative("s2");
    const BigRational h(1, 10000000);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const BigRational x = random_rational(rng, -2, 2, 997), y = random_rational(rng, -2, 2, 997);
      // Central differences in exact arithmetic: only the O(h^2) truncation remains.
      const BigRational f1 = (exact_at(r, x + h, y) - exact_at(r, x - h, y)) / (2 * h);
      const BigRational f2 = (exact_at(r, x, y + h) - exact_at(r, x, y - h)) / (2 * h);
      const BigRational s1 = exact_at(d1, x, y), s2 = exact_at(d2, x, y);
      worst = std::max(worst, std::abs(BigRational((f1 - s1) / s1).get_d()));
      worst = std::max(worst, std::abs(BigRational((f2 - s2) / s2).get_d()));
    }
    o.check(worst <= 1e-6, std::string(name) + ": dR/ds vs finite differences at 50 points, worst relative " +
                               str(worst));
  }
  {
    VectorField rot = load_system(sys("rotation.sys"));
    std::vector<double> ls, le;
    for (double tol : {1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
      IntegrateOptions opts;
      opts.tol = tol;
      opts.record = false;
      Trajectory tr = integrate(rot, {1.0, 0.0}, 0.0, 2 * std::numbers::pi, opts);
      ls.push_back(std::log(static_cast<double>(tr.steps)));
      le.push_back(std::log(std::hypot(tr.x.back()[0] - 1, tr.x.back()[1])));
    }
    const double n = static_cast<double>(ls.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      sx += ls[i];
      sy += le[i];
      sxx += ls[i] * ls[i];
      sxy += ls[i] * le[i];
    }
    const double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    o.check(slope >= 4, "integrator global error slope on the rotation, tol 1e-5..1e-9: " + str(slope));
  }
  for (const char* name : {"ex01.sys", "ex02.sys"}) {
    VectorField vf = load_system(sys(name));
    auto red = radial_reduction(vf);
    OracleResult res = find_limit_cycles(vf, kBox, default_section(kBox));
    bool ok = red && red->cycles.size() == res.cycles.size();
    double worst = 0;
    for (std::size_t i = 0; ok && i < res.cycles.size(); ++i)
      worst = std::max(worst, std::abs(red->cycles[i].radius - res.cycles[i].radius));
    o.check(ok && worst <= 1e-6, std::string(name) + ": radial roots vs return-map fixed points, worst " + str(worst));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const char* name : {"ex02.sys", "ex03.sys"}) {
    const std::string a = dump_report(analyze_file(sys(name)).report);
    const std::string b = dump_report(analyze_file(sys(name)).report);
    o.check(a == b, std::string(name) + ": repeated analyze reports are byte-identical (" + std::to_string(a.size()) +
                        " bytes)");
  }
  o.note("suite wall time is bounded by the per-test ctest timeouts (6 x 40 + 240 + 2 x 40 = 560 s)");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;  // 0: none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "closed-form curvature of the center system", 5, criterion1},
      {2, "first example at the origin and against the reference form", 60, criterion2},
      {3, "Jacobian and topology facts", 0, criterion3},
      {4, "center-system verdict chain", 0, criterion4},
      {5, "oracle ground truths", 120, criterion5},
      {6, "Hilbert tables", 0, criterion6},
      {7, "tensor-engine properties", 0, criterion7},
      {8, "numerics properties", 0, criterion8},
      {9, "determinism", 0, criterion9},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) o.check(secs < c.budget_s, "runtime " + str(secs) + " s < " + str(c.budget_s) + " s");
    if (!o.pass) ++failed;
    std::printf("criterion %d: %s  %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs);
    for (const auto& line : o.lines) std::printf("    %s\n", line.c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed (%.2f s)\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              total);
  return failed == 0 ? 0 : 1;
}
