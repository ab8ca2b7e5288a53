#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gbt/algebra/horner.hpp"
#include "gbt/verdict.hpp"

namespace gbt {

namespace {

using Point = std::vector<double>;
using IBox = std::vector<Interval>;

Interval lift_interval(const HornerForm::Node& n) {
  if (n.value_exact) return Interval(n.value);
  return Interval(Interval::down(n.value), Interval::up(n.value));
}

Polynomial absolute(const Polynomial& p) {
  std::vector<Term> terms(p.terms().begin(), p.terms().end());
  for (auto& t : terms) t.coefficient = abs(t.coefficient);
  return Polynomial::from_terms(p.variables(), std::move(terms));
}

double dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Point negate(Point p) {
  for (double& x : p) x = -x;
  return p;
}

// Repeated factors flatten den near its zeros and make float tests unreliable.
Polynomial square_free(const Polynomial& d) {
  if (d.is_constant()) return d;
  Polynomial h = d;
  for (std::size_t i = 0; i < d.variables().size(); ++i)
    if (d.depends_on(i)) h = gcd(h, d.derivative(i));
  auto q = divide_exact(d, h);
  return q ? q->with_variables(d.variables()) : d;
}

// Square-free den, its gradient and Hessian, compiled for float and interval
// evaluation.
struct Compiled {
  std::size_t n = 0;
  Polynomial den;
  HornerForm d, abs_d, num, abs_num;
  std::vector<HornerForm> grad;
  std::vector<std::vector<HornerForm>> hess;

  explicit Compiled(const RationalFunction& r) : Compiled(r, square_free(r.denominator())) {}

  Compiled(const RationalFunction& r, const Polynomial& den)
      : n(r.variables().size()), den(den), d(den), abs_d(absolute(den)), num(r.numerator()), abs_num(absolute(r.numerator())) {
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial gi = den.derivative(i);
      grad.emplace_back(gi);
      hess.emplace_back();
      for (std::size_t j = 0; j < n; ++j) hess.back().emplace_back(gi.derivative(j));
    }
  }

  static Point abs_of(const Point& p) {
    Point a = p;
    for (double& x : a) x = std::abs(x);
    return a;
  }
  // Integer coefficients with content 1: a floor of 1 keeps the relative
  // test meaningful where every monomial is small.
  double scale(const Point& p) const { return std::max(abs_d.evaluate(abs_of(p)), 1.0); }
  double residual(const Point& p) const { return std::abs(d.evaluate(p)) / scale(p); }
  bool num_vanishes(const Point& p, double tol) const {
    return std::abs(num.evaluate(p)) <= tol * std::max(abs_num.evaluate(abs_of(p)), 1.0);
  }

  bool may_vanish(const IBox& x) const {
    Interval natural = d.evaluate_with<Interval>(x, lift_interval);
    if (!natural.contains_zero()) return false;
    IBox c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = Interval(x[i].mid());
    Interval slope(0.0);
    for (std::size_t i = 0; i < n; ++i) slope = slope + grad[i].evaluate_with<Interval>(x, lift_interval) * (x[i] - c[i]);
    if (!(d.evaluate_with<Interval>(c, lift_interval) + slope).contains_zero()) return false;
    // Float rounding at the centre dominates near zeros of high-degree den;
    // the centre is dyadic, so its exact value is cheap to get.
    std::vector<BigRational> exact(n);
    for (std::size_t i = 0; i < n; ++i) exact[i] = BigRational(c[i].lo);
    return (Interval::enclose(den.evaluate(exact)) + slope).contains_zero();
  }

  Point gradient(const Point& p) const {
    Point g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = grad[i].evaluate(p);
    return g;
  }

  // Newton projection along the gradient onto {den = 0}.
  Point project(Point p, int iterations = 40) const {
    for (int it = 0; it < iterations; ++it) {
      const double v = d.evaluate(p);
      if (v == 0.0) break;
      Point g = gradient(p);
      double g2 = 0;
      for (double x : g) g2 += x * x;
      if (g2 == 0.0 || !std::isfinite(g2)) break;
      for (std::size_t i = 0; i < n; ++i) p[i] -= v * g[i] / g2;
    }
    return p;
  }

  // Newton on grad(den) = 0: isolated real zeros of den are extrema.
  Point critical_point(Point p, int iterations = 60) const {
    for (int it = 0; it < iterations; ++it) {
      Point g = gradient(p);
      std::vector<std::vector<double>> h(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = hess[i][j].evaluate(p);
      // Gaussian elimination with partial pivoting.
      Point step = g;
      bool ok = true;
      for (std::size_t c = 0; c < n && ok; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
          if (std::abs(h[r][c]) > std::abs(h[piv][c])) piv = r;
        if (h[piv][c] == 0.0) {
          ok = false;
          break;
        }
        std::swap(h[piv], h[c]);
        std::swap(step[piv], step[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
          const double f = h[r][c] / h[c][c];
          for (std::size_t k = c; k < n; ++k) h[r][k] -= f * h[c][k];
          step[r] -= f * step[c];
        }
      }
      if (!ok) break;
      for (std::size_t c = n; c-- > 0;) {
        for (std::size_t k = c + 1; k < n; ++k) step[c] -= h[c][k] * step[k];
        step[c] /= h[c][c];
      }
      double size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        p[i] -= step[i];
        size = std::max(size, std::abs(step[i]));
      }
      if (!std::isfinite(size)) break;
      if (size <= 1e-15 * (1 + std::abs(p[0]))) break;
    }
    return p;
  }
};

std::vector<IBox> subdivide(const Compiled& cf, std::vector<IBox> stack, double leaf_width, std::size_t cap,
                            bool& capped) {
  std::vector<IBox> leaves;
  while (!stack.empty()) {
    IBox x = std::move(stack.back());
    stack.pop_back();
    if (!cf.may_vanish(x)) continue;
    std::size_t widest = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (x[i].width() > x[widest].width()) widest = i;
    if (x[widest].width() <= leaf_width || leaves.size() + stack.size() > cap) {
      if (x[widest].width() > leaf_width) capped = true;
      leaves.push_back(std::move(x));
      continue;
    }
    const double cut = x[widest].mid();
    IBox left = x, right = x;
    left[widest].hi = cut;
    right[widest].lo = cut;
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  std::sort(leaves.begin(), leaves.end(), [](const IBox& a, const IBox& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].lo != b[i].lo) return a[i].lo < b[i].lo;
    return false;
  });
  return leaves;
}

// Connected components of touching boxes (leaves sorted by first coordinate).
std::vector<std::vector<std::size_t>> components(const std::vector<IBox>& leaves) {
  std::vector<std::size_t> parent(leaves.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < leaves.size(); ++a)
    for (std::size_t b = a + 1; b < leaves.size() && leaves[b][0].lo <= leaves[a][0].hi; ++b) {
      bool touch = true;
      for (std::size_t i = 0; i < leaves[a].size() && touch; ++i) touch = intersects(leaves[a][i], leaves[b][i]);
      if (touch) parent[find(a)] = find(b);
    }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(leaves.size(), -1);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

Point centre(const IBox& b) {
  Point c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = b[i].mid();
  return c;
}

std::string fmt_point(const Point& p) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

// |R| keeps growing when the probe radius shrinks tenfold. Exact evaluation;
// float cancellation is severe this close to a common zero.
bool diverges_near(const RationalFunction& r, const Point& p) {
  const std::size_t n = p.size();
  std::vector<Point> dirs;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Point d(n);
    std::size_t c = code;
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      d[i] = static_cast<double>(c % 3) - 1.0;
      norm += d[i] * d[i];
    }
    if (norm == 0) continue;
    for (double& x : d) x /= std::sqrt(norm);
    dirs.push_back(std::move(d));
  }
  auto min_abs = [&](double rho) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& d : dirs) {
      std::vector<BigRational> q(n);
      for (std::size_t i = 0; i < n; ++i) q[i] = BigRational(p[i] + rho * d[i]);
      try {
        m = std::min(m, std::abs(r.evaluate(q).get_d()));
      } catch (const PoleError&) {
      }
    }
    return m;
  };
  const double outer = min_abs(1e-3), inner = min_abs(1e-4);
  return outer > 0 && inner >= 5 * outer;
}

}  // namespace

bool symmetry_check(const std::vector<std::vector<double>>& points, double tol) {
  for (const auto& p : points) {
    const Point q = negate(p);
    bool found = std::any_of(points.begin(), points.end(), [&](const Point& o) { return dist(o, q) <= tol; });
    if (!found) return false;
  }
  return true;
}

namespace {

struct Search {
  const RationalFunction& rf;
  const Box& box;
  const LocusOptions& options;
  SingularLocus& out;
  std::vector<Point>& common;
  std::size_t n;
  double coarse;
  double fine;

  bool in_box(const Point& p) const {
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] < box.lo[i] || p[i] > box.hi[i]) return false;
    return true;
  }

  // Projected zero-set samples of one connected piece; collapses to a point
  // cluster when the samples agree within the cluster radius.
  void add_piece(const Compiled& cf, const std::vector<IBox>& boxes, const std::vector<std::size_t>& members,
                 double spacing) {
    auto certified = [&](const Point& p) { return std::isfinite(p[0]) && cf.residual(p) <= options.den_tol; };
    std::vector<Point> samples;
    for (std::size_t i : members) {
      Point p = cf.project(centre(boxes[i]));
      if (!certified(p) || !in_box(p)) continue;
      // Shallow valleys around isolated zeros smear the projections; snap to
      // the nearby critical point when that is a zero too.
      Point c = cf.critical_point(p);
      if (certified(c) && in_box(c) && dist(c, p) <= coarse) p = std::move(c);
      samples.push_back(std::move(p));
    }
    if (samples.empty()) {
      Point c(n, 0.0);
      for (std::size_t i : members) {
        Point m = centre(boxes[i]);
        for (std::size_t k = 0; k < n; ++k) c[k] += m[k] / static_cast<double>(members.size());
      }
      std::ostringstream os;
      os << "near-zero of den(R) at " << fmt_point(c) << " not certified (|den|/scale = " << cf.residual(c) << ")";
      out.notes.push_back(os.str());
      return;
    }
    Point mean(n, 0.0);
    for (const auto& q : samples)
      for (std::size_t k = 0; k < n; ++k) mean[k] += q[k] / static_cast<double>(samples.size());
    double spread = 0;
    for (const auto& q : samples) spread = std::max(spread, dist(q, mean));

    if (spread <= options.cluster_radius) {
      Point p = cf.critical_point(mean);
      if (!certified(p) || dist(p, mean) > options.cluster_radius) p = cf.project(mean);
      if (!certified(p)) p = samples.front();
      if (cf.num_vanishes(p, options.den_tol)) {
        common.push_back(std::move(p));
        return;
      }
      LocusCluster lc;
      lc.radius = spread;
      for (const auto& q : samples) lc.radius = std::max(lc.radius, dist(q, p));
      lc.radius = std::max(lc.radius, spacing);
      lc.point = p;
      lc.samples = {p};
      lc.spacing = spacing;
      out.points.push_back(std::move(lc));
      return;
    }

    LocusCluster c;
    c.extended = true;
    c.spacing = spacing;
    for (auto& q : samples) {
      if (cf.num_vanishes(q, options.den_tol)) common.push_back(std::move(q));
      else c.samples.push_back(std::move(q));
    }
    if (c.samples.empty()) return;
    c.point = mean;
    for (const auto& q : c.samples) c.radius = std::max(c.radius, dist(q, c.point));
    out.points.push_back(std::move(c));
  }

  void run(const Compiled& cf) {
    bool capped = false;
    std::vector<IBox> leaves = subdivide(cf, {box.intervals()}, coarse, 200000, capped);
    if (capped) out.notes.push_back("coarse subdivision budget exhausted; locus may be incomplete");
    for (const auto& group : components(leaves)) {
      std::vector<IBox> seeds;
      for (std::size_t i : group) seeds.push_back(leaves[i]);
      bool fine_capped = false;
      std::vector<IBox> fine_leaves = subdivide(cf, seeds, fine, 100000, fine_capped);
      if (fine_capped) {
        add_piece(cf, leaves, group, coarse);
        continue;
      }
      for (const auto& sub : components(fine_leaves)) add_piece(cf, fine_leaves, sub, fine);
    }
  }
};

// Coprime pieces of the square-free denominator, split along the hints.
std::vector<Polynomial> den_factors(const Polynomial& den, const std::vector<Polynomial>& hints) {
  Polynomial rest = square_free(den);
  std::vector<Polynomial> out;
  for (const auto& h : hints) {
    if (rest.is_constant()) break;
    Polynomial g = gcd(rest, h.with_variables(rest.variables()));
    if (g.is_constant()) continue;
    auto q = divide_exact(rest, g);
    if (!q) continue;
    out.push_back(g.with_variables(den.variables()));
    rest = q->with_variables(den.variables());
  }
  if (!rest.is_constant()) out.push_back(rest);
  return out;
}

}  // namespace

SingularLocus singular_locus(const ScalarCurvature& r, const Box& box, const LocusOptions& options,
                             const std::vector<Polynomial>& factor_hints) {
  const RationalFunction& rf = r.value;
  if (rf.variables().size() != box.dim())
    throw std::invalid_argument("search box has " + std::to_string(box.dim()) + " coordinates but R depends on " +
                                std::to_string(rf.variables().size()) + " variables");
  for (std::size_t i = 0; i < box.dim(); ++i)
    if (!(box.lo[i] < box.hi[i]) || !std::isfinite(box.lo[i]) || !std::isfinite(box.hi[i]))
      throw std::invalid_argument("search box bounds must be finite with lo < hi");

  SingularLocus out;
  out.box = box;
  out.tol = options.den_tol;
  const std::size_t n = box.dim();
  double width = 0;
  for (std::size_t i = 0; i < n; ++i) width = std::max(width, box.hi[i] - box.lo[i]);

  std::vector<Point> common;
  Search search{rf, box, options, out, common, n, width / std::ldexp(1.0, options.coarse_depth),
                options.cluster_radius / 8};
  std::vector<Compiled> pieces;
  for (const auto& f : den_factors(rf.denominator(), factor_hints)) pieces.emplace_back(rf, f);
  for (const auto& cf : pieces) search.run(cf);

  // A point on two factors is found twice.
  std::sort(out.points.begin(), out.points.end(),
            [](const LocusCluster& a, const LocusCluster& b) { return a.point < b.point; });
  std::vector<LocusCluster> merged;
  for (auto& c : out.points) {
    bool dup = !c.extended && std::any_of(merged.begin(), merged.end(), [&](const LocusCluster& m) {
      return !m.extended && dist(m.point, c.point) <= options.cluster_radius;
    });
    if (!dup) merged.push_back(std::move(c));
  }
  out.points = std::move(merged);
  std::sort(common.begin(), common.end());
  for (auto& p : common) {
    bool seen = std::any_of(out.indeterminate.begin(), out.indeterminate.end(),
                            [&](const IndeterminatePoint& q) { return dist(q.point, p) <= options.cluster_radius; });
    if (!seen) out.indeterminate.push_back({p, diverges_near(rf, p)});
  }
  std::vector<Point> divergent;
  for (const auto& q : out.indeterminate)
    if (q.diverges) divergent.push_back(q.point);
  if (!divergent.empty())
    out.notes.push_back(std::to_string(divergent.size()) +
                        " common zero(s) of num and den where |R| still diverges; excluded from the locus; " +
                        (symmetry_check(divergent, options.symmetry_tol) ? "centrally symmetric" : "not centrally symmetric"));

  // Central symmetry: isolated points need an isolated partner, curve samples
  // need their negation on the zero set.
  std::vector<Point> isolated;
  for (const auto& c : out.points)
    if (!c.extended) isolated.push_back(c.point);
  out.symmetric = symmetry_check(isolated, options.symmetry_tol);
  for (const auto& c : out.points) {
    if (!c.extended || !out.symmetric) continue;
    for (const auto& s : c.samples) {
      const Point q = negate(s);
      bool on_locus = std::any_of(pieces.begin(), pieces.end(), [&](const Compiled& cf) {
        const Point proj = cf.project(q);
        return std::isfinite(proj[0]) && cf.residual(proj) <= options.den_tol && dist(proj, q) <= options.symmetry_tol;
      });
      if (!on_locus) {
        out.symmetric = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace gbt
