#include "gbt/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gbt/algebra/horner.hpp"

namespace gbt {

std::string to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::saddle: return "saddle";
    case EquilibriumKind::source_node: return "source-node";
    case EquilibriumKind::sink_node: return "sink-node";
    case EquilibriumKind::source_focus: return "source-focus";
    case EquilibriumKind::sink_focus: return "sink-focus";
    case EquilibriumKind::linear_center: return "linear-center";
    case EquilibriumKind::degenerate: return "degenerate";
  }
  return "degenerate";
}

std::string to_string(GbtSign s) {
  switch (s) {
    case GbtSign::positive: return "positive";
    case GbtSign::nonpositive: return "nonpositive";
    case GbtSign::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

using IBox = std::vector<Interval>;
using DMat = std::vector<std::vector<double>>;

Interval lift_interval(const HornerForm::Node& n) {
  if (n.value_exact) return Interval(n.value);
  return Interval(Interval::down(n.value), Interval::up(n.value));
}

struct CompiledField {
  std::size_t n = 0;
  std::vector<HornerForm> f;
  std::vector<std::vector<HornerForm>> jac;

  explicit CompiledField(const VectorField& vf) : n(vf.dimension()) {
    for (const auto& c : vf.components) f.emplace_back(c);
    for (const auto& row : jacobian(vf)) {
      jac.emplace_back();
      for (const auto& e : row) jac.back().emplace_back(e);
    }
  }

  std::vector<double> value(const std::vector<double>& x) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f[i].evaluate(x);
    return out;
  }
  IBox value(const IBox& x) const {
    IBox out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f[i].evaluate_with<Interval>(x, lift_interval);
    return out;
  }
  DMat jacobian_at(const std::vector<double>& x) const {
    DMat out(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = jac[i][j].evaluate(x);
    return out;
  }
  std::vector<IBox> jacobian_at(const IBox& x) const {
    std::vector<IBox> out(n, IBox(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = jac[i][j].evaluate_with<Interval>(x, lift_interval);
    return out;
  }
};

double sup_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::optional<DMat> invert(DMat a) {
  const std::size_t n = a.size();
  DMat inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0 || !std::isfinite(a[p][c])) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const double d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  for (const auto& row : inv)
    for (double v : row)
      if (!std::isfinite(v)) return std::nullopt;
  return inv;
}

enum class KStatus { none, unique, unknown };

struct KResult {
  KStatus status = KStatus::unknown;
  IBox box;
};

// Krawczyk operator K = c - Y F(c) + (I - Y J(X)) (X - c).
KResult krawczyk(const CompiledField& cf, const IBox& x) {
  const std::size_t n = cf.n;
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = x[i].mid();
  auto y = invert(cf.jacobian_at(c));
  if (!y) return {};
  IBox ic(c.begin(), c.end());
  IBox fc = cf.value(ic);
  std::vector<IBox> jx = cf.jacobian_at(x);
  IBox k(n);
  bool inside = true;
  for (std::size_t i = 0; i < n; ++i) {
    Interval acc = ic[i];
    for (std::size_t j = 0; j < n; ++j) acc = acc - Interval((*y)[i][j]) * fc[j];
    for (std::size_t j = 0; j < n; ++j) {
      Interval m = Interval(i == j ? 1.0 : 0.0);
      for (std::size_t l = 0; l < n; ++l) m = m - Interval((*y)[i][l]) * jx[l][j];
      acc = acc + m * (x[j] - ic[j]);
    }
    if (!std::isfinite(acc.lo) || !std::isfinite(acc.hi)) return {};
    if (!intersects(acc, x[i])) return {KStatus::none, {}};
    if (!acc.interior_of(x[i])) inside = false;
    k[i] = acc;
  }
  if (inside) return {KStatus::unique, k};
  return {KStatus::unknown, {}};
}

std::vector<double> newton(const CompiledField& cf, std::vector<double> x, int iterations, double tol) {
  double best = sup_norm(cf.value(x));
  for (int it = 0; it < iterations && best > tol; ++it) {
    auto inv = invert(cf.jacobian_at(x));
    if (!inv) break;
    auto fx = cf.value(x);
    std::vector<double> next = x;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) next[i] -= (*inv)[i][j] * fx[j];
    const double r = sup_norm(cf.value(next));
    if (!std::isfinite(r)) break;
    if (r >= best && it > 3) {
      x = next;
      best = r;
      break;
    }
    x = std::move(next);
    best = r;
  }
  return x;
}

bool inside_box(const std::vector<double>& p, const IBox& b) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!b[i].contains(p[i])) return false;
  return true;
}

std::string describe(const IBox& b) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " x " : "") << "[" << b[i].lo << ", " << b[i].hi << "]";
  return os.str();
}

Equilibrium finish(const CompiledField& cf, std::vector<double> p) {
  Equilibrium e;
  e.point = std::move(p);
  e.residual = sup_norm(cf.value(e.point));
  e.jacobian = cf.jacobian_at(e.point);
  Matrix2 j{{{e.jacobian[0][0], e.jacobian[0][1]}, {e.jacobian[1][0], e.jacobian[1][1]}}};
  e.trace = j[0][0] + j[1][1];
  e.det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  e.kind = classify(j);
  if (e.kind != EquilibriumKind::degenerate) e.index = e.det > 0 ? 1 : -1;
  return e;
}

}  // namespace

EquilibriumKind classify(const Matrix2& j) {
  double s = 0;
  for (const auto& row : j)
    for (double v : row) s = std::max(s, std::abs(v));
  if (s == 0 || !std::isfinite(s)) return EquilibriumKind::degenerate;
  constexpr double eps = 1e-12;
  const double tr = (j[0][0] + j[1][1]) / s;
  const double det = (j[0][0] / s) * (j[1][1] / s) - (j[0][1] / s) * (j[1][0] / s);
  if (std::abs(det) <= eps) return EquilibriumKind::degenerate;
  if (det < 0) return EquilibriumKind::saddle;
  if (std::abs(tr) <= eps) return EquilibriumKind::linear_center;
  const bool focus = tr * tr - 4 * det < -eps;
  if (tr > 0) return focus ? EquilibriumKind::source_focus : EquilibriumKind::source_node;
  return focus ? EquilibriumKind::sink_focus : EquilibriumKind::sink_node;
}

int poincare_index(const Equilibrium& eq) {
  if (!eq.index) {
    std::ostringstream os;
    os << "degenerate equilibrium (det J = " << eq.det << "): index not determined by linearization";
    throw DegenerateIndexError(os.str());
  }
  return *eq.index;
}

std::vector<Equilibrium> find_equilibria(const VectorField& vf, const Box& box, const EquilibriumOptions& options) {
  if (!vf.is_specialized()) throw std::invalid_argument("equilibria need numeric values for every parameter");
  if (vf.dimension() != 2) throw std::invalid_argument("equilibria are computed for planar systems only");
  if (box.dim() != 2) throw std::invalid_argument("search box must have two coordinates");
  for (std::size_t i = 0; i < 2; ++i)
    if (!(box.lo[i] < box.hi[i])) throw std::invalid_argument("search box bounds must satisfy lo < hi");

  const CompiledField cf(vf);
  const IBox root_box = box.intervals();
  double scale = 0;
  for (const auto& iv : root_box) scale = std::max(scale, iv.width());
  const double min_width = options.min_width * scale;
  const double edge_tol = 1e-9 * scale;

  std::vector<IBox> certified;
  std::vector<IBox> unresolved;
  std::vector<IBox> stack{root_box};
  std::size_t processed = 0;
  bool exhausted = false;
  while (!stack.empty()) {
    IBox x = std::move(stack.back());
    stack.pop_back();
    if (++processed > options.max_boxes) {
      exhausted = true;
      unresolved.push_back(std::move(x));
      continue;
    }
    IBox fx = cf.value(x);
    if (std::any_of(fx.begin(), fx.end(), [](const Interval& v) { return !v.contains_zero(); })) continue;
    KResult k = krawczyk(cf, x);
    if (k.status == KStatus::none) continue;
    if (k.status == KStatus::unique) {
      certified.push_back(std::move(k.box));
      continue;
    }
    std::size_t widest = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (x[i].width() > x[widest].width()) widest = i;
    if (x[widest].width() <= min_width) {
      unresolved.push_back(std::move(x));
      continue;
    }
    // Off-centre split keeps simple rational zeros off the cut lines.
    const double cut = x[widest].lo + 0.4860594 * x[widest].width();
    IBox left = x, right = x;
    left[widest].hi = cut;
    right[widest].lo = cut;
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }

  std::vector<Equilibrium> out;
  auto near_boundary = [&](const std::vector<double>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] - box.lo[i] <= edge_tol || box.hi[i] - p[i] <= edge_tol) return true;
    return false;
  };
  auto add = [&](Equilibrium e) {
    if (near_boundary(e.point)) {
      std::ostringstream os;
      os.precision(10);
      os << "equilibrium at (" << e.point[0] << ", " << e.point[1] << ") lies on the search-box boundary";
      throw BoundaryContactError(os.str());
    }
    for (const auto& prev : out) {
      double d = 0;
      for (std::size_t i = 0; i < e.point.size(); ++i) d = std::max(d, std::abs(prev.point[i] - e.point[i]));
      if (d <= std::max(prev.radius, e.radius) + 1e-9 * scale) return;
    }
    out.push_back(std::move(e));
  };

  for (const auto& k : certified) {
    std::vector<double> mid(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) mid[i] = k[i].mid();
    std::vector<double> p = newton(cf, mid, 40, options.residual_tol * 1e-3);
    if (!inside_box(p, k)) p = mid;
    Equilibrium e = finish(cf, std::move(p));
    e.certified = true;
    for (const auto& iv : k) e.radius = std::max(e.radius, 0.5 * iv.width());
    add(std::move(e));
  }

  // Group unresolved boxes that touch, then try to certify each group around
  // a Newton point with an inflated box.
  std::vector<std::size_t> parent(unresolved.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < unresolved.size(); ++a)
    for (std::size_t b = a + 1; b < unresolved.size(); ++b) {
      bool touch = true;
      for (std::size_t i = 0; i < 2 && touch; ++i) touch = intersects(unresolved[a][i], unresolved[b][i]);
      if (touch) parent[find(a)] = find(b);
    }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < unresolved.size(); ++i)
    if (find(i) == i) roots.push_back(i);
  for (std::size_t r : roots) {
    IBox hull = unresolved[r];
    for (std::size_t i = 0; i < unresolved.size(); ++i) {
      if (find(i) != r) continue;
      for (std::size_t d = 0; d < 2; ++d) {
        hull[d].lo = std::min(hull[d].lo, unresolved[i][d].lo);
        hull[d].hi = std::max(hull[d].hi, unresolved[i][d].hi);
      }
    }
    std::vector<double> centre{hull[0].mid(), hull[1].mid()};
    std::vector<double> p = newton(cf, centre, 200, options.residual_tol * 1e-3);
    const bool converged = sup_norm(cf.value(p)) <= options.residual_tol;
    double hull_radius = std::max(hull[0].width(), hull[1].width()) * 0.5;
    bool done = false;
    if (converged) {
      double rad = std::max(hull_radius, 1e-12 * (1 + sup_norm(p)));
      for (int attempt = 0; attempt < 24 && !done; ++attempt, rad *= 2) {
        IBox x{Interval(p[0] - rad, p[0] + rad), Interval(p[1] - rad, p[1] + rad)};
        KResult k = krawczyk(cf, x);
        if (k.status != KStatus::unique) continue;
        std::vector<double> q = p;
        if (!inside_box(q, k.box)) q = {k.box[0].mid(), k.box[1].mid()};
        Equilibrium e = finish(cf, std::move(q));
        e.certified = true;
        e.radius = rad;
        bool covers = hull[0].lo >= x[0].lo && hull[0].hi <= x[0].hi && hull[1].lo >= x[1].lo && hull[1].hi <= x[1].hi;
        if (!covers) e.warning = "certified zero; neighbouring unresolved region " + describe(hull) + " not covered";
        add(std::move(e));
        done = true;
      }
    }
    if (done) continue;
    if (!converged) {
      // Interval overestimation near tangent nullclines; no zero located.
      bool hull_near_zero = sup_norm(cf.value(centre)) <= options.residual_tol;
      if (!hull_near_zero && !exhausted) continue;
      p = centre;
    }
    Equilibrium e = finish(cf, p);
    e.certified = false;
    IBox around = hull;
    for (std::size_t d = 0; d < 2; ++d) {
      around[d].lo = std::min(around[d].lo, p[d]);
      around[d].hi = std::max(around[d].hi, p[d]);
    }
    std::vector<IBox> jh = cf.jacobian_at(around);
    if ((jh[0][0] * jh[1][1] - jh[0][1] * jh[1][0]).contains_zero()) {
      e.kind = EquilibriumKind::degenerate;
      e.index.reset();
    }
    e.radius = std::max(hull_radius, 1e-12);
    e.warning = "unresolved: zero not certified in " + describe(hull) +
                (e.kind == EquilibriumKind::degenerate ? " (singular Jacobian)" : "");
    if (exhausted) e.warning += "; box budget exhausted";
    add(std::move(e));
  }

  std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) { return a.point < b.point; });
  return out;
}

TopologyReport euler_characteristic(std::vector<Equilibrium> equilibria) {
  TopologyReport rep;
  rep.equilibria = std::move(equilibria);
  bool determined = true;
  for (const auto& e : rep.equilibria) {
    if (!e.certified) {
      determined = false;
      rep.notes.push_back("uncertified equilibrium: " + e.warning);
    }
    if (!e.index) {
      determined = false;
      std::ostringstream os;
      os.precision(10);
      os << "degenerate equilibrium at (" << e.point[0] << ", " << e.point[1] << "): index unknown";
      rep.notes.push_back(os.str());
      continue;
    }
    rep.chi += *e.index;
  }
  if (rep.equilibria.empty()) rep.notes.push_back("no equilibria in the search box");
  if (!determined) {
    rep.sign = GbtSign::undetermined;
  } else {
    rep.sign = rep.chi > 0 ? GbtSign::positive : GbtSign::nonpositive;
  }
  return rep;
}

int winding_number(const VectorField& vf, const std::vector<double>& center, double radius, int samples) {
  if (vf.dimension() != 2 || !vf.is_specialized())
    throw std::invalid_argument("winding number needs a specialized planar system");
  HornerForm f0(vf.components[0]), f1(vf.components[1]);
  double total = 0, prev = 0;
  for (int k = 0; k <= samples; ++k) {
    const double th = 2 * std::numbers::pi * k / samples;
    const double p[] = {center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)};
    const double ang = std::atan2(f1.evaluate(p), f0.evaluate(p));
    if (k > 0) {
      double d = ang - prev;
      while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
      total += d;
    }
    prev = ang;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace gbt
