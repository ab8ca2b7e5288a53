#include <algorithm>
#include <cmath>

#include "gbt/oracle.hpp"

namespace gbt {

namespace {

// Dense univariate polynomial over Q, lowest degree first.
using UPoly = std::vector<BigRational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigRational eval(const UPoly& p, const BigRational& x) {
  BigRational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Remainder and quotient of a / b.
UPoly divmod(UPoly a, const UPoly& b, UPoly* quotient) {
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const BigRational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  if (quotient) *quotient = q;
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = divmod(a, b, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int sign(const BigRational& v) { return sgn(v); }

struct Sturm {
  std::vector<UPoly> seq;
  explicit Sturm(const UPoly& p) {
    seq.push_back(p);
    seq.push_back(derivative(p));
    while (!seq.back().empty()) {
      UPoly r = divmod(seq[seq.size() - 2], seq.back(), nullptr);
      for (auto& c : r) c = -c;
      if (r.empty()) break;
      seq.push_back(std::move(r));
    }
  }
  int changes(const BigRational& x) const {
    int count = 0, last = 0;
    for (const auto& s : seq) {
      const int v = sign(eval(s, x));
      if (v == 0) continue;
      if (last != 0 && v != last) ++count;
      last = v;
    }
    return count;
  }
};

// Isolated positive roots of the square-free p, refined to tiny intervals.
std::vector<std::pair<BigRational, BigRational>> positive_roots(const UPoly& p) {
  std::vector<std::pair<BigRational, BigRational>> out;
  if (p.size() < 2) return out;
  BigRational bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, BigRational(abs(p[i] / p.back())));
  bound += 1;
  const Sturm st(p);
  std::vector<std::pair<BigRational, BigRational>> work{{BigRational(0), bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int count = st.changes(a) - st.changes(b);  // roots in (a, b]
    if (count == 0) continue;
    if (count == 1) {
      // Bisection on the sign of p.
      if (eval(p, b) == 0) {
        out.emplace_back(b, b);
        continue;
      }
      BigRational lo = a, hi = b;
      const int s_hi = sign(eval(p, hi));
      for (int it = 0; it < 120; ++it) {
        BigRational mid = (lo + hi) / 2;
        const int s = sign(eval(p, mid));
        if (s == 0) {
          lo = hi = mid;
          break;
        }
        if (s == s_hi) hi = mid;
        else lo = mid;
      }
      out.emplace_back(lo, hi);
      continue;
    }
    BigRational mid = (a + b) / 2;
    work.emplace_back(mid, b);
    work.emplace_back(a, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<RadialReduction> radial_reduction(const VectorField& vf) {
  if (vf.dimension() != 2) return std::nullopt;
  const auto table = vf.symbols();
  const Polynomial x1 = Polynomial::variable(vf.states[0], table);
  const Polynomial x2 = Polynomial::variable(vf.states[1], table);
  const Polynomial p = vf.components[0] + x2;
  const Polynomial q = vf.components[1] - x1;

  auto g1 = divide_exact(p, x1);
  auto g2 = divide_exact(q, x2);
  if (!g1 || !g2 || !(*g1 == *g2)) return std::nullopt;

  // g(u): read off g(s1^2 + 0) and check it reproduces g1.
  std::vector<std::string> gtable{"u"};
  for (const auto& s : vf.params) gtable.push_back(s);
  std::vector<Term> gterms;
  const Polynomial on_axis = g1->substitute(vf.states[1], 0);
  const auto axis_table = on_axis.variables();
  for (const auto& t : on_axis.terms()) {
    Exponents e(gtable.size(), 0);
    for (std::size_t i = 0; i < axis_table.size(); ++i) {
      if (axis_table[i] == vf.states[0]) {
        if (t.exponents[i] % 2) return std::nullopt;
        e[0] = t.exponents[i] / 2;
      } else {
        auto pos = std::find(gtable.begin(), gtable.end(), axis_table[i]) - gtable.begin();
        e[pos] = t.exponents[i];
      }
    }
    gterms.push_back(Term{std::move(e), t.coefficient});
  }
  RadialReduction red;
  red.g = Polynomial::from_terms(gtable, gterms);

  const Polynomial u_sub = x1 * x1 + x2 * x2;
  Polynomial rebuilt(table);
  for (const auto& t : red.g.terms()) {
    Polynomial term = Polynomial::constant(t.coefficient, table) * pow(u_sub, t.exponents[0]);
    for (std::size_t i = 1; i < gtable.size(); ++i)
      term = term * pow(Polynomial::variable(gtable[i], table), t.exponents[i]);
    rebuilt += term;
  }
  if (!(rebuilt == *g1)) return std::nullopt;

  // rdot = r g(r^2)
  std::vector<std::string> rtable{"r"};
  for (const auto& s : vf.params) rtable.push_back(s);
  std::vector<Term> rterms;
  for (const auto& t : red.g.terms()) {
    Exponents e = t.exponents;
    e[0] = 2 * e[0] + 1;
    rterms.push_back(Term{std::move(e), t.coefficient});
  }
  red.rdot = Polynomial::from_terms(rtable, rterms);

  if (!vf.params.empty() || red.g.is_zero()) return red;

  UPoly g(red.g.degree_in(0) + 1, BigRational(0));
  for (const auto& t : red.g.terms()) g[t.exponents[0]] += t.coefficient;
  trim(g);
  UPoly common = ugcd(g, derivative(g));
  UPoly sqf = g;
  if (common.size() > 1) divmod(g, common, &sqf);
  trim(sqf);
  for (const auto& [lo, hi] : positive_roots(sqf)) {
    RadialCycle c;
    const BigRational root = (lo + hi) / 2;
    c.radius = std::sqrt(root.get_d());
    // Sign of g on either side, at a distance well inside the isolating gap.
    BigRational eps = hi - lo;
    if (eps == 0) eps = BigRational(1, 1000000000);
    eps *= 1024;
    int left = 0, right = 0;
    for (int attempt = 0; attempt < 60 && (left == 0 || right == 0); ++attempt) {
      BigRational l = lo - eps;
      if (l <= 0) l = lo / 2;
      left = sign(eval(g, l));
      right = sign(eval(g, hi + eps));
      eps /= 2;
    }
    if (left < 0 && right > 0) c.stability = Stability::unstable;
    else if (left > 0 && right < 0) c.stability = Stability::stable;
    else c.stability = Stability::semi_stable;
    red.cycles.push_back(c);
  }
  return red;
}

}  // namespace gbt
