#include <algorithm>

#include "gbt/riemann.hpp"

namespace gbt {

std::string to_string(CurvatureConvention c) {
  return c == CurvatureConvention::paper ? "paper" : "standard";
}

MetricTensor gbt_metric(const VectorField& vf, const std::vector<std::string>& coords) {
  const auto table = vf.symbols();
  for (const auto& c : coords)
    if (std::find(table.begin(), table.end(), c) == table.end())
      throw MetricError("coordinate '" + c + "' is neither a state nor a parameter");
  const std::size_t n = coords.size();
  MetricTensor m;
  m.coords = coords;
  m.diagonal = true;
  m.g.assign(n, std::vector<RationalFunction>(n, RationalFunction::constant(0, table)));
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial sum(table);
    for (const auto& f : vf.components) {
      Polynomial d = f.derivative(coords[i]);
      sum += d * d;
    }
    if (sum.is_zero())
      throw MetricError("degenerate direction: coordinate '" + coords[i] +
                        "' does not appear in any component, the metric would be identically singular");
    m.g[i][i] = RationalFunction(sum * BigRational(2));
  }
  return m;
}

MetricTensor gbt_metric(const VectorField& vf) { return gbt_metric(vf, vf.states); }

MetricTensor metric_inverse(const MetricTensor& g) {
  const std::size_t n = g.dim();
  const auto table = n ? g.g[0][0].variables() : std::vector<std::string>{};
  MetricTensor inv;
  inv.coords = g.coords;
  inv.diagonal = g.diagonal;
  const auto one = RationalFunction::constant(1, table);
  const auto zero = RationalFunction::constant(0, table);
  if (g.diagonal) {
    inv.g.assign(n, std::vector<RationalFunction>(n, zero));
    for (std::size_t i = 0; i < n; ++i) {
      if (g.g[i][i].is_zero()) throw MetricError("metric is identically singular");
      inv.g[i][i] = one / g.g[i][i];
    }
    return inv;
  }
  // Gauss-Jordan over the field of rational functions.
  auto a = g.g;
  inv.g.assign(n, std::vector<RationalFunction>(n, zero));
  for (std::size_t i = 0; i < n; ++i) inv.g[i][i] = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw MetricError("metric is identically singular (det G = 0)");
    std::swap(a[pivot], a[col]);
    std::swap(inv.g[pivot], inv.g[col]);
    const RationalFunction p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] = a[col][k] / p;
      inv.g[col][k] = inv.g[col][k] / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const RationalFunction f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[col][k].is_zero()) a[r][k] = a[r][k] - f * a[col][k];
        if (!inv.g[col][k].is_zero()) inv.g[r][k] = inv.g[r][k] - f * inv.g[col][k];
      }
    }
  }
  return inv;
}

ChristoffelSet christoffel(const MetricTensor& g) { return christoffel(g, metric_inverse(g)); }

ChristoffelSet christoffel(const MetricTensor& g, const MetricTensor& inverse) {
  const std::size_t n = g.dim();
  const auto table = g.g[0][0].variables();
  const auto zero = RationalFunction::constant(0, table);
  const auto half = RationalFunction::constant(BigRational(1, 2), table);

  // dg[(i*n + j)*n + k] = d G_ij / d x_k
  std::vector<RationalFunction> dg(n * n * n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!g.g[i][j].is_zero())
        for (std::size_t k = 0; k < n; ++k) dg[(i * n + j) * n + k] = g.g[i][j].derivative(g.coords[k]);
  auto d = [&](std::size_t i, std::size_t j, std::size_t k) -> const RationalFunction& {
    return dg[(i * n + j) * n + k];
  };

  ChristoffelSet out;
  out.coords = g.coords;
  out.data.assign(n * n * n, zero);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t s = 0; s < n; ++s) {
        RationalFunction acc = zero;
        for (std::size_t m = 0; m < n; ++m) {
          const RationalFunction& ginv = inverse.g[m][a];
          if (ginv.is_zero()) continue;
          RationalFunction bracket = d(m, x, s) + d(m, s, x) - d(x, s, m);
          if (bracket.is_zero()) continue;
          acc += ginv * bracket;
        }
        if (!acc.is_zero()) out.data[(a * n + x) * n + s] = half * acc;
      }
  return out;
}

RiemannTensor riemann_tensor(const ChristoffelSet& gamma, CurvatureConvention convention) {
  const std::size_t n = gamma.dim();
  const auto table = gamma.data.front().variables();
  const auto zero = RationalFunction::constant(0, table);

  // dgamma[idx*n + l] = d Gamma[idx] / d x_l
  std::vector<RationalFunction> dgamma(n * n * n * n, zero);
  for (std::size_t idx = 0; idx < n * n * n; ++idx)
    if (!gamma.data[idx].is_zero())
      for (std::size_t l = 0; l < n; ++l) dgamma[idx * n + l] = gamma.data[idx].derivative(gamma.coords[l]);
  auto dG = [&](std::size_t a, std::size_t x, std::size_t s, std::size_t l) -> const RationalFunction& {
    return dgamma[((a * n + x) * n + s) * n + l];
  };

  RiemannTensor rm;
  rm.coords = gamma.coords;
  rm.convention = convention;
  rm.data.assign(n * n * n * n, zero);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t l = 0; l < n; ++l) {
          RationalFunction acc = dG(a, x, s, l) - dG(a, x, l, s);
          for (std::size_t m = 0; m < n; ++m) {
            const auto& g1 = gamma(m, x, s);
            const auto& g2 = gamma(a, m, l);
            if (!g1.is_zero() && !g2.is_zero()) acc += g1 * g2;
            const auto& g3 = gamma(m, x, l);
            const auto& g4 = gamma(a, m, s);
            if (!g3.is_zero() && !g4.is_zero()) acc -= g3 * g4;
          }
          if (convention == CurvatureConvention::standard) acc = -acc;
          rm.data[((a * n + x) * n + s) * n + l] = std::move(acc);
        }
  return rm;
}

ScalarCurvature scalar_curvature(const MetricTensor& g, const RiemannTensor& rm) {
  return scalar_curvature(g, metric_inverse(g), rm);
}

ScalarCurvature scalar_curvature(const MetricTensor& g, const MetricTensor& inverse, const RiemannTensor& rm) {
  const std::size_t n = g.dim();
  RationalFunction acc = RationalFunction::constant(0, g.g[0][0].variables());
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      if (inverse.g[m][v].is_zero()) continue;
      RationalFunction ricci = RationalFunction::constant(0, acc.variables());
      for (std::size_t t = 0; t < n; ++t) ricci += rm(t, m, t, v);
      if (!ricci.is_zero()) acc += inverse.g[m][v] * ricci;
    }
  return ScalarCurvature{std::move(acc), rm.convention};
}

ScalarCurvature curvature_of(const MetricTensor& g, CurvatureConvention convention) {
  MetricTensor inv = metric_inverse(g);
  ChristoffelSet gamma = christoffel(g, inv);
  RiemannTensor rm = riemann_tensor(gamma, convention);
  return scalar_curvature(g, inv, rm);
}

ScalarCurvature scalar_curvature_2d_diagonal(const MetricTensor& g, CurvatureConvention convention) {
  if (g.dim() != 2) throw MetricError("Liouville shortcut needs a two-dimensional metric");
  if (!g.g[0][1].is_zero() || !g.g[1][0].is_zero())
    throw MetricError("Liouville shortcut needs a diagonal metric");
  const auto& u = g.coords[0];
  const auto& v = g.coords[1];
  const RationalFunction& e = g.g[0][0];
  const RationalFunction& gg = g.g[1][1];
  const RationalFunction e_v = e.derivative(v);
  const RationalFunction g_u = gg.derivative(u);
  RationalFunction k = liouville_gaussian_curvature(e, e.derivative(u), e_v, e_v.derivative(v), gg, g_u,
                                                    gg.derivative(v), g_u.derivative(u));
  const long factor = convention == CurvatureConvention::paper ? -2 : 2;
  return ScalarCurvature{RationalFunction::constant(factor, k.variables()) * k, convention};
}

}  // namespace gbt
