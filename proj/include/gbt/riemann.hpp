#ifndef GBT_RIEMANN_HPP
#define GBT_RIEMANN_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gbt/algebra/rational_function.hpp"
#include "gbt/sysdsl.hpp"

namespace gbt {

/// Sign convention of the curvature tensor.
///
/// `paper`:    R^a_{xsl} = G^a_{xs,l} - G^a_{xl,s} + G^m_{xs} G^a_{ml} - G^m_{xl} G^a_{ms}
/// `standard`: the negative of the above, so a round sphere has R > 0.
/// In two dimensions R_paper = -2K with K the Gaussian curvature.
enum class CurvatureConvention { paper, standard };

std::string to_string(CurvatureConvention c);

/// Metric cannot be built or inverted.
class MetricError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct MetricTensor {
  std::vector<std::string> coords;
  std::vector<std::vector<RationalFunction>> g;
  bool diagonal = false;

  std::size_t dim() const { return coords.size(); }
  const RationalFunction& operator()(std::size_t i, std::size_t j) const { return g[i][j]; }
};

/// Gamma^a_{xs}, flattened as data[(a*n + x)*n + s].
struct ChristoffelSet {
  std::vector<std::string> coords;
  std::vector<RationalFunction> data;

  std::size_t dim() const { return coords.size(); }
  const RationalFunction& operator()(std::size_t a, std::size_t x, std::size_t s) const {
    const auto n = dim();
    return data[(a * n + x) * n + s];
  }
};

/// R^a_{xsl}, flattened as data[((a*n + x)*n + s)*n + l].
struct RiemannTensor {
  std::vector<std::string> coords;
  std::vector<RationalFunction> data;
  CurvatureConvention convention = CurvatureConvention::paper;

  std::size_t dim() const { return coords.size(); }
  const RationalFunction& operator()(std::size_t a, std::size_t x, std::size_t s, std::size_t l) const {
    const auto n = dim();
    return data[((a * n + x) * n + s) * n + l];
  }
};

struct ScalarCurvature {
  RationalFunction value;
  CurvatureConvention convention = CurvatureConvention::paper;
};

/// Diagonal parameter-space metric G_ii = 2 * sum_j (d f_j / d x_i)^2 over
/// the given coordinates (states and/or parameters). Throws MetricError when
/// some coordinate appears in no component.
MetricTensor gbt_metric(const VectorField& vf, const std::vector<std::string>& coords);
/// Same, with the states as coordinates.
MetricTensor gbt_metric(const VectorField& vf);

/// Symbolic inverse; throws MetricError when det G vanishes identically.
MetricTensor metric_inverse(const MetricTensor& g);

ChristoffelSet christoffel(const MetricTensor& g);
ChristoffelSet christoffel(const MetricTensor& g, const MetricTensor& inverse);

RiemannTensor riemann_tensor(const ChristoffelSet& gamma,
                             CurvatureConvention convention = CurvatureConvention::paper);

/// R = G^{mn} R^t_{mtn}.
ScalarCurvature scalar_curvature(const MetricTensor& g, const RiemannTensor& rm);
ScalarCurvature scalar_curvature(const MetricTensor& g, const MetricTensor& inverse,
                                 const RiemannTensor& rm);

/// Full pipeline: metric -> inverse -> Christoffel -> Riemann -> contraction.
ScalarCurvature curvature_of(const MetricTensor& g,
                             CurvatureConvention convention = CurvatureConvention::paper);

inline double constant_like(long v, double) { return static_cast<double>(v); }
inline RationalFunction constant_like(long v, const RationalFunction& ref) {
  return RationalFunction::constant(v, ref.variables());
}

/// Gaussian curvature of E du^2 + G dv^2 (Liouville's formula) in rational form:
///   K = -(E_vv + G_uu)/(2EG) + (E_v (EG)_v + G_u (EG)_u) / (4 (EG)^2)
/// Works for any field-like T (RationalFunction, double).
template <class T>
T liouville_gaussian_curvature(const T& e, const T& e_u, const T& e_v, const T& e_vv, const T& g,
                               const T& g_u, const T& g_v, const T& g_uu) {
  const T eg = e * g;
  const T eg_u = e_u * g + e * g_u;
  const T eg_v = e_v * g + e * g_v;
  const T two = constant_like(2, eg) * eg;
  const T four = constant_like(4, eg) * eg * eg;
  return (e_v * eg_v + g_u * eg_u) / four - (e_vv + g_uu) / two;
}

/// Independent 2D route through Liouville's formula. Requires a diagonal
/// two-dimensional metric (MetricError otherwise).
ScalarCurvature scalar_curvature_2d_diagonal(const MetricTensor& g,
                                             CurvatureConvention convention = CurvatureConvention::paper);

}  // namespace gbt

#endif
