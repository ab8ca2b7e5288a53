#ifndef GBT_EQUILIBRIA_HPP
#define GBT_EQUILIBRIA_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbt/interval.hpp"
#include "gbt/sysdsl.hpp"

namespace gbt {

enum class EquilibriumKind {
  saddle,
  source_node,
  sink_node,
  source_focus,
  sink_focus,
  linear_center,
  degenerate,
};

std::string to_string(EquilibriumKind k);

/// A zero of the field reached the search-box boundary; enlarge or shift the box.
class BoundaryContactError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// det J = 0: the index is not determined by the linearization.
class DegenerateIndexError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct Equilibrium {
  std::vector<double> point;
  /// Half-width of the box proven to contain exactly this zero.
  double radius = 0.0;
  bool certified = false;
  std::vector<std::vector<double>> jacobian;
  double trace = 0.0;
  double det = 0.0;
  EquilibriumKind kind = EquilibriumKind::degenerate;
  std::optional<int> index;
  double residual = 0.0;
  std::string warning;
};

enum class GbtSign { positive, nonpositive, undetermined };

std::string to_string(GbtSign s);

struct TopologyReport {
  std::vector<Equilibrium> equilibria;
  int chi = 0;
  GbtSign sign = GbtSign::undetermined;
  std::vector<std::string> notes;
};

struct EquilibriumOptions {
  /// Target residual |F| after Newton polish.
  double residual_tol = 1e-10;
  /// Boxes narrower than this (relative to the search box) stop subdividing.
  double min_width = 1e-9;
  std::size_t max_boxes = 2'000'000;
};

/// Certified real zeros of a fully specialized field inside `box`, sorted
/// lexicographically. Throws BoundaryContactError for a zero on the boundary
/// and std::invalid_argument when parameters are unbound.
std::vector<Equilibrium> find_equilibria(const VectorField& vf, const Box& box,
                                         const EquilibriumOptions& options = {});

/// Standard trace-determinant chart. Signs are taken relative to the matrix
/// scale, so classify(J) == classify(c*J) for c > 0.
EquilibriumKind classify(const Matrix2& j);

/// sign(det J) for a nondegenerate equilibrium.
int poincare_index(const Equilibrium& eq);

/// chi = sum of indices; sign positive iff chi > 0. Undetermined when an
/// equilibrium is degenerate or uncertified.
TopologyReport euler_characteristic(std::vector<Equilibrium> equilibria);

/// Winding number of the planar field along a circle (angle accumulation).
int winding_number(const VectorField& vf, const std::vector<double>& center, double radius,
                   int samples = 64);

}  // namespace gbt

#endif
