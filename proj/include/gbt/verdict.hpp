#ifndef GBT_VERDICT_HPP
#define GBT_VERDICT_HPP

#include <string>
#include <vector>

#include "gbt/equilibria.hpp"
#include "gbt/interval.hpp"
#include "gbt/riemann.hpp"

namespace gbt {

struct LocusOptions {
  /// |den(R)| < den_tol * scale certifies a zero, scale = sum |c_a x^a|.
  double den_tol = 1e-8;
  double cluster_radius = 1e-4;
  double symmetry_tol = 1e-3;
  /// Coarse leaves are box_width / 2^coarse_depth.
  int coarse_depth = 7;
};

/// A connected piece of the real zero set of den(R).
struct LocusCluster {
  std::vector<double> point;
  double radius = 0.0;
  /// False for isolated points, true for curve pieces.
  bool extended = false;
  /// Points of the zero set spread over the cluster (only the point itself when
  /// not extended).
  std::vector<std::vector<double>> samples;
  /// Typical distance between neighbouring samples.
  double spacing = 0.0;
};

/// Common zero of numerator and denominator. `diverges` records whether |R|
/// still grows without bound when approaching it.
struct IndeterminatePoint {
  std::vector<double> point;
  bool diverges = false;
};

struct SingularLocus {
  std::vector<LocusCluster> points;
  /// Excluded from `points`.
  std::vector<IndeterminatePoint> indeterminate;
  Box box;
  double tol = 1e-8;
  bool symmetric = true;
  std::vector<std::string> notes;
};

/// Real points where the canonical denominator of R vanishes inside `box`.
/// The box dimension must match R's variable table. `factor_hints` are
/// polynomials sharing factors with den(R) (the metric entries, typically);
/// den is split along them and each lower-degree piece is searched on its own.
SingularLocus singular_locus(const ScalarCurvature& r, const Box& box, const LocusOptions& options = {},
                             const std::vector<Polynomial>& factor_hints = {});

/// True iff every point has a partner within tol of its negation.
bool symmetry_check(const std::vector<std::vector<double>>& points, double tol);

struct GbtVerdict {
  GbtSign sign = GbtSign::undetermined;
  int chi = 0;
  SingularLocus locus;
  int limit_cycle_count = 0;
  bool periodic_only = false;
  std::vector<std::string> notes;
};

GbtVerdict gbt_limit_cycle_verdict(const TopologyReport& topo, const SingularLocus& locus,
                                   double symmetry_tol = 1e-3);

/// 2(n-1)(4(n-1)-2); DomainError for n < 2.
BigInt hilbert_number(long n);
/// 4^(k-1) (2k - 35/6) + 3*2^k - 5/3, a lower bound for H(2^k - 1).
BigRational christopher_lloyd_bound(long k);
/// df * dg.
BigInt bezout_bound(long df, long dg);

struct HilbertRow {
  long n = 0;
  BigInt h;
  double n_squared = 0;
  double n_squared_log_n = 0;
  double ratio = 0;  // h / n^2
};

struct BoundRow {
  long k = 0;
  long degree = 0;  // 2^k - 1
  BigRational lower_bound;
};

struct HilbertTable {
  std::vector<HilbertRow> rows;
  std::vector<BoundRow> bounds;
};

HilbertTable growth_table(long n_max, long k_max = 0);

}  // namespace gbt

#endif
