#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbt/verdict.hpp"

namespace gbt {

namespace {

double dist_to_negation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] + b[i]) * (a[i] + b[i]);
  return std::sqrt(s);
}

// Cluster j contains the negation of cluster i's first sample.
bool partners(const LocusCluster& i, const LocusCluster& j, double tol) {
  const auto& probe = i.extended ? i.samples.front() : i.point;
  const double reach = tol + (j.extended ? j.spacing : 0.0);
  return std::any_of(j.samples.begin(), j.samples.end(),
                     [&](const std::vector<double>& s) { return dist_to_negation(probe, s) <= reach; });
}

}  // namespace

GbtVerdict gbt_limit_cycle_verdict(const TopologyReport& topo, const SingularLocus& locus, double symmetry_tol) {
  GbtVerdict v;
  v.sign = topo.sign;
  v.chi = topo.chi;
  v.locus = locus;
  if (topo.sign != GbtSign::positive) {
    v.limit_cycle_count = 0;
    v.notes.push_back("sign is " + to_string(topo.sign) + ": the positivity condition chi > 0 does not apply, no cycle count");
  } else if (!locus.symmetric) {
    v.limit_cycle_count = 0;
    v.notes.push_back("divergences of |R| are not centrally symmetric: no limit cycle");
  } else {
    const std::size_t k = locus.points.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (partners(locus.points[i], locus.points[j], symmetry_tol)) parent[find(i)] = find(j);
    int classes = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (find(i) == i) ++classes;
    v.limit_cycle_count = classes;
    if (k == 0) v.notes.push_back("no divergence of |R| in the search box");
    else v.notes.push_back("one limit cycle per central-symmetry class of divergences");
  }
  v.periodic_only = topo.sign == GbtSign::positive && v.limit_cycle_count == 0;
  if (!locus.indeterminate.empty())
    v.notes.push_back(std::to_string(locus.indeterminate.size()) + " indeterminate point(s) excluded from the locus");
  return v;
}

BigInt hilbert_number(long n) {
  if (n < 2) throw DomainError("hilbert_number needs n >= 2, got " + std::to_string(n));
  BigInt m = n - 1;
  return 2 * m * (4 * m - 2);
}

BigRational christopher_lloyd_bound(long k) {
  if (k < 1) throw DomainError("christopher_lloyd_bound needs k >= 1, got " + std::to_string(k));
  BigInt four, two;
  mpz_ui_pow_ui(four.get_mpz_t(), 4, static_cast<unsigned long>(k - 1));
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(k));
  BigRational r = BigRational(four) * (BigRational(2 * k) - BigRational(35, 6)) + BigRational(3 * two) - BigRational(5, 3);
  r.canonicalize();
  return r;
}

BigInt bezout_bound(long df, long dg) {
  if (df < 1 || dg < 1) throw DomainError("bezout_bound needs degrees >= 1");
  return BigInt(df) * BigInt(dg);
}

HilbertTable growth_table(long n_max, long k_max) {
  if (n_max < 2) throw DomainError("growth table needs n_max >= 2, got " + std::to_string(n_max));
  HilbertTable t;
  for (long n = 2; n <= n_max; ++n) {
    HilbertRow row;
    row.n = n;
    row.h = hilbert_number(n);
    row.n_squared = static_cast<double>(n) * static_cast<double>(n);
    row.n_squared_log_n = row.n_squared * std::log(static_cast<double>(n));
    row.ratio = BigRational(row.h, BigInt(n) * BigInt(n)).get_d();
    t.rows.push_back(std::move(row));
  }
  for (long k = 1; k <= k_max; ++k) {
    if (k >= 62) throw DomainError("christopher_lloyd rows limited to k < 62");
    t.bounds.push_back(BoundRow{k, (1L << k) - 1, christopher_lloyd_bound(k)});
  }
  return t;
}

}  // namespace gbt
