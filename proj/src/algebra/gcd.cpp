// Multivariate GCD over Z by subresultant remainder sequences on a recursive
// univariate view. Coefficient polynomials keep the full variable table with
// a zero exponent in the main variable.

#include <algorithm>
#include <cstdint>
#include <random>

#include "gbt/algebra/polynomial.hpp"

namespace gbt {

namespace {

using UPoly = std::vector<Polynomial>;  // coeffs[i] multiplies v^i; empty = zero

UPoly to_upoly(const Polynomial& p, std::size_t v) {
  const auto& vars = p.variables();
  if (p.is_zero()) return {};
  std::vector<std::vector<Term>> buckets(p.degree_in(v) + 1);
  for (const auto& t : p.terms()) {
    Exponents e = t.exponents;
    auto k = e[v];
    e[v] = 0;
    buckets[k].push_back(Term{std::move(e), t.coefficient});
  }
  UPoly out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(vars, std::move(b)));
  return out;
}

Polynomial from_upoly(const UPoly& u, std::size_t v, const std::vector<std::string>& vars) {
  Polynomial out(vars);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero()) out += u[i].shifted(v, static_cast<std::uint32_t>(i));
  return out;
}

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

BigInt integer_content(const Polynomial& p) {
  BigInt g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coefficient.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial positive_lead(Polynomial p) {
  if (!p.is_zero() && p.leading_term().coefficient < 0) return -p;
  return p;
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("gcd: expected exact division failed");
  return *std::move(q);
}

Polynomial gcd_z(const Polynomial& a, const Polynomial& b);

Polynomial content_of(const UPoly& u) {
  Polynomial g;
  bool first = true;
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    if (it->is_zero()) continue;
    if (first) {
      g = positive_lead(*it);
      first = false;
    } else {
      g = gcd_z(g, *it);
    }
    if (g.is_constant() && g.constant_value() == 1) break;
  }
  return g;
}

Polynomial content_in(const Polynomial& p, std::size_t v) { return content_of(to_upoly(p, v)); }

UPoly prem(UPoly r, const UPoly& b) {
  const std::size_t n = b.size() - 1;
  const Polynomial& lcb = b.back();
  long e = static_cast<long>(r.size()) - static_cast<long>(n);
  while (!r.empty() && r.size() - 1 >= n) {
    Polynomial lcr = r.back();
    const std::size_t shift = r.size() - 1 - n;
    for (auto& c : r)
      if (!c.is_zero()) c *= lcb;
    for (std::size_t j = 0; j <= n; ++j)
      if (!b[j].is_zero()) r[j + shift] -= lcr * b[j];
    trim(r);
    --e;
  }
  if (e > 0 && !r.empty()) {
    Polynomial f = pow(lcb, e);
    for (auto& c : r)
      if (!c.is_zero()) c *= f;
  }
  return r;
}

// Returns a v-polynomial whose primitive part is the gcd of primitive A and B.
UPoly subresultant(UPoly a, UPoly b, const std::vector<std::string>& vars) {
  if (a.size() < b.size()) std::swap(a, b);
  Polynomial g = Polynomial::constant(1, vars);
  Polynomial h = Polynomial::constant(1, vars);
  while (true) {
    const long delta = static_cast<long>(a.size()) - static_cast<long>(b.size());
    UPoly r = prem(a, b);
    if (r.empty()) return b;
    if (r.size() == 1) return UPoly{Polynomial::constant(1, vars)};
    a = std::move(b);
    Polynomial divisor = g * pow(h, delta);
    for (auto& c : r)
      if (!c.is_zero()) c = exact_quotient(c, divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_quotient(pow(g, delta), pow(h, delta - 1));
    }
  }
}

// Modular certificate that primitive A and B are coprime in v: if their images
// under a random evaluation of the other variables mod a prime keep their
// degree and have a constant gcd, the true gcd has degree 0 in v.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % kPrime);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t eval_mod(const Polynomial& p, const std::vector<std::uint64_t>& point) {
  std::uint64_t acc = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t c = mpz_fdiv_ui(t.coefficient.get_num_mpz_t(), kPrime);
    for (std::size_t k = 0; k < point.size(); ++k)
      if (t.exponents[k]) c = mulmod(c, powmod(point[k], t.exponents[k]));
    acc = (acc + c) % kPrime;
  }
  return acc;
}

std::size_t gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto strip = [](std::vector<std::uint64_t>& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
  };
  strip(a);
  strip(b);
  while (!b.empty()) {
    if (a.size() < b.size()) {
      std::swap(a, b);
      continue;
    }
    const std::uint64_t inv = powmod(b.back(), kPrime - 2);
    while (a.size() >= b.size() && !a.empty()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[j + shift] = (a[j + shift] + kPrime - mulmod(f, b[j])) % kPrime;
      strip(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

bool coprime_certificate(const UPoly& a, const UPoly& b, std::size_t nvars) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + a.size() * 131 + b.size());
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::uint64_t> point(nvars);
    for (auto& x : point) x = 1 + rng() % (kPrime - 1);
    std::vector<std::uint64_t> ia, ib;
    for (const auto& c : a) ia.push_back(eval_mod(c, point));
    for (const auto& c : b) ib.push_back(eval_mod(c, point));
    if (ia.back() == 0 || ib.back() == 0) continue;
    return gcd_degree_mod(std::move(ia), std::move(ib)) == 0;
  }
  return false;
}

Polynomial gcd_z(const Polynomial& a, const Polynomial& b) {
  const auto& vars = a.variables();
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  if (a.is_constant() || b.is_constant()) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), integer_content(a).get_mpz_t(), integer_content(b).get_mpz_t());
    return Polynomial::constant(BigRational(g), vars);
  }
  const std::size_t n = vars.size();
  for (std::size_t v = 0; v < n; ++v) {
    const bool ua = a.depends_on(v), ub = b.depends_on(v);
    if (ua && !ub) return gcd_z(content_in(a, v), b);
    if (ub && !ua) return gcd_z(a, content_in(b, v));
  }
  std::size_t main = n;
  unsigned best = ~0u;
  for (std::size_t v = 0; v < n; ++v) {
    if (!a.depends_on(v)) continue;
    unsigned d = std::max(a.degree_in(v), b.degree_in(v));
    if (d < best) {
      best = d;
      main = v;
    }
  }
  UPoly ua = to_upoly(a, main), ub = to_upoly(b, main);
  Polynomial ca = content_of(ua), cb = content_of(ub);
  Polynomial c = gcd_z(ca, cb);
  for (auto& x : ua)
    if (!x.is_zero()) x = exact_quotient(x, ca);
  for (auto& x : ub)
    if (!x.is_zero()) x = exact_quotient(x, cb);
  if (coprime_certificate(ua, ub, n)) return positive_lead(c);
  UPoly g = subresultant(std::move(ua), std::move(ub), vars);
  Polynomial cg = content_of(g);
  for (auto& x : g)
    if (!x.is_zero()) x = exact_quotient(x, cg);
  return positive_lead(c * from_upoly(g, main, vars));
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.variables() != b.variables()) {
    auto table = merge_tables(a.variables(), b.variables());
    return gcd(a.with_variables(table), b.with_variables(table));
  }
  if (a.is_zero() && b.is_zero()) return a;
  Polynomial g = gcd_z(primitive_part(a), primitive_part(b));
  return positive_lead(primitive_part(g));
}

}  // namespace gbt
