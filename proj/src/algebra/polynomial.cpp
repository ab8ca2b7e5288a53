#include "gbt/algebra/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "gbt/algebra/horner.hpp"

namespace gbt {

int compare_grlex(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<std::string> merge_tables(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& s : b)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

namespace {

struct ExponentHash {
  std::size_t operator()(const Exponents& e) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : e) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

// Sorts into decreasing graded-lex order with the total degree computed once per term.
void sort_descending(std::vector<Term>& terms) {
  if (terms.size() < 2) return;
  std::vector<std::pair<std::uint64_t, std::size_t>> key(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::uint64_t d = 0;
    for (auto x : terms[i].exponents) d += x;
    key[i] = {d, i};
  }
  std::sort(key.begin(), key.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return terms[x.second].exponents > terms[y.second].exponents;
  });
  std::vector<Term> sorted;
  sorted.reserve(terms.size());
  for (const auto& k : key) sorted.push_back(std::move(terms[k.second]));
  terms = std::move(sorted);
}

// Merge two sorted term lists, `sign` applied to the right operand.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_grlex(a[i].exponents, b[j].exponents);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coefficient = -out.back().coefficient;
    } else {
      BigRational s = sign < 0 ? BigRational(a[i].coefficient - b[j].coefficient)
                               : BigRational(a[i].coefficient + b[j].coefficient);
      if (s != 0) out.push_back(Term{a[i].exponents, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (sign < 0) out.back().coefficient = -out.back().coefficient;
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<std::string> variables) : vars_(std::move(variables)) {}

Polynomial Polynomial::constant(const BigRational& value, std::vector<std::string> variables) {
  Polynomial p(std::move(variables));
  if (value != 0) p.terms_.push_back(Term{Exponents(p.vars_.size(), 0), value});
  return p;
}

Polynomial Polynomial::variable(std::string_view name, std::vector<std::string> variables) {
  auto it = std::find(variables.begin(), variables.end(), name);
  std::size_t idx = static_cast<std::size_t>(it - variables.begin());
  if (it == variables.end()) variables.emplace_back(name);
  Polynomial p(std::move(variables));
  Exponents e(p.vars_.size(), 0);
  e[idx] = 1;
  p.terms_.push_back(Term{std::move(e), BigRational(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> variables, std::vector<Term> terms) {
  Polynomial p(std::move(variables));
  for (const auto& t : terms)
    if (t.exponents.size() != p.vars_.size())
      throw std::invalid_argument("exponent vector length does not match variable table");
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Polynomial::canonicalize() {
  sort_descending(terms_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coefficient += t.coefficient;
    } else {
      if (!out.empty() && out.back().coefficient == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coefficient == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.front().exponents;
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

BigRational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  const auto& last = terms_.back();
  bool zero_exp = std::all_of(last.exponents.begin(), last.exponents.end(),
                              [](auto x) { return x == 0; });
  return zero_exp ? last.coefficient : BigRational(0);
}

unsigned Polynomial::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.front().exponents;
  return std::accumulate(e.begin(), e.end(), 0u);
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.exponents[var]);
  return d;
}

bool Polynomial::depends_on(std::size_t var) const { return degree_in(var) > 0; }

std::optional<std::size_t> Polynomial::index_of(std::string_view name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

Polynomial Polynomial::with_variables(const std::vector<std::string>& table) const {
  if (table == vars_) return *this;
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(table.begin(), table.end(), vars_[i]);
    if (it == table.end()) {
      if (depends_on(i))
        throw std::invalid_argument("variable '" + vars_[i] + "' missing from target table");
      map[i] = table.size();
    } else {
      map[i] = static_cast<std::size_t>(it - table.begin());
    }
  }
  Polynomial out(table);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(table.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (map[i] < table.size()) e[map[i]] = t.exponents[i];
    out.terms_.push_back(Term{std::move(e), t.coefficient});
  }
  out.canonicalize();
  return out;
}

Polynomial Polynomial::trimmed() const {
  std::vector<std::string> used;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (depends_on(i)) used.push_back(vars_[i]);
  return with_variables(used);
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.vars_ != vars_) {
    auto table = merge_tables(vars_, rhs.vars_);
    *this = with_variables(table);
    terms_ = merge_terms(terms_, rhs.with_variables(table).terms_, +1);
    return *this;
  }
  terms_ = merge_terms(terms_, rhs.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.vars_ != vars_) {
    auto table = merge_tables(vars_, rhs.vars_);
    *this = with_variables(table);
    terms_ = merge_terms(terms_, rhs.with_variables(table).terms_, -1);
    return *this;
  }
  terms_ = merge_terms(terms_, rhs.terms_, -1);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_) {
    auto table = merge_tables(a.vars_, b.vars_);
    return a.with_variables(table) * b.with_variables(table);
  }
  Polynomial out(a.vars_);
  if (a.is_zero() || b.is_zero()) return out;
  if (a.terms_.size() == 1 && a.is_constant()) return b * a.terms_[0].coefficient;
  if (b.terms_.size() == 1 && b.is_constant()) return a * b.terms_[0].coefficient;

  // Clear denominators, accumulate integer products per monomial, rescale once.
  auto integral = [](const std::vector<Term>& ts, BigInt& den) {
    den = 1;
    for (const auto& t : ts) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
    std::vector<BigInt> c(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      c[i] = ts[i].coefficient.get_num() * (den / ts[i].coefficient.get_den());
    return c;
  };
  BigInt da, db;
  const std::vector<BigInt> ca = integral(a.terms_, da), cb = integral(b.terms_, db);

  const std::size_t n = a.vars_.size();
  std::unordered_map<Exponents, std::size_t, ExponentHash> slot;
  slot.reserve(a.terms_.size() * b.terms_.size());
  std::vector<Exponents> mono;
  std::vector<BigInt> acc;
  Exponents e(n);
  BigInt prod;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i].exponents;
    for (std::size_t j = 0; j < b.terms_.size(); ++j) {
      const auto& y = b.terms_[j].exponents;
      for (std::size_t k = 0; k < n; ++k) e[k] = x[k] + y[k];
      mpz_mul(prod.get_mpz_t(), ca[i].get_mpz_t(), cb[j].get_mpz_t());
      auto [it, fresh] = slot.try_emplace(e, mono.size());
      if (fresh) {
        mono.push_back(e);
        acc.push_back(prod);
      } else {
        acc[it->second] += prod;
      }
    }
  }
  const BigInt den = da * db;
  out.terms_.reserve(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (acc[i] == 0) continue;
    BigRational c(acc[i], den);
    c.canonicalize();
    out.terms_.push_back(Term{std::move(mono[i]), std::move(c)});
  }
  sort_descending(out.terms_);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const BigRational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ == b.vars_) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exponents != b.terms_[i].exponents ||
          a.terms_[i].coefficient != b.terms_[i].coefficient)
        return false;
    return true;
  }
  auto table = merge_tables(a.vars_, b.vars_);
  return a.with_variables(table) == b.with_variables(table);
}

Polynomial Polynomial::derivative(std::string_view var) const {
  auto idx = index_of(var);
  if (!idx) throw std::invalid_argument("unknown symbol '" + std::string(var) + "'");
  return derivative(*idx);
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= vars_.size()) throw std::invalid_argument("variable index out of range");
  Polynomial out(vars_);
  for (const auto& t : terms_) {
    auto k = t.exponents[var];
    if (k == 0) continue;
    Term d{t.exponents, t.coefficient * k};
    d.exponents[var] = k - 1;
    out.terms_.push_back(std::move(d));
  }
  // Differentiation is order preserving within the terms that survive, but
  // degree drops can interleave with other terms; re-sort.
  out.canonicalize();
  return out;
}

Polynomial Polynomial::substitute(std::string_view var, const BigRational& value) const {
  auto idx = index_of(var);
  if (!idx) throw std::invalid_argument("unknown symbol '" + std::string(var) + "'");
  std::vector<std::string> table = vars_;
  table.erase(table.begin() + static_cast<std::ptrdiff_t>(*idx));
  Polynomial out(table);
  for (const auto& t : terms_) {
    BigRational c = t.coefficient;
    if (auto k = t.exponents[*idx]; k > 0) {
      BigRational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), k);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), k);
      c *= pw;
    }
    Exponents e = t.exponents;
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(*idx));
    out.terms_.push_back(Term{std::move(e), std::move(c)});
  }
  out.canonicalize();
  return out;
}

Polynomial Polynomial::shifted(std::size_t var, std::uint32_t power) const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.exponents[var] += power;
  // Uniform shift in one variable preserves grlex order.
  return out;
}

BigRational Polynomial::evaluate(std::span<const BigRational> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("point dimension mismatch");
  BigRational acc = 0;
  for (const auto& t : terms_) {
    BigRational m = t.coefficient;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      BigRational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[k].get_num_mpz_t(), t.exponents[k]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[k].get_den_mpz_t(), t.exponents[k]);
      m *= pw;
    }
    acc += m;
  }
  return acc;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("point dimension mismatch");
  return HornerForm(*this).evaluate(point);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coefficient < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    first = false;
    BigRational mag = abs(t.coefficient);
    std::string mono;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[k];
      if (t.exponents[k] > 1) mono += '^' + std::to_string(t.exponents[k]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + '*' + mono;
    }
  }
  return out;
}

Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  BigInt den_lcm = 1, num_gcd = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
  }
  // content = num_gcd / den_lcm
  BigRational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return p * scale;
}

Polynomial pow(const Polynomial& base, long exponent) {
  if (exponent < 0) throw DomainError("negative exponent in polynomial power");
  Polynomial result = Polynomial::constant(1, base.variables());
  Polynomial b = base;
  auto e = static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  if (dividend.variables() != divisor.variables()) {
    auto table = merge_tables(dividend.variables(), divisor.variables());
    return divide_exact(dividend.with_variables(table), divisor.with_variables(table));
  }
  const auto& vars = dividend.variables();
  const std::size_t n = vars.size();
  if (divisor.is_constant()) {
    return dividend * BigRational(1 / divisor.constant_value());
  }
  Polynomial rem = dividend;
  std::vector<Term> quotient;
  const Term& lead = divisor.leading_term();
  const BigRational inv_lead = 1 / lead.coefficient;
  while (!rem.is_zero()) {
    const Term& r = rem.leading_term();
    Exponents e(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (r.exponents[k] < lead.exponents[k]) return std::nullopt;
      e[k] = r.exponents[k] - lead.exponents[k];
    }
    BigRational c = r.coefficient * inv_lead;
    Polynomial mono = Polynomial::from_terms(vars, {Term{e, c}});
    quotient.push_back(Term{std::move(e), std::move(c)});
    rem -= mono * divisor;
  }
  return Polynomial::from_terms(vars, std::move(quotient));
}

}  // namespace gbt
