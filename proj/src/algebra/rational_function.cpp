#include "gbt/algebra/rational_function.hpp"

#include "gbt/algebra/horner.hpp"

namespace gbt {

namespace {

bool is_one(const Polynomial& p) { return p.is_constant() && p.constant_value() == 1; }

Polynomial quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_constant()) return a * BigRational(1 / b.constant_value());
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("rational function: expected exact division failed");
  return *std::move(q);
}

std::vector<std::string> render_point(std::span<const BigRational> point) {
  std::vector<std::string> out;
  for (const auto& x : point) out.push_back(x.get_str());
  return out;
}

std::vector<std::string> render_point(std::span<const double> point) {
  std::vector<std::string> out;
  for (double x : point) out.push_back(std::to_string(x));
  return out;
}

}  // namespace

RationalFunction RationalFunction::normalize_coprime(Polynomial num, Polynomial den) {
  if (num.variables() != den.variables()) {
    auto table = merge_tables(num.variables(), den.variables());
    num = num.with_variables(table);
    den = den.with_variables(table);
  }
  if (num.is_zero()) return RationalFunction(num, Polynomial::constant(1, num.variables()), Canonical{});
  BigInt den_lcm = 1, num_gcd = 0;
  for (const auto* p : {&num, &den})
    for (const auto& t : p->terms()) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
    }
  BigRational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (den.leading_term().coefficient < 0) scale = -scale;
  num *= scale;
  den *= scale;
  return RationalFunction(std::move(num), std::move(den), Canonical{});
}

RationalFunction::RationalFunction(const Polynomial& p)
    : num_(p), den_(Polynomial::constant(1, p.variables())) {
  *this = normalize_coprime(num_, den_);
}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  Polynomial g = gcd(num, den);
  if (g.is_constant()) {
    *this = normalize_coprime(num, den);
  } else {
    *this = normalize_coprime(quotient(num, g), quotient(den, g));
  }
}

RationalFunction RationalFunction::constant(const BigRational& c, std::vector<std::string> variables) {
  return RationalFunction(Polynomial::constant(c, std::move(variables)));
}

RationalFunction RationalFunction::with_variables(const std::vector<std::string>& table) const {
  return RationalFunction(num_.with_variables(table), den_.with_variables(table), Canonical{});
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_, Canonical{});
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.variables() != b.variables()) {
    auto table = merge_tables(a.variables(), b.variables());
    return a.with_variables(table) + b.with_variables(table);
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  Polynomial g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    return RationalFunction::normalize_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  Polynomial bd = quotient(a.den_, g);
  Polynomial dd = quotient(b.den_, g);
  Polynomial num = a.num_ * dd + b.num_ * bd;
  Polynomial den = bd * b.den_;
  if (num.is_zero()) return RationalFunction::constant(0, a.variables());
  Polynomial g2 = gcd(num, g);
  if (!g2.is_constant()) {
    num = quotient(num, g2);
    den = quotient(den, g2);
  }
  return RationalFunction::normalize_coprime(std::move(num), std::move(den));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.variables() != b.variables()) {
    auto table = merge_tables(a.variables(), b.variables());
    return a.with_variables(table) * b.with_variables(table);
  }
  if (a.is_zero() || b.is_zero()) return RationalFunction::constant(0, a.variables());
  Polynomial an = a.num_, ad = a.den_, bn = b.num_, bdn = b.den_;
  if (!ad.is_constant() && !bn.is_constant()) {
    Polynomial g = gcd(bn, ad);
    if (!g.is_constant()) {
      bn = quotient(bn, g);
      ad = quotient(ad, g);
    }
  }
  if (!bdn.is_constant() && !an.is_constant()) {
    Polynomial g = gcd(an, bdn);
    if (!g.is_constant()) {
      an = quotient(an, g);
      bdn = quotient(bdn, g);
    }
  }
  return RationalFunction::normalize_coprime(an * bn, ad * bdn);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return a * RationalFunction::normalize_coprime(b.den_, b.num_);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

RationalFunction RationalFunction::derivative(std::string_view var) const {
  if (!num_.index_of(var)) throw std::invalid_argument("unknown symbol '" + std::string(var) + "'");
  Polynomial dn = num_.derivative(var);
  if (den_.is_constant()) return RationalFunction(dn, den_);
  Polynomial dd = den_.derivative(var);
  Polynomial g = gcd(den_, dd);
  Polynomial dg = quotient(den_, g);
  Polynomial ddg = quotient(dd, g);
  return RationalFunction(dn * dg - num_ * ddg, den_ * dg);
}

RationalFunction RationalFunction::substitute(std::string_view var, const BigRational& value) const {
  Polynomial d = den_.substitute(var, value);
  if (d.is_zero()) throw PoleError("substitution makes the denominator vanish identically", {value.get_str()});
  return RationalFunction(num_.substitute(var, value), d);
}

BigRational RationalFunction::evaluate(std::span<const BigRational> point) const {
  BigRational d = den_.evaluate(point);
  if (d == 0) throw PoleError("pole: denominator vanishes", render_point(point));
  return num_.evaluate(point) / d;
}

double RationalFunction::evaluate(std::span<const double> point) const {
  if (point.size() != variables().size()) throw std::invalid_argument("point dimension mismatch");
  double d = HornerForm(den_).evaluate(point);
  if (d == 0.0) throw PoleError("pole: denominator vanishes", render_point(point));
  return HornerForm(num_).evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
  if (is_one(den_)) return num_.to_string();
  auto bare = [](const Polynomial& p) {
    if (p.size() != 1) return false;
    const auto& t = p.leading_term();
    return p.is_constant() || t.coefficient == 1;
  };
  std::string n = num_.size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  std::string d = bare(den_) ? den_.to_string() : "(" + den_.to_string() + ")";
  return n + "/" + d;
}

RationalFunction pow(const RationalFunction& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw DomainError("negative power of zero");
    return pow(RationalFunction::constant(1, base.variables()) / base, -exponent);
  }
  // Powers of a coprime pair stay coprime.
  return RationalFunction(pow(base.numerator(), exponent), pow(base.denominator(), exponent));
}

}  // namespace gbt
