#ifndef GBT_ALGEBRA_RATIONAL_FUNCTION_HPP
#define GBT_ALGEBRA_RATIONAL_FUNCTION_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gbt/algebra/polynomial.hpp"

namespace gbt {

/// Evaluation hit a zero of the denominator.
class PoleError : public std::runtime_error {
public:
  PoleError(const std::string& what, std::vector<std::string> point)
      : std::runtime_error(what), point_(std::move(point)) {}
  /// Coordinates of the offending point, rendered as text.
  const std::vector<std::string>& point() const { return point_; }

private:
  std::vector<std::string> point_;
};

/// Quotient of polynomials in canonical form:
///  - gcd(num, den) is a unit,
///  - num and den have integer coefficients whose combined content is 1,
///  - the graded-lex leading coefficient of den is positive,
///  - zero is 0/1.
/// Equal values therefore have identical representations.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(const Polynomial& p);  // NOLINT(google-explicit-constructor)
  RationalFunction(const Polynomial& num, const Polynomial& den);
  static RationalFunction constant(const BigRational& c, std::vector<std::string> variables = {});

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const std::vector<std::string>& variables() const { return num_.variables(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction with_variables(const std::vector<std::string>& table) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws DomainError when `b` is the zero function.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  RationalFunction derivative(std::string_view var) const;
  RationalFunction substitute(std::string_view var, const BigRational& value) const;

  /// Exact value; throws PoleError when the denominator vanishes.
  BigRational evaluate(std::span<const BigRational> point) const;
  /// Float value via Horner evaluation of num and den; throws PoleError when
  /// the denominator evaluates to exactly zero.
  double evaluate(std::span<const double> point) const;

  /// `num`, or `(num)/(den)`, parentheses only around multi-term parts.
  std::string to_string() const;

private:
  struct Canonical {};
  RationalFunction(Polynomial num, Polynomial den, Canonical)
      : num_(std::move(num)), den_(std::move(den)) {}
  // Scales an already-coprime pair into canonical form.
  static RationalFunction normalize_coprime(Polynomial num, Polynomial den);

  Polynomial num_;
  Polynomial den_;
};

RationalFunction pow(const RationalFunction& base, long exponent);

}  // namespace gbt

#endif
