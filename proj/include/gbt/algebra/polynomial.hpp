#ifndef GBT_ALGEBRA_POLYNOMIAL_HPP
#define GBT_ALGEBRA_POLYNOMIAL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbt/algebra/rational.hpp"

namespace gbt {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exponents;
  BigRational coefficient;
};

/// Graded-lexicographic comparison; the first variable of the table is the
/// most significant. Returns <0, 0, >0.
int compare_grlex(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial over Q.
///
/// A polynomial carries its own ordered variable table. Terms are stored in
/// strictly decreasing graded-lex order with no zero coefficients, so two
/// polynomials over the same table are equal iff their term lists are equal.
/// Binary operations on polynomials over different tables first embed both
/// into the merged table (left table, then the unseen symbols of the right).
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables);

  static Polynomial constant(const BigRational& value, std::vector<std::string> variables = {});
  /// The polynomial `name`; the symbol is appended to the table if missing.
  static Polynomial variable(std::string_view name, std::vector<std::string> variables = {});
  /// Builds from arbitrary (unsorted, possibly repeated or zero) terms.
  static Polynomial from_terms(std::vector<std::string> variables, std::vector<Term> terms);

  const std::vector<std::string>& variables() const { return vars_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  BigRational constant_value() const;
  /// Total degree; 0 for the zero polynomial.
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Leading term in graded-lex order. Precondition: nonzero.
  const Term& leading_term() const { return terms_.front(); }

  /// Re-expresses the polynomial over `table`, which must contain every
  /// symbol the polynomial actually uses.
  Polynomial with_variables(const std::vector<std::string>& table) const;
  /// Drops table entries the polynomial does not use.
  Polynomial trimmed() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const BigRational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const BigRational& s) { return a *= s; }
  friend Polynomial operator*(const BigRational& s, Polynomial a) { return a *= s; }

  /// Equality of values: tables are aligned before comparing.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Partial derivative. Throws std::invalid_argument for an unknown symbol.
  Polynomial derivative(std::string_view var) const;
  Polynomial derivative(std::size_t var) const;

  /// Substitutes a value for `var` and removes it from the table.
  Polynomial substitute(std::string_view var, const BigRational& value) const;

  /// Multiplies by var^power (var given by table index).
  Polynomial shifted(std::size_t var, std::uint32_t power) const;

  BigRational evaluate(std::span<const BigRational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Canonical text: graded-lex descending, `*` products, `^` powers.
  std::string to_string() const;

private:
  void canonicalize();

  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

/// Multiplies by the scalar that makes all coefficients coprime integers
/// (leading sign kept). Zero stays zero.
Polynomial primitive_part(const Polynomial& p);

Polynomial pow(const Polynomial& base, long exponent);

/// Quotient when `divisor` divides `dividend` exactly, otherwise nullopt.
/// Throws DomainError when `divisor` is zero.
std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor);

/// Greatest common divisor: primitive integer polynomial with positive
/// graded-lex leading coefficient. gcd(p, 0) = normalized p; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Union of two variable tables: `a` followed by the unseen symbols of `b`.
std::vector<std::string> merge_tables(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b);

}  // namespace gbt

#endif
