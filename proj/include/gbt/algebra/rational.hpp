#ifndef GBT_ALGEBRA_RATIONAL_HPP
#define GBT_ALGEBRA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gbt {

using BigInt = mpz_class;

/// Exact rational number. mpq_class keeps numerator/denominator coprime with a
/// positive denominator, and zero as 0/1.
using BigRational = mpq_class;

/// Raised on arithmetic outside an operation's domain (negative exponents,
/// division by zero, out-of-range arguments).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Parses "12", "-3/4" or a decimal literal such as "0.125" exactly.
BigRational parse_rational(std::string_view text);

std::string to_string(const BigRational& value);

}  // namespace gbt

#endif
