#include "gbt/algebra/rational.hpp"

#include <cctype>

namespace gbt {

BigRational parse_rational(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational literal");
  std::string s(text);
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  BigRational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    BigInt num(body.substr(0, slash), 10);
    BigInt den(body.substr(slash + 1), 10);
    if (den == 0) throw DomainError("zero denominator in literal '" + s + "'");
    out = BigRational(num, den);
    out.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw DomainError("malformed decimal literal '" + s + "'");
    for (char c : whole + frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw DomainError("malformed decimal literal '" + s + "'");
    BigInt num((whole.empty() ? "0" : whole) + frac, 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    out = BigRational(num, den);
    out.canonicalize();
  } else {
    for (char c : body)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw DomainError("malformed integer literal '" + s + "'");
    out = BigRational(BigInt(body, 10));
  }
  return negative ? BigRational(-out) : out;
}

std::string to_string(const BigRational& value) { return value.get_str(); }

}  // namespace gbt
