#ifndef GBT_SYSDSL_HPP
#define GBT_SYSDSL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gbt/algebra/polynomial.hpp"

namespace gbt {

/// Failure while reading a system file. `line`/`column` are 1-based.
class ParseError : public std::runtime_error {
public:
  enum class Kind { lexer, syntax, semantic };

  ParseError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  Kind kind_;
  int line_;
  int column_;
};

/// A system file could not be read.
class FileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Polynomial ODE system dx_i/dt = f_i(states, params).
///
/// Every component lives over the table `states ++ params`.
struct VectorField {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> params;
  std::vector<Polynomial> components;

  std::vector<std::string> symbols() const;
  unsigned degree() const;
  std::size_t dimension() const { return states.size(); }
  bool is_specialized() const { return params.empty(); }

  friend bool operator==(const VectorField& a, const VectorField& b);
};

/// Entry (i, j) = d f_i / d s_j.
using JacobianMatrix = std::vector<std::vector<Polynomial>>;

VectorField parse_system(std::string_view text);
VectorField load_system(const std::string& path);

JacobianMatrix jacobian(const VectorField& vf);

/// Substitutes parameter values; unbound parameters remain symbolic.
/// Throws std::invalid_argument when a binding names a state or an unknown
/// symbol.
VectorField specialize(const VectorField& vf, const std::map<std::string, BigRational>& bindings);

/// Renders the system in the file format accepted by parse_system.
std::string render(const VectorField& vf);

}  // namespace gbt

#endif
