// Line-oriented reader for polynomial system files. Right-hand sides are
// parsed by precedence climbing straight into canonical polynomials.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "gbt/sysdsl.hpp"

namespace gbt {

namespace {

std::string kind_label(ParseError::Kind k) {
  switch (k) {
    case ParseError::Kind::lexer: return "lexer error";
    case ParseError::Kind::syntax: return "parse error";
    case ParseError::Kind::semantic: return "semantic error";
  }
  return "error";
}

}  // namespace

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error(kind_label(kind) + " at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { ident, number, plus, minus, star, slash, caret, lparen, rparen, equals, colon, comma, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident: return "identifier '" + t.text + "'";
    case Tok::number: return "number '" + t.text + "'";
    case Tok::end: return "end of line";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex_line(std::string_view src, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t k) { return static_cast<int>(k) + 1; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), line, col(i)});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), line, col(i)});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '=': k = Tok::equals; break;
      case ':': k = Tok::colon; break;
      case ',': k = Tok::comma; break;
      default: {
        std::string shown = std::isprint(static_cast<unsigned char>(c))
                                ? std::string(1, c)
                                : "\\x" + [&] {
                                    std::ostringstream os;
                                    os << std::hex << (static_cast<unsigned>(c) & 0xffu);
                                    return os.str();
                                  }();
        throw ParseError(ParseError::Kind::lexer, line, col(i), "unexpected character '" + shown + "'");
      }
    }
    out.push_back({k, std::string(1, c), line, col(i)});
    ++i;
  }
  out.push_back({Tok::end, "", line, col(src.size())});
  return out;
}

struct Equation {
  std::string state;
  std::vector<Token> rhs;  // terminated by Tok::end
  Token lhs;
};

// Builds polynomials over a symbol table that may grow with undeclared
// parameters (when no explicit params header was given).
class ExprParser {
public:
  ExprParser(const std::vector<Token>& toks, std::vector<std::string>& table, bool allow_new)
      : toks_(toks), table_(table), allow_new_(allow_new) {}

  Polynomial parse() {
    Polynomial p = expr(1);
    if (peek().kind != Tok::end)
      throw ParseError(ParseError::Kind::syntax, peek().line, peek().column,
                       "expected operator or end of line, found " + describe(peek()));
    return p;
  }

private:
  static int precedence(Tok k) {
    switch (k) {
      case Tok::plus:
      case Tok::minus: return 1;
      case Tok::star:
      case Tok::slash: return 2;
      case Tok::caret: return 4;
      default: return -1;
    }
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  Polynomial expr(int min_prec) {
    Polynomial lhs = unary();
    for (;;) {
      const Token& op = peek();
      const int prec = precedence(op.kind);
      if (prec < min_prec) break;
      next();
      const int next_min = op.kind == Tok::caret ? prec : prec + 1;
      Polynomial rhs = expr(next_min);
      lhs = apply(op, std::move(lhs), rhs);
    }
    return lhs;
  }

  Polynomial unary() {
    if (peek().kind == Tok::minus) {
      next();
      return -expr(3);
    }
    if (peek().kind == Tok::plus) {
      next();
      return expr(3);
    }
    return primary();
  }

  Polynomial primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::number:
        try {
          return Polynomial::constant(parse_rational(t.text), table_);
        } catch (const DomainError& e) {
          throw ParseError(ParseError::Kind::lexer, t.line, t.column, e.what());
        }
      case Tok::ident: {
        if (std::find(table_.begin(), table_.end(), t.text) == table_.end()) {
          if (!allow_new_)
            throw ParseError(ParseError::Kind::semantic, t.line, t.column,
                             "undeclared symbol '" + t.text + "'");
          table_.push_back(t.text);
        }
        return Polynomial::variable(t.text, table_);
      }
      case Tok::lparen: {
        Polynomial inner = expr(1);
        if (peek().kind != Tok::rparen)
          throw ParseError(ParseError::Kind::syntax, peek().line, peek().column,
                           "expected ')', found " + describe(peek()));
        next();
        return inner;
      }
      default:
        throw ParseError(ParseError::Kind::syntax, t.line, t.column,
                         "expected number, symbol or '(', found " + describe(t));
    }
  }

  Polynomial apply(const Token& op, Polynomial lhs, const Polynomial& rhs) {
    switch (op.kind) {
      case Tok::plus: return lhs + rhs;
      case Tok::minus: return lhs - rhs;
      case Tok::star: return lhs * rhs;
      case Tok::slash: {
        if (!rhs.is_constant())
          throw ParseError(ParseError::Kind::semantic, op.line, op.column,
                           "non-polynomial: division by a non-constant expression");
        if (rhs.is_zero())
          throw ParseError(ParseError::Kind::semantic, op.line, op.column, "division by zero");
        return lhs * BigRational(1 / rhs.constant_value());
      }
      case Tok::caret: {
        const BigRational e = rhs.constant_value();
        if (!rhs.is_constant() || e.get_den() != 1 || e < 0)
          throw ParseError(ParseError::Kind::semantic, op.line, op.column,
                           "non-polynomial: exponent must be a non-negative integer");
        if (e > 256)
          throw ParseError(ParseError::Kind::semantic, op.line, op.column, "exponent too large");
        return pow(lhs, e.get_num().get_si());
      }
      default: break;
    }
    throw ParseError(ParseError::Kind::syntax, op.line, op.column, "unexpected operator");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  std::vector<std::string>& table_;
  bool allow_new_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

VectorField parse_system(std::string_view text) {
  VectorField vf;
  std::optional<std::vector<std::string>> declared_params;
  std::vector<Equation> equations;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (trim(raw).empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto toks = lex_line(raw, line_no);

    if (toks[0].kind == Tok::ident && toks[1].kind == Tok::colon) {
      const auto& key = toks[0].text;
      if (key == "name") {
        vf.name = trim(raw.substr(raw.find(':') + 1));
      } else if (key == "params") {
        if (declared_params)
          throw ParseError(ParseError::Kind::semantic, line_no, toks[0].column, "duplicate params header");
        std::vector<std::string> names;
        for (std::size_t i = 2; toks[i].kind != Tok::end; ++i) {
          if (toks[i].kind == Tok::comma) continue;
          if (toks[i].kind != Tok::ident)
            throw ParseError(ParseError::Kind::syntax, line_no, toks[i].column,
                             "expected parameter name, found " + describe(toks[i]));
          if (std::find(names.begin(), names.end(), toks[i].text) != names.end())
            throw ParseError(ParseError::Kind::semantic, line_no, toks[i].column,
                             "duplicate parameter '" + toks[i].text + "'");
          names.push_back(toks[i].text);
        }
        declared_params = std::move(names);
      } else {
        throw ParseError(ParseError::Kind::syntax, line_no, toks[0].column, "unknown header '" + key + "'");
      }
    } else {
      // dX/dt = expr
      const Token& lhs = toks[0];
      if (lhs.kind != Tok::ident || lhs.text.size() < 2 || lhs.text[0] != 'd' ||
          toks[1].kind != Tok::slash || toks[2].kind != Tok::ident ||
          (toks[2].text != "dt" && toks[2].text != "dtau") || toks[3].kind != Tok::equals) {
        throw ParseError(ParseError::Kind::syntax, line_no, lhs.column,
                         "expected 'dX/dt = <expression>' or a 'name:'/'params:' header");
      }
      Equation eq{lhs.text.substr(1), {}, lhs};
      eq.rhs.assign(toks.begin() + 4, toks.end());
      equations.push_back(std::move(eq));
    }
    if (end == text.size()) break;
  }

  if (equations.empty()) throw ParseError(ParseError::Kind::semantic, line_no, 1, "no state equations");
  for (const auto& eq : equations) {
    if (std::find(vf.states.begin(), vf.states.end(), eq.state) != vf.states.end())
      throw ParseError(ParseError::Kind::semantic, eq.lhs.line, eq.lhs.column,
                       "duplicate state '" + eq.state + "'");
    if (declared_params &&
        std::find(declared_params->begin(), declared_params->end(), eq.state) != declared_params->end())
      throw ParseError(ParseError::Kind::semantic, eq.lhs.line, eq.lhs.column,
                       "'" + eq.state + "' declared both as state and parameter");
    vf.states.push_back(eq.state);
  }

  std::vector<std::string> table = vf.states;
  if (declared_params) table.insert(table.end(), declared_params->begin(), declared_params->end());
  std::vector<Polynomial> raw_components;
  for (const auto& eq : equations) {
    ExprParser parser(eq.rhs, table, !declared_params.has_value());
    if (eq.rhs.front().kind == Tok::end)
      throw ParseError(ParseError::Kind::syntax, eq.lhs.line, eq.rhs.front().column, "missing right-hand side");
    raw_components.push_back(parser.parse());
  }
  vf.params.assign(table.begin() + static_cast<std::ptrdiff_t>(vf.states.size()), table.end());
  for (auto& c : raw_components) vf.components.push_back(c.with_variables(table));
  return vf;
}

VectorField load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

}  // namespace gbt
