#include "distint/parser.hpp"

#include <cctype>

namespace distint {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr unsigned kMaxExponent = 64;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::unique_ptr<Expr> parse() {
    auto e = expr();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  bool peek(char c) {
    skip_space();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::unique_ptr<Expr> node(Expr::Kind k, int line, int col) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->line = line;
    e->column = col;
    return e;
  }

  std::unique_ptr<Expr> binary(Expr::Kind k, std::unique_ptr<Expr> a, std::unique_ptr<Expr> b, int line, int col) {
    auto e = node(k, line, col);
    e->children.push_back(std::move(a));
    e->children.push_back(std::move(b));
    return e;
  }

  std::unique_ptr<Expr> expr() {
    auto lhs = term();
    for (;;) {
      skip_space();
      if (pos_ >= src_.size() || (src_[pos_] != '+' && src_[pos_] != '-')) return lhs;
      const int l = line_, c = col_;
      const Expr::Kind k = src_[pos_] == '+' ? Expr::Kind::add : Expr::Kind::sub;
      advance();
      lhs = binary(k, std::move(lhs), term(), l, c);
    }
  }

  std::unique_ptr<Expr> term() {
    auto lhs = unary();
    while (peek('*')) {
      const int l = line_, c = col_;
      advance();
      lhs = binary(Expr::Kind::mul, std::move(lhs), unary(), l, c);
    }
    return lhs;
  }

  std::unique_ptr<Expr> unary() {
    skip_space();
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      const bool neg = src_[pos_] == '-';
      const int l = line_, c = col_;
      advance();
      auto operand = unary();
      if (!neg) return operand;
      auto e = node(Expr::Kind::neg, l, c);
      e->children.push_back(std::move(operand));
      return e;
    }
    return power();
  }

  std::unique_ptr<Expr> power() {
    auto base = primary();
    if (peek('^')) {
      const int l = line_, c = col_;
      advance();
      skip_space();
      const unsigned n = unsigned_literal("exponent");
      if (n > kMaxExponent) fail("exponent exceeds " + std::to_string(kMaxExponent));
      auto e = node(Expr::Kind::pow, l, c);
      e->exponent = n;
      e->children.push_back(std::move(base));
      return e;
    }
    return base;
  }

  unsigned unsigned_literal(const char* what) {
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail(std::string("expected ") + what);
    unsigned long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(src_[pos_] - '0');
      if (v > 1000000) fail(std::string(what) + " too large");
      advance();
    }
    return static_cast<unsigned>(v);
  }

  std::string digits() {
    std::string s;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      s += src_[pos_];
      advance();
    }
    return s;
  }

  // 'x' followed by a vector index; returns the index.
  int vector_name() {
    skip_space();
    if (pos_ >= src_.size() || src_[pos_] != 'x') fail("expected vector variable x<j>");
    advance();
    return static_cast<int>(unsigned_literal("variable index"));
  }

  std::string identifier() {
    std::string s;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
      s += src_[pos_];
      advance();
    }
    return s;
  }

  std::unique_ptr<Expr> primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const int l = line_, c = col_;
    const char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num = digits();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        advance();
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        num += "/" + den;
      }
      auto e = node(Expr::Kind::number, l, c);
      e->value = Rational(num);
      e->value.canonicalize();
      return e;
    }
    if (ch == '(') {
      advance();
      auto e = expr();
      expect(')');
      return e;
    }
    if (ch == 'x') {
      advance();
      const int j = static_cast<int>(unsigned_literal("variable index"));
      if (pos_ >= src_.size() || src_[pos_] != '_') fail("expected '_' in component variable");
      advance();
      const int i = static_cast<int>(unsigned_literal("component index"));
      auto e = node(Expr::Kind::variable, l, c);
      e->var = j;
      e->comp = i;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::string name = identifier();
      if (name == "dot") {
        expect('(');
        const int a = vector_name();
        expect(',');
        const int b = vector_name();
        expect(')');
        auto e = node(Expr::Kind::dot, l, c);
        e->var = a;
        e->comp = b;
        return e;
      }
      if (name == "normsq") {
        expect('(');
        const int j = vector_name();
        expect(')');
        auto e = node(Expr::Kind::normsq, l, c);
        e->var = j;
        return e;
      }
      throw ParseError("unknown identifier '" + name + "'", l, c);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

void check_var(const Expr& e, int j, int num_vars) {
  if (j < 1 || j > num_vars)
    throw ParseError("vector index x" + std::to_string(j) + " out of range 1.." + std::to_string(num_vars), e.line,
                     e.column);
}

}  // namespace

std::unique_ptr<Expr> parse_expr(std::string_view source) { return Parser(source).parse(); }

VectorPoly lower(const Expr& e, int m, int num_vars) {
  switch (e.kind) {
    case Expr::Kind::number:
      return VectorPoly::constant(m, num_vars, e.value);
    case Expr::Kind::variable:
      check_var(e, e.var, num_vars);
      if (e.comp < 1 || e.comp > m)
        throw ParseError("component index " + std::to_string(e.comp) + " out of range 1.." + std::to_string(m), e.line,
                         e.column);
      return VectorPoly::variable(m, num_vars, e.var - 1, e.comp - 1);
    case Expr::Kind::dot:
      check_var(e, e.var, num_vars);
      check_var(e, e.comp, num_vars);
      return VectorPoly::dot(m, num_vars, e.var - 1, e.comp - 1);
    case Expr::Kind::normsq:
      check_var(e, e.var, num_vars);
      return VectorPoly::normsq(m, num_vars, e.var - 1);
    case Expr::Kind::add:
      return lower(*e.children[0], m, num_vars) + lower(*e.children[1], m, num_vars);
    case Expr::Kind::sub:
      return lower(*e.children[0], m, num_vars) - lower(*e.children[1], m, num_vars);
    case Expr::Kind::mul:
      return lower(*e.children[0], m, num_vars) * lower(*e.children[1], m, num_vars);
    case Expr::Kind::neg:
      return -lower(*e.children[0], m, num_vars);
    case Expr::Kind::pow: {
      VectorPoly base = lower(*e.children[0], m, num_vars);
      if (base.degree() * static_cast<long>(e.exponent) > 255)
        throw ParseError("degree exceeds 255", e.line, e.column);
      return pow(base, e.exponent);
    }
  }
  throw std::logic_error("unhandled expression kind");
}

VectorPoly parse_poly(std::string_view source, int m, int num_vars) {
  if (m < 1 || num_vars < 1) throw std::invalid_argument("parse_poly: need m >= 1 and K >= 1");
  return lower(*parse_expr(source), m, num_vars);
}

std::vector<VectorPoly> parse_poly_list(std::string_view source, int m, int num_vars) {
  std::vector<VectorPoly> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = source.find(';', start);
    const std::string_view part = source.substr(start, end == std::string_view::npos ? end : end - start);
    try {
      out.push_back(parse_poly(part, m, num_vars));
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      const int shift = e.line() == 1 ? static_cast<int>(start) : 0;
      throw ParseError(msg.substr(msg.find(": ") + 2), e.line(), e.column() + shift);
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace distint
