#include "wmvt/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>

namespace wmvt {

namespace {

// Shares the repeated-squaring path with the jet so order-0 jets and plain
// evaluation agree bit for bit.
double powi(double base, double exponent) {
  constexpr double kMaxIntegral = double(1u << 30);
  if (exponent >= 0 && exponent <= kMaxIntegral && std::floor(exponent) == exponent) {
    auto n = static_cast<std::uint32_t>(exponent);
    double result = 1.0;
    double sq = base;
    while (n != 0) {
      if (n & 1u) result = result * sq;
      n >>= 1;
      if (n != 0) sq = sq * sq;
    }
    return result;
  }
  if (!(base > 0)) throw DomainError("non-integer power of non-positive value");
  return std::exp(std::log(base) * exponent);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = lhs + parse_term();
      else if (accept('-'))
        lhs = lhs - parse_term();
      else
        return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*'))
        lhs = lhs * parse_factor();
      else if (accept('/'))
        lhs = lhs / parse_factor();
      else
        return lhs;
    }
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    if (accept('^')) {
      skip_ws();
      return pow(base, parse_number());
    }
    return base;
  }

  double parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("expected number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark;
        fail("malformed exponent");
      }
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(value)) {
      pos_ = start;
      fail("number out of range");
    }
    return value;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -parse_atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "x") return Expr::variable();
      Expr (*fn)(const Expr&) = nullptr;
      if (id == "exp") fn = &exp;
      else if (id == "log") fn = &log;
      else if (id == "sin") fn = &sin;
      else if (id == "cos") fn = &cos;
      else if (id == "sqrt") fn = &sqrt;
      if (fn == nullptr) {
        pos_ = start;
        fail("unknown identifier '" + std::string(id) + "'");
      }
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      return fn(arg);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Binding strength: sums 1, products 2, powers 3, atoms 4.
int precedence(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
      return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div:
      return 2;
    case Expr::Op::Pow:
      return 3;
    default:
      return 4;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void unparse(const Expr& e, int min_prec, std::string& out) {
  const bool wrap = precedence(e) < min_prec;
  if (wrap) out += '(';
  switch (e.op()) {
    case Expr::Op::Var:
      out += 'x';
      break;
    case Expr::Op::Const:
      // Negative literals only arise from programmatic construction; they
      // reparse as a negated literal.
      out += format_number(e.value());
      break;
    case Expr::Op::Neg:
      out += '-';
      unparse(e.lhs(), 4, out);
      break;
    case Expr::Op::Exp:
    case Expr::Op::Log:
    case Expr::Op::Sin:
    case Expr::Op::Cos:
    case Expr::Op::Sqrt: {
      static constexpr const char* names[] = {"exp", "log", "sin", "cos", "sqrt"};
      out += names[static_cast<int>(e.op()) - static_cast<int>(Expr::Op::Exp)];
      out += '(';
      unparse(e.lhs(), 0, out);
      out += ')';
      break;
    }
    case Expr::Op::Pow:
      unparse(e.lhs(), 4, out);
      out += '^';
      out += format_number(e.value());
      break;
    case Expr::Op::Add:
    case Expr::Op::Sub:
      unparse(e.lhs(), 1, out);
      out += e.op() == Expr::Op::Add ? " + " : " - ";
      unparse(e.rhs(), 2, out);
      break;
    case Expr::Op::Mul:
    case Expr::Op::Div:
      unparse(e.lhs(), 2, out);
      out += e.op() == Expr::Op::Mul ? '*' : '/';
      unparse(e.rhs(), 3, out);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

Expr::Expr() : node_(std::make_shared<const Node>(Node{Op::Var, 0.0, nullptr, nullptr})) {}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite constant");
  return make(Op::Const, value, nullptr, nullptr);
}

Expr Expr::make(Op op, double value, const Expr* lhs, const Expr* rhs) {
  Node n{op, value, nullptr, nullptr};
  if (lhs) n.lhs = std::make_shared<const Expr>(*lhs);
  if (rhs) n.rhs = std::make_shared<const Expr>(*rhs);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

bool Expr::is_unary() const {
  return op() == Op::Neg || op() == Op::Exp || op() == Op::Log || op() == Op::Sin ||
         op() == Op::Cos || op() == Op::Sqrt || op() == Op::Pow;
}

bool Expr::is_binary() const {
  return op() == Op::Add || op() == Op::Sub || op() == Op::Mul || op() == Op::Div;
}

std::string Expr::to_string() const {
  std::string out;
  unparse(*this, 0, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  if ((a.op() == Expr::Op::Const || a.op() == Expr::Op::Pow) && a.value() != b.value()) return false;
  if (a.is_unary()) return a.lhs() == b.lhs();
  if (a.is_binary()) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  return true;
}

Expr operator-(const Expr& a) { return Expr::make(Expr::Op::Neg, 0, &a, nullptr); }
Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Add, 0, &a, &b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Sub, 0, &a, &b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Mul, 0, &a, &b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Div, 0, &a, &b); }
Expr exp(const Expr& a) { return Expr::make(Expr::Op::Exp, 0, &a, nullptr); }
Expr log(const Expr& a) { return Expr::make(Expr::Op::Log, 0, &a, nullptr); }
Expr sin(const Expr& a) { return Expr::make(Expr::Op::Sin, 0, &a, nullptr); }
Expr cos(const Expr& a) { return Expr::make(Expr::Op::Cos, 0, &a, nullptr); }
Expr sqrt(const Expr& a) { return Expr::make(Expr::Op::Sqrt, 0, &a, nullptr); }

Expr pow(const Expr& a, double exponent) {
  if (!std::isfinite(exponent) || exponent < 0)
    throw std::invalid_argument("exponent must be a finite non-negative literal");
  return Expr::make(Expr::Op::Pow, exponent, &a, nullptr);
}

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

double eval(const Expr& e, double x) {
  switch (e.op()) {
    case Expr::Op::Var:
      return x;
    case Expr::Op::Const:
      return e.value();
    case Expr::Op::Neg:
      return -eval(e.lhs(), x);
    case Expr::Op::Exp:
      return std::exp(eval(e.lhs(), x));
    case Expr::Op::Log: {
      const double a = eval(e.lhs(), x);
      if (!(a > 0)) throw DomainError("log of non-positive value");
      return std::log(a);
    }
    case Expr::Op::Sin:
      return std::sin(eval(e.lhs(), x));
    case Expr::Op::Cos:
      return std::cos(eval(e.lhs(), x));
    case Expr::Op::Sqrt: {
      const double a = eval(e.lhs(), x);
      if (a < 0) throw DomainError("sqrt outside its differentiable domain");
      return std::sqrt(a);
    }
    case Expr::Op::Pow:
      return powi(eval(e.lhs(), x), e.value());
    case Expr::Op::Add:
      return eval(e.lhs(), x) + eval(e.rhs(), x);
    case Expr::Op::Sub:
      return eval(e.lhs(), x) - eval(e.rhs(), x);
    case Expr::Op::Mul:
      return eval(e.lhs(), x) * eval(e.rhs(), x);
    case Expr::Op::Div: {
      const double b = eval(e.rhs(), x);
      if (b == 0) throw DomainError("division by zero");
      return eval(e.lhs(), x) / b;
    }
  }
  throw std::logic_error("unhandled expression node");
}

}  // namespace wmvt
