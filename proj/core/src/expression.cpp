#include "plateopt/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace plateopt {

struct Expression::Node {
  enum class Op { number, x1, x2, neg, add, sub, mul, div, pow, min, max, abs, sin, cos, exp, sqrt, step };
  Op op = Op::number;
  double value = 0.0;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(Point2 x) const {
    switch (op) {
      case Op::number: return value;
      case Op::x1: return x.x1;
      case Op::x2: return x.x2;
      case Op::neg: return -args[0]->eval(x);
      case Op::add: return args[0]->eval(x) + args[1]->eval(x);
      case Op::sub: return args[0]->eval(x) - args[1]->eval(x);
      case Op::mul: return args[0]->eval(x) * args[1]->eval(x);
      case Op::div: return args[0]->eval(x) / args[1]->eval(x);
      case Op::pow: {
        const double base = args[0]->eval(x);
        const double e = args[1]->eval(x);
        if (e == 2.0) return base * base;
        return std::pow(base, e);
      }
      case Op::min: {
        double m = args[0]->eval(x);
        for (std::size_t i = 1; i < args.size(); ++i) m = std::min(m, args[i]->eval(x));
        return m;
      }
      case Op::max: {
        double m = args[0]->eval(x);
        for (std::size_t i = 1; i < args.size(); ++i) m = std::max(m, args[i]->eval(x));
        return m;
      }
      case Op::abs: return std::abs(args[0]->eval(x));
      case Op::sin: return std::sin(args[0]->eval(x));
      case Op::cos: return std::cos(args[0]->eval(x));
      case Op::exp: return std::exp(args[0]->eval(x));
      case Op::sqrt: return std::sqrt(args[0]->eval(x));
      case Op::step: return args[0]->eval(x) >= 0.0 ? 1.0 : 0.0;
    }
    return 0.0;
  }

  bool depends_on_position() const {
    if (op == Op::x1 || op == Op::x2) return true;
    for (const auto& a : args) {
      if (a->depends_on_position()) return true;
    }
    return false;
  }
};

namespace {

using Node = std::shared_ptr<const Expression::Node>;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Node parse() {
    Node n = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return n;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message) const { throw ExpressionError(message, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Node make(Expression::Node::Op op, std::vector<Node> args, double value = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = value;
    n->args = std::move(args);
    return n;
  }

  Node expr() {
    Node lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Expression::Node::Op::add, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Expression::Node::Op::sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  Node term() {
    Node lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Expression::Node::Op::mul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Expression::Node::Op::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  Node unary() {
    if (accept('-')) return make(Expression::Node::Op::neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  Node power() {
    Node base = primary();
    if (accept('^')) return make(Expression::Node::Op::pow, {base, unary()});
    return base;
  }

  Node primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Node inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Node number() {
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(Expression::Node::Op::number, {}, value);
  }

  Node identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    using Op = Expression::Node::Op;
    if (name == "x1") return make(Op::x1, {});
    if (name == "x2") return make(Op::x2, {});
    if (name == "pi") return make(Op::number, {}, std::numbers::pi);

    struct Fn {
      const char* name;
      Op op;
      bool variadic;
    };
    static constexpr Fn functions[] = {
        {"min", Op::min, true},   {"max", Op::max, true},   {"abs", Op::abs, false},
        {"sin", Op::sin, false},  {"cos", Op::cos, false},  {"exp", Op::exp, false},
        {"sqrt", Op::sqrt, false}, {"step", Op::step, false},
    };
    for (const auto& fn : functions) {
      if (name != fn.name) continue;
      if (!accept('(')) fail("expected '(' after " + name);
      std::vector<Node> args{expr()};
      while (accept(',')) args.push_back(expr());
      if (!accept(')')) fail("expected ')' to close " + name);
      if (fn.variadic && args.size() < 2) fail(name + " needs at least two arguments");
      if (!fn.variadic && args.size() != 1) fail(name + " takes exactly one argument");
      return make(fn.op, std::move(args));
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expression::Expression(std::string source, std::shared_ptr<const Node> root)
    : source_(std::move(source)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view source) {
  Parser parser(source);
  return Expression(std::string(source), parser.parse());
}

Expression Expression::constant(double value) {
  auto n = std::make_shared<Node>();
  n->value = value;
  std::ostringstream os;
  os.precision(17);
  os << value;
  return Expression(os.str(), n);
}

double Expression::operator()(Point2 x) const { return root_->eval(x); }

bool Expression::is_constant() const noexcept { return !root_->depends_on_position(); }

}  // namespace plateopt
