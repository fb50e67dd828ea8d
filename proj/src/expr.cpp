#include "dulac/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "dulac/error.hpp"
#include "dulac/geometry.hpp"

namespace dulac {

struct ExprNode {
  enum class Op { constant, zeta, iter_log, add, sub, mul, div, neg, pow, exp, log };
  Op op;
  cplx value{};
  int n = 0;  // log depth or integer exponent
  std::shared_ptr<const ExprNode> a, b;
};

namespace {

using Node = std::shared_ptr<const ExprNode>;
using Op = ExprNode::Op;

Node make(Op op, Node a = nullptr, Node b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Node constant(cplx v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::constant;
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Node parse() {
    Node n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_), std::ptrdiff_t(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool ident_char(std::size_t p) const {
    return p < s_.size() && (std::isalnum((unsigned char)s_[p]) || s_[p] == '_');
  }

  Node sum() {
    Node n = product();
    for (;;) {
      if (eat('+'))
        n = make(Op::add, n, product());
      else if (eat('-'))
        n = make(Op::sub, n, product());
      else
        return n;
    }
  }

  Node product() {
    Node n = unary();
    for (;;) {
      if (eat('*'))
        n = make(Op::mul, n, unary());
      else if (eat('/'))
        n = make(Op::div, n, unary());
      else
        return n;
    }
  }

  Node unary() {
    if (eat('-')) return make(Op::neg, unary());
    return power();
  }

  Node power() {
    Node base = primary();
    if (!eat('^')) return base;
    skip();
    bool paren = eat('(');
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int e = 0;
    std::from_chars(s_.data() + start, s_.data() + pos_, e);
    if (paren && !eat(')')) fail("expected ')'");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::pow;
    n->n = neg ? -e : e;
    n->a = base;
    return n;
  }

  Node primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit((unsigned char)c) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Node n = sum();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isalpha((unsigned char)c)) {
      std::size_t start = pos_;
      while (ident_char(pos_)) ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      if (id == "zeta") return make(Op::zeta);
      if (id == "i") return constant({0.0, 1.0});
      if (id == "pi") return constant(std::numbers::pi);
      if (id.size() == 2 && id[0] == 'L' && id[1] >= '1' && id[1] <= '9') {
        auto n = std::make_shared<ExprNode>();
        n->op = Op::iter_log;
        n->n = id[1] - '0';
        return n;
      }
      if (id == "exp" || id == "log") {
        if (!eat('(')) fail("expected '(' after " + std::string(id));
        Node arg = sum();
        if (!eat(')')) fail("expected ')'");
        return make(id == "exp" ? Op::exp : Op::log, arg);
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(id) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Node number() {
    std::size_t start = pos_;
    double v = 0;
    auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("bad number");
    pos_ = std::size_t(p - s_.data());
    if (pos_ < s_.size() && s_[pos_] == 'i' && !ident_char(pos_ + 1)) {
      ++pos_;
      return constant({0.0, v});
    }
    if (ident_char(pos_)) {
      pos_ = start;
      fail("bad number");
    }
    return constant(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool uses_zeta(const ExprNode& n) {
  if (n.op == Op::zeta || n.op == Op::iter_log) return true;
  return (n.a && uses_zeta(*n.a)) || (n.b && uses_zeta(*n.b));
}

cplx eval(const ExprNode& n, cplx z) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::zeta: return z;
    case Op::iter_log:
      if (!(z.real() > exp_iter_zero(n.n)))
        throw Error(ErrorCode::EvalDomainError, "L" + std::to_string(n.n) + " needs Re(zeta) > exp^m(0)");
      return iterated_log(z, n.n);
    case Op::add: return eval(*n.a, z) + eval(*n.b, z);
    case Op::sub: return eval(*n.a, z) - eval(*n.b, z);
    case Op::mul: return eval(*n.a, z) * eval(*n.b, z);
    case Op::div: {
      cplx d = eval(*n.b, z);
      if (d == cplx{}) throw Error(ErrorCode::EvalDomainError, "division by zero");
      return eval(*n.a, z) / d;
    }
    case Op::neg: return -eval(*n.a, z);
    case Op::pow: {
      cplx b = eval(*n.a, z);
      if (n.n < 0 && b == cplx{}) throw Error(ErrorCode::EvalDomainError, "negative power of zero");
      cplx r = 1.0, x = n.n < 0 ? 1.0 / b : b;
      for (unsigned e = unsigned(std::abs(n.n)); e; e >>= 1, x *= x)
        if (e & 1u) r *= x;
      return r;
    }
    case Op::exp: return std::exp(eval(*n.a, z));
    case Op::log: {
      cplx a = eval(*n.a, z);
      if (!(a.real() > 0)) throw Error(ErrorCode::EvalDomainError, "log needs a positive real part");
      return std::log(a);
    }
  }
  return {};
}

// Flattens the top-level +/- chain into signed summands.
void summands(const Node& n, double sign, std::vector<std::pair<double, Node>>& out) {
  if (n->op == Op::add) {
    summands(n->a, sign, out);
    summands(n->b, sign, out);
  } else if (n->op == Op::sub) {
    summands(n->a, sign, out);
    summands(n->b, -sign, out);
  } else if (n->op == Op::neg) {
    summands(n->a, -sign, out);
  } else {
    out.emplace_back(sign, n);
  }
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Expr e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

cplx Expr::operator()(cplx zeta) const { return eval(*root_, zeta); }

bool Expr::depends_on_zeta() const { return uses_zeta(*root_); }

bool Expr::split_identity(cplx& c0, Expr& rest, bool& rest_empty) const {
  std::vector<std::pair<double, Node>> terms;
  summands(root_, 1.0, terms);
  bool found = false;
  c0 = 0.0;
  Node acc;
  for (auto& [sign, node] : terms) {
    if (!found && sign > 0 && node->op == Op::zeta) {
      found = true;
      continue;
    }
    if (!uses_zeta(*node)) {
      c0 += sign * eval(*node, 0.0);
      continue;
    }
    Node signed_node = sign > 0 ? node : make(Op::neg, node);
    acc = acc ? make(Op::add, acc, signed_node) : signed_node;
  }
  if (!found) return false;
  rest_empty = !acc;
  rest.root_ = acc ? acc : constant(0.0);
  rest.text_ = text_;
  return true;
}

cplx eval_constant(std::string_view text) {
  Expr e = Expr::parse(text);
  if (e.depends_on_zeta()) throw Error(ErrorCode::ParseError, "constant expression may not use zeta", 0);
  return e(0.0);
}

}  // namespace dulac
