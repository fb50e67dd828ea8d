#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "dulac/cpoly.hpp"

namespace dulac {

struct ExprNode;

// Parsed complex expression in one variable zeta. Grammar:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := number ['i'] | 'i' | 'pi' | 'zeta' | 'L1'..'L9'
//            | ('exp' | 'log') '(' sum ')' | '(' sum ')'
// L_m is the m-fold principal logarithm of zeta.
class Expr {
 public:
  static Expr parse(std::string_view text);

  cplx operator()(cplx zeta) const;
  bool depends_on_zeta() const;
  const std::string& text() const { return text_; }

  // Splits the top-level sum as zeta + c0 + rest. Returns false when the
  // expression has no bare zeta summand.
  bool split_identity(cplx& c0, Expr& rest, bool& rest_empty) const;

 private:
  std::shared_ptr<const ExprNode> root_;
  std::string text_;
};

// Evaluates a zeta-free expression such as "2+3*pi*i" or "1/3".
cplx eval_constant(std::string_view text);

}  // namespace dulac
