#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "plateopt/mesh.hpp"

namespace plateopt {

class ExpressionError : public std::invalid_argument {
 public:
  ExpressionError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at column " + std::to_string(position + 1)), position_(position) {}
  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Closed-form scalar expression in the variables x1, x2.
///
/// Grammar: numbers, x1, x2, pi, binary + - * / ^ (^ binds tightest and is
/// right-associative; unary minus binds looser than ^), parentheses and the
/// functions min(a, b, ...), max(a, b, ...), abs, sin, cos, exp, sqrt and
/// step (1 for a >= 0, 0 otherwise).
class Expression {
 public:
  static Expression parse(std::string_view source);
  static Expression constant(double value);

  [[nodiscard]] double operator()(Point2 x) const;
  [[nodiscard]] const std::string& source() const noexcept { return source_; }

  /// True if the expression does not reference x1 or x2.
  [[nodiscard]] bool is_constant() const noexcept;

  struct Node;  // opaque syntax tree

 private:
  Expression(std::string source, std::shared_ptr<const Node> root);
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace plateopt
