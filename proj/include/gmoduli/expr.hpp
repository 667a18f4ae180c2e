#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gmoduli {

/// Small arithmetic expression evaluator used for field data given in
/// closed form: numbers, named variables, + - * / ^, unary minus, and the
/// functions sin, cos, tan, exp, log, sqrt, abs.
class Expr {
public:
  /// Parses `text` against the given variable names (e.g. {"x1","x2"}).
  /// Throws std::invalid_argument on syntax errors or unknown identifiers.
  static Expr parse(const std::string& text, const std::vector<std::string>& variables);
  static Expr constant(double v);

  double eval(std::span<const double> vars) const;
  const std::string& text() const { return text_; }

  struct Node;  // defined in the implementation

private:
  Expr() = default;
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// {"<prefix>1", ..., "<prefix>n"}
std::vector<std::string> coordinate_names(const std::string& prefix, int n);

}  // namespace gmoduli
