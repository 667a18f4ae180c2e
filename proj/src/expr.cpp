#include "gmoduli/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace gmoduli {

namespace {

enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

double apply_fn(Fn f, double x) {
  switch (f) {
    case Fn::Sin: return std::sin(x);
    case Fn::Cos: return std::cos(x);
    case Fn::Tan: return std::tan(x);
    case Fn::Exp: return std::exp(x);
    case Fn::Log: return std::log(x);
    case Fn::Sqrt: return std::sqrt(x);
    case Fn::Abs: return std::fabs(x);
  }
  return 0.0;
}

}  // namespace

struct Expr::Node {
  enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind = Num;
  double value = 0.0;
  int var = -1;
  Fn fn = Fn::Sin;
  std::shared_ptr<const Node> a, b;

  double eval(std::span<const double> vars) const {
    switch (kind) {
      case Num: return value;
      case Var: return vars[static_cast<size_t>(var)];
      case Neg: return -a->eval(vars);
      case Add: return a->eval(vars) + b->eval(vars);
      case Sub: return a->eval(vars) - b->eval(vars);
      case Mul: return a->eval(vars) * b->eval(vars);
      case Div: return a->eval(vars) / b->eval(vars);
      case Pow: return std::pow(a->eval(vars), b->eval(vars));
      case Call: return apply_fn(fn, a->eval(vars));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_num(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Node::Num;
  n->value = v;
  return n;
}

NodePtr make_unary(Expr::Node::Kind k, NodePtr a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(Expr::Node::Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
public:
  Parser(const std::string& text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return e;
  }

private:
  const std::string& text_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression error at position " + std::to_string(pos_) +
                                " in \"" + text_ + "\": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      if (consume('+'))
        e = make_binary(Expr::Node::Add, e, term());
      else if (consume('-'))
        e = make_binary(Expr::Node::Sub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (consume('*'))
        e = make_binary(Expr::Node::Mul, e, unary());
      else if (consume('/'))
        e = make_binary(Expr::Node::Div, e, unary());
      else
        return e;
    }
  }

  NodePtr unary() {
    if (consume('-')) return make_unary(Expr::Node::Neg, unary());
    if (consume('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (consume('^')) return make_binary(Expr::Node::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      consume('(');
      NodePtr e = expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("expected number, variable or '('");
  }

  NodePtr number() {
    size_t end = 0;
    double v = 0;
    try {
      v = std::stod(text_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += end;
    return make_num(v);
  }

  NodePtr identifier() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    static const std::pair<const char*, Fn> fns[] = {
        {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"tan", Fn::Tan},  {"exp", Fn::Exp},
        {"log", Fn::Log}, {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs}};
    for (const auto& [fname, fn] : fns) {
      if (name == fname) {
        if (!consume('(')) fail("expected '(' after function name");
        NodePtr arg = expression();
        if (!consume(')')) fail("expected ')'");
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Call;
        n->fn = fn;
        n->a = arg;
        return n;
      }
    }
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (name == vars_[i]) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Var;
        n->var = static_cast<int>(i);
        return n;
      }
    }
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& variables) {
  Expr e;
  e.root_ = Parser(text, variables).run();
  e.text_ = text;
  return e;
}

Expr Expr::constant(double v) {
  Expr e;
  e.root_ = make_num(v);
  e.text_ = std::to_string(v);
  return e;
}

double Expr::eval(std::span<const double> vars) const { return root_->eval(vars); }

std::vector<std::string> coordinate_names(const std::string& prefix, int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

}  // namespace gmoduli
