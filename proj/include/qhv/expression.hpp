#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace qhv {

using Env = std::map<std::string, std::int64_t, std::less<>>;

/// Integer expression over named variables. Booleans are 0/1.
///   a + b, a - b, a * b, a / b, a % b (truncating), -a, (a)
///   a < b, <=, >, >=, ==, !=, a && b, a || b, !a
///   x in {1, 3, 5..9}
class Expr {
 public:
  struct Node;

  Expr() = default;
  Expr(std::shared_ptr<const Node> root, std::string text);

  /// Throws OutOfRange for unbound variables and division by zero.
  std::int64_t eval(const Env& env) const;
  bool holds(const Env& env) const { return eval(env) != 0; }
  const std::string& text() const { return text_; }
  std::set<std::string> variables() const;
  bool valid() const { return root_ != nullptr; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Cursor shared by the expression grammar and the grammars built on top
/// of it. Whitespace between tokens is skipped.
class TextReader {
 public:
  explicit TextReader(std::string_view text) : text_(text) {}

  Expr expr();     // full expression
  Expr sum();      // additive level only: stops at '^', ',', ';', ')', '}', '|'
  Expr primary();  // literal, variable, unary minus or parenthesized

  bool at_end();
  char peek();
  bool accept(char c);
  bool accept(std::string_view token);
  void expect(char c);
  bool peek_identifier();
  std::string identifier();
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return text_.substr(pos_); }
  [[noreturn]] void fail(const std::string& message) const;

 private:
  void skip_ws();
  std::shared_ptr<const Expr::Node> parse_or();
  std::shared_ptr<const Expr::Node> parse_and();
  std::shared_ptr<const Expr::Node> parse_cmp();
  std::shared_ptr<const Expr::Node> parse_sum();
  std::shared_ptr<const Expr::Node> parse_product();
  std::shared_ptr<const Expr::Node> parse_unary();
  std::shared_ptr<const Expr::Node> parse_primary();
  Expr wrap(std::shared_ptr<const Expr::Node> node, std::size_t start);

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expr parse_expr(std::string_view text);

}  // namespace qhv
