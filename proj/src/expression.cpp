#include "qhv/expression.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "qhv/error.hpp"

namespace qhv {

struct Expr::Node {
  enum class Op { Num, Var, Neg, Not, Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or, In };
  Op op = Op::Num;
  std::int64_t value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
  // for In: pairs of bounds (single values have lo == hi)
  std::vector<std::pair<std::shared_ptr<const Node>, std::shared_ptr<const Node>>> set;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Op = Expr::Node::Op;

std::int64_t eval_node(const Expr::Node& n, const Env& env) {
  auto L = [&] { return eval_node(*n.lhs, env); };
  auto R = [&] { return eval_node(*n.rhs, env); };
  switch (n.op) {
    case Op::Num: return n.value;
    case Op::Var: {
      auto it = env.find(n.name);
      if (it == env.end()) throw Error(ErrorCode::OutOfRange, "unbound variable " + n.name);
      return it->second;
    }
    case Op::Neg: return -L();
    case Op::Not: return L() == 0;
    case Op::Add: return L() + R();
    case Op::Sub: return L() - R();
    case Op::Mul: return L() * R();
    case Op::Div: {
      auto d = R();
      if (d == 0) throw Error(ErrorCode::OutOfRange, "division by zero");
      return L() / d;
    }
    case Op::Mod: {
      auto d = R();
      if (d == 0) throw Error(ErrorCode::OutOfRange, "division by zero");
      return L() % d;
    }
    case Op::Lt: return L() < R();
    case Op::Le: return L() <= R();
    case Op::Gt: return L() > R();
    case Op::Ge: return L() >= R();
    case Op::Eq: return L() == R();
    case Op::Ne: return L() != R();
    case Op::And: return L() && R();
    case Op::Or: return L() || R();
    case Op::In: {
      auto v = L();
      for (const auto& [lo, hi] : n.set)
        if (eval_node(*lo, env) <= v && v <= eval_node(*hi, env)) return 1;
      return 0;
    }
  }
  return 0;
}

void collect(const Expr::Node& n, std::set<std::string>& out) {
  if (n.op == Op::Var) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
  for (const auto& [lo, hi] : n.set) {
    collect(*lo, out);
    collect(*hi, out);
  }
}

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

std::int64_t Expr::eval(const Env& env) const {
  if (!root_) throw Error(ErrorCode::OutOfRange, "empty expression");
  return eval_node(*root_, env);
}

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  if (root_) collect(*root_, out);
  return out;
}

void TextReader::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool TextReader::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char TextReader::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool TextReader::accept(char c) {
  if (peek() != c) return false;
  ++pos_;
  return true;
}

bool TextReader::accept(std::string_view token) {
  skip_ws();
  if (text_.substr(pos_, token.size()) != token) return false;
  // keywords must not run into an identifier
  if (std::isalpha(static_cast<unsigned char>(token.back())) && pos_ + token.size() < text_.size()) {
    char next = text_[pos_ + token.size()];
    if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
  }
  pos_ += token.size();
  return true;
}

void TextReader::expect(char c) {
  if (!accept(c)) fail(std::string("expected '") + c + "'");
}

bool TextReader::peek_identifier() {
  char c = peek();
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

std::string TextReader::identifier() {
  if (!peek_identifier()) fail("expected an identifier");
  std::size_t start = pos_;
  while (pos_ < text_.size() &&
         (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
    ++pos_;
  return std::string(text_.substr(start, pos_ - start));
}

void TextReader::fail(const std::string& message) const {
  throw Error(ErrorCode::Parse, message + " at position " + std::to_string(pos_) + " in \"" +
                                    std::string(text_) + "\"");
}

Expr TextReader::wrap(std::shared_ptr<const Expr::Node> node, std::size_t start) {
  std::string t(text_.substr(start, pos_ - start));
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  return Expr(std::move(node), std::move(t));
}

Expr TextReader::expr() {
  skip_ws();
  auto start = pos_;
  auto n = parse_or();
  return wrap(n, start);
}

Expr TextReader::sum() {
  skip_ws();
  auto start = pos_;
  auto n = parse_sum();
  return wrap(n, start);
}

Expr TextReader::primary() {
  skip_ws();
  auto start = pos_;
  auto n = parse_unary();
  return wrap(n, start);
}

NodePtr TextReader::parse_or() {
  auto l = parse_and();
  while (accept("||")) l = make(Op::Or, l, parse_and());
  return l;
}

NodePtr TextReader::parse_and() {
  auto l = parse_cmp();
  while (accept("&&")) l = make(Op::And, l, parse_cmp());
  return l;
}

NodePtr TextReader::parse_cmp() {
  auto l = parse_sum();
  static const std::pair<std::string_view, Op> ops[] = {
      {"<=", Op::Le}, {">=", Op::Ge}, {"==", Op::Eq}, {"!=", Op::Ne}, {"<", Op::Lt}, {">", Op::Gt}};
  for (const auto& [tok, op] : ops)
    if (accept(tok)) return make(op, l, parse_sum());
  if (accept("in")) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::In;
    n->lhs = l;
    expect('{');
    if (!accept('}')) {
      do {
        auto lo = parse_sum();
        auto hi = accept("..") ? parse_sum() : lo;
        n->set.emplace_back(lo, hi);
      } while (accept(','));
      expect('}');
    }
    return n;
  }
  return l;
}

NodePtr TextReader::parse_sum() {
  auto l = parse_product();
  for (;;) {
    if (accept('+')) {
      l = make(Op::Add, l, parse_product());
    } else if (peek() == '-') {
      ++pos_;
      l = make(Op::Sub, l, parse_product());
    } else {
      return l;
    }
  }
}

NodePtr TextReader::parse_product() {
  auto l = parse_unary();
  for (;;) {
    if (accept('*')) {
      l = make(Op::Mul, l, parse_unary());
    } else if (peek() == '/') {
      ++pos_;
      l = make(Op::Div, l, parse_unary());
    } else if (accept('%')) {
      l = make(Op::Mod, l, parse_unary());
    } else {
      return l;
    }
  }
}

NodePtr TextReader::parse_unary() {
  if (accept('-')) return make(Op::Neg, parse_unary());
  if (peek() == '!' && text_.substr(pos_, 2) != "!=") {
    ++pos_;
    return make(Op::Not, parse_unary());
  }
  return parse_primary();
}

NodePtr TextReader::parse_primary() {
  if (accept('(')) {
    auto n = parse_or();
    expect(')');
    return n;
  }
  if (peek_identifier()) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Var;
    n->name = identifier();
    return n;
  }
  skip_ws();
  std::size_t start = pos_;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  if (start == pos_) fail("expected a number, a variable or '('");
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Num;
  auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n->value);
  if (ec != std::errc{}) {
    pos_ = start;
    fail("integer out of range");
  }
  (void)p;
  return n;
}

Expr parse_expr(std::string_view text) {
  TextReader r(text);
  Expr e = r.expr();
  if (!r.at_end()) r.fail("trailing input");
  return e;
}

}  // namespace qhv
