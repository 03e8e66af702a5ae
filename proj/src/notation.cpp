#include "qhv/notation.hpp"

#include <cctype>
#include <charconv>

#include "qhv/error.hpp"

namespace qhv {

namespace {

constexpr std::int64_t kMaxRepeat = 1'000'000;

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::int64_t integer(bool allow_sign) {
    skip_ws();
    // "(-1)^5" is accepted as a spelled-out negative base
    if (allow_sign && peek() == '(') {
      ++pos_;
      auto v = integer(true);
      expect(')');
      return v;
    }
    std::size_t start = pos_;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail(allow_sign ? "expected an integer" : "expected a non-negative integer");
    }
    std::string_view tok = text_.substr(start, pos_ - start);
    if (tok.front() == '+') tok.remove_prefix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      pos_ = start;
      fail("integer out of range");
    }
    return v;
  }

  // ITEM ("^" COUNT)?
  void item(std::vector<std::int64_t>& out, bool allow_sign) {
    std::int64_t v = integer(allow_sign);
    std::int64_t count = 1;
    if (accept('^')) {
      std::size_t at = pos_;
      count = integer(false);
      if (count < 1 || count > kMaxRepeat) {
        pos_ = at;
        fail("repeat count must be in [1, " + std::to_string(kMaxRepeat) + "]");
      }
    }
    out.insert(out.end(), static_cast<std::size_t>(count), v);
  }

  void item_list(std::vector<std::int64_t>& out, bool allow_sign, char close) {
    if (peek() == close || at_end()) return;
    do {
      item(out, allow_sign);
    } while (accept(','));
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::Parse, message + " at position " + std::to_string(pos_) + " in \"" +
                                      std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_grouped(std::string& out, const std::vector<std::int64_t>& v, std::size_t from,
                    bool leading_comma) {
  bool first = !leading_comma;
  for (std::size_t i = from; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (!first) out += ',';
    first = false;
    out += std::to_string(v[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
}

}  // namespace

LinearSystem parse_system(std::string_view text) {
  Cursor c(text);
  c.expect('L');
  c.expect('(');
  LinearSystem out;
  out.degree = c.integer(true);
  c.expect(';');
  c.item_list(out.mults, true, ')');
  c.expect(')');
  if (!c.at_end()) c.fail("trailing input");
  return out;
}

Diagram parse_diagram(std::string_view text) {
  Cursor c(text);
  c.expect('(');
  std::vector<std::int64_t> layers;
  if (c.accept('~')) {
    std::int64_t a = c.integer(false);
    if (a > kMaxRepeat) c.fail("bar prefix too large");
    for (std::int64_t j = 1; j <= a; ++j) layers.push_back(j);
    if (c.accept(',')) {
      do {
        c.item(layers, false);
      } while (c.accept(','));
    }
  } else {
    c.item_list(layers, false, ')');
  }
  c.expect(')');
  if (!c.at_end()) c.fail("trailing input");
  return make_diagram(std::move(layers));
}

std::vector<std::int64_t> parse_mults(std::string_view text) {
  Cursor c(text);
  std::vector<std::int64_t> out;
  c.item_list(out, true, '\0');
  if (!c.at_end()) c.fail("trailing input");
  return out;
}

std::string format_mults(const std::vector<std::int64_t>& mults) {
  std::string out;
  append_grouped(out, mults, 0, false);
  return out;
}

std::string format(const LinearSystem& system) {
  return "L(" + std::to_string(system.degree) + ";" + format_mults(system.mults) + ")";
}

std::string format(const Diagram& diagram) {
  std::string out = "(";
  const auto a = staircase_prefix(diagram);
  if (a >= 2) {
    out += '~' + std::to_string(a);
    append_grouped(out, diagram.layers, static_cast<std::size_t>(a), true);
  } else {
    append_grouped(out, diagram.layers, 0, false);
  }
  return out + ")";
}

}  // namespace qhv
