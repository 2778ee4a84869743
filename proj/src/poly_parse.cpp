#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <utility>

#include "poslab/errors.hpp"
#include "poslab/poly.hpp"

namespace poslab {

namespace {

// A parsed term before the dimension is known: coefficient and
// (variable index, power) pairs with 1-based indices.
struct RawTerm {
  double coefficient = 1.0;
  std::vector<std::pair<int, int>> powers;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_space();
    if (at_end()) fail("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1.0 : 1.0;
    }
    while (true) {
      RawTerm t = term();
      t.coefficient *= sign;
      terms.push_back(std::move(t));
      skip_space();
      if (at_end()) break;
      char op = take();
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      sign = op == '-' ? -1.0 : 1.0;
    }
    return terms;
  }

  int max_index() const { return max_index_; }

 private:
  RawTerm term() {
    RawTerm t;
    factor(t);
    while (true) {
      skip_space();
      if (at_end() || peek() != '*') break;
      take();
      factor(t);
    }
    return t;
  }

  void factor(RawTerm& t) {
    skip_space();
    if (at_end()) fail("expected a factor");
    char c = peek();
    if (c == 'x' || c == 'X') {
      take();
      int index = integer();
      if (index < 1) fail("variable indices start at 1");
      int power = 1;
      skip_space();
      if (!at_end() && peek() == '^') {
        take();
        skip_space();
        power = integer();
      }
      max_index_ = std::max(max_index_, index);
      t.powers.emplace_back(index, power);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.coefficient *= number();
      return;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  double number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  int integer() {
    int value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what +
                        " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_index_ = 0;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<int> dimension) {
  Parser parser(text);
  std::vector<RawTerm> raw = parser.parse();
  const int n = dimension.value_or(std::max(1, parser.max_index()));
  if (n < 1) throw ArgumentError("polynomial dimension must be >= 1");
  if (parser.max_index() > n) {
    throw ArgumentError("variable x" + std::to_string(parser.max_index()) + " exceeds dimension " +
                        std::to_string(n));
  }
  Polynomial f(n);
  for (const RawTerm& t : raw) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (auto [index, power] : t.powers) e[static_cast<std::size_t>(index - 1)] += power;
    f.add_term(Monomial(std::move(e)), t.coefficient, 0.0);
  }
  return f;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    double magnitude = c;
    if (first) {
      if (c < 0) {
        out += "-";
        magnitude = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      magnitude = std::abs(c);
    }
    first = false;

    std::string vars;
    for (int i = 0; i < m.dimension(); ++i) {
      if (m[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "x" + std::to_string(i + 1);
      if (m[i] > 1) vars += "^" + std::to_string(m[i]);
    }
    if (vars.empty()) {
      out += format_number(magnitude);
    } else if (magnitude == 1.0) {
      out += vars;
    } else {
      out += format_number(magnitude) + "*" + vars;
    }
  }
  return out;
}

}  // namespace poslab
