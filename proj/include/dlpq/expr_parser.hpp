#pragma once

// Element literals such as "1 + 2*e1 - 3/4*e12":
//
//   expr    := term { ("+" | "-") term }
//   term    := unary { "*" unary }
//   unary   := "-" unary | primary
//   primary := number | blade | "(" expr ")"
//   number  := digits [ "." digits ] [ "/" digits ]
//   blade   := "e" digit { digit }      (digits 1-9, strictly increasing)
//
// Whitespace is ignored between tokens. A coefficient must be joined to a
// blade with "*": "2e1" is rejected so it can never be read as 2*10^1.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlpq/algebra.hpp"
#include "dlpq/errors.hpp"

namespace dlpq {

struct Expr {
  enum class Kind { Number, Blade, Negate, Add, Sub, Mul };

  Kind kind = Kind::Number;
  std::size_t offset = 0;
  std::string literal;    // Number: source text, e.g. "3/4" or "1.5"
  BladeMask mask = 0;     // Blade
  int max_generator = 0;  // Blade: highest generator index named
  std::vector<Expr> children;
};

namespace detail {

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_ws();
    if (pos_ == text_.size())
      fail("empty expression", {"number", "blade", "'('", "'-'"});
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail(std::string("unexpected '") + text_[pos_] + "'", {"'+'", "'-'", "'*'", "end of input"});
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &msg, std::vector<std::string> expected) const {
    throw ParseError(ErrorCode::SyntaxError, pos_, msg, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Expr binary(Expr::Kind kind, std::size_t offset, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = kind;
    e.offset = offset;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = binary(Expr::Kind::Add, at, std::move(lhs), parse_term());
      else if (accept('-'))
        lhs = binary(Expr::Kind::Sub, at, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept('*'))
        return lhs;
      lhs = binary(Expr::Kind::Mul, at, std::move(lhs), parse_unary());
    }
  }

  Expr parse_unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) {
      Expr e;
      e.kind = Expr::Kind::Negate;
      e.offset = at;
      e.children.push_back(parse_unary());
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of input", {"number", "blade", "'('", "'-'"});
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')'))
        fail("unbalanced parenthesis", {"')'", "'+'", "'-'", "'*'"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (c == 'e')
      return parse_blade();
    fail(std::string("unexpected '") + c + "'", {"number", "blade", "'('", "'-'"});
  }

  std::size_t scan_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return pos_ - start;
  }

  Expr parse_number() {
    Expr e;
    e.kind = Expr::Kind::Number;
    e.offset = pos_;
    const std::size_t start = pos_;
    std::size_t digits = scan_digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits += scan_digits();
    }
    if (digits == 0)
      fail("malformed number", {"digit"});
    e.literal = std::string(text_.substr(start, pos_ - start));
    reject_juxtaposed_letter();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      const std::size_t den_start = pos_;
      if (scan_digits() == 0)
        fail("missing denominator", {"digit"});
      e.literal += "/" + std::string(text_.substr(den_start, pos_ - den_start));
      reject_juxtaposed_letter();
    }
    return e;
  }

  void reject_juxtaposed_letter() {
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      fail(std::string("unexpected '") + text_[pos_] + "' after number (use '*' before blades)",
           {"'*'", "'+'", "'-'", "'/'"});
  }

  Expr parse_blade() {
    Expr e;
    e.kind = Expr::Kind::Blade;
    e.offset = pos_;
    ++pos_; // 'e'
    const std::size_t start = pos_;
    if (scan_digits() == 0)
      fail("blade needs generator digits", {"digit 1-9"});
    int previous = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      const int g = text_[i] - '0';
      if (g == 0 || g <= previous)
        throw ParseError(ErrorCode::BladeError, i,
                         "blade indices must be strictly increasing digits 1-9 in 'e" +
                             std::string(text_.substr(start, pos_ - start)) + "'");
      e.mask |= BladeMask{1} << (g - 1);
      previous = g;
    }
    e.max_generator = previous;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      fail(std::string("unexpected '") + text_[pos_] + "' in blade", {"'*'", "'+'", "'-'"});
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Expr parse(std::string_view text) { return detail::ExprParser(text).parse(); }

// Evaluates the tree in DL(p,q).
template <Scalar S> Element<S> bind(const Expr &expr, Signature sig) {
  switch (expr.kind) {
  case Expr::Kind::Number:
    return Element<S>::scalar(sig, ScalarTraits<S>::parse(expr.literal));
  case Expr::Kind::Blade:
    if (expr.max_generator > sig.n())
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "generator e" + std::to_string(expr.max_generator) + " at offset " +
                      std::to_string(expr.offset) + " exceeds n = " + std::to_string(sig.n()));
    return Element<S>::blade(sig, expr.mask);
  case Expr::Kind::Negate:
    return -bind<S>(expr.children[0], sig);
  case Expr::Kind::Add:
    return bind<S>(expr.children[0], sig) + bind<S>(expr.children[1], sig);
  case Expr::Kind::Sub:
    return bind<S>(expr.children[0], sig) - bind<S>(expr.children[1], sig);
  case Expr::Kind::Mul:
    return bind<S>(expr.children[0], sig) * bind<S>(expr.children[1], sig);
  }
  throw Error(ErrorCode::SyntaxError, "unknown expression node");
}

template <Scalar S> Element<S> parse_element(std::string_view text, Signature sig) {
  return bind<S>(parse(text), sig);
}

inline std::string blade_name(BladeMask mask) {
  std::string out = "e";
  for (int g = 1; mask != 0; ++g, mask >>= 1)
    if (mask & 1U) {
      if (g > 9)
        throw Error(ErrorCode::BladeError,
                    "generator " + std::to_string(g) + " has no single-digit blade name");
      out += static_cast<char>('0' + g);
    }
  return out;
}

// Canonical text: terms in increasing blade-mask order, "coef*eA" with the
// coefficient dropped when it is 1, "0" for the zero element.
template <Scalar S> std::string format_element(const Element<S> &u) {
  std::string out;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const S &c = u.coeffs()[m];
    if (ScalarTraits<S>::is_zero(c))
      continue;
    std::string text = ScalarTraits<S>::to_string(c);
    const bool negative = !text.empty() && text.front() == '-';
    if (negative)
      text.erase(0, 1);
    if (out.empty())
      out = negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (m == 0)
      out += text;
    else if (text == "1")
      out += blade_name(static_cast<BladeMask>(m));
    else
      out += text + "*" + blade_name(static_cast<BladeMask>(m));
  }
  return out.empty() ? "0" : out;
}

} // namespace dlpq
