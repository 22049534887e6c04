#include "dmf/io.hpp"

#include <cctype>

namespace dmf {

namespace {

/// Recursive-descent parser for sums of products of atoms, where an atom is an
/// integer literal, the poly variable t, the extension generator u, or a
/// parenthesized subexpression, optionally raised with ^.
class Parser {
 public:
  Parser(const Field* f, const std::string& s) : f_(f), s_(s) {}

  Poly parse() {
    skip_ws();
    Poly r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    Poly r = eat('-') ? -term() : (eat('+'), term());
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  Poly term() {
    Poly r = power();
    while (eat('*')) r = r * power();
    return r;
  }

  Poly power() {
    Poly base = atom();
    if (!eat('^')) return base;
    const unsigned e = integer("exponent");
    Poly r = Poly::one(f_);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
  }

  Poly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (c == 't') {
      ++pos_;
      return Poly::t(f_);
    }
    if (c == 'u') {
      if (f_->k() == 1) throw ParseError("'u' is only valid in extension fields", pos_);
      ++pos_;
      return Poly::constant(f_->from_coeffs({0, 1}));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t at = pos_;
      const std::uint64_t v = integer("integer");
      if (v >= f_->p())
        throw ParseError("coefficient " + std::to_string(v) + " out of range [0, " +
                             std::to_string(f_->p()) + ")",
                         at);
      return Poly::constant(f_->from_int(v));
    }
    throw ParseError("expected a term", pos_);
  }

  std::uint64_t integer(const std::string& what) {
    skip_ws();
    const size_t at = pos_;
    std::uint64_t v = 0;
    bool any = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10) throw ParseError(what + " overflows", at);
      v = v * 10 + digit;
      ++pos_;
      any = true;
    }
    if (!any) throw ParseError("expected " + what, at);
    return v;
  }

  const Field* f_;
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const Field* f, const std::string& text) {
  if (text.find(',') == std::string::npos) return Parser(f, text).parse();
  // coefficient form, low-to-high
  std::vector<Fe> coeffs;
  size_t start = 0;
  for (;;) {
    const size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma - start);
    Poly c = Parser(f, item).parse();
    if (c.degree() > 0)
      throw ParseError("coefficient entries must be constants", start);
    coeffs.push_back(c.is_zero() ? f->zero() : c.coeff(0));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Poly::from_coeffs(f, std::move(coeffs));
}

std::string print_poly(const Poly& p) { return p.to_string(); }

}  // namespace dmf
