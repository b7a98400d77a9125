#include "cycform/text.hpp"

#include <cctype>

namespace cycform {

std::string variable_name(int dim, int axis) {
  if (dim <= 3) return std::string(1, "xyz"[axis]);
  return "x" + std::to_string(axis + 1);
}

namespace {

constexpr std::string_view kPartial = "\xE2\x88\x82";  // ∂

enum class Mode { polynomial, polyvector, form };

// Elements are parsed in the exterior algebra: a plain polynomial is the
// zero-generator part, so one parser serves all three syntaxes.
class Parser {
 public:
  Parser(std::string_view text, int dim, Mode mode) : text_(text), dim_(dim), mode_(mode) {}

  PolyVector parse() {
    PolyVector v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at column " + std::to_string(pos_ + 1) + ": " + what + " in '" +
                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_generator() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    if (mode_ == Mode::polyvector) {
      if (text_.substr(pos_, kPartial.size()) == kPartial) return true;
      return text_[pos_] == 'D';
    }
    if (mode_ == Mode::form) return text_[pos_] == 'd';
    return false;
  }

  bool at_factor_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 'y' ||
           c == 'z' || at_generator();
  }

  // Power suffix "^int"; leaves a wedge '^' in place.
  std::optional<int> power_suffix() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      std::size_t save = pos_;
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) return integer();
      pos_ = save;
    }
    return std::nullopt;
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  int variable() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected variable");
    char c = text_[pos_];
    int axis = -1;
    if (c == 'x' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      axis = integer() - 1;
    } else if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      axis = c - 'x';
    } else {
      fail("expected variable");
    }
    if (axis < 0 || axis >= dim_) fail("variable outside dimension " + std::to_string(dim_));
    return axis;
  }

  PolyVector one() const { return PolyVector::function(Polynomial::constant(dim_, Rational(1))); }

  PolyVector power(const PolyVector& base, int exponent) const {
    PolyVector r = one();
    for (int i = 0; i < exponent; ++i) r = wedge(r, base);
    return r;
  }

  PolyVector factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = std::to_string(integer());
      if (at('/')) {
        ++pos_;
        skip_space();
        int den = integer();
        if (den == 0) fail("zero denominator");
        num += "/" + std::to_string(den);
      }
      return PolyVector::function(Polynomial::constant(dim_, parse_rational(num)));
    }
    if (c == '(') {
      ++pos_;
      PolyVector inner = expr();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      if (auto e = power_suffix()) return power(inner, *e);
      return inner;
    }
    if (at_generator()) {
      pos_ += (mode_ == Mode::polyvector && text_.substr(pos_, kPartial.size()) == kPartial) ? kPartial.size() : 1;
      int axis = variable();
      return PolyVector::generator(dim_, axis);
    }
    int axis = variable();
    int e = power_suffix().value_or(1);
    Exponent ex = zero_exponent(dim_);
    ex[static_cast<std::size_t>(axis)] = e;
    return PolyVector::function(Polynomial::monomial(ex));
  }

  PolyVector term() {
    PolyVector acc = factor();
    for (;;) {
      if (at('*') || at('^')) {
        ++pos_;
        acc = wedge(acc, factor());
      } else if (at_factor_start()) {
        acc = wedge(acc, factor());
      } else {
        return acc;
      }
    }
  }

  PolyVector expr() {
    PolyVector acc(dim_);
    bool negate = false;
    if (at('+') || at('-')) {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    PolyVector t = term();
    acc += negate ? -t : t;
    while (at('+') || at('-')) {
      negate = text_[pos_] == '-';
      ++pos_;
      t = term();
      acc += negate ? -t : t;
    }
    return acc;
  }

  std::string_view text_;
  int dim_;
  Mode mode_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Exponent& e) {
  const int dim = static_cast<int>(e.size());
  std::string s;
  for (int i = 0; i < dim; ++i) {
    if (e[static_cast<std::size_t>(i)] == 0) continue;
    if (!s.empty()) s += "*";
    s += variable_name(dim, i);
    if (e[static_cast<std::size_t>(i)] > 1) s += "^" + std::to_string(e[static_cast<std::size_t>(i)]);
  }
  return s;
}

// Appends "c*m tail" with sign handling; `tail` is the generator part.
void append_term(std::string& out, const Rational& c, const Exponent& e, const std::string& tail) {
  std::string mono = monomial_text(e);
  Rational mag = abs(c);
  std::string body;
  if (mono.empty() && tail.empty())
    body = to_string(mag);
  else if (mag == 1)
    body = mono;
  else
    body = to_string(mag) + (mono.empty() ? "" : "*" + mono);
  if (!tail.empty()) body += body.empty() ? tail : " " + tail;
  if (out.empty())
    out = (c < 0 ? "-" : "") + body;
  else
    out += (c < 0 ? " - " : " + ") + body;
}

template <WedgeKind K>
std::string format_wedge(const WedgeField<K>& w, std::string_view prefix) {
  std::string out;
  for (const auto& [idx, coeff] : w.terms()) {
    std::string tail;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) tail += "^";
      tail += std::string(prefix) + variable_name(w.dim(), idx[i]);
    }
    for (auto it = coeff.terms().rbegin(); it != coeff.terms().rend(); ++it)
      append_term(out, it->second, it->first, tail);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, int dim) {
  PolyVector v = Parser(text, dim, Mode::polynomial).parse();
  return v.component({});
}

PolyVector parse_polyvector(std::string_view text, int dim) {
  return Parser(text, dim, Mode::polyvector).parse();
}

DiffForm parse_form(std::string_view text, int dim) {
  PolyVector v = Parser(text, dim, Mode::form).parse();
  DiffForm w(dim);
  for (const auto& [idx, c] : v.terms()) w.add_term(idx, c);
  return w;
}

std::string format(const Polynomial& p) {
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) append_term(out, it->second, it->first, "");
  return out.empty() ? "0" : out;
}

std::string format(const PolyVector& v) { return format_wedge(v, kPartial); }
std::string format(const DiffForm& w) { return format_wedge(w, "d"); }

}  // namespace cycform
