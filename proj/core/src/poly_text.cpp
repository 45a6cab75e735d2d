#include "e1forge/poly_text.hpp"

#include <cctype>
#include <charconv>

#include "e1forge/error.hpp"

namespace e1forge::poly {
namespace {

class Cursor {
 public:
  Cursor(std::string_view text, const FieldSpec& field) : s_(text), k_(field) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (s_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_ws();
    std::uint64_t v = 0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial text '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " +
                     what);
  }

  Elem element() {
    std::int64_t exponent = 1;
    Elem base = 0;
    if (accept("w2")) {
      return k_.pow(cube_root(), 2);
    }
    if (accept('w')) {
      return cube_root();
    }
    if (accept('g')) {
      base = k_.primitive();
    } else if (accept('z')) {
      const std::uint64_t n = number();
      if (n == 0 || k_.unit_order() % n != 0) fail("no element of order " + std::to_string(n));
      base = k_.element_of_order(static_cast<std::uint32_t>(n));
    } else {
      const std::uint64_t v = number();
      if (v >= k_.size()) fail("encoding " + std::to_string(v) + " out of range for " + k_.descriptor());
      return static_cast<Elem>(v);
    }
    if (accept('^')) {
      const bool neg = accept('-');
      exponent = static_cast<std::int64_t>(number());
      if (neg) exponent = -exponent;
    }
    return k_.pow(base, exponent);
  }

  std::vector<Elem> coeff_list() {
    expect('[');
    std::vector<Elem> c;
    if (!accept(']')) {
      do {
        c.push_back(element());
      } while (accept(','));
      expect(']');
    }
    return c;
  }

  MonicPoly monic_from(std::vector<Elem> c) {
    Poly p(k_, std::move(c));
    if (p.is_zero() || p.lead() != 1) fail("coefficient list is not monic");
    return MonicPoly(std::move(p));
  }

  MonicPoly canonical_body() {
    expect('(');
    if (!accept("GF(2^")) fail("expected GF(2^k)");
    const std::uint64_t deg = number();
    expect(')');
    expect(')');
    if (deg != k_.degree()) {
      fail("field GF(2^" + std::to_string(deg) + ") does not match " + k_.descriptor());
    }
    std::vector<Elem> c = coeff_list();
    if (c.empty() || c.back() != 1) fail("coefficient list is not monic");
    return monic_from(std::move(c));
  }

  MonicPoly factor() {
    MonicPoly base(k_);
    if (accept("poly")) {
      base = canonical_body();
    } else if (peek() == '[') {
      std::vector<Elem> c = coeff_list();
      if (c.empty() || c.back() != 1) fail("coefficient list is not monic");
      base = monic_from(std::move(c));
    } else if (accept('(')) {
      if (!accept('x')) fail("expected 'x'");
      Elem c = 0;
      if (accept('+')) c = element();
      expect(')');
      base = MonicPoly(Poly::linear(k_, c));
    } else if (accept('x')) {
      Elem c = 0;
      if (accept('+')) c = element();
      base = MonicPoly(Poly::linear(k_, c));
    } else {
      fail("expected a factor");
    }
    unsigned m = 1;
    if (accept('^')) m = static_cast<unsigned>(number());
    return power(base, m);
  }

  MonicPoly product() {
    MonicPoly acc(k_);
    if (peek() == '1') {
      ++pos_;
      if (!done()) fail("trailing input after 1");
      return acc;
    }
    do {
      acc = acc * factor();
      accept('*');
    } while (!done());
    return acc;
  }

 private:
  Elem cube_root() {
    if (k_.unit_order() % 3 != 0) fail("w requires a field containing cube roots of unity");
    return k_.element_of_order(3);
  }

  std::string_view s_;
  const FieldSpec& k_;
  std::size_t pos_ = 0;
};

}  // namespace

MonicPoly parse_canonical(std::string_view text, const FieldSpec& field) {
  Cursor c(text, field);
  if (!c.accept("poly")) c.fail("expected 'poly('");
  MonicPoly p = c.canonical_body();
  if (!c.done()) c.fail("trailing input");
  return p;
}

MonicPoly parse_poly(std::string_view text, const FieldSpec& field) {
  Cursor c(text, field);
  if (c.done()) c.fail("empty polynomial");
  return c.product();
}

Elem parse_element(std::string_view text, const FieldSpec& field) {
  Cursor c(text, field);
  Elem e = c.element();
  if (!c.done()) c.fail("trailing input");
  return e;
}

std::string format_canonical(const MonicPoly& p) {
  std::string s = "poly(GF(2^" + std::to_string(p.field().degree()) + "))[";
  const auto& c = p.poly().coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "]";
}

std::string format_factorization(const Factorization& xi) {
  if (xi.factors().empty()) return "1";
  std::string s;
  for (const auto& [factor, m] : xi.factors()) {
    if (factor.degree() == 1) {
      s += "(x+" + std::to_string(factor.constant_term()) + ")";
    } else {
      s += '[';
      const auto& c = factor.poly().coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i != 0) s += ',';
        s += std::to_string(c[i]);
      }
      s += ']';
    }
    if (m != 1) s += "^" + std::to_string(m);
  }
  return s;
}

}  // namespace e1forge::poly
