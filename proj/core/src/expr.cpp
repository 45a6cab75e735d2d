#include "e1forge/expr.hpp"

#include <cctype>
#include <charconv>

#include "e1forge/error.hpp"

namespace e1forge::bounds {

Expr Expr::constant(const Rational& c) {
  Expr e;
  e.add_term({0, 0}, c);
  return e;
}

Expr Expr::q_power(int e) {
  Expr x;
  x.add_term({e, 0}, 1);
  return x;
}

Expr Expr::f_power(unsigned j) {
  Expr x;
  x.add_term({0, j}, 1);
  return x;
}

void Expr::add_term(Key k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw DomainError("expression '" + to_string() + "' is not constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Expr::eval(unsigned f) const {
  Rational sum = 0;
  for (const auto& [k, c] : terms_) {
    Rational t = c * ipow(BigInt(f), k.second);
    if (k.first >= 0) {
      t *= pow2(static_cast<unsigned>(k.first) * f);
    } else {
      t /= pow2(static_cast<unsigned>(-k.first) * f);
    }
    sum += t;
  }
  return sum;
}

Expr operator+(const Expr& a, const Expr& b) {
  Expr r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

Expr Expr::operator-() const {
  Expr r;
  for (const auto& [k, c] : terms_) r.add_term(k, -c);
  return r;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  Expr r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  }
  return r;
}

Expr Expr::pow(int n) const {
  if (n < 0) {
    if (terms_.size() != 1 || terms_.begin()->first.second != 0) {
      throw DomainError("negative power of '" + to_string() + "' is not a monomial in q");
    }
    const auto& [k, c] = *terms_.begin();
    Expr r;
    r.add_term({k.first * n, 0}, rpow(1 / c, static_cast<unsigned>(-n)));
    return r;
  }
  Expr r = constant(1);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

std::string Expr::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string factors;
    if (k.first != 0) factors += k.first == 1 ? "q" : "q^" + (k.first < 0 ? "{" + std::to_string(k.first) + "}" : std::to_string(k.first));
    if (k.second != 0) {
      if (!factors.empty()) factors += "*";
      factors += k.second == 1 ? "f" : "f^" + std::to_string(k.second);
    }
    if (mag != 1 || factors.empty()) {
      s += to_decimal(mag);
      if (!factors.empty()) s += "*";
    }
    s += factors;
  }
  return s;
}

namespace {

std::string normalize_unicode(std::string_view in) {
  std::string out;
  for (std::size_t i = 0; i < in.size();) {
    auto starts = [&](std::string_view u) { return in.substr(i, u.size()) == u; };
    if (starts("−")) {
      out += '-';
      i += 3;
    } else if (starts("≥")) {
      out += ">=";
      i += 3;
    } else if (starts("≤")) {
      out += "<=";
      i += 3;
    } else if (starts("·") || starts("×")) {
      out += '*';
      i += 2;
    } else if (starts("⋅")) {
      out += '*';
      i += 3;
    } else {
      out += in[i++];
    }
  }
  return out;
}

std::string trim_copy(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Expr parse_all() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  Expr expr() {
    Expr acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool starts_atom(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'q' || c == 'f' || c == '(';
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Expr d = unary();
        if (!d.is_constant() || d.constant_value() == 0) fail("division only by non-zero constants");
        acc = acc * Expr::constant(1 / d.constant_value());
      } else if (starts_atom(peek())) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    const bool two_base = peek() == '2';
    const std::size_t base_pos = pos_;
    Expr base = atom();
    if (!accept('^')) return base;
    Expr ex = exponent();
    if (ex.is_constant()) {
      const Rational v = ex.constant_value();
      if (boost::multiprecision::denominator(v) != 1) fail("non-integer exponent");
      const BigInt n = boost::multiprecision::numerator(v);
      if (n > 4096 || n < -4096) fail("exponent out of range");
      return base.pow(static_cast<int>(n));
    }
    // 2^{a f + b}
    if (!two_base || !(base == Expr::constant(2))) {
      pos_ = base_pos;
      fail("variable exponents are only supported on the base 2");
    }
    Expr r = Expr::constant(1);
    for (const auto& [k, c] : ex.terms()) {
      if (k.first != 0 || k.second > 1 || boost::multiprecision::denominator(c) != 1) {
        fail("exponent of 2 must be linear in f with integer coefficients");
      }
      const int n = static_cast<int>(boost::multiprecision::numerator(c));
      r = r * (k.second == 1 ? Expr::q_power(n) : Expr::constant(2).pow(n));
    }
    return r;
  }

  Expr exponent() {
    if (accept('{')) {
      Expr e = expr();
      expect('}');
      return e;
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (accept('-')) return -exponent_atom();
    return exponent_atom();
  }

  Expr exponent_atom() {
    if (accept('f')) return Expr::f_power(1);
    return Expr::constant(number());
  }

  BigInt number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return BigInt(s_.substr(start, pos_ - start));
  }

  Expr atom() {
    const char c = peek();
    if (c == 'q') {
      ++pos_;
      return Expr::q_power(1);
    }
    if (c == 'f') {
      ++pos_;
      return Expr::f_power(1);
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr::constant(number());
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(normalize_unicode(text)).parse_all(); }

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
  }
  return "?";
}

Relation parse_relation(std::string_view text) {
  std::string s = normalize_unicode(text);
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  for (Relation r : {Relation::Greater, Relation::GreaterEq, Relation::Less, Relation::LessEq, Relation::Equal}) {
    if (s == to_string(r)) return r;
  }
  if (s == "==") return Relation::Equal;
  throw ParseError("unknown relation '" + std::string(text) + "'");
}

InequalityText split_inequality(std::string_view text) {
  const std::string s = normalize_unicode(text);
  const auto pos = s.find_first_of("<>=");
  if (pos == std::string::npos) throw ParseError("no relation in '" + std::string(text) + "'");
  std::size_t len = 1;
  if (pos + 1 < s.size() && s[pos + 1] == '=') len = 2;
  if (s.find_first_of("<>=", pos + len) != std::string::npos) {
    throw ParseError("more than one relation in '" + std::string(text) + "'");
  }
  return {trim_copy(s.substr(0, pos)), parse_relation(s.substr(pos, len)), trim_copy(s.substr(pos + len))};
}

Inequality parse_inequality(std::string_view text) {
  InequalityText t = split_inequality(text);
  return {parse_expr(t.lhs), t.rel, parse_expr(t.rhs)};
}

bool FRange::is_finite() const {
  for (const auto& seg : segments) {
    if (!seg.to) return false;
  }
  return true;
}

std::string FRange::to_string() const {
  std::string s;
  for (const auto& seg : segments) {
    if (!s.empty()) s += ",";
    s += std::to_string(seg.from);
    if (!seg.to) {
      s += "..";
    } else if (*seg.to != seg.from) {
      s += ".." + std::to_string(*seg.to);
    }
  }
  return s;
}

FRange parse_frange(std::string_view text) {
  FRange r;
  auto fail = [&](const std::string& what) { throw ParseError("f-range '" + std::string(text) + "': " + what); };
  auto read = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
    if (v == 0) fail("f must be at least 1");
    return v;
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(start, comma - start);
    const auto dots = part.find("..");
    if (dots == std::string_view::npos) {
      const unsigned v = read(part);
      r.segments.push_back({v, v});
    } else {
      const unsigned a = read(part.substr(0, dots));
      std::string_view rest = part.substr(dots + 2);
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      if (rest.empty()) {
        r.segments.push_back({a, std::nullopt});
      } else {
        const unsigned b = read(rest);
        if (b < a) fail("empty segment");
        r.segments.push_back({a, b});
      }
    }
    start = comma + 1;
  }
  if (r.segments.empty()) fail("empty range");
  return r;
}

}  // namespace e1forge::bounds
