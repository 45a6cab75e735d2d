#pragma once

// Exact expressions in q = 2^f and f: finite sums c * q^e * f^j with rational
// c, integer e and non-negative integer j.
//
// Grammar (whitespace ignored; unicode minus, middle dot, times, >= and <=
// signs are accepted):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/' | <juxtaposition>) unary)*     ('/' by constants only)
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?
//   exponent := integer | '{' expr '}' | '(' expr ')'           (constant integer;
//               2^{a f + b} is also accepted and means 2^b q^a)
//   atom   := integer | 'q' | 'f' | '(' expr ')'

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "e1forge/bigint.hpp"

namespace e1forge::bounds {

class Expr {
 public:
  /// Key (q exponent, f exponent).
  using Key = std::pair<int, unsigned>;

  Expr() = default;
  static Expr constant(const Rational& c);
  static Expr q_power(int e);
  static Expr f_power(unsigned j);

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant expression (DomainError otherwise).
  Rational constant_value() const;

  Rational eval(unsigned f) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  Expr operator-() const;
  /// Non-negative powers of anything; negative powers only of single terms
  /// without f.
  Expr pow(int n) const;

  friend bool operator==(const Expr&, const Expr&) = default;

  /// Canonical text, terms by decreasing (e, j), e.g. "q^3 - 2*q^2*f + 1/3".
  std::string to_string() const;

 private:
  void add_term(Key k, const Rational& c);
  std::map<Key, Rational> terms_;
};

Expr parse_expr(std::string_view text);

enum class Relation { Greater, GreaterEq, Less, LessEq, Equal };

std::string to_string(Relation r);
Relation parse_relation(std::string_view text);

struct Inequality {
  Expr lhs;
  Relation rel;
  Expr rhs;
};

struct InequalityText {
  std::string lhs;
  Relation rel;
  std::string rhs;
};

/// Splits "lhs REL rhs" with REL one of > >= < <= = (or the unicode forms).
InequalityText split_inequality(std::string_view text);
Inequality parse_inequality(std::string_view text);

/// Set of f values: a union of closed segments, the last possibly unbounded.
struct FRange {
  struct Segment {
    unsigned from;
    std::optional<unsigned> to;  // inclusive; nullopt means unbounded
  };
  std::vector<Segment> segments;

  bool is_finite() const;
  std::string to_string() const;
};

/// "a..b", "a..", "a", or comma separated lists of these; f >= 1.
FRange parse_frange(std::string_view text);

}  // namespace e1forge::bounds
