#pragma once

// Univariate polynomials over GF(2^k): a general dense Poly for the
// factorization machinery, and the MonicPoly / Factorization value types
// used to describe characteristic polynomials.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "e1forge/gf2k.hpp"

namespace e1forge::poly {

using gf2k::Elem;
using gf2k::FieldSpec;

/// Dense polynomial, coefficients constant term first, no trailing zeros.
/// The zero polynomial has an empty coefficient list and degree -1.
class Poly {
 public:
  explicit Poly(const FieldSpec& field) : field_(&field) {}
  Poly(const FieldSpec& field, std::vector<Elem> coeffs);

  static Poly constant(const FieldSpec& field, Elem c);
  static Poly monomial(const FieldSpec& field, Elem c, unsigned degree);
  /// x + c
  static Poly linear(const FieldSpec& field, Elem c);

  const FieldSpec& field() const { return *field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  Elem lead() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }

  Elem eval(Elem x) const;
  Poly monic() const;
  Poly derivative() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(Elem c) const;

  /// Quotient and remainder; divisor must be non-zero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  const FieldSpec* field_;
  std::vector<Elem> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly a, Poly b);
Poly pow(const Poly& a, unsigned e);
/// base^(2^squarings) mod m
Poly square_power_mod(Poly base, unsigned squarings, const Poly& m);

/// Monic polynomial over GF(q^delta). Degree 0 is the constant polynomial 1.
class MonicPoly {
 public:
  explicit MonicPoly(const FieldSpec& field);  // the constant 1
  /// Throws DomainError unless p is monic.
  explicit MonicPoly(Poly p);
  /// Coefficients below the leading one, constant term first.
  static MonicPoly from_lower(const FieldSpec& field, std::vector<Elem> lower);

  const FieldSpec& field() const { return poly_.field(); }
  unsigned degree() const { return static_cast<unsigned>(poly_.degree()); }
  /// Coefficients below the implicit leading 1, constant term first.
  std::vector<Elem> lower_coeffs() const;
  Elem constant_term() const { return poly_.coeff(0); }
  const Poly& poly() const { return poly_; }

  friend MonicPoly operator*(const MonicPoly& a, const MonicPoly& b) {
    return MonicPoly(a.poly_ * b.poly_);
  }
  friend bool operator==(const MonicPoly& a, const MonicPoly& b) { return a.poly_ == b.poly_; }

  /// Canonical order: degree first, then lexicographic on coefficient
  /// encodings from the constant term up.
  friend std::strong_ordering operator<=>(const MonicPoly& a, const MonicPoly& b);

 private:
  Poly poly_;
};

MonicPoly power(const MonicPoly& p, unsigned e);

struct FactorPower {
  MonicPoly factor;
  unsigned multiplicity;

  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

/// Multiset of distinct monic irreducible factors in canonical order.
class Factorization {
 public:
  explicit Factorization(const FieldSpec& field) : field_(&field) {}
  /// Sorts and merges equal factors; does not check irreducibility.
  Factorization(const FieldSpec& field, std::vector<FactorPower> factors);

  const FieldSpec& field() const { return *field_; }
  const std::vector<FactorPower>& factors() const { return factors_; }
  unsigned degree() const;
  /// Multiplicity of `factor` (0 if absent).
  unsigned multiplicity(const MonicPoly& factor) const;
  MonicPoly expand() const;

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.field_ == b.field_ && a.factors_ == b.factors_;
  }

 private:
  const FieldSpec* field_;
  std::vector<FactorPower> factors_;
};

/// Polynomial whose roots are the inverses of p's roots. Requires p(0) != 0.
MonicPoly poly_star(const MonicPoly& p);
/// Roots are the (-q)-th powers of p's roots, q = 2^f of a delta = 2 field.
MonicPoly poly_dagger(const MonicPoly& p, std::uint64_t q);
/// Coefficient-wise x -> x^{2^power} twist.
MonicPoly frobenius_twist(const MonicPoly& p, unsigned power);

bool is_real_charpoly(const MonicPoly& xi);
bool is_unitary_compatible(const MonicPoly& xi, std::uint64_t q);

/// Complete factorization into monic irreducibles (squarefree, distinct
/// degree, then equal degree splitting). Requires degree >= 1.
Factorization poly_factor(const MonicPoly& p);
/// Root-scan factorization for degree <= 3 (independent cross-check path).
Factorization factor_by_root_scan(const MonicPoly& p);
bool is_irreducible(const MonicPoly& p);

Factorization factorization_star(const Factorization& xi);
Factorization factorization_dagger(const Factorization& xi, std::uint64_t q);

/// x + 1, the polynomial with root 1.
MonicPoly delta_one(const FieldSpec& field);

}  // namespace e1forge::poly
