#pragma once

// Characteristic-2 finite fields GF(2^f) and GF(2^{2f}) in the Conway
// polynomial basis. An element is its coordinate vector over GF(2), packed
// little-endian into an unsigned integer: bit i is the coefficient of x^i.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace e1forge::gf2k {

using Elem = std::uint32_t;

inline constexpr unsigned kMaxDegree = 20;

/// Conway polynomial of degree n over GF(2), bit i = coefficient of x^i
/// (leading bit included). Valid for 1 <= n <= kMaxDegree.
std::uint32_t conway_polynomial(unsigned n);

/// The field GF(q^delta) with q = 2^f. Instances are created once per
/// (f, delta) by make_field() and live for the whole process, so references
/// and pointers to them stay valid and may be shared freely across threads.
class FieldSpec {
 public:
  FieldSpec(unsigned f, unsigned delta);
  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  unsigned f() const { return f_; }
  unsigned delta() const { return delta_; }
  unsigned degree() const { return degree_; }
  std::uint32_t defining_poly() const { return modulus_; }

  /// Number of elements, 2^{f delta}.
  std::uint32_t size() const { return 1U << degree_; }
  /// Order of the multiplicative group, 2^{f delta} - 1.
  std::uint32_t unit_order() const { return size() - 1; }
  /// q = 2^f, the size of the fixed subfield when delta = 2.
  std::uint64_t q() const { return std::uint64_t{1} << f_; }

  /// "GF(2^k)/conway"
  std::string descriptor() const;

  bool contains(Elem a) const { return a < size(); }

  static Elem add(Elem a, Elem b) { return a ^ b; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// a^e for any signed exponent (a != 0 required when e < 0).
  Elem pow(Elem a, std::int64_t e) const;
  /// a^{2^power}
  Elem frobenius(Elem a, unsigned power) const;
  /// Unique square root (squaring is a bijection in characteristic 2).
  Elem sqrt(Elem a) const { return frobenius(a, degree_ - 1); }
  /// Discrete log to the base of the primitive element; a != 0.
  std::uint32_t log(Elem a) const;
  /// The class of x, a primitive element for Conway polynomials.
  Elem primitive() const { return exp_[1]; }
  /// Multiplicative order of a != 0.
  std::uint32_t order(Elem a) const;
  /// Canonical element of order k; k must divide unit_order().
  Elem element_of_order(std::uint32_t k) const;

  /// Image of b in GF(2^f) (encoded in the degree-f Conway basis) under the
  /// Conway-compatible embedding into this field. Requires delta == 2.
  Elem embed_subfield(Elem b) const;
  /// True iff a lies in the 2^f-element subfield.
  bool in_subfield(Elem a) const { return frobenius(a, f_) == a; }
  /// The x -> x^q automorphism (identity when delta == 1).
  Elem bar(Elem a) const { return delta_ == 2 ? frobenius(a, f_) : a; }

 private:
  unsigned f_;
  unsigned delta_;
  unsigned degree_;
  std::uint32_t modulus_;
  std::vector<Elem> exp_;            // length 2 * unit_order
  std::vector<std::uint32_t> log_;   // log_[0] unused
  std::vector<Elem> embed_;          // subfield embedding table (delta == 2)
};

/// Canonical FieldSpec for GF(2^{f delta}); throws DomainError unless
/// 1 <= f * delta <= 20 and delta in {1, 2}.
const FieldSpec& make_field(unsigned f, unsigned delta);

/// f for a power of two q >= 2; throws DomainError otherwise.
unsigned log2_exact(std::uint64_t q);

struct FieldElement {
  const FieldSpec* field = nullptr;
  Elem bits = 0;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field == b.field && a.bits == b.bits;
  }
};

FieldElement element(const FieldSpec& field, Elem bits);
FieldElement fe_add(FieldElement a, FieldElement b);
FieldElement fe_mul(FieldElement a, FieldElement b);
FieldElement fe_inv(FieldElement a);
FieldElement frobenius(FieldElement a, unsigned power);
std::uint32_t fe_order(FieldElement a);

}  // namespace e1forge::gf2k
