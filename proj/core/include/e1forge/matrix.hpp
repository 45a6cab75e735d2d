#pragma once

// Small dense square matrices over GF(2^k), row-major.

#include <cstdint>
#include <string>
#include <vector>

#include "e1forge/gf2k.hpp"
#include "e1forge/poly.hpp"

namespace e1forge::linalg {

using gf2k::Elem;
using gf2k::FieldSpec;

class Matrix {
 public:
  Matrix(const FieldSpec& field, unsigned d);  // zero matrix
  Matrix(const FieldSpec& field, unsigned d, std::vector<Elem> entries);

  static Matrix identity(const FieldSpec& field, unsigned d);
  static Matrix diagonal(const FieldSpec& field, const std::vector<Elem>& diag);
  /// The anti-diagonal matrix J with ones from top-right to bottom-left.
  static Matrix antidiagonal_ones(const FieldSpec& field, unsigned d);

  const FieldSpec& field() const { return *field_; }
  unsigned dim() const { return d_; }
  Elem at(unsigned i, unsigned j) const { return a_[i * d_ + j]; }
  void set(unsigned i, unsigned j, Elem v) { a_[i * d_ + j] = v; }
  const std::vector<Elem>& entries() const { return a_; }

  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field_ == y.field_ && x.d_ == y.d_ && x.a_ == y.a_;
  }

  Matrix transpose() const;
  /// Entrywise a -> a^{2^power}.
  Matrix frobenius(unsigned power) const;
  Matrix scaled(Elem c) const;
  Matrix pow(std::uint64_t n) const;
  Elem det() const;
  /// Throws DomainError when singular.
  Matrix inverse() const;
  bool is_identity() const;
  bool is_scalar() const;
  /// Characteristic polynomial det(x I - A), via Hessenberg reduction.
  poly::MonicPoly charpoly() const;
  /// Multiplicative order (DomainError when singular or above `limit`).
  std::uint64_t order(std::uint64_t limit = 1ULL << 40) const;

  /// Packs entries (row-major, degree bits each) into 64 bits; requires
  /// d^2 * degree <= 64.
  std::uint64_t key() const;
  static Matrix from_key(const FieldSpec& field, unsigned d, std::uint64_t key);

  std::string to_string() const;

 private:
  const FieldSpec* field_;
  unsigned d_;
  std::vector<Elem> a_;
};

/// True iff d^2 * field degree fits in a 64-bit key.
bool keyable(const FieldSpec& field, unsigned d);

}  // namespace e1forge::linalg
