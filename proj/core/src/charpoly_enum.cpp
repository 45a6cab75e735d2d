#include "e1forge/charpoly_enum.hpp"

#include <algorithm>

#include "e1forge/error.hpp"

namespace e1forge::poly {

CharpolyEnumerator::CharpolyEnumerator(const FieldSpec& field, unsigned d, CharpolyConstraints constraints,
                                       std::uint64_t budget)
    : field_(&field), d_(d), constraints_(constraints) {
  if (d == 0) throw DomainError("enumerate_charpolys: degree must be at least 1");
  if (constraints.unitary && field.delta() != 2) {
    throw DomainError("enumerate_charpolys: unitary constraint needs a GF(q^2) field");
  }
  const std::uint64_t size = field.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (total > budget / size) {
      throw BudgetExceeded("enumerate_charpolys: |F|^d exceeds budget " + std::to_string(budget));
    }
    total *= size;
  }
  count_ = total / size * (size - 1);
}

MonicPoly CharpolyEnumerator::candidate(std::uint64_t index) const {
  if (index >= count_) throw DomainError("charpoly index out of range");
  const std::uint64_t size = field_->size();
  std::vector<Elem> c(d_ + 1, 0);
  c[d_] = 1;
  // c0 is the most significant digit so index order is canonical order.
  for (unsigned i = d_ - 1; i >= 1; --i) {
    c[i] = static_cast<Elem>(index % size);
    index /= size;
  }
  c[0] = static_cast<Elem>(index + 1);
  return MonicPoly(Poly(*field_, std::move(c)));
}

bool CharpolyEnumerator::admits(const MonicPoly& p) const {
  if (constraints_.real && !is_real_charpoly(p)) return false;
  if (constraints_.unitary && !is_unitary_compatible(p, field_->q())) return false;
  if (constraints_.exclude_identity && p == power(delta_one(*field_), d_)) return false;
  return true;
}

std::optional<CharpolyEntry> CharpolyEnumerator::next() {
  while (cursor_ < count_) {
    const std::uint64_t idx = cursor_++;
    MonicPoly p = candidate(idx);
    if (admits(p)) {
      Factorization xi = poly_factor(p);
      return CharpolyEntry{idx, std::move(p), std::move(xi)};
    }
  }
  return std::nullopt;
}

std::vector<CharpolyEntry> CharpolyEnumerator::range(std::uint64_t begin, std::uint64_t end) const {
  std::vector<CharpolyEntry> out;
  end = std::min(end, count_);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    MonicPoly p = candidate(idx);
    if (admits(p)) {
      Factorization xi = poly_factor(p);
      out.push_back({idx, std::move(p), std::move(xi)});
    }
  }
  return out;
}

std::vector<Factorization> enumerate_charpolys(unsigned d, const FieldSpec& field, CharpolyConstraints constraints,
                                               std::uint64_t budget) {
  CharpolyEnumerator en(field, d, constraints, budget);
  std::vector<Factorization> out;
  while (auto e = en.next()) out.push_back(std::move(e->xi));
  return out;
}

}  // namespace e1forge::poly
