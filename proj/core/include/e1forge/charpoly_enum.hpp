#pragma once

// Exhaustive, index-addressable enumeration of monic degree-d polynomials
// with nonzero constant term, in canonical MonicPoly order.

#include <cstdint>
#include <optional>
#include <vector>

#include "e1forge/poly.hpp"

namespace e1forge::poly {

struct CharpolyConstraints {
  bool real = false;              // Xi = Xi*
  bool unitary = false;           // Xi = Xi^dagger (field must have delta = 2)
  bool exclude_identity = false;  // drop (x+1)^d
};

struct CharpolyEntry {
  std::uint64_t index;
  MonicPoly poly;
  Factorization xi;
};

inline constexpr std::uint64_t kDefaultEnumBudget = 10'000'000;

class CharpolyEnumerator {
 public:
  /// Throws BudgetExceeded when |field|^d > budget, DomainError when d == 0
  /// or `unitary` is requested over a delta = 1 field.
  CharpolyEnumerator(const FieldSpec& field, unsigned d, CharpolyConstraints constraints,
                     std::uint64_t budget = kDefaultEnumBudget);

  /// Number of candidate indices, (|F| - 1) |F|^{d-1}.
  std::uint64_t index_count() const { return count_; }
  /// The candidate at `index`, without filtering.
  MonicPoly candidate(std::uint64_t index) const;
  /// True iff the candidate satisfies the constraints.
  bool admits(const MonicPoly& p) const;

  /// Next admitted entry, or nullopt at the end.
  std::optional<CharpolyEntry> next();
  void reset() { cursor_ = 0; }

  /// Admitted entries with index in [begin, end), in index order.
  std::vector<CharpolyEntry> range(std::uint64_t begin, std::uint64_t end) const;

 private:
  const FieldSpec* field_;
  unsigned d_;
  CharpolyConstraints constraints_;
  std::uint64_t count_ = 0;
  std::uint64_t cursor_ = 0;
};

/// All admitted factorizations, in canonical order.
std::vector<Factorization> enumerate_charpolys(unsigned d, const FieldSpec& field,
                                               CharpolyConstraints constraints,
                                               std::uint64_t budget = kDefaultEnumBudget);

}  // namespace e1forge::poly
