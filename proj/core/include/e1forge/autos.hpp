#pragma once

// The diagonal torus of PGL^eps_d(q) extended by the graph automorphism iota
// and the field automorphism phi. Words ad_t o iota^a o phi^b are kept in
// normal form; iota acts first.
//
// For eps = -1 the graph automorphism agrees with phi^f on the unitary torus
// modulo scalars, so unitary words carry graph_exp = 0 and a field exponent
// modulo 2f.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "e1forge/gf2k.hpp"

namespace e1forge::autos {

using gf2k::Elem;
using gf2k::FieldSpec;

struct TorusModel {
  int epsilon;
  unsigned d;
  std::uint64_t q;
  unsigned f;
  const FieldSpec* field;  // GF(q) or GF(q^2)

  /// Requires d >= 2, q a power of 2 and q^delta within the field table.
  static TorusModel make(unsigned d, std::uint64_t q, int epsilon);

  unsigned delta() const { return epsilon == 1 ? 1 : 2; }
  /// Order of phi on the group: f for eps = +1, 2f for eps = -1.
  unsigned field_period() const { return epsilon == 1 ? f : 2 * f; }
  /// Order of iota in the model: 2 for eps = +1 (1 for eps = -1).
  unsigned graph_period() const { return epsilon == 1 ? 2 : 1; }

  /// Divides every entry by the first one.
  std::vector<Elem> normalize(std::vector<Elem> t) const;
  /// True iff t is a normalized diagonal of the torus modulo scalars.
  bool in_torus(const std::vector<Elem>& t) const;
  std::vector<Elem> one() const { return std::vector<Elem>(d, 1U); }
  std::vector<Elem> multiply(const std::vector<Elem>& a, const std::vector<Elem>& b) const;
  std::vector<Elem> power(const std::vector<Elem>& a, std::int64_t e) const;
  /// Order of t modulo scalars (lcm of the normalized entry orders).
  std::uint64_t element_order(const std::vector<Elem>& t) const;
  /// Every normalized torus element, in lexicographic encoding order.
  std::vector<std::vector<Elem>> torus_elements() const;
};

struct AutoWord {
  std::vector<Elem> t;     // normalized, t[0] = 1
  unsigned graph_exp = 0;  // 0 or 1
  unsigned field_exp = 0;  // modulo field_period()

  friend bool operator==(const AutoWord&, const AutoWord&) = default;
};

/// Validates t (normalizing it) and reduces the exponents; for eps = -1 a
/// graph exponent of 1 is folded into field_exp + f.
AutoWord make_word(const TorusModel& m, std::vector<Elem> t, unsigned graph_exp, unsigned field_exp);
AutoWord identity_word(const TorusModel& m);

/// iota^a then phi^b on a normalized diagonal.
std::vector<Elem> apply_mu_diagonal(const TorusModel& m, unsigned graph_exp, unsigned field_exp,
                                    const std::vector<Elem>& t);
/// (ad_t o mu)(ad_t' o mu') = ad_{t mu(t')} o mu mu'.
AutoWord compose(const TorusModel& m, const AutoWord& a, const AutoWord& b);
/// beta^l via the twisted norm N = prod_{i<l} mu^i(t); l >= 1.
AutoWord twisted_norm(const TorusModel& m, const AutoWord& beta, std::uint64_t l);
/// beta^l by repeated composition; l >= 1.
AutoWord naive_power(const TorusModel& m, const AutoWord& beta, std::uint64_t l);
bool is_identity(const AutoWord& w);
/// Order of mu = iota^a phi^b.
std::uint64_t mu_order(const TorusModel& m, unsigned graph_exp, unsigned field_exp);
/// Order of beta by iterated composition.
std::uint64_t auto_order(const TorusModel& m, const AutoWord& beta);
/// A uniformly random word.
AutoWord random_word(const TorusModel& m, std::mt19937_64& rng);
/// True iff x = t^k for some k.
bool is_power_of(const TorusModel& m, const std::vector<Elem>& x, const std::vector<Elem>& t);

struct BoundCheck {
  char part;  // 'a', 'b', 'c'
  std::string claim;
  std::uint64_t tested = 0;
  std::uint64_t passed = 0;
  std::vector<std::string> violations;  // at most a few examples
};

struct TorusOrderReport {
  int epsilon;
  unsigned d;
  std::uint64_t q;
  std::uint64_t words = 0;
  std::vector<BoundCheck> checks;

  bool ok() const;
};

/// Exhaustive check of the three divisibility claims. Requires 3 | q - eps,
/// d <= 4 and f delta <= 6.
TorusOrderReport verify_torus_orders(unsigned d, std::uint64_t q, int epsilon);

/// Divisibility verdicts for a single word ("a", "b", "c" when applicable).
std::vector<std::pair<char, bool>> torus_order_verdicts(const TorusModel& m, const AutoWord& beta);

std::string to_string(const AutoWord& w);

}  // namespace e1forge::autos
