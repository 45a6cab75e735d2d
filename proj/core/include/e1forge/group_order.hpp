#pragma once

// Exact orders of the classical groups GL/GU/SL/SU/PGL/PGU over GF(q), q = 2^f,
// the two-sided order estimates for products of (a^i - 1) and (a^i - (-1)^i),
// and the per-group centralizer bound M_G.

#include <cstdint>
#include <string>
#include <string_view>

#include "e1forge/bigint.hpp"

namespace e1forge::bounds {

enum class GroupKind { GL, GU, SL, SU, PGL, PGU };

std::string to_string(GroupKind kind);
/// Accepts GL, GU, SL, SU, PGL, PGU (case-insensitive); throws ParseError.
GroupKind parse_group_kind(std::string_view text);
/// +1 for the linear kinds, -1 for the unitary ones.
int epsilon_of(GroupKind kind);

struct GroupOrder {
  GroupKind kind;
  unsigned d;
  std::uint64_t q;
  BigInt value;
  BigInt odd_part;
};

/// Requires d >= 1 and q a power of 2 (DomainError otherwise).
GroupOrder group_order(GroupKind kind, unsigned d, std::uint64_t q);

/// |GL_m(Q)| = Q^{m(m-1)/2} prod_{i=1}^m (Q^i - 1); Q may be any integer >= 2.
BigInt gl_order(unsigned m, const BigInt& Q);
/// |GU_m(Q)| = Q^{m(m-1)/2} prod_{i=1}^m (Q^i - (-1)^i).
BigInt gu_order(unsigned m, const BigInt& Q);
/// |GL^eps_d(q)|
BigInt gl_eps_order(int epsilon, unsigned d, const BigInt& q);

/// e = gcd(d, q - eps).
std::uint64_t center_gcd(unsigned d, std::uint64_t q, int epsilon);

struct OrderEstimate {
  bool linear_ok;   // a^{m(m+1)/2}(1-a^-1-a^-2) <= prod(a^i-1) <= a^{m(m+1)/2}
  bool unitary_ok;  // same lower bound, upper bound divided by (1-a^-1-a^-2)
  Rational lower;
  Rational linear_product;
  Rational unitary_product;
  Rational linear_upper;
  Rational unitary_upper;
};

/// Both two-sided estimates in exact rational arithmetic; requires a >= 2, m >= 2.
OrderEstimate order_estimate(const Rational& a, unsigned m);
bool order_estimate_check(const Rational& a, unsigned m);

/// Group descriptor accepted by mg(): "E6", "2E6", "PSL", "PSU", "POmega8+".
struct MGGroup {
  std::string family;  // E6 | PSL | POmega8+
  int epsilon = 1;
  unsigned d = 0;      // used by PSL only
  std::uint64_t q = 2;
};

struct MGValue {
  MGGroup group;
  BigInt value;
};

/// Throws DomainError for groups outside the definition (PSL with d = 4 or
/// d <= 2, PSU_3(2), unknown families).
MGValue mg(const MGGroup& group);
/// Parses descriptors like "PSL_3(16)", "PSU_5(4)", "E6(2)", "2E6(2)", "POmega8+(4)".
MGGroup parse_mg_group(std::string_view text);

}  // namespace e1forge::bounds
