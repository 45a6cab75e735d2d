#include "e1forge/group_order.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "e1forge/error.hpp"
#include "e1forge/gf2k.hpp"

namespace e1forge::bounds {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::GL: return "GL";
    case GroupKind::GU: return "GU";
    case GroupKind::SL: return "SL";
    case GroupKind::SU: return "SU";
    case GroupKind::PGL: return "PGL";
    case GroupKind::PGU: return "PGU";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  for (GroupKind k : {GroupKind::GL, GroupKind::GU, GroupKind::SL, GroupKind::SU, GroupKind::PGL, GroupKind::PGU}) {
    if (s == to_string(k)) return k;
  }
  throw ParseError("unknown group kind '" + std::string(text) + "'");
}

int epsilon_of(GroupKind kind) {
  return (kind == GroupKind::GU || kind == GroupKind::SU || kind == GroupKind::PGU) ? -1 : 1;
}

BigInt gl_order(unsigned m, const BigInt& Q) {
  BigInt r = ipow(Q, m * (m - 1) / 2);
  BigInt Qi = 1;
  for (unsigned i = 1; i <= m; ++i) {
    Qi *= Q;
    r *= Qi - 1;
  }
  return r;
}

BigInt gu_order(unsigned m, const BigInt& Q) {
  BigInt r = ipow(Q, m * (m - 1) / 2);
  BigInt Qi = 1;
  for (unsigned i = 1; i <= m; ++i) {
    Qi *= Q;
    r *= (i % 2 == 0) ? Qi - 1 : Qi + 1;
  }
  return r;
}

BigInt gl_eps_order(int epsilon, unsigned d, const BigInt& q) {
  return epsilon == 1 ? gl_order(d, q) : gu_order(d, q);
}

std::uint64_t center_gcd(unsigned d, std::uint64_t q, int epsilon) {
  const std::uint64_t qe = epsilon == 1 ? q - 1 : q + 1;
  return std::gcd(static_cast<std::uint64_t>(d), qe);
}

GroupOrder group_order(GroupKind kind, unsigned d, std::uint64_t q) {
  if (d == 0) throw DomainError("group_order: d must be positive");
  gf2k::log2_exact(q);
  const int eps = epsilon_of(kind);
  BigInt value = gl_eps_order(eps, d, BigInt(q));
  if (kind != GroupKind::GL && kind != GroupKind::GU) {
    value /= BigInt(eps == 1 ? q - 1 : q + 1);
  }
  BigInt odd = odd_part(value);
  return {kind, d, q, std::move(value), std::move(odd)};
}

OrderEstimate order_estimate(const Rational& a, unsigned m) {
  if (a < 2 || m < 2) throw DomainError("order_estimate: requires a >= 2 and m >= 2");
  const Rational factor = 1 - 1 / a - 1 / (a * a);
  const Rational top = rpow(a, m * (m + 1) / 2);
  OrderEstimate r;
  r.lower = top * factor;
  r.linear_product = 1;
  r.unitary_product = 1;
  Rational ai = 1;
  for (unsigned i = 1; i <= m; ++i) {
    ai *= a;
    r.linear_product *= ai - 1;
    r.unitary_product *= (i % 2 == 0) ? ai - 1 : ai + 1;
  }
  r.linear_upper = top;
  r.unitary_upper = top / factor;
  r.linear_ok = r.lower <= r.linear_product && r.linear_product <= r.linear_upper;
  r.unitary_ok = r.lower <= r.unitary_product && r.unitary_product <= r.unitary_upper;
  return r;
}

bool order_estimate_check(const Rational& a, unsigned m) {
  const OrderEstimate r = order_estimate(a, m);
  return r.linear_ok && r.unitary_ok;
}

MGValue mg(const MGGroup& g) {
  gf2k::log2_exact(g.q);
  const BigInt q(g.q);
  if (g.epsilon != 1 && g.epsilon != -1) throw DomainError("mg: epsilon must be +1 or -1");
  if (g.family == "E6") return {g, ipow(q, 48)};
  if (g.family == "POmega8+") return {g, ipow(q, 14) + ipow(q, 12)};
  if (g.family == "PSL") {
    if (g.d >= 5) return {g, ipow(q, g.d * (g.d + 1) / 2)};
    if (g.d == 3) {
      if (g.epsilon == 1) return {g, g.q == 16 ? BigInt(62401) : ipow(q, 4)};
      if (g.q == 2) throw DomainError("mg: PSU_3(2) is not simple");
      return {g, ipow(q, 4) + ipow(q, 3)};
    }
    throw DomainError("mg: PSL^eps_d needs d = 3 or d >= 5, got d = " + std::to_string(g.d));
  }
  throw DomainError("mg: unsupported group family '" + g.family + "'");
}

MGGroup parse_mg_group(std::string_view text) {
  auto fail = [&]() -> MGGroup { throw ParseError("cannot parse group descriptor '" + std::string(text) + "'"); };
  auto read_uint = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail();
    return v;
  };
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') return fail();
  const std::string_view head = text.substr(0, open);
  MGGroup g;
  g.q = read_uint(text.substr(open + 1, text.size() - open - 2));
  if (head == "E6") {
    g.family = "E6";
  } else if (head == "2E6") {
    g.family = "E6";
    g.epsilon = -1;
  } else if (head == "POmega8+") {
    g.family = "POmega8+";
  } else if (head.substr(0, 4) == "PSL_" || head.substr(0, 4) == "PSU_") {
    g.family = "PSL";
    g.epsilon = head[2] == 'L' ? 1 : -1;
    g.d = static_cast<unsigned>(read_uint(head.substr(4)));
  } else {
    return fail();
  }
  return g;
}

}  // namespace e1forge::bounds
