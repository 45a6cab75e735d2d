#include <gtest/gtest.h>

#include <numeric>

#include "e1forge/certify.hpp"
#include "e1forge/error.hpp"
#include "e1forge/group_order.hpp"

namespace e1forge::bounds {
namespace {

// Product formula evaluated with plain 128-bit integers.
unsigned __int128 naive_gl(unsigned m, unsigned __int128 q, int sign) {
  unsigned __int128 r = 1;
  unsigned __int128 qi = 1;
  for (unsigned i = 1; i <= m; ++i) {
    qi *= q;
    const bool plus = sign == -1 && i % 2 == 1;
    r *= plus ? qi + 1 : qi - 1;
  }
  for (unsigned i = 0; i < m * (m - 1) / 2; ++i) r *= q;
  return r;
}

BigInt to_big(unsigned __int128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

TEST(GroupOrder, SmallValues) {
  EXPECT_EQ(group_order(GroupKind::GL, 2, 2).value, 6);
  EXPECT_EQ(group_order(GroupKind::GL, 3, 2).value, 168);
  EXPECT_EQ(group_order(GroupKind::GL, 3, 4).value, 181440);
  EXPECT_EQ(group_order(GroupKind::GU, 2, 2).value, 18);
  EXPECT_EQ(group_order(GroupKind::GU, 3, 2).value, 648);
  EXPECT_EQ(group_order(GroupKind::GU, 2, 4).value, 300);
  EXPECT_EQ(group_order(GroupKind::PGU, 3, 4).value, 62400);
  EXPECT_EQ(group_order(GroupKind::PGL, 2, 4).value, 60);
  EXPECT_EQ(group_order(GroupKind::PGU, 3, 2).value, 216);
  EXPECT_EQ(group_order(GroupKind::SL, 3, 4).value, 60480);
  EXPECT_EQ(group_order(GroupKind::SU, 3, 2).value, 216);
  EXPECT_EQ(group_order(GroupKind::GL, 3, 4).odd_part, 2835);
  EXPECT_THROW(group_order(GroupKind::GL, 3, 6), DomainError);
  EXPECT_THROW(group_order(GroupKind::GL, 0, 2), DomainError);
}

TEST(GroupOrder, MatchesNaiveProduct) {
  for (unsigned m = 1; m <= 5; ++m) {
    for (std::uint64_t q : {2ULL, 4ULL, 8ULL, 16ULL}) {
      EXPECT_EQ(gl_order(m, BigInt(q)), to_big(naive_gl(m, q, 1)));
      EXPECT_EQ(gu_order(m, BigInt(q)), to_big(naive_gl(m, q, -1)));
      const auto e = center_gcd(m, q, 1);
      EXPECT_EQ(group_order(GroupKind::PGL, m, q).value * (q - 1), gl_order(m, BigInt(q)));
      EXPECT_EQ(group_order(GroupKind::SL, m, q).value * (q - 1), gl_order(m, BigInt(q)));
      EXPECT_EQ(e, std::gcd<std::uint64_t>(m, q - 1));
      EXPECT_EQ(group_order(GroupKind::PGU, m, q).value * (q + 1), gu_order(m, BigInt(q)));
    }
  }
}

TEST(GroupOrder, ParseKind) {
  EXPECT_EQ(parse_group_kind("pgu"), GroupKind::PGU);
  EXPECT_EQ(epsilon_of(GroupKind::SU), -1);
  EXPECT_EQ(to_string(GroupKind::PGL), "PGL");
  EXPECT_THROW(parse_group_kind("Sp"), ParseError);
}

TEST(OrderEstimate, Examples) {
  const auto r = order_estimate(Rational(2), 2);
  // (2-1)(4-1) = 3 against 2^3 = 8 and the lower bound 8 * 1/4 = 2.
  EXPECT_EQ(r.linear_product, 3);
  EXPECT_EQ(r.lower, 2);
  EXPECT_EQ(r.linear_upper, 8);
  EXPECT_TRUE(r.linear_ok);
  // (2+1)(4-1) = 9 <= 8 / (1/4) = 32.
  EXPECT_EQ(r.unitary_product, 9);
  EXPECT_EQ(r.unitary_upper, 32);
  EXPECT_TRUE(r.unitary_ok);

  const auto s = order_estimate(Rational(4), 2);
  EXPECT_EQ(s.linear_product, 45);
  EXPECT_EQ(s.unitary_product, 75);
  EXPECT_EQ(s.linear_upper, 64);
  EXPECT_EQ(s.lower, Rational(64) * Rational(11, 16));
  EXPECT_TRUE(order_estimate_check(Rational(4), 2));
  EXPECT_THROW(order_estimate(Rational(1), 3), DomainError);
  EXPECT_THROW(order_estimate(Rational(2), 1), DomainError);
}

TEST(OrderEstimate, Grid) {
  for (unsigned a = 2; a <= 64; ++a) {
    for (unsigned m = 2; m <= 20; ++m) ASSERT_TRUE(order_estimate_check(Rational(a), m)) << a << " " << m;
  }
  EXPECT_TRUE(order_estimate_check(Rational(5, 2), 7));
}

TEST(MG, Values) {
  EXPECT_EQ(mg(parse_mg_group("PSL_3(16)")).value, 62401);
  EXPECT_EQ(mg(parse_mg_group("PSU_3(8)")).value, 4608);
  EXPECT_EQ(mg(parse_mg_group("PSL_5(4)")).value, BigInt(1) << 30);
  EXPECT_EQ(mg(parse_mg_group("PSL_3(4)")).value, 256);
  EXPECT_EQ(mg(parse_mg_group("E6(2)")).value, BigInt(1) << 48);
  EXPECT_EQ(mg(parse_mg_group("2E6(2)")).value, BigInt(1) << 48);
  EXPECT_EQ(mg(parse_mg_group("POmega8+(2)")).value, 16384 + 4096);
  EXPECT_THROW(mg(parse_mg_group("PSU_3(2)")), DomainError);
  EXPECT_THROW(mg(parse_mg_group("PSL_4(4)")), DomainError);
  EXPECT_THROW(parse_mg_group("PSL_3"), ParseError);
  EXPECT_THROW(parse_mg_group("G2(4)"), ParseError);
}

TEST(Expr, Parsing) {
  const Expr e = parse_expr("(q^3 - 2q^2)^2");
  EXPECT_EQ(e, parse_expr("q^6 - 4*q^5 + 4 q^4"));
  EXPECT_EQ(e.eval(1), 0);
  EXPECT_EQ(e.eval(3), 512 * 512 - 4 * 8 * 4096 + 4 * 4096);
  EXPECT_EQ(parse_expr("2^{3f+1}"), parse_expr("2 q^3"));
  EXPECT_EQ(parse_expr("q^27/3").eval(1), Rational(1 << 27, 3));
  EXPECT_EQ(parse_expr("9(6f-1)^2").eval(7), 9 * 41 * 41);
  EXPECT_EQ(parse_expr("q^-2").eval(2), Rational(1, 16));
  EXPECT_EQ(parse_expr("3 · q").eval(1), 6);
  EXPECT_EQ(parse_expr("q - q").to_string(), "0");
  EXPECT_EQ(parse_expr("q^3 - 2 q^2 f + 1/3").to_string(), "q^3 - 2*q^2*f + 1/3");
  EXPECT_THROW(parse_expr("q^"), ParseError);
  EXPECT_THROW(parse_expr("q / f"), ParseError);
  EXPECT_THROW(parse_expr("x + 1"), ParseError);
  EXPECT_THROW(parse_expr("(q"), ParseError);
}

TEST(Expr, InequalitiesAndRanges) {
  const auto t = split_inequality("q^2 >= 4 f");
  EXPECT_EQ(t.rel, Relation::GreaterEq);
  EXPECT_EQ(parse_relation("≤"), Relation::LessEq);
  EXPECT_THROW(split_inequality("q + 1"), ParseError);
  const auto r = parse_frange("2,4..5,9..");
  ASSERT_EQ(r.segments.size(), 3U);
  EXPECT_FALSE(r.is_finite());
  EXPECT_EQ(r.segments[1].from, 4U);
  EXPECT_EQ(*r.segments[1].to, 5U);
  EXPECT_FALSE(r.segments[2].to.has_value());
  EXPECT_TRUE(parse_frange("7..19").is_finite());
  EXPECT_THROW(parse_frange("0..3"), ParseError);
  EXPECT_THROW(parse_frange("5..3"), ParseError);
  EXPECT_THROW(parse_frange(""), ParseError);
}

TEST(Certify, FiniteRanges) {
  const auto c = certify("(q^3-2q^2)^2 > 9(6f-1)^2(q^4+q^3)", "7..19");
  EXPECT_EQ(c.status, CertStatus::Verified);
  EXPECT_TRUE(replay(c));
  // Fails at f = 6.
  const auto bad = certify("(q^3-2q^2)^2 > 9(6f-1)^2(q^4+q^3)", "6..19");
  EXPECT_EQ(bad.status, CertStatus::Failed);
  ASSERT_TRUE(bad.segments[0].counterexample.has_value());
  EXPECT_EQ(*bad.segments[0].counterexample, 6U);
  EXPECT_TRUE(replay(bad));
}

TEST(Certify, TailWitnesses) {
  const auto c = certify("q^27/3 > 17q^24", "3..");
  EXPECT_EQ(c.status, CertStatus::Verified);
  ASSERT_EQ(c.segments.size(), 1U);
  const auto& w = c.segments[0].witness;
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->lead_q_exp, 27);
  EXPECT_LT(w->remainder_ratio_at_f0, 1);
  EXPECT_TRUE(replay(c));

  EXPECT_EQ(certify("q > 0", "1..").status, CertStatus::Verified);
  EXPECT_EQ(certify("q > f^3", "10..").status, CertStatus::Verified);
  EXPECT_EQ(certify("q > f^3", "9..").status, CertStatus::Failed);
  EXPECT_EQ(certify("q^2 = q*q", "1..").status, CertStatus::Verified);

  // Tampered witnesses do not replay.
  auto forged = c;
  forged.segments[0].witness->f0 = 1;
  EXPECT_FALSE(replay(forged));
  auto flipped = c;
  flipped.status = CertStatus::Failed;
  EXPECT_FALSE(replay(flipped));
}

TEST(Certify, NonDominatedTailIsNotProved) {
  const auto c = certify("q > q", "1..");
  EXPECT_NE(c.status, CertStatus::Verified);
  EXPECT_TRUE(replay(c));
}

TEST(Registry, ParseAndErrors) {
  const auto entries = parse_registry(
      "# comment\n"
      "\n"
      "a.one | q^2 | > | q | 2.. | sample\n"
      "a.two | q^4 | >= | 4q^3 | 2..5 | squared [clear=2]\n");
  ASSERT_EQ(entries.size(), 2U);
  EXPECT_EQ(entries[0].id, "a.one");
  EXPECT_EQ(entries[0].line, 3U);
  EXPECT_EQ(entries[1].clear_power, 2U);
  EXPECT_EQ(entries[1].rel, Relation::GreaterEq);
  EXPECT_EQ(certify_entry(entries[0]).status, CertStatus::Verified);
  EXPECT_EQ(certify_entry(entries[1]).clear_power, 2U);

  EXPECT_THROW(parse_registry("x | q | > | 1\n"), ParseError);
  EXPECT_THROW(parse_registry("x | q | > | 1 | 1.. | a\nx | q | > | 1 | 1.. | b\n"), ParseError);
  EXPECT_THROW(parse_registry("x | q | ~ | 1 | 1.. | a\n"), ParseError);
  EXPECT_THROW(parse_registry(" | q | > | 1 | 1.. | a\n"), ParseError);
}

TEST(Registry, ShippedEntriesAllVerify) {
  const auto entries = load_registry(default_registry_path());
  ASSERT_GE(entries.size(), 40U);
  const auto one = certify_all(entries, 1);
  const auto many = certify_all(entries, 3);
  ASSERT_EQ(one.size(), entries.size());
  const Expr mid = parse_expr("(q^3-2q^2)^2 - 9(6f-1)^2(q^4+q^3)");
  const Expr e6 = parse_expr("3 (q^27/3 - 17q^24)");
  bool saw_mid_range = false;
  bool saw_e6 = false;
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].status, CertStatus::Verified) << one[i].id;
    EXPECT_EQ(one[i].id, many[i].id);
    EXPECT_EQ(one[i].status, many[i].status);
    EXPECT_TRUE(replay(one[i])) << one[i].id;
    for (const auto& s : one[i].segments) {
      if (!s.segment.to) EXPECT_TRUE(s.witness.has_value()) << one[i].id;
    }
    const Expr diff = parse_expr(one[i].lhs_text) - parse_expr(one[i].rhs_text);
    if (diff == mid && one[i].range.to_string() == "7..19") saw_mid_range = true;
    if (diff == e6 && one[i].range.to_string() == "3..") saw_e6 = true;
  }
  EXPECT_TRUE(saw_mid_range);
  EXPECT_TRUE(saw_e6);
}

}  // namespace
}  // namespace e1forge::bounds
