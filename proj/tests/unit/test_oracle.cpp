#include <gtest/gtest.h>

#include "e1forge/error.hpp"
#include "e1forge/gf2k.hpp"
#include "e1forge/oracle.hpp"

namespace e1forge::oracle {
namespace {

using bounds::GroupKind;

TEST(Oracle, DescriptorParsing) {
  const auto d = parse_group_descriptor("PGU_3(4)");
  EXPECT_EQ(d.kind, GroupKind::PGU);
  EXPECT_EQ(d.d, 3U);
  EXPECT_EQ(d.q, 4U);
  EXPECT_TRUE(d.projective());
  EXPECT_EQ(d.epsilon(), -1);
  EXPECT_EQ(d.to_string(), "PGU_3(4)");
  EXPECT_THROW(parse_group_descriptor("GL(4)"), ParseError);
  EXPECT_THROW(parse_group_descriptor("SL_3(4)"), DomainError);
  EXPECT_THROW(parse_group_descriptor("GL_3(x)"), ParseError);
}

TEST(Oracle, EnumerationSizes) {
  for (auto [text, size] : {std::pair{"GL_2(2)", 6U}, std::pair{"GL_3(2)", 168U}, std::pair{"GL_2(4)", 180U},
                            std::pair{"GU_2(2)", 18U}, std::pair{"GU_3(2)", 648U}, std::pair{"GU_2(4)", 300U},
                            std::pair{"PGL_2(4)", 60U}, std::pair{"PGU_3(2)", 216U}, std::pair{"PGU_2(4)", 60U}}) {
    const auto g = enumerate(parse_group_descriptor(text));
    EXPECT_EQ(g.size(), size) << text;
    EXPECT_EQ(g.formula_order(), size) << text;
    EXPECT_TRUE(std::is_sorted(g.keys().begin(), g.keys().end()));
  }
}

TEST(Oracle, UnitaryMembersPreserveForm) {
  const auto g = enumerate_gu(3, 2);
  for (std::size_t i = 0; i < g.size(); ++i) ASSERT_TRUE(preserves_hermitian_form(g.element(i), 2));
  // The filter and closure constructions agree.
  EnumOptions filter;
  filter.gu_method = GuMethod::Filter;
  EnumOptions closure;
  closure.gu_method = GuMethod::Closure;
  EXPECT_EQ(enumerate_gu(2, 4, filter).keys(), enumerate_gu(2, 4, closure).keys());
}

TEST(Oracle, BudgetIsEnforced) {
  EXPECT_THROW(enumerate_gl(3, 4, 1000), BudgetExceeded);
  EnumOptions tiny;
  tiny.budget = 10;
  EXPECT_THROW(enumerate_gu(3, 2, tiny), BudgetExceeded);
}

TEST(Oracle, CentralizerAndRealnessExamples) {
  const auto& k = gf2k::make_field(2, 1);
  const Elem w = k.primitive();
  const Elem w2 = k.mul(w, w);
  const auto g = enumerate_gl(2, 4);
  const Matrix s = Matrix::diagonal(k, {w, w2});
  EXPECT_EQ(brute_centralizer(g, s), 9);
  EXPECT_TRUE(brute_is_real(g, s));
  EXPECT_EQ(brute_centralizer(g, Matrix::identity(k, 2)), 180);
  // diag(w, w) is central and not real.
  EXPECT_FALSE(brute_is_real(g, Matrix::diagonal(k, {w, w})));
  EXPECT_TRUE(brute_conjugate(g, s, Matrix::diagonal(k, {w2, w})));
  EXPECT_FALSE(brute_conjugate(g, s, Matrix::diagonal(k, {w, 1})));
  EXPECT_EQ(conjugacy_class(g, s).size(), 20U);
  // Threaded scans give the same answers.
  EXPECT_EQ(brute_centralizer(g, s, 3), 9);
  EXPECT_EQ(conjugacy_class(g, s, 3), conjugacy_class(g, s, 1));

  // Modulo scalars diag(w, 1) commutes with the swap up to w.
  const auto pg = quotient_pgl(g);
  EXPECT_EQ(pg.size(), 60U);
  EXPECT_EQ(brute_centralizer(pg, Matrix::diagonal(k, {w, 1})), 3);
  EXPECT_TRUE(brute_is_real(pg, Matrix::diagonal(k, {w, 1})));
}

TEST(Oracle, InversesAndLookup) {
  const auto g = enumerate_gl(3, 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t j = g.inverse_index(i);
    ASSERT_TRUE((g.element(i) * g.element(j)).is_identity());
    ASSERT_EQ(g.find(g.element(i)), i);
  }
}

TEST(Oracle, SweepSmallGroups) {
  const auto r = verify_sweep(parse_group_descriptor("GL_2(2)"));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.enumerated, 6U);
  EXPECT_EQ(r.odd_order_elements, 3U);
  EXPECT_EQ(r.semisimple_classes, 2U);
  EXPECT_TRUE(r.full_scan);
  ASSERT_NE(r.find("full-scan"), nullptr);
  EXPECT_EQ(r.find("full-scan")->tested, 3U);

  for (const char* text : {"GU_3(2)", "PGU_3(2)", "GL_3(2)", "PGL_2(4)"}) {
    const auto s = verify_sweep(parse_group_descriptor(text));
    EXPECT_TRUE(s.ok()) << text;
    for (const auto& c : s.checks) EXPECT_EQ(c.tested, c.passed) << text << " " << c.name;
  }
}

TEST(Oracle, InvolutionCentralizers) {
  const auto gl32 = verify_sweep(parse_group_descriptor("GL_3(2)"));
  const auto* c = gl32.find("involution-centralizer");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->tested, 1U);
  EXPECT_TRUE(c->ok());
}

}  // namespace
}  // namespace e1forge::oracle
