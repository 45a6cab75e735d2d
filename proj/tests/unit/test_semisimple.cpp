#include <gtest/gtest.h>

#include "e1forge/charpoly_enum.hpp"
#include "e1forge/error.hpp"
#include "e1forge/group_order.hpp"
#include "e1forge/matrix.hpp"
#include "e1forge/oracle.hpp"
#include "e1forge/poly_text.hpp"
#include "e1forge/semisimple.hpp"

namespace e1forge::semisimple {
namespace {

using linalg::Matrix;

SemisimpleClass cls(int eps, std::uint64_t q, const char* xi) {
  return SemisimpleClass::from_poly(eps, q, poly::parse_poly(xi, class_field(eps, q)));
}

// A diagonal matrix whose eigenvalues are the roots of a split charpoly.
Matrix diagonal_of(const SemisimpleClass& c) {
  std::vector<Elem> diag;
  for (const auto& [factor, m] : c.xi.factors()) {
    EXPECT_EQ(factor.degree(), 1U);
    diag.insert(diag.end(), m, factor.constant_term());
  }
  return Matrix::diagonal(c.xi.field(), diag);
}

// An odd-order element of g with the class's characteristic polynomial.
Matrix semisimple_member(const oracle::GroupEnum& g, const SemisimpleClass& c) {
  const auto target = c.charpoly();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Matrix x = g.element(i);
    if (x.order() % 2 == 1 && x.charpoly() == target) return x;
  }
  ADD_FAILURE() << "no element with charpoly " << poly::format_canonical(target);
  return Matrix::identity(g.field(), g.dim());
}

TEST(Semisimple, ClassFieldAndValidation) {
  EXPECT_EQ(class_field(1, 4).degree(), 2U);
  EXPECT_EQ(class_field(-1, 4).degree(), 4U);
  EXPECT_THROW(class_field(0, 4), DomainError);
  EXPECT_THROW(cls(1, 4, "(x+w)(x+0)"), DomainError);
  // x + w is not self-dagger for q = 4 (w^{-4} = w^2).
  EXPECT_THROW(cls(-1, 4, "(x+w)"), DomainError);
  const auto c = cls(1, 4, "(x+1)^2(x+w)");
  EXPECT_EQ(c.d, 3U);
  EXPECT_EQ(c.d1, 2U);
  EXPECT_EQ(c.f(), 2U);
  EXPECT_FALSE(c.is_identity());
  EXPECT_TRUE(cls(1, 2, "(x+1)^4").is_identity());
}

TEST(Semisimple, CentralizerShapeExamples) {
  const auto a = centralizer_shape(cls(1, 4, "(x+w)(x+w2)"));
  EXPECT_EQ(a.to_string(), "GL_1(4) x GL_1(4)");
  EXPECT_EQ(a.order, 9);
  const auto b = centralizer_shape(cls(-1, 2, "(x+w)(x+w2)"));
  EXPECT_EQ(b.to_string(), "GU_1(2) x GU_1(2)");
  EXPECT_EQ(b.order, 9);
  for (unsigned d = 1; d <= 4; ++d) {
    const auto id = centralizer_shape(SemisimpleClass::from_poly(1, 8, poly::power(poly::delta_one(class_field(1, 8)), d)));
    EXPECT_EQ(id.order, bounds::gl_order(d, 8));
  }
  // A dagger-swapped pair gives a general linear factor over GF(q^2).
  const auto c = centralizer_shape(cls(-1, 4, "(x+g)(x+g^11)"));
  ASSERT_EQ(c.factors.size(), 1U);
  EXPECT_EQ(c.factors[0].kind, FactorKind::GL);
  EXPECT_EQ(c.factors[0].q_log2, 4U);
  EXPECT_EQ(c.order, 15);
}

TEST(Semisimple, IndexOddPartExamples) {
  EXPECT_EQ(index_odd_part(cls(1, 4, "(x+1)^3")), 1);
  EXPECT_EQ(index_odd_part(cls(1, 4, "(x+w)(x+w2)")), 5);
  EXPECT_EQ(index_odd_part(cls(-1, 2, "(x+1)(x+w)(x+w2)")), 3);
}

TEST(Semisimple, CentralizerMatchesBruteForce) {
  const auto gl24 = oracle::enumerate_gl(2, 4);
  const auto c = cls(1, 4, "(x+w)(x+w2)");
  EXPECT_EQ(oracle::brute_centralizer(gl24, diagonal_of(c)), centralizer_shape(c).order);

  const auto gu32 = oracle::enumerate_gu(3, 2);
  for (const char* xi : {"(x+1)(x+w)(x+w2)", "(x+w)^3", "(x+1)^2(x+w)", "(x+w)^2(x+w2)"}) {
    const auto s = cls(-1, 2, xi);
    EXPECT_EQ(oracle::brute_centralizer(gu32, semisimple_member(gu32, s)), centralizer_shape(s).order) << xi;
  }
}

TEST(Semisimple, RealnessExamples) {
  const auto id = realness_structure(cls(1, 4, "(x+1)^3"));
  EXPECT_TRUE(id.real);
  EXPECT_TRUE(id.pairing.empty());

  const auto u = realness_structure(cls(-1, 2, "(x+w)(x+w2)"));
  EXPECT_TRUE(u.real);
  ASSERT_EQ(u.pairing.size(), 1U);
  EXPECT_NE(u.pairing[0].factor, u.pairing[0].partner);
  ASSERT_EQ(u.dagger_flags.size(), 2U);
  EXPECT_TRUE(u.dagger_flags[0].self_dagger);
  EXPECT_TRUE(u.dagger_flags[1].self_dagger);

  EXPECT_FALSE(realness_structure(cls(1, 4, "(x+w)^2(x+w2)")).real);
}

TEST(Semisimple, RealnessMatchesBruteForce) {
  const auto gl24 = oracle::enumerate_gl(2, 4);
  for (const char* xi : {"(x+w)(x+w2)", "(x+w)^2", "(x+1)(x+w)", "(x+1)^2"}) {
    const auto c = cls(1, 4, xi);
    EXPECT_EQ(oracle::brute_is_real(gl24, diagonal_of(c)), realness_structure(c).real) << xi;
  }
}

TEST(Semisimple, DParameters) {
  const auto c = cls(-1, 2, "(x+1)^2(x+w)^2(x+w2)^2");
  const auto p = d_parameters(c);
  EXPECT_EQ(p.l, 3U);
  EXPECT_EQ(p.l_prime, 3U);
  EXPECT_EQ(p.d_prime, 2U);
  const auto b = d_statistic_bound(c);
  EXPECT_EQ(b.r_power, 4U);
  EXPECT_EQ(b.q_exp4, 6 * (6 - 4 - 1));
  const auto lin = d_parameters(cls(1, 16, "(x+1)(x+z5)(x+z5^4)(x+z5^3)(x+z5^2)"));
  EXPECT_EQ(lin.l_prime, 0U);
  EXPECT_EQ(lin.d_prime, 1U);
}

TEST(Semisimple, DStatisticComparisons) {
  EXPECT_EQ(d_statistic_cmp(cls(1, 4, "(x+1)^5"), DBound{0, 0, 0}), std::strong_ordering::greater);

  // eps = +1, d = 5, q = 16, a regular class of order 5.
  const auto c = cls(1, 16, "(x+1)(x+z5)(x+z5^4)(x+z5^3)(x+z5^2)");
  const auto bound = d_statistic_bound(c);
  EXPECT_EQ(bound.r_power, 1U);
  EXPECT_NE(d_statistic_cmp(c, bound), std::strong_ordering::less);

  // Independent fourth-power evaluation for eps = -1, d = 5, q = 4.
  const auto u = cls(-1, 4, "(x+1)^3(x+z5)(x+z5^4)");
  const auto ub = d_statistic_bound(u);
  const BigInt I = index_odd_part(u);
  const BigInt q = 4;
  const BigInt lhs = ipow(I, 4) * ipow(q, 8 * ub.r_power);
  BigInt rhs = ipow(q * q - q - 1, 4 * ub.r_power);
  const long net = ub.q_exp4 + 30;
  EXPECT_GE(net, 0);
  rhs *= ipow(q, static_cast<unsigned>(net));
  EXPECT_EQ(d_statistic_cmp(u, ub), lhs > rhs   ? std::strong_ordering::greater
                                     : lhs < rhs ? std::strong_ordering::less
                                                 : std::strong_ordering::equal);
}

TEST(Semisimple, DStatisticBoundHoldsExhaustively) {
  for (auto [eps, d, q] : {std::tuple{1, 5U, 16ULL}, std::tuple{-1, 5U, 4ULL}, std::tuple{-1, 6U, 2ULL},
                           std::tuple{1, 6U, 4ULL}, std::tuple{-1, 9U, 2ULL}}) {
    const auto& k = class_field(eps, q);
    for (const auto& xi : poly::enumerate_charpolys(d, k, {.real = true, .unitary = eps == -1, .exclude_identity = true})) {
      const auto c = SemisimpleClass::make(eps, d, q, xi);
      EXPECT_NE(d_statistic_cmp(c, d_statistic_bound(c)), std::strong_ordering::less)
          << poly::format_factorization(xi);
    }
  }
}

TEST(Semisimple, ClassifierExamples) {
  const auto h = classify_cases(cls(-1, 2, "(x+1)^2(x+w)^2(x+w2)^2"));
  EXPECT_TRUE(h.holds('a'));
  EXPECT_TRUE(h.holds('h'));

  const auto c = classify_cases(cls(1, 16, "(x+1)(x+z5)(x+z5^4)(x+z5^3)(x+z5^2)"));
  EXPECT_TRUE(c.holds('c')) << c.labels();

  EXPECT_THROW(classify_cases(cls(1, 4, "(x+1)^2(x+w)(x+w2)")), DomainError);   // d < 5
  EXPECT_THROW(classify_cases(cls(1, 2, "(x+1)^5")), DomainError);              // e = 1
  EXPECT_THROW(classify_cases(cls(-1, 2, "(x+1)^6")), DomainError);             // identity
  EXPECT_THROW(classify_cases(cls(-1, 2, "(x+1)^4(x+w)^2")), DomainError);      // not real
}

TEST(Semisimple, SweepCoverage) {
  for (auto [eps, d, q] : {std::tuple{-1, 5U, 4ULL}, std::tuple{-1, 6U, 2ULL}, std::tuple{1, 5U, 16ULL},
                           std::tuple{1, 6U, 4ULL}}) {
    const auto s = case_sweep(eps, d, q);
    EXPECT_GT(s.classes, 0U);
    EXPECT_TRUE(s.ok()) << eps << " " << d << " " << q;
    EXPECT_EQ(s.covered, s.classes);
    if (eps == -1) EXPECT_EQ(s.eigenspace_checked, s.classes);
  }
  const auto one = case_sweep(-1, 6, 2, 1);
  const auto many = case_sweep(-1, 6, 2, 3);
  EXPECT_EQ(one.case_counts, many.case_counts);
  EXPECT_EQ(one.uncovered_examples, many.uncovered_examples);
}

TEST(Semisimple, ScaleCharpoly) {
  const auto& k = gf2k::make_field(2, 1);
  const auto p = poly::parse_poly("(x+1)(x+w)^2", k);
  EXPECT_EQ(scale_charpoly(p, 1), p);
  EXPECT_EQ(scale_charpoly(poly::parse_poly("(x+w)", k), 2), poly::parse_poly("(x+w2)", k));
  EXPECT_THROW(scale_charpoly(p, 0), DomainError);

  // (x+1)^{d1} ((x+z)(x+z^-1))^{d2} with d1 != d2: only kappa = 1 keeps it real.
  const auto& f16 = gf2k::make_field(4, 1);
  for (auto [d1, d2] : {std::pair{1, 2}, std::pair{3, 1}, std::pair{2, 1}}) {
    auto xi = poly::power(poly::parse_poly("(x+1)", f16), d1) *
              poly::power(poly::parse_poly("(x+z5)(x+z5^4)", f16), d2);
    unsigned real = 0;
    for (Elem kappa = 1; kappa < 16; ++kappa) {
      if (poly::is_real_charpoly(scale_charpoly(xi, kappa))) {
        ++real;
        EXPECT_EQ(kappa, 1U);
      }
    }
    EXPECT_EQ(real, 1U);
  }
}

TEST(Semisimple, RealLiftScalar) {
  const auto& f4 = gf2k::make_field(2, 1);
  EXPECT_EQ(real_lift_scalar(f4, 1), 1U);
  EXPECT_EQ(real_lift_scalar(f4, 2), 2U);
  const auto& f16 = gf2k::make_field(4, 1);
  for (Elem z = 1; z < 16; ++z) {
    const Elem xi = real_lift_scalar(f16, z);
    EXPECT_EQ(f16.pow(xi, -2), z);
  }
  EXPECT_THROW(real_lift_scalar(f16, 0), DomainError);
}

TEST(Semisimple, PalindromicElements) {
  const auto& f4 = gf2k::make_field(2, 1);
  EXPECT_EQ(palindromic_element(3, 4, 1, 1).diagonal, (std::vector<Elem>{1, 1, 1}));
  EXPECT_EQ(palindromic_element(3, 4, 1, f4.mul(2, 2)).diagonal, (std::vector<Elem>{2, 1, 2}));

  const auto nine = palindromic_element(9, 4, 1, 1);
  EXPECT_EQ(nine.d_bar, 1U);
  EXPECT_EQ(nine.d_prime, 2U);
  ASSERT_TRUE(nine.xi.has_value());
  const Elem z = nine.zeta;
  EXPECT_EQ(nine.diagonal, (std::vector<Elem>{z, z, 1, 1, *nine.xi, 1, 1, z, z}));

  for (int eps : {1, -1}) {
    for (std::uint64_t q : {2ULL, 4ULL, 8ULL}) {
      const auto& k = class_field(eps, q);
      const std::int64_t qe = eps == 1 ? static_cast<std::int64_t>(q) - 1 : static_cast<std::int64_t>(q) + 1;
      for (unsigned d : {3U, 5U, 6U, 7U, 9U, 10U, 11U, 12U, 13U, 14U}) {
        for (Elem target = 1; target < k.size(); ++target) {
          if (k.pow(target, qe) != 1) continue;
          const auto p = palindromic_element(d, q, eps, target);
          ASSERT_EQ(p.diagonal.size(), d);
          Elem det = 1;
          for (Elem v : p.diagonal) det = k.mul(det, v);
          EXPECT_EQ(det, target) << d << " " << q << " " << eps;
          for (unsigned i = 0; i < d; ++i) {
            EXPECT_EQ(p.diagonal[i], p.diagonal[d - 1 - i]);
            EXPECT_EQ(k.pow(p.diagonal[i], qe), 1U);
          }
          if (eps == -1) {
            EXPECT_TRUE(oracle::preserves_hermitian_form(Matrix::diagonal(k, p.diagonal), q));
          }
        }
      }
    }
  }
  EXPECT_THROW(palindromic_element(4, 4, 1, 1), DomainError);
  EXPECT_THROW(palindromic_element(3, 4, 1, 0), DomainError);
}

TEST(Semisimple, InvolutionBlocks) {
  const auto zero = involution_with_blocks(3, 0, 2, 1);
  EXPECT_TRUE(zero.matrix.is_identity());
  EXPECT_EQ(zero.predicted_centralizer, bounds::gl_order(3, 2));

  const auto gl32 = oracle::enumerate_gl(3, 2);
  const auto a = involution_with_blocks(3, 1, 2, 1);
  EXPECT_EQ(a.predicted_centralizer, 8);
  EXPECT_EQ(oracle::brute_centralizer(gl32, a.matrix), 8);
  EXPECT_TRUE(a.matrix.pow(2).is_identity());

  const auto u = involution_with_blocks(3, 1, 2, -1);
  EXPECT_EQ(u.predicted_centralizer, 72);
  const auto gu32 = oracle::enumerate_gu(3, 2);
  ASSERT_TRUE(gu32.contains(u.matrix));
  EXPECT_EQ(oracle::brute_centralizer(gu32, u.matrix), 72);

  const auto gl42 = oracle::enumerate_gl(4, 2);
  for (unsigned l = 1; l <= 2; ++l) {
    const auto b = involution_with_blocks(4, l, 2, 1);
    EXPECT_EQ(oracle::brute_centralizer(gl42, b.matrix), b.predicted_centralizer) << l;
  }
  EXPECT_THROW(involution_with_blocks(3, 2, 2, 1), DomainError);
}

TEST(Semisimple, MinCharacterDegree) {
  EXPECT_EQ(min_character_degree(cls(1, 4, "(x+1)^3")), 1);
  EXPECT_EQ(min_character_degree(cls(-1, 2, "(x+w)(x+w2)")), 1);
  // [GU_3(2) : GU_1(2)^3]_{2'} = 3 and e = 3.
  EXPECT_EQ(min_character_degree(cls(-1, 2, "(x+1)(x+w)(x+w2)")), 1);
  // [GL_2(4) : GL_1(4)^2]_{2'} = 5 and e = 1.
  EXPECT_EQ(min_character_degree(cls(1, 4, "(x+w)(x+w2)")), 5);
}

TEST(Semisimple, EigenspaceBound) {
  EXPECT_TRUE(eigenspace_bound_holds(cls(-1, 2, "(x+1)^2(x+w)^2(x+w2)^2")));
  EXPECT_FALSE(eigenspace_bound_holds(cls(-1, 2, "(x+w)^4(x+w2)^2")));
}

}  // namespace
}  // namespace e1forge::semisimple
