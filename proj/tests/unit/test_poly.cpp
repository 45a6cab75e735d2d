#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "e1forge/charpoly_enum.hpp"
#include "e1forge/error.hpp"
#include "e1forge/poly.hpp"
#include "e1forge/poly_text.hpp"

namespace e1forge::poly {
namespace {

using gf2k::make_field;

MonicPoly P(const FieldSpec& k, const char* text) { return parse_poly(text, k); }

// Every monic polynomial of the given degree, coefficients in counting order.
std::vector<MonicPoly> all_monic(const FieldSpec& k, unsigned deg) {
  std::vector<MonicPoly> out;
  std::vector<Elem> c(deg, 0);
  for (;;) {
    out.push_back(MonicPoly::from_lower(k, c));
    unsigned i = 0;
    while (i < deg && ++c[i] == k.size()) c[i++] = 0;
    if (i == deg) break;
  }
  return out;
}

// Irreducible monic polynomials of degree <= max_deg by sieving products.
std::set<std::vector<Elem>> sieve_irreducibles(const FieldSpec& k, unsigned max_deg) {
  std::set<std::vector<Elem>> reducible;
  for (unsigned n = 2; n <= max_deg; ++n) {
    for (unsigned i = 1; 2 * i <= n; ++i) {
      for (const auto& a : all_monic(k, i)) {
        for (const auto& b : all_monic(k, n - i)) reducible.insert((a * b).poly().coeffs());
      }
    }
  }
  std::set<std::vector<Elem>> irr;
  for (unsigned n = 1; n <= max_deg; ++n) {
    for (const auto& p : all_monic(k, n)) {
      if (!reducible.count(p.poly().coeffs())) irr.insert(p.poly().coeffs());
    }
  }
  return irr;
}

TEST(Poly, ArithmeticBasics) {
  const auto& k = make_field(2, 1);
  const Poly a(k, {1, 1});     // x + 1
  const Poly b(k, {2, 1});     // x + w
  const Poly prod = a * b;
  EXPECT_EQ(prod.coeffs(), (std::vector<Elem>{2, 3, 1}));
  EXPECT_EQ(prod / a, b);
  EXPECT_TRUE((prod % b).is_zero());
  EXPECT_EQ(gcd(prod, a * a), a);
  EXPECT_EQ((a + a).degree(), -1);
  EXPECT_EQ(Poly(k, {1, 0, 1}).derivative().degree(), -1);
  EXPECT_THROW(a / Poly(k), DomainError);
  EXPECT_THROW(MonicPoly(Poly(k, {1, 2})), DomainError);
}

TEST(Poly, StarExamples) {
  const auto& f4 = make_field(2, 1);
  const auto& f2 = make_field(1, 1);
  EXPECT_EQ(poly_star(P(f4, "(x+1)")), P(f4, "(x+1)"));
  EXPECT_EQ(poly_star(P(f4, "(x+w)")), P(f4, "(x+w2)"));
  EXPECT_EQ(poly_star(P(f2, "[1,1,1]")), P(f2, "[1,1,1]"));
  EXPECT_THROW(poly_star(P(f4, "[0,1]")), DomainError);
}

TEST(Poly, DaggerExamples) {
  const auto& f4 = make_field(1, 2);  // GF(4) as GF(q^2), q = 2
  EXPECT_EQ(poly_dagger(P(f4, "(x+1)"), 2), P(f4, "(x+1)"));
  EXPECT_EQ(poly_dagger(P(f4, "(x+w)"), 2), P(f4, "(x+w)"));
  const auto xi = P(f4, "(x+w)(x+w2)");
  EXPECT_EQ(poly_dagger(xi, 2), xi);
  EXPECT_EQ(factorization_dagger(poly_factor(xi), 2), poly_factor(xi));
  EXPECT_THROW(poly_dagger(P(make_field(2, 1), "(x+w)"), 2), DomainError);
  EXPECT_THROW(poly_dagger(xi, 4), DomainError);

  const auto& f16 = make_field(2, 2);  // q = 4
  for (Elem z = 1; z < 16; ++z) {
    if (f16.order(z) != 5) continue;
    const auto lin = MonicPoly(Poly::linear(f16, z));
    EXPECT_TRUE(is_unitary_compatible(lin, 4));
  }
}

TEST(Poly, FactorExamples) {
  const auto& f2 = make_field(1, 1);
  const auto& f4 = make_field(2, 1);
  const auto a = poly_factor(P(f2, "[1,1,1]"));
  ASSERT_EQ(a.factors().size(), 1U);
  EXPECT_EQ(a.factors()[0].multiplicity, 1U);
  const auto b = poly_factor(P(f4, "[1,1,1]"));
  ASSERT_EQ(b.factors().size(), 2U);
  EXPECT_EQ(b.factors()[0].factor, P(f4, "(x+w)"));
  EXPECT_EQ(b.factors()[1].factor, P(f4, "(x+w2)"));
  const auto expanded = P(f2, "(x+1)^2[1,1,1]");
  const auto c = poly_factor(expanded);
  ASSERT_EQ(c.factors().size(), 2U);
  EXPECT_EQ(c.multiplicity(P(f2, "(x+1)")), 2U);
  EXPECT_EQ(c.multiplicity(P(f2, "[1,1,1]")), 1U);
  EXPECT_EQ(c.expand(), expanded);
}

TEST(Poly, FactorMatchesSieveAndRootScan) {
  for (auto [f, max_deg] : {std::pair{1U, 6U}, std::pair{2U, 4U}, std::pair{3U, 3U}}) {
    const auto& k = make_field(f, 1);
    const auto irr = sieve_irreducibles(k, max_deg);
    for (unsigned n = 1; n <= max_deg; ++n) {
      for (const auto& p : all_monic(k, n)) {
        const auto fz = poly_factor(p);
        EXPECT_EQ(fz.expand(), p);
        for (const auto& fp : fz.factors()) EXPECT_TRUE(irr.count(fp.factor.poly().coeffs()));
        EXPECT_EQ(is_irreducible(p), irr.count(p.poly().coeffs()) == 1);
        if (n <= 3) EXPECT_EQ(factor_by_root_scan(p), fz);
      }
    }
  }
}

TEST(Poly, FactorRandomLargeFields) {
  std::mt19937_64 rng(7);
  for (unsigned f : {5U, 8U, 10U}) {
    const auto& k = make_field(f, 1);
    std::uniform_int_distribution<Elem> coeff(0, k.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<FactorPower> parts;
      for (int j = 0; j < 3; ++j) {
        std::vector<Elem> c(1 + trial % 3);
        for (auto& e : c) e = coeff(rng);
        parts.push_back({MonicPoly::from_lower(k, c), 1U + static_cast<unsigned>(j % 2)});
      }
      MonicPoly p(k);
      for (const auto& fp : parts) p = p * power(fp.factor, fp.multiplicity);
      const auto fz = poly_factor(p);
      EXPECT_EQ(fz.expand(), p);
      for (const auto& fp : fz.factors()) EXPECT_TRUE(is_irreducible(fp.factor));
    }
  }
}

// Dualities are involutions and multiplicative.
TEST(Poly, DualitiesInvolutiveAndMultiplicative) {
  std::mt19937_64 rng(11);
  for (unsigned f : {1U, 2U, 3U}) {
    const auto& k = make_field(f, 2);
    const std::uint64_t q = k.q();
    std::uniform_int_distribution<Elem> nz(1, k.size() - 1);
    std::uniform_int_distribution<Elem> any(0, k.size() - 1);
    auto random_poly = [&](unsigned deg) {
      std::vector<Elem> c(deg);
      c[0] = nz(rng);
      for (unsigned i = 1; i < deg; ++i) c[i] = any(rng);
      return MonicPoly::from_lower(k, c);
    };
    for (int t = 0; t < 200; ++t) {
      const auto a = random_poly(1 + t % 4);
      const auto b = random_poly(1 + t % 3);
      EXPECT_EQ(poly_star(poly_star(a)), a);
      EXPECT_EQ(poly_dagger(poly_dagger(a, q), q), a);
      EXPECT_EQ(poly_star(a * b), poly_star(a) * poly_star(b));
      EXPECT_EQ(poly_dagger(a * b, q), poly_dagger(a, q) * poly_dagger(b, q));
      EXPECT_EQ(factorization_star(poly_factor(a)).expand(), poly_star(a));
    }
  }
}

// Root-level semantics: roots of p* are inverses, roots of p^dagger are the
// (-q)-th powers.
TEST(Poly, DualitiesOnRoots) {
  const auto& k = make_field(2, 2);
  const std::uint64_t q = 4;
  for (Elem r = 1; r < k.size(); ++r) {
    const auto lin = MonicPoly(Poly::linear(k, r));
    EXPECT_EQ(poly_star(lin).constant_term(), k.inv(r));
    EXPECT_EQ(poly_dagger(lin, q).constant_term(), k.pow(r, -static_cast<std::int64_t>(q)));
  }
}

// Irreducible self-reciprocal polynomials have even degree apart from x + 1;
// irreducible self-dagger ones have odd degree.
TEST(Poly, ParityOfSelfDualIrreducibles) {
  struct Case {
    unsigned f, delta, max_deg;
  };
  for (const Case c : {Case{1, 1, 4}, Case{2, 1, 4}, Case{1, 2, 4}, Case{4, 1, 4}, Case{2, 2, 4}}) {
    const auto& k = make_field(c.f, c.delta);
    const auto irr = sieve_irreducibles(k, c.max_deg);
    unsigned star_fixed = 0;
    unsigned dagger_fixed = 0;
    for (const auto& coeffs : irr) {
      const MonicPoly p(Poly(k, coeffs));
      if (p.constant_term() == 0) continue;
      if (poly_star(p) == p) {
        ++star_fixed;
        if (p != delta_one(k)) EXPECT_EQ(p.degree() % 2, 0U) << format_canonical(p);
      }
      if (c.delta == 2 && poly_dagger(p, k.q()) == p) {
        ++dagger_fixed;
        EXPECT_EQ(p.degree() % 2, 1U) << format_canonical(p);
      }
    }
    EXPECT_GT(star_fixed, 1U);
    if (c.delta == 2) EXPECT_GT(dagger_fixed, 1U);
  }
}

// Self-reciprocal quartics over GF(16): the factorizer agrees with a scan for
// roots and quadratic divisors.
TEST(Poly, SelfReciprocalQuarticsOverGF16) {
  const auto& k = make_field(4, 1);
  const auto quadratics = all_monic(k, 2);
  unsigned irreducible_count = 0;
  for (const auto& p : all_monic(k, 4)) {
    if (p.constant_term() == 0 || poly_star(p) != p) continue;
    bool has_root = false;
    for (Elem r = 0; r < 16 && !has_root; ++r) has_root = p.poly().eval(r) == 0;
    bool has_quadratic = false;
    for (const auto& g : quadratics) {
      if ((p.poly() % g.poly()).is_zero()) {
        has_quadratic = true;
        break;
      }
    }
    const bool irreducible = !has_root && !has_quadratic;
    EXPECT_EQ(is_irreducible(p), irreducible) << format_canonical(p);
    irreducible_count += irreducible ? 1 : 0;
  }
  EXPECT_GT(irreducible_count, 0U);
}

TEST(Poly, RealnessExamples) {
  const auto& f4 = make_field(2, 1);
  EXPECT_TRUE(is_real_charpoly(P(f4, "(x+1)^3")));
  EXPECT_FALSE(is_real_charpoly(P(f4, "(x+w)")));
  EXPECT_TRUE(is_real_charpoly(P(f4, "(x+w)(x+w2)")));
  const auto& u4 = make_field(1, 2);
  EXPECT_TRUE(is_unitary_compatible(P(u4, "(x+1)^4"), 2));
  EXPECT_TRUE(is_unitary_compatible(P(u4, "(x+w)(x+w2)"), 2));
}

// Real characteristic polynomials: d and the multiplicity of x + 1 agree
// modulo 2.
TEST(Poly, RealDegreeParity) {
  for (unsigned f : {1U, 2U}) {
    const auto& k = make_field(f, 1);
    for (unsigned d = 1; d <= 5; ++d) {
      for (const auto& xi : enumerate_charpolys(d, k, {.real = true})) {
        EXPECT_EQ((d - xi.multiplicity(delta_one(k))) % 2, 0U);
      }
    }
  }
}

TEST(CharpolyEnum, RealDegreeTwoOverGF4) {
  const auto& k = make_field(2, 1);
  // Brute force over the 12 candidates with nonzero constant term.
  unsigned brute = 0;
  for (Elem c0 = 1; c0 < 4; ++c0) {
    for (Elem c1 = 0; c1 < 4; ++c1) brute += is_real_charpoly(MonicPoly::from_lower(k, {c0, c1})) ? 1 : 0;
  }
  const auto real = enumerate_charpolys(2, k, {.real = true});
  EXPECT_EQ(real.size(), brute);
  EXPECT_EQ(real.size(), 4U);  // x^2 + c x + 1, c in GF(4)
  for (const auto& xi : real) EXPECT_EQ(xi.expand().constant_term(), 1U);
}

TEST(CharpolyEnum, SmallCases) {
  const auto& f2 = make_field(1, 1);
  const auto one = enumerate_charpolys(1, f2, {.real = true});
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one[0].expand(), delta_one(f2));

  const auto& u4 = make_field(1, 2);
  const auto both = enumerate_charpolys(2, u4, {.real = true, .unitary = true});
  for (const auto& xi : both) {
    EXPECT_TRUE(is_real_charpoly(xi.expand()));
    EXPECT_TRUE(is_unitary_compatible(xi.expand(), 2));
  }
  EXPECT_EQ(both.size(), 2U);  // (x+1)^2 and (x+w)(x+w2)
  const auto nontrivial = enumerate_charpolys(2, u4, {.real = true, .unitary = true, .exclude_identity = true});
  EXPECT_EQ(nontrivial.size(), 1U);
  EXPECT_THROW(enumerate_charpolys(2, f2, {.unitary = true}), DomainError);
  EXPECT_THROW(CharpolyEnumerator(make_field(4, 1), 7, {}, 1000), BudgetExceeded);
}

TEST(CharpolyEnum, ChunkedRangesMatchStream) {
  const auto& k = make_field(1, 2);
  CharpolyEnumerator e(k, 4, {.real = true, .unitary = true});
  std::vector<MonicPoly> streamed;
  while (auto entry = e.next()) streamed.push_back(entry->poly);
  std::vector<MonicPoly> chunked;
  for (std::uint64_t b = 0; b < e.index_count(); b += 7) {
    for (auto& entry : e.range(b, std::min(e.index_count(), b + 7))) chunked.push_back(entry.poly);
  }
  EXPECT_EQ(streamed, chunked);
  EXPECT_TRUE(std::is_sorted(streamed.begin(), streamed.end()));
}

TEST(PolyText, RoundTrip) {
  const auto& k = make_field(2, 2);
  const auto p = P(k, "(x+1)^2(x+z5)(x+z5^-1)[3,0,1]");
  EXPECT_EQ(parse_canonical(format_canonical(p), k), p);
  EXPECT_EQ(P(k, format_canonical(p).c_str()), p);
  EXPECT_EQ(poly_factor(p).expand(), p);
  EXPECT_EQ(P(k, "1"), MonicPoly(k));
  EXPECT_THROW(P(k, "(x+99)"), ParseError);
  EXPECT_THROW(P(k, "(x+z7)"), ParseError);
  EXPECT_THROW(P(k, "(x+1"), ParseError);
  EXPECT_THROW(parse_canonical("poly(GF(2^3))[1,1]", k), ParseError);
  EXPECT_EQ(parse_element("g^2", k), k.pow(k.primitive(), 2));
}

}  // namespace
}  // namespace e1forge::poly
