#include <random>

#include "e1forge/error.hpp"
#include "e1forge/poly.hpp"

namespace e1forge::poly {
namespace {

using Multi = std::vector<std::pair<Poly, unsigned>>;

// Coefficient-wise square root of a polynomial whose derivative vanishes:
// sum c_{2i} x^{2i} -> sum sqrt(c_{2i}) x^i.
Poly sqrt_poly(const Poly& p) {
  const auto& k = p.field();
  std::vector<Elem> r;
  for (std::size_t i = 0; i < p.coeffs().size(); i += 2) r.push_back(k.sqrt(p.coeffs()[i]));
  return Poly(k, std::move(r));
}

// Squarefree decomposition of a monic polynomial: pairs (g, m) with the g
// squarefree, pairwise coprime and p = prod g^m.
Multi squarefree(const Poly& p) {
  Multi out;
  if (p.degree() <= 0) return out;
  Poly c = gcd(p, p.derivative());
  Poly w = p / c;
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (!fac.is_one()) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    for (auto& [g, m] : squarefree(sqrt_poly(c).monic())) out.emplace_back(g, 2 * m);
  }
  return out;
}

// Distinct-degree split of a squarefree monic polynomial: (product of all
// irreducible factors of degree k, k).
std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, unsigned>> out;
  const auto& k = g.field();
  const unsigned n = k.degree();
  const Poly x = Poly::monomial(k, 1, 1);
  Poly h = x;
  unsigned deg = 0;
  while (g.degree() >= 2 * static_cast<int>(deg + 1)) {
    ++deg;
    h = square_power_mod(h, n, g);
    Poly common = gcd(g, h + x);
    if (!common.is_one()) {
      out.emplace_back(common, deg);
      g = g / common;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<unsigned>(g.degree()));
  return out;
}

// Absolute trace of a modulo g over GF(2) composed through nk squarings.
Poly trace_map(const Poly& a, unsigned squarings, const Poly& g) {
  Poly acc = a % g;
  Poly term = acc;
  for (unsigned j = 1; j < squarings; ++j) {
    term = (term * term) % g;
    acc = acc + term;
  }
  return acc;
}

void equal_degree(const Poly& g, unsigned k, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == static_cast<int>(k)) {
    out.push_back(g.monic());
    return;
  }
  const auto& field = g.field();
  std::uniform_int_distribution<Elem> coeff(0, field.size() - 1);
  const unsigned squarings = field.degree() * k;
  for (;;) {
    std::vector<Elem> a(static_cast<std::size_t>(g.degree()));
    for (Elem& c : a) c = coeff(rng);
    Poly t = trace_map(Poly(field, std::move(a)), squarings, g);
    Poly split = gcd(g, t);
    if (split.degree() > 0 && split.degree() < g.degree()) {
      equal_degree(split, k, rng, out);
      equal_degree(g / split, k, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization poly_factor(const MonicPoly& p) {
  if (p.degree() == 0) throw DomainError("poly_factor: degree must be at least 1");
  std::mt19937_64 rng(0x5eed'e1f0'25ULL);
  std::vector<FactorPower> factors;
  for (const auto& [sqf, mult] : squarefree(p.poly())) {
    for (const auto& [part, k] : distinct_degree(sqf)) {
      std::vector<Poly> irreducibles;
      equal_degree(part, k, rng, irreducibles);
      for (auto& ir : irreducibles) factors.push_back({MonicPoly(std::move(ir)), mult});
    }
  }
  return Factorization(p.field(), std::move(factors));
}

Factorization factor_by_root_scan(const MonicPoly& p) {
  if (p.degree() == 0 || p.degree() > 3) throw DomainError("factor_by_root_scan: degree must be 1..3");
  const auto& k = p.field();
  std::vector<FactorPower> factors;
  Poly rest = p.poly();
  for (Elem r = 0; r < k.size() && rest.degree() > 0; ++r) {
    const Poly lin = Poly::linear(k, r);
    unsigned m = 0;
    while (rest.degree() > 0 && rest.eval(r) == 0) {
      rest = rest / lin;
      ++m;
    }
    if (m != 0) factors.push_back({MonicPoly(lin), m});
  }
  // A root-free remainder of degree 2 or 3 is irreducible.
  if (rest.degree() > 0) factors.push_back({MonicPoly(rest), 1});
  return Factorization(k, std::move(factors));
}

bool is_irreducible(const MonicPoly& p) {
  if (p.degree() == 0) return false;
  const Factorization fz = poly_factor(p);
  return fz.factors().size() == 1 && fz.factors()[0].multiplicity == 1;
}

}  // namespace e1forge::poly
