#include "e1forge/semisimple.hpp"

#include <algorithm>

#include "e1forge/error.hpp"
#include "e1forge/group_order.hpp"
#include "e1forge/poly_text.hpp"

namespace e1forge::semisimple {

using poly::FactorPower;

const FieldSpec& class_field(int epsilon, std::uint64_t q) {
  if (epsilon != 1 && epsilon != -1) throw DomainError("epsilon must be +1 or -1");
  return gf2k::make_field(gf2k::log2_exact(q), epsilon == 1 ? 1 : 2);
}

SemisimpleClass SemisimpleClass::make(int epsilon, unsigned d, std::uint64_t q, Factorization xi) {
  const FieldSpec& k = class_field(epsilon, q);
  if (&xi.field() != &k) {
    throw DomainError("factorization must be over " + k.descriptor() + ", got " + xi.field().descriptor());
  }
  if (d == 0) throw DomainError("d must be positive");
  if (xi.degree() != d) {
    throw DomainError("characteristic polynomial has degree " + std::to_string(xi.degree()) + ", expected " +
                      std::to_string(d));
  }
  for (const auto& fp : xi.factors()) {
    if (fp.factor.constant_term() == 0) throw DomainError("characteristic polynomial vanishes at 0");
    if (!poly::is_irreducible(fp.factor)) {
      throw DomainError("factor " + poly::format_canonical(fp.factor) + " is not irreducible");
    }
  }
  if (epsilon == -1 && poly::factorization_dagger(xi, q) != xi) {
    throw DomainError("characteristic polynomial is not unitary-compatible");
  }
  const unsigned d1 = xi.multiplicity(poly::delta_one(k));
  return SemisimpleClass{epsilon, d, q, std::move(xi), d1};
}

SemisimpleClass SemisimpleClass::from_poly(int epsilon, std::uint64_t q, const MonicPoly& xi) {
  if (xi.degree() == 0) throw DomainError("characteristic polynomial must have positive degree");
  return make(epsilon, xi.degree(), q, poly::poly_factor(xi));
}

unsigned SemisimpleClass::f() const { return gf2k::log2_exact(q); }

BigInt ShapeFactor::order() const {
  const BigInt Q = pow2(q_log2);
  return kind == FactorKind::GL ? bounds::gl_order(m, Q) : bounds::gu_order(m, Q);
}

std::string ShapeFactor::to_string() const {
  return std::string(kind == FactorKind::GL ? "GL_" : "GU_") + std::to_string(m) + "(" +
         to_decimal(pow2(q_log2)) + ")";
}

std::string CentralizerShape::to_string() const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += " x ";
    s += f.to_string();
  }
  return s.empty() ? "1" : s;
}

CentralizerShape centralizer_shape(const SemisimpleClass& c) {
  CentralizerShape shape;
  const unsigned f = c.f();
  if (c.epsilon == 1) {
    for (const auto& fp : c.xi.factors()) {
      shape.factors.push_back({FactorKind::GL, fp.multiplicity, f * fp.factor.degree()});
    }
  } else {
    std::vector<bool> used(c.xi.factors().size(), false);
    const auto& fs = c.xi.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (used[i]) continue;
      const MonicPoly dag = poly::poly_dagger(fs[i].factor, c.q);
      const unsigned k = fs[i].factor.degree();
      if (dag == fs[i].factor) {
        used[i] = true;
        shape.factors.push_back({FactorKind::GU, fs[i].multiplicity, f * k});
        continue;
      }
      auto it = std::find_if(fs.begin(), fs.end(), [&](const FactorPower& p) { return p.factor == dag; });
      const auto j = static_cast<std::size_t>(it - fs.begin());
      if (it == fs.end() || used[j] || it->multiplicity != fs[i].multiplicity) {
        throw DomainError("dagger pairing fails for factor " + poly::format_canonical(fs[i].factor));
      }
      used[i] = used[j] = true;
      shape.factors.push_back({FactorKind::GL, fs[i].multiplicity, 2 * f * k});
    }
  }
  shape.order = 1;
  for (const auto& sf : shape.factors) shape.order *= sf.order();
  shape.odd_part = odd_part(shape.order);
  return shape;
}

BigInt index_odd_part(const SemisimpleClass& c) {
  const BigInt g = odd_part(bounds::gl_eps_order(c.epsilon, c.d, BigInt(c.q)));
  const BigInt h = centralizer_shape(c).odd_part;
  if (g % h != 0) throw Error("centralizer odd part does not divide the group odd part");
  return g / h;
}

RealnessStructure realness_structure(const SemisimpleClass& c) {
  RealnessStructure r;
  r.real = poly::factorization_star(c.xi) == c.xi;
  const MonicPoly one = poly::delta_one(c.xi.field());
  if (r.real) {
    for (const auto& fp : c.xi.factors()) {
      if (fp.factor == one) continue;
      MonicPoly partner = poly::poly_star(fp.factor);
      if (partner < fp.factor) continue;
      r.pairing.push_back({fp.factor, std::move(partner), fp.multiplicity});
    }
  }
  if (c.epsilon == -1) {
    for (const auto& fp : c.xi.factors()) {
      r.dagger_flags.push_back({fp.factor, poly::poly_dagger(fp.factor, c.q) == fp.factor});
    }
  }
  return r;
}

DParameters d_parameters(const SemisimpleClass& c) {
  const MonicPoly one = poly::delta_one(c.xi.field());
  unsigned others = 0;
  const FactorPower* best = nullptr;
  for (const auto& fp : c.xi.factors()) {
    if (fp.factor != one) ++others;
    if (best == nullptr || fp.multiplicity > best->multiplicity ||
        (fp.multiplicity == best->multiplicity && fp.factor.degree() > best->factor.degree())) {
      best = &fp;
    }
  }
  DParameters p{1 + others, 0, best->multiplicity, best->factor};
  p.l_prime = c.epsilon == 1 ? 0 : p.l;
  return p;
}

DBound d_statistic_bound(const SemisimpleClass& c) {
  const DParameters p = d_parameters(c);
  const long d = c.d;
  return DBound{1, p.l_prime + 1, d * (d - 2 * static_cast<long>(p.d_prime) - 1)};
}

namespace {

std::strong_ordering cmp(const BigInt& a, const BigInt& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering d_statistic_cmp(const SemisimpleClass& c, const DBound& bound) {
  if (bound.coeff < 0) throw DomainError("bound coefficient must be non-negative");
  const BigInt index = index_odd_part(c);
  if (bound.coeff == 0) return cmp(index, 0);
  const BigInt q(c.q);
  const unsigned f = c.f();
  // D = I q^{-d(d+1)/4} vs (n/m) ((q^2-q-1)/q^2)^r q^{e/4}; fourth powers, all
  // powers of q gathered as a single net exponent.
  BigInt lhs = ipow(index, 4) * ipow(boost::multiprecision::denominator(bound.coeff), 4);
  BigInt rhs = ipow(boost::multiprecision::numerator(bound.coeff), 4) * ipow(q * q - q - 1, 4 * bound.r_power);
  const long net = bound.q_exp4 + static_cast<long>(c.d) * (c.d + 1) - 8L * bound.r_power;
  if (net >= 0) {
    rhs <<= static_cast<unsigned>(net) * f;
  } else {
    lhs <<= static_cast<unsigned>(-net) * f;
  }
  return cmp(lhs, rhs);
}

bool ClassCases::holds(char label) const {
  return std::any_of(cases.begin(), cases.end(), [label](const CaseWitness& w) { return w.label == label; });
}

std::string ClassCases::labels() const {
  std::string s;
  for (const auto& w : cases) s += w.label;
  return s;
}

bool eigenspace_bound_holds(const SemisimpleClass& c) {
  const MonicPoly one = poly::delta_one(c.xi.field());
  for (const auto& fp : c.xi.factors()) {
    if (fp.factor == one) continue;
    if (c.d < c.d1 + 2 * fp.multiplicity * fp.factor.degree()) return false;
  }
  return true;
}

BigInt min_character_degree(const SemisimpleClass& c) {
  return ceil_div(index_odd_part(c), BigInt(bounds::center_gcd(c.d, c.q, c.epsilon)));
}

}  // namespace e1forge::semisimple
