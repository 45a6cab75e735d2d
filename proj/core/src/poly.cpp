#include "e1forge/poly.hpp"

#include <algorithm>

#include "e1forge/error.hpp"

namespace e1forge::poly {

Poly::Poly(const FieldSpec& field, std::vector<Elem> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
  for (Elem c : coeffs_) {
    if (!field.contains(c)) throw DomainError("coefficient out of range for " + field.descriptor());
  }
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(const FieldSpec& field, Elem c) { return Poly(field, {c}); }

Poly Poly::monomial(const FieldSpec& field, Elem c, unsigned degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(field, std::move(v));
}

Poly Poly::linear(const FieldSpec& field, Elem c) { return Poly(field, {c, 1}); }

Elem Poly::eval(Elem x) const {
  Elem r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = field_->mul(r, x) ^ *it;
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(lead()));
}

Poly Poly::derivative() const {
  // Characteristic 2: d/dx x^i = i x^{i-1} keeps only odd i.
  std::vector<Elem> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back((i & 1U) ? coeffs_[i] : 0);
  return Poly(*field_, std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) throw DomainError("polynomial field mismatch");
  std::vector<Elem> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] ^= a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] ^= b.coeffs_[i];
  return Poly(*a.field_, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) throw DomainError("polynomial field mismatch");
  if (a.is_zero() || b.is_zero()) return Poly(*a.field_);
  const auto& k = *a.field_;
  std::vector<Elem> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] ^= k.mul(a.coeffs_[i], b.coeffs_[j]);
  }
  return Poly(k, std::move(r));
}

Poly Poly::scaled(Elem c) const {
  std::vector<Elem> r(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = field_->mul(coeffs_[i], c);
  return Poly(*field_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (field_ != divisor.field_) throw DomainError("polynomial field mismatch");
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  const auto& k = *field_;
  std::vector<Elem> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {Poly(k), *this};
  std::vector<Elem> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
  const Elem inv_lead = k.inv(divisor.lead());
  for (int i = degree(); i >= dd; --i) {
    const Elem c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Elem factor = k.mul(c, inv_lead);
    quot[static_cast<std::size_t>(i - dd)] = factor;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(i - dd + j)] ^= k.mul(factor, divisor.coeffs_[static_cast<std::size_t>(j)]);
    }
  }
  return {Poly(k, std::move(quot)), Poly(k, std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly pow(const Poly& a, unsigned e) {
  Poly r = Poly::constant(a.field(), 1);
  Poly b = a;
  while (e != 0) {
    if (e & 1U) r = r * b;
    e >>= 1;
    if (e != 0) b = b * b;
  }
  return r;
}

Poly square_power_mod(Poly base, unsigned squarings, const Poly& m) {
  base = base % m;
  for (unsigned i = 0; i < squarings; ++i) base = (base * base) % m;
  return base;
}

MonicPoly::MonicPoly(const FieldSpec& field) : poly_(Poly::constant(field, 1)) {}

MonicPoly::MonicPoly(Poly p) : poly_(std::move(p)) {
  if (poly_.is_zero() || poly_.lead() != 1) throw DomainError("polynomial is not monic");
}

MonicPoly MonicPoly::from_lower(const FieldSpec& field, std::vector<Elem> lower) {
  lower.push_back(1);
  return MonicPoly(Poly(field, std::move(lower)));
}

std::vector<Elem> MonicPoly::lower_coeffs() const {
  std::vector<Elem> v = poly_.coeffs();
  v.pop_back();
  return v;
}

std::strong_ordering operator<=>(const MonicPoly& a, const MonicPoly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const auto& x = a.poly_.coeffs();
  const auto& y = b.poly_.coeffs();
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

MonicPoly power(const MonicPoly& p, unsigned e) { return MonicPoly(pow(p.poly(), e)); }

Factorization::Factorization(const FieldSpec& field, std::vector<FactorPower> factors) : field_(&field) {
  std::sort(factors.begin(), factors.end(),
            [](const FactorPower& a, const FactorPower& b) { return a.factor < b.factor; });
  for (auto& fp : factors) {
    if (&fp.factor.field() != field_) throw DomainError("factor over a different field");
    if (fp.multiplicity == 0) continue;
    if (!factors_.empty() && factors_.back().factor == fp.factor) {
      factors_.back().multiplicity += fp.multiplicity;
    } else {
      factors_.push_back(std::move(fp));
    }
  }
}

unsigned Factorization::degree() const {
  unsigned d = 0;
  for (const auto& fp : factors_) d += fp.factor.degree() * fp.multiplicity;
  return d;
}

unsigned Factorization::multiplicity(const MonicPoly& factor) const {
  for (const auto& fp : factors_) {
    if (fp.factor == factor) return fp.multiplicity;
  }
  return 0;
}

MonicPoly Factorization::expand() const {
  MonicPoly r(*field_);
  for (const auto& fp : factors_) r = r * power(fp.factor, fp.multiplicity);
  return r;
}

MonicPoly poly_star(const MonicPoly& p) {
  const auto& k = p.field();
  const Elem c0 = p.constant_term();
  if (c0 == 0) throw DomainError("poly_star: zero constant term");
  std::vector<Elem> rev(p.poly().coeffs().rbegin(), p.poly().coeffs().rend());
  return MonicPoly(Poly(k, std::move(rev)).scaled(k.inv(c0)));
}

MonicPoly frobenius_twist(const MonicPoly& p, unsigned power) {
  const auto& k = p.field();
  std::vector<Elem> c = p.poly().coeffs();
  for (Elem& e : c) e = k.frobenius(e, power);
  return MonicPoly(Poly(k, std::move(c)));
}

namespace {
void require_unitary_field(const FieldSpec& k, std::uint64_t q) {
  if (k.delta() != 2) throw DomainError("dagger requires a field GF(q^2)");
  if (k.q() != q) {
    throw DomainError("dagger: q = " + std::to_string(q) + " does not match " + k.descriptor());
  }
}
}  // namespace

MonicPoly poly_dagger(const MonicPoly& p, std::uint64_t q) {
  require_unitary_field(p.field(), q);
  if (p.constant_term() == 0) throw DomainError("poly_dagger: zero constant term");
  return poly_star(frobenius_twist(p, p.field().f()));
}

bool is_real_charpoly(const MonicPoly& xi) { return poly_star(xi) == xi; }

bool is_unitary_compatible(const MonicPoly& xi, std::uint64_t q) { return poly_dagger(xi, q) == xi; }

Factorization factorization_star(const Factorization& xi) {
  std::vector<FactorPower> out;
  for (const auto& fp : xi.factors()) out.push_back({poly_star(fp.factor), fp.multiplicity});
  return Factorization(xi.field(), std::move(out));
}

Factorization factorization_dagger(const Factorization& xi, std::uint64_t q) {
  std::vector<FactorPower> out;
  for (const auto& fp : xi.factors()) out.push_back({poly_dagger(fp.factor, q), fp.multiplicity});
  return Factorization(xi.field(), std::move(out));
}

MonicPoly delta_one(const FieldSpec& field) { return MonicPoly(Poly::linear(field, 1)); }

}  // namespace e1forge::poly
