#include "e1forge/gf2k.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>

#include "e1forge/error.hpp"

namespace e1forge::gf2k {
namespace {

// Conway polynomials for p = 2, degrees 1..20 (bit i = coefficient of x^i).
constexpr std::array<std::uint32_t, kMaxDegree + 1> kConway = {
    0x0,       // unused
    0x3,       // x + 1
    0x7,       // x^2 + x + 1
    0xb,       // x^3 + x + 1
    0x13,      // x^4 + x + 1
    0x25,      // x^5 + x^2 + 1
    0x5b,      // x^6 + x^4 + x^3 + x + 1
    0x83,      // x^7 + x + 1
    0x11d,     // x^8 + x^4 + x^3 + x^2 + 1
    0x211,     // x^9 + x^4 + 1
    0x46f,     // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    0x805,     // x^11 + x^2 + 1
    0x10eb,    // x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    0x201b,    // x^13 + x^4 + x^3 + x + 1
    0x40a9,    // x^14 + x^7 + x^5 + x^3 + 1
    0x8035,    // x^15 + x^5 + x^4 + x^2 + 1
    0x1002d,   // x^16 + x^5 + x^3 + x^2 + 1
    0x20009,   // x^17 + x^3 + 1
    0x41403,   // x^18 + x^12 + x^10 + x + 1
    0x80027,   // x^19 + x^5 + x^2 + x + 1
    0x1006f3,  // x^20 + x^10 + x^9 + x^7 + x^6 + x^5 + x^4 + x + 1
};

// Shift-and-add multiplication modulo the degree-n polynomial `modulus`.
std::uint32_t mulmod_slow(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned n) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> n) & 1U) a ^= modulus;
  }
  return r;
}

}  // namespace

std::uint32_t conway_polynomial(unsigned n) {
  if (n == 0 || n > kMaxDegree) {
    throw DomainError("conway_polynomial: degree " + std::to_string(n) + " outside 1.." +
                      std::to_string(kMaxDegree));
  }
  return kConway[n];
}

FieldSpec::FieldSpec(unsigned f, unsigned delta)
    : f_(f), delta_(delta), degree_(f * delta), modulus_(conway_polynomial(f * delta)) {
  const std::uint32_t n = unit_order();
  exp_.resize(2 * static_cast<std::size_t>(n));
  log_.assign(size(), 0);
  // For degree 1 the class of x is 1.
  const Elem x = degree_ == 1 ? 1U : 2U;
  Elem cur = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k] = cur;
    log_[cur] = k;
    cur = mulmod_slow(cur, x, modulus_, degree_);
  }
  for (std::uint32_t k = n; k < 2 * n; ++k) exp_[k] = exp_[k - n];

  if (delta_ == 2) {
    // alpha_f^k -> gamma^{k (2^f + 1)}: Conway compatibility makes this the
    // embedding whose image of the small primitive root is the norm-power.
    const std::uint32_t small_mod = conway_polynomial(f_);
    const std::uint32_t small_n = (1U << f_) - 1;
    const Elem small_x = f_ == 1 ? 1U : 2U;
    const std::uint32_t stride = (1U << f_) + 1;
    embed_.assign(1U << f_, 0);
    Elem b = 1;
    for (std::uint32_t k = 0; k < small_n; ++k) {
      embed_[b] = exp_[static_cast<std::uint64_t>(k) * stride % n];
      b = mulmod_slow(b, small_x, small_mod, f_);
    }
  }
}

std::string FieldSpec::descriptor() const {
  return "GF(2^" + std::to_string(degree_) + ")/conway";
}

Elem FieldSpec::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in " + descriptor());
  const std::uint32_t n = unit_order();
  return exp_[(n - log_[a]) % n];
}

Elem FieldSpec::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw DomainError("negative power of zero in " + descriptor());
    return e == 0 ? 1U : 0U;
  }
  const std::int64_t n = unit_order();
  std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (e % n)) % n;
  if (k < 0) k += n;
  return exp_[static_cast<std::size_t>(k)];
}

Elem FieldSpec::frobenius(Elem a, unsigned power) const {
  if (a == 0) return 0;
  const std::uint64_t n = unit_order();
  const unsigned p = power % degree_;
  const std::uint64_t k = (static_cast<std::uint64_t>(log_[a]) << p) % n;
  return exp_[k];
}

std::uint32_t FieldSpec::log(Elem a) const {
  if (a == 0) throw DomainError("log of zero in " + descriptor());
  return log_[a];
}

std::uint32_t FieldSpec::order(Elem a) const {
  if (a == 0) throw DomainError("order of zero in " + descriptor());
  const std::uint32_t n = unit_order();
  return n / std::gcd(n, log_[a]);
}

Elem FieldSpec::element_of_order(std::uint32_t k) const {
  if (k == 0 || unit_order() % k != 0) {
    throw DomainError("no element of order " + std::to_string(k) + " in " + descriptor());
  }
  return exp_[unit_order() / k];
}

Elem FieldSpec::embed_subfield(Elem b) const {
  if (delta_ != 2) throw DomainError("embed_subfield requires a quadratic extension");
  if (b >= embed_.size()) throw DomainError("embed_subfield: encoding out of range");
  return embed_[b];
}

const FieldSpec& make_field(unsigned f, unsigned delta) {
  if (delta != 1 && delta != 2) throw DomainError("make_field: delta must be 1 or 2");
  if (f == 0 || f * delta > kMaxDegree) {
    throw DomainError("make_field: degree f*delta = " + std::to_string(f * delta) +
                      " outside supported range 1.." + std::to_string(kMaxDegree));
  }
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldSpec>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[{f, delta}];
  if (!slot) slot = std::make_unique<FieldSpec>(f, delta);
  return *slot;
}

unsigned log2_exact(std::uint64_t q) {
  if (q < 2 || (q & (q - 1)) != 0) {
    throw DomainError("q = " + std::to_string(q) + " is not a power of 2 greater than 1");
  }
  unsigned f = 0;
  while ((std::uint64_t{1} << f) != q) ++f;
  return f;
}

FieldElement element(const FieldSpec& field, Elem bits) {
  if (!field.contains(bits)) {
    throw DomainError("encoding " + std::to_string(bits) + " out of range for " + field.descriptor());
  }
  return {&field, bits};
}

namespace {
const FieldSpec& common(const FieldElement& a, const FieldElement& b) {
  if (a.field == nullptr || a.field != b.field) throw DomainError("field mismatch");
  return *a.field;
}
const FieldSpec& field_of(const FieldElement& a) {
  if (a.field == nullptr) throw DomainError("element has no field");
  return *a.field;
}
}  // namespace

FieldElement fe_add(FieldElement a, FieldElement b) { return {&common(a, b), a.bits ^ b.bits}; }

FieldElement fe_mul(FieldElement a, FieldElement b) {
  const auto& k = common(a, b);
  return {&k, k.mul(a.bits, b.bits)};
}

FieldElement fe_inv(FieldElement a) {
  const auto& k = field_of(a);
  return {&k, k.inv(a.bits)};
}

FieldElement frobenius(FieldElement a, unsigned power) {
  const auto& k = field_of(a);
  return {&k, k.frobenius(a.bits, power)};
}

std::uint32_t fe_order(FieldElement a) { return field_of(a).order(a.bits); }

}  // namespace e1forge::gf2k
