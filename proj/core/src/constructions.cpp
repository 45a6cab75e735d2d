#include "e1forge/error.hpp"
#include "e1forge/group_order.hpp"
#include "e1forge/semisimple.hpp"

namespace e1forge::semisimple {

MonicPoly scale_charpoly(const MonicPoly& xi, Elem kappa) {
  const FieldSpec& k = xi.field();
  if (kappa == 0 || !k.contains(kappa)) throw DomainError("scale_charpoly: kappa must be a nonzero field element");
  const unsigned d = xi.degree();
  std::vector<Elem> c = xi.lower_coeffs();
  for (unsigned i = 0; i < d; ++i) c[i] = k.mul(c[i], k.pow(kappa, d - i));
  return MonicPoly::from_lower(k, std::move(c));
}

Elem real_lift_scalar(const FieldSpec& field, Elem zeta) {
  if (zeta == 0 || !field.contains(zeta)) throw DomainError("real_lift_scalar: zeta must be a nonzero field element");
  return field.sqrt(field.inv(zeta));
}

Elem real_lift_scalar(const MonicPoly& xi, Elem zeta) { return real_lift_scalar(xi.field(), zeta); }

PalindromicElement palindromic_element(unsigned d, std::uint64_t q, int epsilon, Elem det_target) {
  const FieldSpec& k = class_field(epsilon, q);
  const std::uint64_t qe = epsilon == 1 ? q - 1 : q + 1;
  if (det_target == 0 || !k.contains(det_target) || k.pow(det_target, static_cast<std::int64_t>(qe)) != 1) {
    throw DomainError("palindromic_element: det_target must lie in the subgroup of order q - eps");
  }
  PalindromicElement out;
  auto fill = [&](std::initializer_list<int> pattern) {
    for (int v : pattern) out.diagonal.push_back(v == 1 ? out.zeta : 1U);
  };
  switch (d) {
    case 3:
      out.zeta = k.sqrt(det_target);
      fill({1, 0, 1});
      return out;
    case 5:
      out.zeta = k.sqrt(det_target);
      fill({1, 0, 0, 0, 1});
      return out;
    case 6:
      out.zeta = k.sqrt(k.sqrt(det_target));
      fill({1, 1, 0, 0, 1, 1});
      return out;
    case 7:
      out.zeta = k.sqrt(k.sqrt(det_target));
      fill({1, 1, 0, 0, 0, 1, 1});
      return out;
    default:
      break;
  }
  if (d < 9) throw DomainError("palindromic_element: d must be 3, 5, 6, 7 or at least 9");

  out.d_bar = d % 2 == 1 ? 1 : 2;
  out.d_prime = (d - out.d_bar) / 4;
  out.four_divides = d - out.d_bar == 4 * out.d_prime;
  out.zeta = k.element_of_order(static_cast<std::uint32_t>(qe));
  const Elem zeta = out.zeta;
  const Elem zeta_inv = k.inv(zeta);
  // Determinant of everything except the xi block.
  Elem rest = k.pow(zeta, 2 * static_cast<std::int64_t>(out.d_prime));
  if (!out.four_divides) rest = k.mul(rest, k.mul(zeta_inv, zeta_inv));
  const Elem quotient = k.div(det_target, rest);
  const Elem xi = out.d_bar == 1 ? quotient : k.sqrt(quotient);
  out.xi = xi;

  auto repeat = [&](Elem v, unsigned n) { out.diagonal.insert(out.diagonal.end(), n, v); };
  repeat(zeta, out.d_prime);
  repeat(1, out.d_prime);
  if (!out.four_divides) repeat(zeta_inv, 1);
  repeat(xi, out.d_bar);
  if (!out.four_divides) repeat(zeta_inv, 1);
  repeat(1, out.d_prime);
  repeat(zeta, out.d_prime);
  return out;
}

InvolutionBlocks involution_with_blocks(unsigned d, unsigned l, std::uint64_t q, int epsilon) {
  const FieldSpec& k = class_field(epsilon, q);
  if (d == 0 || 2 * l > d) throw DomainError("involution_with_blocks: need 0 <= 2l <= d");
  linalg::Matrix m = linalg::Matrix::identity(k, d);
  for (unsigned i = 0; i < l; ++i) m.set(i, d - l + i, 1);
  const unsigned f = gf2k::log2_exact(q);
  const long exponent = 2L * l * d - 3L * l * l;
  BigInt radical = pow2(static_cast<unsigned>(exponent) * f);
  const BigInt qq(q);
  BigInt predicted = radical * bounds::gl_eps_order(epsilon, l, qq) * bounds::gl_eps_order(epsilon, d - 2 * l, qq);
  return InvolutionBlocks{std::move(m), std::move(radical), std::move(predicted)};
}

}  // namespace e1forge::semisimple
