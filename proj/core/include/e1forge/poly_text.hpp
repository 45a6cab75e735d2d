#pragma once

// Text forms of polynomials.
//
// Canonical form:   poly(GF(2^k))[c0,c1,...,1]   (decimal encodings, monic)
// Mini-language:    a product of factors, each optionally raised to ^m:
//                     (x+<elt>)     linear factor
//                     [c0,...,1]    monic coefficient list
//                     poly(...)[..] canonical form
//                   where <elt> is a decimal encoding, w / w2 (the canonical
//                   cube root of unity and its square), g or g^k (powers of
//                   the primitive element) or z<n> / z<n>^k (powers of the
//                   canonical element of order n). The literal 1 is the
//                   empty product.

#include <string>
#include <string_view>

#include "e1forge/poly.hpp"

namespace e1forge::poly {

/// Parses the canonical form; the embedded degree must match `field`.
MonicPoly parse_canonical(std::string_view text, const FieldSpec& field);
/// Parses the mini-language (which includes the canonical form).
MonicPoly parse_poly(std::string_view text, const FieldSpec& field);
/// Parses one field element in the <elt> syntax.
Elem parse_element(std::string_view text, const FieldSpec& field);

std::string format_canonical(const MonicPoly& p);
/// Human-readable product form, e.g. "(x+1)^2(x+2)[2,3,1]".
std::string format_factorization(const Factorization& xi);

}  // namespace e1forge::poly
