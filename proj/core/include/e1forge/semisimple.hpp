#pragma once

// Semisimple classes of GL^eps_d(q), q = 2^f, identified by the factored
// characteristic polynomial over GF(q^delta); centralizer shapes, odd
// indices, realness, the case classifier for d >= 5 and the explicit
// element constructions used for automorphism modification.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "e1forge/bigint.hpp"
#include "e1forge/matrix.hpp"
#include "e1forge/poly.hpp"

namespace e1forge::semisimple {

using gf2k::Elem;
using gf2k::FieldSpec;
using poly::Factorization;
using poly::MonicPoly;

/// GF(q) for epsilon = +1, GF(q^2) for epsilon = -1.
const FieldSpec& class_field(int epsilon, std::uint64_t q);

struct SemisimpleClass {
  int epsilon;
  unsigned d;
  std::uint64_t q;
  Factorization xi;
  unsigned d1;  // multiplicity of x + 1

  /// Validates: eps in {+1,-1}, q a power of 2, xi over class_field(eps, q)
  /// of total degree d >= 1, Xi(0) != 0, and Xi = Xi^dagger when eps = -1.
  static SemisimpleClass make(int epsilon, unsigned d, std::uint64_t q, Factorization xi);
  static SemisimpleClass from_poly(int epsilon, std::uint64_t q, const MonicPoly& xi);

  unsigned f() const;
  unsigned delta() const { return epsilon == 1 ? 1 : 2; }
  MonicPoly charpoly() const { return xi.expand(); }
  bool is_identity() const { return d1 == d; }
};

enum class FactorKind { GL, GU };

struct ShapeFactor {
  FactorKind kind;
  unsigned m;
  unsigned q_log2;  // Q = 2^{q_log2}

  BigInt order() const;
  std::string to_string() const;  // "GL_2(16)"
  friend bool operator==(const ShapeFactor&, const ShapeFactor&) = default;
};

struct CentralizerShape {
  std::vector<ShapeFactor> factors;
  BigInt order;
  BigInt odd_part;

  std::string to_string() const;  // "GL_1(4) x GL_1(4)"
};

/// Throws DomainError when an eps = -1 factorization is not closed under
/// dagger with matching multiplicities.
CentralizerShape centralizer_shape(const SemisimpleClass& c);
/// [GL^eps_d(q) : C]_{2'}
BigInt index_odd_part(const SemisimpleClass& c);

struct StarPair {
  MonicPoly factor;
  MonicPoly partner;  // factor* (equal to factor when self-dual)
  unsigned multiplicity;
};

struct DaggerFlag {
  MonicPoly factor;
  bool self_dagger;
};

struct RealnessStructure {
  bool real = false;
  /// Star pairing of the factors other than x + 1 (each pair listed once),
  /// filled only when real.
  std::vector<StarPair> pairing;
  /// For eps = -1: every factor with its self-dagger flag.
  std::vector<DaggerFlag> dagger_flags;
};

RealnessStructure realness_structure(const SemisimpleClass& c);

// ---------------------------------------------------------------------------
// D-statistic and case classifier (d >= 5, gcd(d, q - eps) > 1).

/// coeff * ((q^2 - q - 1)/q^2)^{r_power} * q^{q_exp4 / 4}, coeff >= 0.
struct DBound {
  Rational coeff = 1;
  unsigned r_power = 0;
  long q_exp4 = 0;
};

struct DParameters {
  unsigned l;        // 1 + number of distinct factors other than x + 1
  unsigned l_prime;  // 0 for eps = +1, l for eps = -1
  unsigned d_prime;  // largest multiplicity over all factors (x + 1 included)
  MonicPoly d_prime_factor;  // a factor attaining d', ties to larger degree
};

DParameters d_parameters(const SemisimpleClass& c);
/// The lower bound (1 - q^-1 - q^-2)^{l'+1} q^{d(d - 2d' - 1)/4} for D.
DBound d_statistic_bound(const SemisimpleClass& c);
/// Compares D = [G:C]_{2'} q^{-d(d+1)/4} against the bound, exactly.
std::strong_ordering d_statistic_cmp(const SemisimpleClass& c, const DBound& bound);

struct CaseWitness {
  char label;
  std::string condition;
  std::vector<std::pair<std::string, std::string>> data;  // decimal strings
};

struct ClassCases {
  std::vector<CaseWitness> cases;
  /// Reported observations that are not failures (e.g. an irreducible Delta
  /// in case (b) for eps = -1).
  std::vector<std::string> flags;

  bool holds(char label) const;
  std::string labels() const;  // e.g. "ah"
};

/// Throws DomainError unless d >= 5, gcd(d, q - eps) > 1, c real, c not the
/// identity.
ClassCases classify_cases(const SemisimpleClass& c);

struct CaseSweep {
  int epsilon;
  unsigned d;
  std::uint64_t q;
  std::uint64_t classes = 0;
  std::uint64_t covered = 0;
  std::uint64_t uncovered = 0;
  std::uint64_t eigenspace_checked = 0;  // d >= d1 + 2 m k for every factor
  std::uint64_t eigenspace_violations = 0;
  std::vector<std::pair<char, std::uint64_t>> case_counts;
  std::vector<std::string> uncovered_examples;
  std::uint64_t flagged = 0;

  bool ok() const { return uncovered == 0 && eigenspace_violations == 0; }
};

/// Enumerates all real, nontrivial classes (unitary-compatible for
/// eps = -1) of GL^eps_d(q) and classifies each one.
CaseSweep case_sweep(int epsilon, unsigned d, std::uint64_t q, unsigned threads = 1,
                           std::uint64_t budget = 10'000'000);

/// d >= d1 + 2 m k for every factor (Delta, m) of degree k other than x + 1.
bool eigenspace_bound_holds(const SemisimpleClass& c);

// ---------------------------------------------------------------------------
// Element constructions.

/// Characteristic polynomial of kappa * s: coefficients c_i kappa^{d-i}.
MonicPoly scale_charpoly(const MonicPoly& xi, Elem kappa);
/// The unique xi with xi^{-2} = zeta.
Elem real_lift_scalar(const FieldSpec& field, Elem zeta);
/// As above, with the characteristic polynomial of the element it lifts
/// (used only for its field); returns xi.
Elem real_lift_scalar(const MonicPoly& xi, Elem zeta);

struct PalindromicElement {
  std::vector<Elem> diagonal;
  Elem zeta = 1;
  std::optional<Elem> xi;  // only for d >= 9
  unsigned d_bar = 0;      // d >= 9 only
  unsigned d_prime = 0;    // d >= 9 only
  bool four_divides = true;  // d - d_bar == 4 d'
};

/// det_target must satisfy det_target^{q - eps} = 1 (DomainError otherwise);
/// d in {3, 5, 6, 7} or d >= 9.
PalindromicElement palindromic_element(unsigned d, std::uint64_t q, int epsilon, Elem det_target);

struct InvolutionBlocks {
  linalg::Matrix matrix;  // identity with Id_l in the top-right l x l block
  BigInt unipotent_radical;  // q^{2ld - 3l^2}
  BigInt predicted_centralizer;
};

InvolutionBlocks involution_with_blocks(unsigned d, unsigned l, std::uint64_t q, int epsilon);

/// ceil(index_odd_part / e), e = gcd(d, q - eps).
BigInt min_character_degree(const SemisimpleClass& c);

}  // namespace e1forge::semisimple
