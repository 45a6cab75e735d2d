#pragma once

// Brute-force enumeration of small matrix groups GL_d(q), GU_d(q) and their
// central quotients, with direct centralizer, realness and conjugacy scans.
// Elements are stored as 64-bit row-major keys in sorted order.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "e1forge/bigint.hpp"
#include "e1forge/group_order.hpp"
#include "e1forge/matrix.hpp"

namespace e1forge::oracle {

using gf2k::Elem;
using gf2k::FieldSpec;
using linalg::Matrix;

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct GroupDescriptor {
  bounds::GroupKind kind;
  unsigned d;
  std::uint64_t q;

  int epsilon() const { return bounds::epsilon_of(kind); }
  bool projective() const;
  /// "GL_3(4)", "PGU_3(2)"
  std::string to_string() const;
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Parses "GL_3(4)" style descriptors (GL, GU, PGL, PGU).
GroupDescriptor parse_group_descriptor(std::string_view text);

enum class GuMethod { Auto, Filter, Closure };

struct EnumOptions {
  std::uint64_t budget = kDefaultBudget;
  GuMethod gu_method = GuMethod::Auto;
  std::uint64_t seed = 1;  // closure generator search only
};

class GroupEnum {
 public:
  const GroupDescriptor& descriptor() const { return desc_; }
  const FieldSpec& field() const { return *field_; }
  unsigned dim() const { return d_; }
  bool projective() const { return desc_.projective(); }
  /// Number of enumerated elements (classes modulo scalars when projective).
  std::size_t size() const { return keys_.size(); }
  /// Closed-form order of the group.
  BigInt formula_order() const;
  /// Sorted keys; projective groups use scalar-normalized keys.
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  /// A group element (a lift when projective).
  Matrix element(std::size_t i) const;
  const Elem* raw(std::size_t i) const { return data_.data() + i * d_ * d_; }
  /// Scalars of the center of the underlying linear group.
  const std::vector<Elem>& center() const { return center_; }
  /// The linear group a projective enumeration was built from.
  const GroupEnum* parent() const { return parent_.get(); }

  /// Index of s (or of its class modulo scalars), or size() if absent.
  std::size_t find(const Matrix& s) const;
  bool contains(const Matrix& s) const { return find(s) != size(); }
  /// Index of the inverse of element i (computed once, thread-safe).
  std::size_t inverse_index(std::size_t i) const;

  /// Scalar-normalized key: first nonzero entry of the first column is 1.
  std::uint64_t normalized_key(const Elem* m) const;
  std::uint64_t key_of(const Elem* m) const;

 private:
  friend GroupEnum build_group(const GroupDescriptor&, const FieldSpec&, std::vector<std::uint64_t>);
  friend GroupEnum quotient_pgl(const GroupEnum& g);

  GroupDescriptor desc_{};
  const FieldSpec* field_ = nullptr;
  unsigned d_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<Elem> data_;
  std::vector<Elem> center_;
  std::shared_ptr<const GroupEnum> parent_;
  struct InverseCache {
    std::once_flag once;
    std::vector<std::uint32_t> index;
  };
  // Shared by copies, which hold the same elements.
  std::shared_ptr<InverseCache> inverse_ = std::make_shared<InverseCache>();
};

/// All invertible d x d matrices over `field` by row-space extension.
GroupEnum enumerate_gl_over(const FieldSpec& field, unsigned d, std::uint64_t budget = kDefaultBudget);
GroupEnum enumerate_gl(unsigned d, std::uint64_t q, std::uint64_t budget = kDefaultBudget);
/// GU_d(q) for the anti-diagonal Hermitian form over GF(q^2).
GroupEnum enumerate_gu(unsigned d, std::uint64_t q, const EnumOptions& opts = {});
/// GL^eps_d(q) modulo scalars.
GroupEnum quotient_pgl(const GroupEnum& g);
GroupEnum enumerate(const GroupDescriptor& desc, const EnumOptions& opts = {});

/// M^T J M^(q) = J with J anti-diagonal.
bool preserves_hermitian_form(const Matrix& m, std::uint64_t q);

/// |{x : xs = sx}|, or |{x : xs ~ sx up to scalars}| when projective.
BigInt brute_centralizer(const GroupEnum& g, const Matrix& s, unsigned threads = 1);
/// Some x has x s x^-1 = s^-1 (up to scalars when projective).
bool brute_is_real(const GroupEnum& g, const Matrix& s, unsigned threads = 1);
/// Some x has x s x^-1 = t (up to scalars when projective).
bool brute_conjugate(const GroupEnum& g, const Matrix& s, const Matrix& t, unsigned threads = 1);
/// Sorted indices of the conjugacy class of s.
std::vector<std::size_t> conjugacy_class(const GroupEnum& g, const Matrix& s, unsigned threads = 1);

struct CheckTally {
  std::string name;
  std::uint64_t tested = 0;
  std::uint64_t passed = 0;
  std::vector<std::string> failures;  // first few only

  /// Counts `count` tested items that share one verdict.
  void record(bool ok, const std::string& what, std::uint64_t count = 1);
  bool ok() const { return tested == passed; }
};

struct SweepOptions {
  EnumOptions enumeration;
  unsigned threads = 1;
  /// Scan every odd-order element individually instead of one per charpoly;
  /// enabled automatically for groups with at most 1000 elements.
  bool full_scan = false;
};

struct SweepReport {
  GroupDescriptor group;
  BigInt order;
  std::uint64_t enumerated = 0;
  std::uint64_t odd_order_elements = 0;
  std::uint64_t semisimple_classes = 0;
  bool full_scan = false;
  std::vector<CheckTally> checks;

  bool ok() const;
  const CheckTally* find(std::string_view name) const;
};

SweepReport verify_sweep(const GroupDescriptor& desc, const SweepOptions& opts = {});

}  // namespace e1forge::oracle
