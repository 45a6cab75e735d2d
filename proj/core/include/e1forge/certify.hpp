#pragma once

// Exact certification of inequalities in q = 2^f and f over ranges of f, and
// the line-oriented inequality registry.
//
// Finite segments are checked value by value. An unbounded segment [a, oo)
// is certified by leading-term dominance: with D = lhs - rhs (or rhs - lhs)
// and leading term c_L q^E f^J, every other term c q^e f^j has a ratio
// |c|/c_L 2^{(e-E)f} f^{j-J} that is non-increasing from an explicit f = m;
// the first f0 >= max(a, m) at which the ratios sum to less than 1 bounds D
// away from zero for all f >= f0, and [a, f0] is checked value by value.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "e1forge/expr.hpp"

namespace e1forge::bounds {

enum class CertStatus { Verified, Failed, TailUnproved };
std::string to_string(CertStatus s);

struct TailWitness {
  int lead_q_exp = 0;
  unsigned lead_f_exp = 0;
  Rational lead_coeff;
  /// All remainder ratios are non-increasing for f >= monotone_from.
  unsigned monotone_from = 1;
  /// Sum of remainder ratios at f0 is strictly below 1.
  unsigned f0 = 1;
  Rational remainder_ratio_at_f0;
};

struct SegmentResult {
  FRange::Segment segment;
  CertStatus status = CertStatus::Verified;
  /// Values of f checked directly (inclusive bounds).
  unsigned checked_from = 0;
  unsigned checked_to = 0;
  std::optional<unsigned> counterexample;
  std::optional<TailWitness> witness;
  std::string note;
};

struct InequalityCert {
  std::string id;
  std::string lhs_text;
  Relation rel = Relation::Greater;
  std::string rhs_text;
  FRange range;
  std::string anchor;
  /// Power to which both sides of the original statement were raised.
  unsigned clear_power = 1;
  CertStatus status = CertStatus::Verified;
  std::vector<SegmentResult> segments;
};

struct CertifyOptions {
  /// Largest f0 the tail search may reach before giving up.
  unsigned max_tail_start = 4096;
};

/// Certifies `lhs rel rhs` over `range`. Throws ParseError on bad input.
InequalityCert certify(std::string_view lhs, Relation rel, std::string_view rhs, const FRange& range,
                       const CertifyOptions& opts = {});
/// Convenience: "lhs REL rhs" and range text.
InequalityCert certify(std::string_view inequality, std::string_view range, const CertifyOptions& opts = {});

/// Re-checks a certificate from its texts and witnesses without searching:
/// finite values are re-evaluated, tail witnesses re-validated. Returns true
/// iff the recorded status is reproduced.
bool replay(const InequalityCert& cert);

struct RegistryEntry {
  std::string id;
  std::string lhs;
  Relation rel = Relation::Greater;
  std::string rhs;
  std::string range;
  std::string anchor;
  unsigned clear_power = 1;
  unsigned line = 0;
};

/// Format, one entry per line: "id | lhs | rel | rhs | f-range | anchor";
/// '#' starts a comment line; the anchor may contain "[clear=N]".
std::vector<RegistryEntry> parse_registry(std::string_view text);
std::vector<RegistryEntry> load_registry(const std::filesystem::path& path);
/// The registry installed with the library (source tree during development).
std::filesystem::path default_registry_path();

InequalityCert certify_entry(const RegistryEntry& entry, const CertifyOptions& opts = {});
/// Certifies entries concurrently; results are in registry order.
std::vector<InequalityCert> certify_all(const std::vector<RegistryEntry>& entries, unsigned threads = 1,
                                        const CertifyOptions& opts = {});

}  // namespace e1forge::bounds
