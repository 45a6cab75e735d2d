#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "e1forge/charpoly_enum.hpp"
#include "e1forge/error.hpp"
#include "e1forge/group_order.hpp"
#include "e1forge/poly_text.hpp"
#include "e1forge/semisimple.hpp"

namespace e1forge::semisimple {
namespace {

// I >= c q^{d(d+1)/4} (or >) compared as I^4 against c^4 q^{d(d+1)}.
struct IndexComparison {
  bool holds;
  BigInt lhs4;
  BigInt rhs4;
};

IndexComparison compare_index(const BigInt& index, const BigInt& constant, const SemisimpleClass& c, bool strict) {
  IndexComparison r;
  r.lhs4 = ipow(index, 4);
  r.rhs4 = ipow(constant, 4) << (c.f() * c.d * (c.d + 1));
  r.holds = strict ? r.lhs4 > r.rhs4 : r.lhs4 >= r.rhs4;
  return r;
}

void add_index_case(ClassCases& out, char label, const BigInt& index, const BigInt& constant,
                    const SemisimpleClass& c, bool strict, const std::string& constant_text) {
  const IndexComparison cmp = compare_index(index, constant, c, strict);
  if (!cmp.holds) return;
  out.cases.push_back({label,
                       "I^4 " + std::string(strict ? ">" : ">=") + " (" + constant_text + ")^4 q^{d(d+1)}",
                       {{"I", to_decimal(index)},
                        {"constant", to_decimal(constant)},
                        {"lhs4", to_decimal(cmp.lhs4)},
                        {"rhs4", to_decimal(cmp.rhs4)}}});
}

// Xi = (x+1)^{d1} Delta^{floor(d/2)} with deg Delta = 2 and Delta = Delta*.
std::optional<MonicPoly> structural_delta(const SemisimpleClass& c) {
  const unsigned r = c.d / 2;
  if (c.d - c.d1 != 2 * r) return std::nullopt;
  const MonicPoly one = poly::delta_one(c.xi.field());
  MonicPoly delta(c.xi.field());
  for (const auto& fp : c.xi.factors()) {
    if (fp.factor == one) continue;
    if (fp.multiplicity % r != 0) return std::nullopt;
    delta = delta * poly::power(fp.factor, fp.multiplicity / r);
  }
  if (delta.degree() != 2 || poly::poly_star(delta) != delta) return std::nullopt;
  return delta;
}

}  // namespace

ClassCases classify_cases(const SemisimpleClass& c) {
  const std::uint64_t e = bounds::center_gcd(c.d, c.q, c.epsilon);
  if (c.d < 5) throw DomainError("classifier requires d >= 5");
  if (e <= 1) throw DomainError("classifier requires gcd(d, q - eps) > 1");
  if (c.is_identity()) throw DomainError("classifier requires a nontrivial class");
  if (!realness_structure(c).real) throw DomainError("classifier requires a real class");

  ClassCases out;
  if (3 * c.d1 >= c.d) {
    out.cases.push_back({'a', "3 d1 >= d", {{"d1", std::to_string(c.d1)}, {"d", std::to_string(c.d)}}});
  }
  if (auto delta = structural_delta(c)) {
    const bool irreducible = poly::is_irreducible(*delta);
    out.cases.push_back({'b',
                         "Xi = (x+1)^d1 Delta^floor(d/2), deg Delta = 2, Delta = Delta*",
                         {{"delta", poly::format_canonical(*delta)},
                          {"reducible", irreducible ? "false" : "true"}}});
    if (c.epsilon == -1 && irreducible) {
      out.flags.push_back("case b with irreducible Delta " + poly::format_canonical(*delta));
    }
  }

  const BigInt index = index_odd_part(c);
  const BigInt q(c.q);
  const BigInt q_minus_eps = c.epsilon == 1 ? q - 1 : q + 1;
  const BigInt c_const = BigInt(c.delta()) * e * c.f() * q_minus_eps;
  add_index_case(out, 'c', index, c_const, c, false, "delta e f (q - eps)");
  if (c.epsilon == -1) {
    if (c.q == 4) add_index_case(out, 'd', index, 45, c, false, "45");
    if (c.q == 2) add_index_case(out, 'e', index, 15, c, false, "15");
    if (c.d == 5 && c.q == 4) add_index_case(out, 'f', index, 12, c, true, "12");
    if (c.d == 6 && c.q == 8) add_index_case(out, 'g', index, 51, c, true, "51");
    if (c.d == 6 && c.q == 2) out.cases.push_back({'h', "(eps, d, q) = (-1, 6, 2)", {}});
  }
  return out;
}

CaseSweep case_sweep(int epsilon, unsigned d, std::uint64_t q, unsigned threads, std::uint64_t budget) {
  const FieldSpec& k = class_field(epsilon, q);
  if (d < 5) throw DomainError("sweep requires d >= 5");
  if (bounds::center_gcd(d, q, epsilon) <= 1) throw DomainError("sweep requires gcd(d, q - eps) > 1");
  const poly::CharpolyConstraints constraints{true, epsilon == -1, true};
  const poly::CharpolyEnumerator en(k, d, constraints, budget);

  constexpr std::uint64_t kChunk = 4096;
  constexpr std::size_t kExamples = 8;
  const std::uint64_t chunks = (en.index_count() + kChunk - 1) / kChunk;
  struct Partial {
    CaseSweep tally;
    std::map<char, std::uint64_t> counts;
  };
  std::vector<Partial> partials(chunks);
  for (auto& p : partials) p.tally = CaseSweep{epsilon, d, q};
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    try {
      for (std::uint64_t ci = next++; ci < chunks; ci = next++) {
        Partial& part = partials[ci];
        const std::uint64_t end = std::min(en.index_count(), (ci + 1) * kChunk);
        for (auto& entry : en.range(ci * kChunk, end)) {
          const SemisimpleClass cls = SemisimpleClass::make(epsilon, d, q, entry.xi);
          ++part.tally.classes;
          const ClassCases result = classify_cases(cls);
          if (result.cases.empty()) {
            ++part.tally.uncovered;
            if (part.tally.uncovered_examples.size() < kExamples) {
              part.tally.uncovered_examples.push_back(poly::format_factorization(cls.xi));
            }
          } else {
            ++part.tally.covered;
          }
          for (const auto& w : result.cases) ++part.counts[w.label];
          if (!result.flags.empty()) ++part.tally.flagged;
          if (epsilon == -1) {
            ++part.tally.eigenspace_checked;
            if (!eigenspace_bound_holds(cls)) ++part.tally.eigenspace_violations;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };

  const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(chunks, 1))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  CaseSweep total{epsilon, d, q};
  std::map<char, std::uint64_t> counts;
  for (const auto& p : partials) {
    total.classes += p.tally.classes;
    total.covered += p.tally.covered;
    total.uncovered += p.tally.uncovered;
    total.eigenspace_checked += p.tally.eigenspace_checked;
    total.eigenspace_violations += p.tally.eigenspace_violations;
    total.flagged += p.tally.flagged;
    for (const auto& ex : p.tally.uncovered_examples) {
      if (total.uncovered_examples.size() < kExamples) total.uncovered_examples.push_back(ex);
    }
    for (const auto& [label, count] : p.counts) counts[label] += count;
  }
  total.case_counts.assign(counts.begin(), counts.end());
  return total;
}

}  // namespace e1forge::semisimple
