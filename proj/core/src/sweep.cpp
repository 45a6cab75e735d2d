#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "e1forge/error.hpp"
#include "e1forge/oracle.hpp"
#include "e1forge/poly_text.hpp"
#include "e1forge/semisimple.hpp"

namespace e1forge::oracle {
namespace {

using poly::MonicPoly;
using semisimple::SemisimpleClass;

constexpr std::size_t kFullScanLimit = 1000;
constexpr std::uint64_t kClosureSamples = 20000;

bool is_trivial(const GroupEnum& g, const Matrix& m) { return g.projective() ? m.is_scalar() : m.is_identity(); }

std::string label(const GroupEnum& g, const MonicPoly& xi) {
  return g.descriptor().to_string() + " charpoly " + poly::format_canonical(xi);
}

// Smallest scaled charpoly over the center; constant on projective classes.
std::vector<Elem> projective_key(const GroupEnum& g, const MonicPoly& xi) {
  std::vector<Elem> best;
  for (Elem z : g.center()) {
    std::vector<Elem> c = semisimple::scale_charpoly(xi, z).lower_coeffs();
    if (best.empty() || c < best) best = std::move(c);
  }
  return best;
}

void check_structure(const GroupEnum& g, SweepReport& r) {
  CheckTally order{"order-formula"};
  order.record(BigInt(g.size()) == r.order,
               g.descriptor().to_string() + " has " + std::to_string(g.size()) + " elements");
  r.checks.push_back(order);

  CheckTally closure{"closure-sample"};
  try {
    for (std::size_t i = 0; i < g.size(); ++i) g.inverse_index(i);
    closure.record(true, "inverses");
  } catch (const Error& e) {
    closure.record(false, e.what());
  }
  std::mt19937_64 rng(0xc105e);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  const bool full = static_cast<std::uint64_t>(g.size()) * g.size() <= kClosureSamples;
  const std::uint64_t pairs = full ? static_cast<std::uint64_t>(g.size()) * g.size() : kClosureSamples;
  std::uint64_t bad = 0;
  for (std::uint64_t n = 0; n < pairs; ++n) {
    const std::size_t i = full ? static_cast<std::size_t>(n / g.size()) : pick(rng);
    const std::size_t j = full ? static_cast<std::size_t>(n % g.size()) : pick(rng);
    if (!g.contains(g.element(i) * g.element(j))) ++bad;
  }
  closure.record(bad == 0, std::to_string(bad) + " products left the group", pairs);
  r.checks.push_back(closure);
}

// One-to-one check of the permutation action on the diagonal class of each
// regular diagonal element.
void check_torus_normalizer(const GroupEnum& g, unsigned threads, SweepReport& r) {
  CheckTally tally{"torus-normalizer-regular"};
  const unsigned d = g.dim();
  std::vector<std::size_t> torus;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Elem* m = g.raw(i);
    bool diag = true;
    for (unsigned a = 0; a < d && diag; ++a) {
      for (unsigned b = 0; b < d; ++b) {
        if (a != b && m[a * d + b] != 0) {
          diag = false;
          break;
        }
      }
    }
    if (diag) torus.push_back(i);
  }
  std::vector<Matrix> perms;
  std::vector<unsigned> sigma(d);
  std::iota(sigma.begin(), sigma.end(), 0U);
  do {
    Matrix p(g.field(), d);
    for (unsigned a = 0; a < d; ++a) p.set(a, sigma[a], 1);
    if (g.contains(p)) perms.push_back(p);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  for (std::size_t ti : torus) {
    const Matrix t = g.element(ti);
    if (brute_centralizer(g, t, threads) != BigInt(torus.size())) continue;
    const auto cls = conjugacy_class(g, t, threads);
    std::vector<std::size_t> diag_class;
    std::set_intersection(cls.begin(), cls.end(), torus.begin(), torus.end(), std::back_inserter(diag_class));
    bool ok = diag_class.size() == perms.size();
    for (std::size_t ci : diag_class) {
      const Matrix target = g.element(ci);
      std::size_t hits = 0;
      for (const Matrix& p : perms) {
        if (p * t * p.inverse() == target) ++hits;
      }
      ok = ok && hits == 1;
    }
    tally.record(ok, g.descriptor().to_string() + " regular diagonal " + t.to_string());
  }
  r.checks.push_back(tally);
}

void check_involutions(const GroupEnum& g, unsigned threads, SweepReport& r) {
  CheckTally tally{"involution-centralizer"};
  const auto& desc = g.descriptor();
  for (unsigned l = 1; 2 * l <= desc.d; ++l) {
    const auto inv = semisimple::involution_with_blocks(desc.d, l, desc.q, desc.epsilon());
    const std::string what = desc.to_string() + " l=" + std::to_string(l);
    if (!g.contains(inv.matrix)) {
      tally.record(false, what + ": block involution is not in the group");
      continue;
    }
    tally.record(brute_centralizer(g, inv.matrix, threads) == inv.predicted_centralizer, what);
  }
  r.checks.push_back(tally);
}

}  // namespace

SweepReport verify_sweep(const GroupDescriptor& desc, const SweepOptions& opts) {
  const GroupEnum g = enumerate(desc, opts.enumeration);
  SweepReport r;
  r.group = desc;
  r.order = g.formula_order();
  r.enumerated = g.size();
  r.full_scan = opts.full_scan || g.size() <= kFullScanLimit;
  check_structure(g, r);

  const int eps = desc.epsilon();
  const std::uint64_t exponent = static_cast<std::uint64_t>(odd_part(r.order));
  const unsigned threads = std::max(1U, opts.threads);

  // Odd-order elements, bucketed by (projectively normalized) charpoly.
  std::vector<std::uint8_t> odd(g.size(), 0);
  {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < g.size(); i = next++) {
        odd[i] = is_trivial(g, g.element(i).pow(exponent)) ? 1 : 0;
      }
    };
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }
  std::map<std::vector<Elem>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!odd[i]) continue;
    ++r.odd_order_elements;
    const MonicPoly xi = g.element(i).charpoly();
    buckets[g.projective() ? projective_key(g, xi) : xi.lower_coeffs()].push_back(i);
  }
  r.semisimple_classes = buckets.size();

  CheckTally centralizer{g.projective() ? "projective-centralizer" : "semisimple-centralizer"};
  CheckTally realness{g.projective() ? "projective-realness" : "semisimple-realness"};
  CheckTally classes{"charpoly-classes"};
  CheckTally full{"full-scan"};
  CheckTally comparison{"centralizer-comparison"};
  CheckTally real_lift{"real-lift"};
  CheckTally odd_lifts{"odd-order-lifts"};

  const std::uint64_t qe = eps == 1 ? desc.q - 1 : desc.q + 1;
  for (const auto& [key, members] : buckets) {
    const Matrix rep = g.element(members.front());
    const MonicPoly xi = rep.charpoly();
    const std::string what = label(g, xi);
    const SemisimpleClass cls = SemisimpleClass::from_poly(eps, desc.q, xi);
    const BigInt shape_order = semisimple::centralizer_shape(cls).order;
    const bool formula_real = semisimple::realness_structure(cls).real;
    const BigInt brute_c = brute_centralizer(g, rep, threads);
    const bool brute_real = brute_is_real(g, rep, threads);
    const auto cls_members = conjugacy_class(g, rep, threads);
    classes.record(cls_members == members, what, members.size());

    if (!g.projective()) {
      centralizer.record(brute_c == shape_order, what, members.size());
      realness.record(brute_real == formula_real, what, members.size());
      if (r.full_scan) {
        for (std::size_t idx : members) {
          const Matrix s = g.element(idx);
          const SemisimpleClass c2 = SemisimpleClass::from_poly(eps, desc.q, s.charpoly());
          const bool ok = brute_centralizer(g, s, threads) == semisimple::centralizer_shape(c2).order &&
                          brute_is_real(g, s, threads) == semisimple::realness_structure(c2).real;
          full.record(ok, g.descriptor().to_string() + " element " + s.to_string());
        }
      }
      continue;
    }

    std::uint64_t stabilizer = 0;
    bool star_scaled = false;
    bool liftable_real = false;
    const MonicPoly xi_star = poly::poly_star(xi);
    for (Elem z : g.center()) {
      if (semisimple::scale_charpoly(xi, z) == xi) ++stabilizer;
      if (semisimple::scale_charpoly(xi_star, z) == xi) star_scaled = true;
      if (poly::is_real_charpoly(semisimple::scale_charpoly(xi, z))) liftable_real = true;
    }
    const BigInt predicted = shape_order * stabilizer / BigInt(qe);
    centralizer.record(brute_c == predicted && shape_order * stabilizer % BigInt(qe) == 0, what, members.size());
    realness.record(brute_real == star_scaled, what, members.size());
    real_lift.record(star_scaled == liftable_real, what, members.size());
    for (Elem z : g.center()) {
      const BigInt lin = brute_centralizer(*g.parent(), rep.scaled(z), threads);
      comparison.record(brute_c <= lin, what);
    }
    std::uint64_t odd_lift_count = 0;
    for (std::size_t idx : members) {
      if (g.element(idx).order() % 2 == 1) ++odd_lift_count;
    }
    odd_lifts.record(odd_lift_count == members.size(), what, members.size());
  }
  r.checks.push_back(centralizer);
  r.checks.push_back(realness);
  r.checks.push_back(classes);
  if (r.full_scan && !g.projective()) r.checks.push_back(full);
  if (g.projective()) {
    r.checks.push_back(comparison);
    r.checks.push_back(real_lift);
    r.checks.push_back(odd_lifts);
  } else {
    check_involutions(g, threads, r);
    check_torus_normalizer(g, threads, r);
  }
  return r;
}

}  // namespace e1forge::oracle
