#include "e1forge/certify.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "e1forge/error.hpp"

namespace e1forge::bounds {

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Verified: return "verified";
    case CertStatus::Failed: return "failed";
    case CertStatus::TailUnproved: return "tail-unproved";
  }
  return "?";
}

namespace {

Expr difference(const Expr& lhs, Relation rel, const Expr& rhs) {
  return (rel == Relation::Less || rel == Relation::LessEq) ? rhs - lhs : lhs - rhs;
}

bool holds(const Rational& v, Relation rel) {
  switch (rel) {
    case Relation::Greater:
    case Relation::Less: return v > 0;
    case Relation::GreaterEq:
    case Relation::LessEq: return v >= 0;
    case Relation::Equal: return v == 0;
  }
  return false;
}

// First f in [from, to] where the relation fails.
std::optional<unsigned> scan(const Expr& d, Relation rel, unsigned from, unsigned to) {
  for (unsigned f = from; f <= to; ++f) {
    if (!holds(d.eval(f), rel)) return f;
  }
  return std::nullopt;
}

struct Remainder {
  Rational ratio;  // |c| / c_L
  unsigned gap;    // E - e
  int k;           // j - J
};

std::vector<Remainder> remainders(const Expr& d) {
  const auto& [lead_key, lead_c] = *d.terms().rbegin();
  std::vector<Remainder> out;
  for (const auto& [k, c] : d.terms()) {
    if (k == lead_key) continue;
    out.push_back({(c < 0 ? Rational(-c) : c) / lead_c, static_cast<unsigned>(lead_key.first - k.first),
                   static_cast<int>(k.second) - static_cast<int>(lead_key.second)});
  }
  return out;
}

// (f+1)^k <= 2^gap f^k: the ratio 2^{-gap f} f^k does not grow from f to f+1.
bool step_non_increasing(const Remainder& r, unsigned f) {
  if (r.k <= 0) return true;
  const auto k = static_cast<unsigned>(r.k);
  return ipow(BigInt(f + 1), k) <= pow2(r.gap) * ipow(BigInt(f), k);
}

Rational remainder_sum(const std::vector<Remainder>& rs, unsigned f) {
  Rational s = 0;
  for (const auto& r : rs) {
    Rational t = r.ratio / pow2(r.gap * f);
    if (r.k >= 0) {
      t *= ipow(BigInt(f), static_cast<unsigned>(r.k));
    } else {
      t /= ipow(BigInt(f), static_cast<unsigned>(-r.k));
    }
    s += t;
  }
  return s;
}

SegmentResult certify_tail(const Expr& d, Relation rel, unsigned from, const CertifyOptions& opts) {
  SegmentResult res;
  res.segment = {from, std::nullopt};
  const unsigned cap = std::max(opts.max_tail_start, from);
  auto counterexample_search = [&](const std::string& note) {
    res.checked_from = from;
    res.checked_to = cap;
    if (auto bad = scan(d, rel, from, cap)) {
      res.status = CertStatus::Failed;
      res.counterexample = bad;
      res.checked_to = *bad;
    } else {
      res.status = CertStatus::TailUnproved;
    }
    res.note = note;
    return res;
  };

  if (d.is_zero()) {
    res.checked_from = res.checked_to = from;
    if (rel == Relation::Greater || rel == Relation::Less) {
      res.status = CertStatus::Failed;
      res.counterexample = from;
    }
    res.note = "difference is identically zero";
    return res;
  }
  if (rel == Relation::Equal) return counterexample_search("difference is not identically zero");

  const auto& [lead_key, lead_c] = *d.terms().rbegin();
  if (lead_c < 0) return counterexample_search("leading coefficient of the difference is negative");

  const std::vector<Remainder> rs = remainders(d);
  unsigned monotone = 1;
  for (const auto& r : rs) {
    unsigned m = 1;
    while (!step_non_increasing(r, m)) {
      if (++m > cap) return counterexample_search("no monotonicity threshold below the search cap");
    }
    monotone = std::max(monotone, m);
  }

  // The remainder sum is non-increasing from `start`, so bisection applies.
  const unsigned start = std::max(from, monotone);
  unsigned f0 = start;
  if (remainder_sum(rs, start) >= 1) {
    unsigned lo = start;
    unsigned hi = start;
    do {
      lo = hi;
      hi = hi * 2;
      if (hi > cap) {
        hi = cap;
        if (remainder_sum(rs, hi) >= 1) return counterexample_search("remainder not dominated below the search cap");
        break;
      }
    } while (remainder_sum(rs, hi) >= 1);
    while (hi - lo > 1) {
      const unsigned mid = lo + (hi - lo) / 2;
      (remainder_sum(rs, mid) >= 1 ? lo : hi) = mid;
    }
    f0 = hi;
  }

  TailWitness w;
  w.lead_q_exp = lead_key.first;
  w.lead_f_exp = lead_key.second;
  w.lead_coeff = lead_c;
  w.monotone_from = monotone;
  w.f0 = f0;
  w.remainder_ratio_at_f0 = remainder_sum(rs, f0);
  res.witness = w;
  res.checked_from = from;
  res.checked_to = f0;
  if (auto bad = scan(d, rel, from, f0)) {
    res.status = CertStatus::Failed;
    res.counterexample = bad;
  }
  return res;
}

SegmentResult certify_segment(const Expr& d, Relation rel, const FRange::Segment& seg, const CertifyOptions& opts) {
  if (!seg.to) return certify_tail(d, rel, seg.from, opts);
  SegmentResult res;
  res.segment = seg;
  res.checked_from = seg.from;
  res.checked_to = *seg.to;
  if (auto bad = scan(d, rel, seg.from, *seg.to)) {
    res.status = CertStatus::Failed;
    res.counterexample = bad;
  }
  return res;
}

CertStatus combine(const std::vector<SegmentResult>& segs) {
  CertStatus s = CertStatus::Verified;
  for (const auto& r : segs) {
    if (r.status == CertStatus::Failed) return CertStatus::Failed;
    if (r.status == CertStatus::TailUnproved) s = CertStatus::TailUnproved;
  }
  return s;
}

bool witness_valid(const Expr& d, Relation rel, const SegmentResult& seg) {
  if (!seg.witness || d.is_zero() || rel == Relation::Equal) return false;
  const TailWitness& w = *seg.witness;
  const auto& [lead_key, lead_c] = *d.terms().rbegin();
  if (lead_key != Expr::Key{w.lead_q_exp, w.lead_f_exp} || lead_c != w.lead_coeff || lead_c <= 0) return false;
  const auto rs = remainders(d);
  for (const auto& r : rs) {
    // Non-increasing from monotone_from: (1 + 1/f)^k only shrinks as f grows.
    if (!step_non_increasing(r, w.monotone_from)) return false;
  }
  if (w.f0 < w.monotone_from || w.f0 < seg.segment.from) return false;
  const Rational s = remainder_sum(rs, w.f0);
  if (s != w.remainder_ratio_at_f0 || s >= 1) return false;
  return !scan(d, rel, seg.segment.from, w.f0).has_value();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

InequalityCert certify(std::string_view lhs, Relation rel, std::string_view rhs, const FRange& range,
                       const CertifyOptions& opts) {
  InequalityCert cert;
  cert.lhs_text = std::string(lhs);
  cert.rel = rel;
  cert.rhs_text = std::string(rhs);
  cert.range = range;
  const Expr d = difference(parse_expr(lhs), rel, parse_expr(rhs));
  for (const auto& seg : range.segments) cert.segments.push_back(certify_segment(d, rel, seg, opts));
  cert.status = combine(cert.segments);
  return cert;
}

InequalityCert certify(std::string_view inequality, std::string_view range, const CertifyOptions& opts) {
  const InequalityText t = split_inequality(inequality);
  return certify(t.lhs, t.rel, t.rhs, parse_frange(range), opts);
}

bool replay(const InequalityCert& cert) {
  const Expr d = difference(parse_expr(cert.lhs_text), cert.rel, parse_expr(cert.rhs_text));
  if (cert.segments.size() != cert.range.segments.size()) return false;
  for (std::size_t i = 0; i < cert.segments.size(); ++i) {
    const SegmentResult& seg = cert.segments[i];
    if (seg.status == CertStatus::Verified) {
      if (seg.segment.to) {
        if (scan(d, cert.rel, seg.segment.from, *seg.segment.to)) return false;
      } else if (d.is_zero()) {
        if (cert.rel == Relation::Greater || cert.rel == Relation::Less) return false;
      } else if (!witness_valid(d, cert.rel, seg)) {
        return false;
      }
    } else if (seg.status == CertStatus::Failed) {
      if (!seg.counterexample || holds(d.eval(*seg.counterexample), cert.rel)) return false;
    }
  }
  return combine(cert.segments) == cert.status;
}

std::vector<RegistryEntry> parse_registry(std::string_view text) {
  std::vector<RegistryEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned lineno = 0;
  static const std::regex clear_re(R"(\[clear=(\d+)\])");
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto bar = t.find('|', start);
      fields.push_back(trim(std::string_view(t).substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (fields.size() != 6) {
      throw ParseError("registry line " + std::to_string(lineno) + ": expected 6 '|'-separated fields, got " +
                       std::to_string(fields.size()));
    }
    RegistryEntry e;
    e.id = fields[0];
    e.lhs = fields[1];
    e.rel = parse_relation(fields[2]);
    e.rhs = fields[3];
    e.range = fields[4];
    e.anchor = fields[5];
    e.line = lineno;
    std::smatch m;
    if (std::regex_search(e.anchor, m, clear_re)) e.clear_power = static_cast<unsigned>(std::stoul(m[1].str()));
    if (e.id.empty()) throw ParseError("registry line " + std::to_string(lineno) + ": empty id");
    for (const auto& prev : out) {
      if (prev.id == e.id) throw ParseError("registry line " + std::to_string(lineno) + ": duplicate id " + e.id);
    }
    // Fail early on malformed expressions and ranges.
    try {
      parse_expr(e.lhs);
      parse_expr(e.rhs);
      parse_frange(e.range);
    } catch (const ParseError& err) {
      throw ParseError("registry line " + std::to_string(lineno) + " (" + e.id + "): " + err.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RegistryEntry> load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open registry " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

std::filesystem::path default_registry_path() {
  if (const char* env = std::getenv("E1FORGE_REGISTRY"); env != nullptr && *env != '\0') return env;
#ifdef E1FORGE_REGISTRY_SOURCE
  if (std::filesystem::exists(E1FORGE_REGISTRY_SOURCE)) return E1FORGE_REGISTRY_SOURCE;
#endif
#ifdef E1FORGE_REGISTRY_INSTALLED
  return E1FORGE_REGISTRY_INSTALLED;
#else
  return "inequalities.registry";
#endif
}

InequalityCert certify_entry(const RegistryEntry& entry, const CertifyOptions& opts) {
  InequalityCert cert = certify(entry.lhs, entry.rel, entry.rhs, parse_frange(entry.range), opts);
  cert.id = entry.id;
  cert.anchor = entry.anchor;
  cert.clear_power = entry.clear_power;
  return cert;
}

std::vector<InequalityCert> certify_all(const std::vector<RegistryEntry>& entries, unsigned threads,
                                        const CertifyOptions& opts) {
  std::vector<InequalityCert> out(entries.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(entries.size());
  auto worker = [&]() {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        out[i] = certify_entry(entries[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace e1forge::bounds
