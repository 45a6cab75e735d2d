#include "e1forge/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <random>
#include <regex>
#include <thread>
#include <unordered_set>

#include "e1forge/error.hpp"

namespace e1forge::oracle {
namespace {

constexpr unsigned kMaxEntries = 64;
using Raw = std::array<Elem, kMaxEntries>;

// Matrix arithmetic on raw row-major arrays with a multiplication table for
// small fields.
class Ops {
 public:
  Ops(const FieldSpec& k, unsigned d) : k_(&k), d_(d), n_(k.size()) {
    if (n_ <= 256) {
      tab_.resize(static_cast<std::size_t>(n_) * n_);
      for (Elem a = 0; a < n_; ++a) {
        for (Elem b = 0; b < n_; ++b) tab_[a * n_ + b] = k.mul(a, b);
      }
    }
  }

  Elem mul(Elem a, Elem b) const { return tab_.empty() ? k_->mul(a, b) : tab_[a * n_ + b]; }

  void matmul(const Elem* a, const Elem* b, Elem* out) const {
    for (unsigned i = 0; i < d_; ++i) {
      for (unsigned j = 0; j < d_; ++j) {
        Elem s = 0;
        for (unsigned l = 0; l < d_; ++l) s ^= mul(a[i * d_ + l], b[l * d_ + j]);
        out[i * d_ + j] = s;
      }
    }
  }

  bool equal(const Elem* a, const Elem* b) const { return std::equal(a, a + d_ * d_, b); }

  bool is_identity(const Elem* a) const {
    for (unsigned i = 0; i < d_; ++i) {
      for (unsigned j = 0; j < d_; ++j) {
        if (a[i * d_ + j] != (i == j ? 1U : 0U)) return false;
      }
    }
    return true;
  }

  bool is_scalar(const Elem* a) const {
    for (unsigned i = 0; i < d_; ++i) {
      for (unsigned j = 0; j < d_; ++j) {
        if (i == j ? a[i * d_ + j] != a[0] : a[i * d_ + j] != 0) return false;
      }
    }
    return a[0] != 0;
  }

  // a^e by square and multiply (e >= 1).
  void pow(const Elem* a, std::uint64_t e, Elem* out) const {
    Raw base{};
    Raw acc{};
    Raw tmp{};
    std::copy(a, a + d_ * d_, base.begin());
    bool have = false;
    while (e != 0) {
      if (e & 1U) {
        if (have) {
          matmul(acc.data(), base.data(), tmp.data());
          acc = tmp;
        } else {
          acc = base;
          have = true;
        }
      }
      e >>= 1;
      if (e != 0) {
        matmul(base.data(), base.data(), tmp.data());
        base = tmp;
      }
    }
    std::copy(acc.begin(), acc.begin() + d_ * d_, out);
  }

  unsigned dim() const { return d_; }
  const FieldSpec& field() const { return *k_; }

 private:
  const FieldSpec* k_;
  unsigned d_;
  std::uint32_t n_;
  std::vector<Elem> tab_;
};

void decode(std::uint64_t key, unsigned w, unsigned entries, Elem* out) {
  const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
  for (unsigned i = 0; i < entries; ++i) out[i] = static_cast<Elem>((key >> (w * i)) & mask);
}

std::uint64_t encode(const Elem* m, unsigned w, unsigned entries) {
  std::uint64_t key = 0;
  for (unsigned i = 0; i < entries; ++i) key |= static_cast<std::uint64_t>(m[i]) << (w * i);
  return key;
}

// Runs body(i) for i in [0, n) on `threads` workers; rethrows the first error.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  constexpr std::size_t kChunk = 1024;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>((n + kChunk - 1) / kChunk)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<Elem> center_scalars(const FieldSpec& k, int epsilon) {
  std::vector<Elem> z;
  const std::uint64_t qe = epsilon == 1 ? k.q() - 1 : k.q() + 1;
  for (Elem a = 1; a < k.size(); ++a) {
    if (k.pow(a, static_cast<std::int64_t>(qe)) == 1) z.push_back(a);
  }
  return z;
}

void require_keyable(const FieldSpec& k, unsigned d) {
  if (d == 0) throw DomainError("matrix dimension must be positive");
  if (!linalg::keyable(k, d)) throw DomainError("d^2 * field degree exceeds 64 bits");
}

}  // namespace

bool GroupDescriptor::projective() const {
  return kind == bounds::GroupKind::PGL || kind == bounds::GroupKind::PGU;
}

std::string GroupDescriptor::to_string() const {
  return bounds::to_string(kind) + "_" + std::to_string(d) + "(" + std::to_string(q) + ")";
}

GroupDescriptor parse_group_descriptor(std::string_view text) {
  static const std::regex re(R"(\s*([A-Za-z]+)_?(\d+)\((\d+)\)\s*)");
  std::cmatch m;
  if (!std::regex_match(text.data(), text.data() + text.size(), m, re)) {
    throw ParseError("bad group descriptor '" + std::string(text) + "', expected e.g. GU_3(2)");
  }
  const bounds::GroupKind kind = bounds::parse_group_kind(m[1].str());
  if (kind == bounds::GroupKind::SL || kind == bounds::GroupKind::SU) {
    throw DomainError("the oracle supports GL, GU, PGL and PGU");
  }
  const unsigned long d = std::stoul(m[2].str());
  const unsigned long long q = std::stoull(m[3].str());
  gf2k::log2_exact(q);
  return {kind, static_cast<unsigned>(d), q};
}

BigInt GroupEnum::formula_order() const { return bounds::group_order(desc_.kind, desc_.d, desc_.q).value; }

Matrix GroupEnum::element(std::size_t i) const {
  if (i >= size()) throw DomainError("element index out of range");
  return Matrix(*field_, d_, std::vector<Elem>(raw(i), raw(i) + d_ * d_));
}

std::uint64_t GroupEnum::key_of(const Elem* m) const { return encode(m, field_->degree(), d_ * d_); }

std::uint64_t GroupEnum::normalized_key(const Elem* m) const {
  Elem lead = 0;
  for (unsigned i = 0; i < d_ && lead == 0; ++i) lead = m[i * d_];
  if (lead == 0) throw DomainError("normalized_key: first column is zero");
  const Elem s = field_->inv(lead);
  Raw tmp{};
  for (unsigned i = 0; i < d_ * d_; ++i) tmp[i] = field_->mul(m[i], s);
  return key_of(tmp.data());
}

std::size_t GroupEnum::find(const Matrix& s) const {
  if (&s.field() != field_ || s.dim() != d_) return size();
  const std::uint64_t key = projective() ? normalized_key(s.entries().data()) : key_of(s.entries().data());
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return size();
  return static_cast<std::size_t>(it - keys_.begin());
}

std::size_t GroupEnum::inverse_index(std::size_t i) const {
  std::call_once(inverse_->once, [this] {
    std::vector<std::uint32_t> inv(size());
    parallel_for(size(), std::max(1U, std::thread::hardware_concurrency()), [&](std::size_t j) {
      const std::size_t k = find(element(j).inverse());
      if (k == size()) throw Error("group is not closed under inverses");
      inv[j] = static_cast<std::uint32_t>(k);
    });
    inverse_->index = std::move(inv);
  });
  return inverse_->index[i];
}

GroupEnum build_group(const GroupDescriptor& desc, const FieldSpec& field, std::vector<std::uint64_t> keys) {
  GroupEnum g;
  g.desc_ = desc;
  g.field_ = &field;
  g.d_ = desc.d;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  g.keys_ = std::move(keys);
  const unsigned n = desc.d * desc.d;
  g.data_.resize(g.keys_.size() * n);
  for (std::size_t i = 0; i < g.keys_.size(); ++i) decode(g.keys_[i], field.degree(), n, g.data_.data() + i * n);
  g.center_ = center_scalars(field, desc.epsilon());
  return g;
}

GroupEnum enumerate_gl_over(const FieldSpec& field, unsigned d, std::uint64_t budget) {
  require_keyable(field, d);
  const BigInt expected = bounds::gl_order(d, BigInt(field.size()));
  if (expected > budget) {
    throw BudgetExceeded("|GL_" + std::to_string(d) + "(" + std::to_string(field.size()) + ")| = " +
                         to_decimal(expected) + " exceeds the budget " + std::to_string(budget));
  }
  const unsigned w = field.degree();
  const std::uint64_t vectors = std::uint64_t{1} << (w * d);
  const unsigned row_bits = w * d;
  std::vector<std::uint64_t> keys;
  keys.reserve(static_cast<std::size_t>(expected));

  auto scale_row = [&](std::uint64_t row, Elem c) {
    std::uint64_t out = 0;
    for (unsigned j = 0; j < d; ++j) {
      const Elem e = static_cast<Elem>((row >> (w * j)) & ((std::uint64_t{1} << w) - 1));
      out |= static_cast<std::uint64_t>(field.mul(e, c)) << (w * j);
    }
    return out;
  };

  // span[level] lists the vectors spanned by the first `level` rows.
  std::vector<std::vector<std::uint64_t>> span(d + 1);
  span[0] = {0};
  std::vector<std::uint8_t> in_span(vectors, 0);
  in_span[0] = 1;
  auto extend = [&](auto&& self, unsigned level, std::uint64_t key) -> void {
    if (level == d) {
      keys.push_back(key);
      return;
    }
    for (std::uint64_t v = 1; v < vectors; ++v) {
      if (in_span[v]) continue;
      auto& next = span[level + 1];
      next.clear();
      for (Elem c = 0; c < field.size(); ++c) {
        const std::uint64_t cv = scale_row(v, c);
        for (std::uint64_t s : span[level]) next.push_back(s ^ cv);
      }
      for (std::uint64_t s : next) in_span[s] = 1;
      self(self, level + 1, key | (v << (row_bits * level)));
      for (std::uint64_t s : next) in_span[s] = 0;
      for (std::uint64_t s : span[level]) in_span[s] = 1;
    }
  };
  extend(extend, 0, 0);
  const GroupDescriptor desc{bounds::GroupKind::GL, d, field.size()};
  GroupEnum g = build_group(desc, field, std::move(keys));
  if (BigInt(g.size()) != expected) throw Error("GL enumeration count disagrees with the order formula");
  return g;
}

GroupEnum enumerate_gl(unsigned d, std::uint64_t q, std::uint64_t budget) {
  return enumerate_gl_over(gf2k::make_field(gf2k::log2_exact(q), 1), d, budget);
}

bool preserves_hermitian_form(const Matrix& m, std::uint64_t q) {
  const FieldSpec& k = m.field();
  if (k.delta() != 2 || k.q() != q) throw DomainError("Hermitian form needs a matrix over GF(q^2)");
  const Matrix j = Matrix::antidiagonal_ones(k, m.dim());
  return m.transpose() * j * m.frobenius(k.f()) == j;
}

namespace {

GroupEnum gu_by_filter(unsigned d, std::uint64_t q, const FieldSpec& k, std::uint64_t budget) {
  const GroupEnum gl = enumerate_gl_over(k, d, budget);
  std::vector<std::uint64_t> keys;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    if (preserves_hermitian_form(gl.element(i), q)) keys.push_back(gl.keys()[i]);
  }
  return build_group({bounds::GroupKind::GU, d, q}, k, std::move(keys));
}

// Form-preserving unitriangular and diagonal matrices.
std::vector<std::uint64_t> gu_candidates(unsigned d, std::uint64_t q, const FieldSpec& k, std::uint64_t budget) {
  std::vector<std::uint64_t> out;
  const unsigned free_slots = d * (d - 1) / 2;
  const BigInt tri = ipow(BigInt(k.size()), free_slots);
  const BigInt diag = ipow(BigInt(k.unit_order()), d);
  if (2 * tri + diag > budget) throw BudgetExceeded("too many closure generator candidates");
  const unsigned w = k.degree();
  for (int lower = 0; lower < 2; ++lower) {
    for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(tri); ++idx) {
      Matrix m = Matrix::identity(k, d);
      std::uint64_t x = idx;
      for (unsigned i = 0; i < d; ++i) {
        for (unsigned j = i + 1; j < d; ++j) {
          const Elem e = static_cast<Elem>(x & ((std::uint64_t{1} << w) - 1));
          x >>= w;
          if (lower) {
            m.set(j, i, e);
          } else {
            m.set(i, j, e);
          }
        }
      }
      if (preserves_hermitian_form(m, q)) out.push_back(m.key());
    }
  }
  std::vector<Elem> entries(d, 1);
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(diag); ++idx) {
    std::uint64_t x = idx;
    for (unsigned i = 0; i < d; ++i) {
      entries[i] = static_cast<Elem>(x % k.unit_order()) + 1;
      x /= k.unit_order();
    }
    const Matrix m = Matrix::diagonal(k, entries);
    if (preserves_hermitian_form(m, q)) out.push_back(m.key());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupEnum gu_by_closure(unsigned d, std::uint64_t q, const FieldSpec& k, const EnumOptions& opts) {
  const BigInt target = bounds::gu_order(d, BigInt(q));
  if (target > opts.budget) throw BudgetExceeded("|GU| = " + to_decimal(target) + " exceeds the budget");
  const auto expected = static_cast<std::size_t>(target);
  std::vector<std::uint64_t> pool = gu_candidates(d, q, k, opts.budget);
  std::mt19937_64 rng(opts.seed);
  std::shuffle(pool.begin(), pool.end(), rng);

  const Ops ops(k, d);
  const unsigned w = k.degree();
  const unsigned n = d * d;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> elements;
  std::vector<Raw> gens;
  const Matrix one = Matrix::identity(k, d);
  seen.insert(one.key());
  elements.push_back(one.key());

  Raw a{};
  Raw b{};
  Raw c{};
  // Right-multiplies queued elements by every generator until no new element
  // appears. `start` marks the first element not yet multiplied by all gens.
  auto close = [&](std::size_t start) {
    for (std::size_t i = start; i < elements.size(); ++i) {
      decode(elements[i], w, n, a.data());
      for (const Raw& g : gens) {
        ops.matmul(a.data(), g.data(), c.data());
        const std::uint64_t key = encode(c.data(), w, n);
        if (seen.insert(key).second) {
          elements.push_back(key);
          if (elements.size() > expected) throw Error("closure exceeded the order of GU");
        }
      }
    }
  };

  for (std::uint64_t cand : pool) {
    if (elements.size() == expected) break;
    if (seen.count(cand) != 0) continue;
    decode(cand, w, n, b.data());
    gens.push_back(b);
    const std::size_t old = elements.size();
    // Existing elements times the new generator, then full closure of what is new.
    for (std::size_t i = 0; i < old; ++i) {
      decode(elements[i], w, n, a.data());
      ops.matmul(a.data(), b.data(), c.data());
      const std::uint64_t key = encode(c.data(), w, n);
      if (seen.insert(key).second) elements.push_back(key);
    }
    close(old);
  }
  if (elements.size() != expected) {
    throw Error("closure stopped at " + std::to_string(elements.size()) + " elements, expected " +
                to_decimal(target));
  }
  return build_group({bounds::GroupKind::GU, d, q}, k, std::move(elements));
}

}  // namespace

GroupEnum enumerate_gu(unsigned d, std::uint64_t q, const EnumOptions& opts) {
  const FieldSpec& k = gf2k::make_field(gf2k::log2_exact(q), 2);
  require_keyable(k, d);
  const BigInt target = bounds::gu_order(d, BigInt(q));
  if (target > opts.budget) throw BudgetExceeded("|GU| = " + to_decimal(target) + " exceeds the budget");
  GuMethod method = opts.gu_method;
  if (method == GuMethod::Auto) {
    method = bounds::gl_order(d, BigInt(k.size())) <= opts.budget ? GuMethod::Filter : GuMethod::Closure;
  }
  GroupEnum g = method == GuMethod::Filter ? gu_by_filter(d, q, k, opts.budget) : gu_by_closure(d, q, k, opts);
  if (BigInt(g.size()) != target) throw Error("GU enumeration count disagrees with the order formula");
  return g;
}

GroupEnum quotient_pgl(const GroupEnum& g) {
  if (g.projective()) throw DomainError("quotient_pgl: group is already projective");
  const int eps = g.descriptor().epsilon();
  std::vector<std::pair<std::uint64_t, std::size_t>> norm(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) norm[i] = {g.normalized_key(g.raw(i)), i};
  std::stable_sort(norm.begin(), norm.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  GroupEnum p;
  p.desc_ = {eps == 1 ? bounds::GroupKind::PGL : bounds::GroupKind::PGU, g.dim(), g.descriptor().q};
  p.field_ = &g.field();
  p.d_ = g.dim();
  p.center_ = g.center();
  p.parent_ = std::make_shared<const GroupEnum>(g);
  const unsigned n = g.dim() * g.dim();
  for (std::size_t i = 0; i < norm.size(); ++i) {
    if (i != 0 && norm[i].first == norm[i - 1].first) continue;
    p.keys_.push_back(norm[i].first);
    const Elem* src = g.raw(norm[i].second);
    p.data_.insert(p.data_.end(), src, src + n);
  }
  if (BigInt(p.size()) * BigInt(g.center().size()) != BigInt(g.size())) {
    throw Error("central quotient has the wrong number of classes");
  }
  return p;
}

GroupEnum enumerate(const GroupDescriptor& desc, const EnumOptions& opts) {
  using bounds::GroupKind;
  switch (desc.kind) {
    case GroupKind::GL:
      return enumerate_gl(desc.d, desc.q, opts.budget);
    case GroupKind::GU:
      return enumerate_gu(desc.d, desc.q, opts);
    case GroupKind::PGL:
      return quotient_pgl(enumerate_gl(desc.d, desc.q, opts.budget));
    case GroupKind::PGU:
      return quotient_pgl(enumerate_gu(desc.d, desc.q, opts));
    default:
      throw DomainError("the oracle supports GL, GU, PGL and PGU");
  }
}

namespace {

const Elem* checked_member(const GroupEnum& g, const Matrix& s, const char* what) {
  if (!g.contains(s)) throw DomainError(std::string(what) + ": matrix is not in " + g.descriptor().to_string());
  return s.entries().data();
}

// Same element, or same class modulo scalars when projective.
bool same(const GroupEnum& g, const Ops& ops, const Elem* a, const Elem* b) {
  return g.projective() ? g.normalized_key(a) == g.normalized_key(b) : ops.equal(a, b);
}

// Number of x with x a = b x.
std::uint64_t count_intertwiners(const GroupEnum& g, const Elem* a, const Elem* b, unsigned threads, bool stop_at_one) {
  const Ops ops(g.field(), g.dim());
  std::atomic<std::uint64_t> count{0};
  std::atomic<bool> found{false};
  parallel_for(g.size(), threads, [&](std::size_t i) {
    if (stop_at_one && found.load(std::memory_order_relaxed)) return;
    Raw xa{};
    Raw bx{};
    ops.matmul(g.raw(i), a, xa.data());
    ops.matmul(b, g.raw(i), bx.data());
    if (same(g, ops, xa.data(), bx.data())) {
      count.fetch_add(1, std::memory_order_relaxed);
      found = true;
    }
  });
  return count.load();
}

}  // namespace

BigInt brute_centralizer(const GroupEnum& g, const Matrix& s, unsigned threads) {
  const Elem* a = checked_member(g, s, "brute_centralizer");
  return BigInt(count_intertwiners(g, a, a, threads, false));
}

bool brute_is_real(const GroupEnum& g, const Matrix& s, unsigned threads) {
  const Elem* a = checked_member(g, s, "brute_is_real");
  const Matrix inv = s.inverse();
  return count_intertwiners(g, a, inv.entries().data(), threads, true) != 0;
}

bool brute_conjugate(const GroupEnum& g, const Matrix& s, const Matrix& t, unsigned threads) {
  const Elem* a = checked_member(g, s, "brute_conjugate");
  const Elem* b = checked_member(g, t, "brute_conjugate");
  return count_intertwiners(g, a, b, threads, true) != 0;
}

std::vector<std::size_t> conjugacy_class(const GroupEnum& g, const Matrix& s, unsigned threads) {
  const Elem* a = checked_member(g, s, "conjugacy_class");
  g.inverse_index(0);
  const Ops ops(g.field(), g.dim());
  std::vector<std::uint8_t> hit(g.size(), 0);
  parallel_for(g.size(), threads, [&](std::size_t i) {
    Raw ha{};
    Raw conj{};
    ops.matmul(g.raw(i), a, ha.data());
    ops.matmul(ha.data(), g.raw(g.inverse_index(i)), conj.data());
    const std::uint64_t key = g.projective() ? g.normalized_key(conj.data()) : g.key_of(conj.data());
    const auto it = std::lower_bound(g.keys().begin(), g.keys().end(), key);
    if (it == g.keys().end() || *it != key) throw Error("conjugate left the group");
    hit[static_cast<std::size_t>(it - g.keys().begin())] = 1;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) out.push_back(i);
  }
  return out;
}

void CheckTally::record(bool ok, const std::string& what, std::uint64_t count) {
  tested += count;
  if (ok) {
    passed += count;
  } else if (failures.size() < 5) {
    failures.push_back(what);
  }
}

bool SweepReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.ok(); });
}

const CheckTally* SweepReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace e1forge::oracle
