#include "e1forge/autos.hpp"

#include <numeric>

#include "e1forge/error.hpp"

namespace e1forge::autos {

TorusModel TorusModel::make(unsigned d, std::uint64_t q, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw DomainError("epsilon must be +1 or -1");
  if (d < 2) throw DomainError("torus model requires d >= 2");
  const unsigned f = gf2k::log2_exact(q);
  const FieldSpec& k = gf2k::make_field(f, epsilon == 1 ? 1 : 2);
  return TorusModel{epsilon, d, q, f, &k};
}

std::vector<Elem> TorusModel::normalize(std::vector<Elem> t) const {
  if (t.size() != d) throw DomainError("diagonal has " + std::to_string(t.size()) + " entries, expected " + std::to_string(d));
  for (Elem e : t) {
    if (e == 0 || !field->contains(e)) throw DomainError("diagonal entries must be nonzero elements of " + field->descriptor());
  }
  const Elem s = field->inv(t[0]);
  for (Elem& e : t) e = field->mul(e, s);
  return t;
}

bool TorusModel::in_torus(const std::vector<Elem>& t) const {
  if (t.size() != d || t[0] != 1) return false;
  for (Elem e : t) {
    if (e == 0 || !field->contains(e)) return false;
  }
  if (epsilon == 1) return true;
  // u_i u_{d+1-i}^q is the same constant for every i (that constant is u_d).
  const Elem c = field->bar(t[d - 1]);
  for (unsigned i = 0; i < d; ++i) {
    if (field->mul(t[i], field->bar(t[d - 1 - i])) != c) return false;
  }
  return true;
}

std::vector<Elem> TorusModel::multiply(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
  std::vector<Elem> r(d);
  for (unsigned i = 0; i < d; ++i) r[i] = field->mul(a[i], b[i]);
  return r;
}

std::vector<Elem> TorusModel::power(const std::vector<Elem>& a, std::int64_t e) const {
  std::vector<Elem> r(d);
  for (unsigned i = 0; i < d; ++i) r[i] = field->pow(a[i], e);
  return r;
}

std::uint64_t TorusModel::element_order(const std::vector<Elem>& t) const {
  std::uint64_t o = 1;
  for (Elem e : normalize(t)) o = std::lcm(o, static_cast<std::uint64_t>(field->order(e)));
  return o;
}

std::vector<std::vector<Elem>> TorusModel::torus_elements() const {
  std::vector<std::vector<Elem>> out;
  const std::uint64_t units = field->unit_order();
  std::uint64_t total = 1;
  for (unsigned i = 1; i < d; ++i) {
    total *= units;
    if (total > 50'000'000) throw BudgetExceeded("torus too large to enumerate");
  }
  std::vector<Elem> t(d, 1);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (unsigned i = d - 1; i >= 1; --i) {
      t[i] = static_cast<Elem>(x % units) + 1;
      x /= units;
    }
    if (in_torus(t)) out.push_back(t);
  }
  return out;
}

AutoWord make_word(const TorusModel& m, std::vector<Elem> t, unsigned graph_exp, unsigned field_exp) {
  AutoWord w;
  w.t = m.normalize(std::move(t));
  if (!m.in_torus(w.t)) throw DomainError("diagonal is not in the torus of the group");
  if (m.epsilon == 1) {
    w.graph_exp = graph_exp % 2;
    w.field_exp = field_exp % m.f;
  } else {
    w.graph_exp = 0;
    w.field_exp = (field_exp + (graph_exp % 2) * m.f) % (2 * m.f);
  }
  return w;
}

AutoWord identity_word(const TorusModel& m) { return AutoWord{m.one(), 0, 0}; }

std::vector<Elem> apply_mu_diagonal(const TorusModel& m, unsigned graph_exp, unsigned field_exp,
                                    const std::vector<Elem>& t) {
  std::vector<Elem> r = t;
  if (graph_exp % 2 == 1) {
    if (m.epsilon == -1) {
      field_exp += m.f;
    } else {
      for (unsigned i = 0; i < m.d; ++i) r[i] = m.field->inv(t[m.d - 1 - i]);
      r = m.normalize(std::move(r));
    }
  }
  for (Elem& e : r) e = m.field->frobenius(e, field_exp % m.field_period());
  return m.normalize(std::move(r));
}

AutoWord compose(const TorusModel& m, const AutoWord& a, const AutoWord& b) {
  AutoWord r;
  r.t = m.normalize(m.multiply(a.t, apply_mu_diagonal(m, a.graph_exp, a.field_exp, b.t)));
  r.graph_exp = (a.graph_exp + b.graph_exp) % 2;
  r.field_exp = (a.field_exp + b.field_exp) % m.field_period();
  return r;
}

AutoWord twisted_norm(const TorusModel& m, const AutoWord& beta, std::uint64_t l) {
  if (l == 0) throw DomainError("twisted_norm: l must be positive");
  std::vector<Elem> norm = m.one();
  std::vector<Elem> term = beta.t;  // mu^i(t)
  for (std::uint64_t i = 0; i < l; ++i) {
    norm = m.multiply(norm, term);
    term = apply_mu_diagonal(m, beta.graph_exp, beta.field_exp, term);
  }
  AutoWord r;
  r.t = m.normalize(std::move(norm));
  r.graph_exp = static_cast<unsigned>((beta.graph_exp * l) % 2);
  r.field_exp = static_cast<unsigned>((beta.field_exp * l) % m.field_period());
  return r;
}

AutoWord naive_power(const TorusModel& m, const AutoWord& beta, std::uint64_t l) {
  if (l == 0) throw DomainError("naive_power: l must be positive");
  AutoWord r = beta;
  for (std::uint64_t i = 1; i < l; ++i) r = compose(m, r, beta);
  return r;
}

bool is_identity(const AutoWord& w) {
  if (w.graph_exp != 0 || w.field_exp != 0) return false;
  for (Elem e : w.t) {
    if (e != 1) return false;
  }
  return true;
}

std::uint64_t mu_order(const TorusModel& m, unsigned graph_exp, unsigned field_exp) {
  const std::uint64_t period = m.field_period();
  std::uint64_t b = field_exp % period;
  if (m.epsilon == -1 && graph_exp % 2 == 1) b = (b + m.f) % period;
  const std::uint64_t field_order = period / std::gcd(period, b);
  const std::uint64_t graph_order = (m.epsilon == 1 && graph_exp % 2 == 1) ? 2 : 1;
  return std::lcm(field_order, graph_order);
}

std::uint64_t auto_order(const TorusModel& m, const AutoWord& beta) {
  constexpr std::uint64_t kLimit = 100'000'000;
  AutoWord cur = beta;
  for (std::uint64_t n = 1; n <= kLimit; ++n) {
    if (is_identity(cur)) return n;
    cur = compose(m, cur, beta);
  }
  throw Error("auto_order: no identity within the iteration limit");
}

AutoWord random_word(const TorusModel& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> unit(1, m.field->unit_order());
  std::vector<Elem> t(m.d, 1);
  if (m.epsilon == 1) {
    for (unsigned i = 1; i < m.d; ++i) t[i] = unit(rng);
  } else {
    // Free choice of u_d in GF(q)^* and of the first half; the rest follows.
    const Elem g = m.field->primitive();
    const std::uint32_t qp1 = static_cast<std::uint32_t>(m.q + 1);
    std::uniform_int_distribution<std::uint32_t> sub(0, static_cast<std::uint32_t>(m.q - 2));
    const Elem c = m.field->pow(g, static_cast<std::int64_t>(qp1) * sub(rng));
    t[m.d - 1] = c;
    for (unsigned i = 1; i < m.d - 1 - i; ++i) t[i] = unit(rng);
    for (unsigned i = 1; i < m.d - 1; ++i) {
      const unsigned j = m.d - 1 - i;
      if (i < j) continue;
      if (i == j) {
        // u^{q+1} = c: pick a norm-c element.
        const Elem base = m.field->pow(g, m.field->log(c) / qp1);
        std::uniform_int_distribution<std::uint32_t> kern(0, qp1 - 1);
        const Elem z = m.field->pow(g, static_cast<std::int64_t>(m.q - 1) * kern(rng));
        t[i] = m.field->mul(base, z);
      } else {
        t[i] = m.field->bar(m.field->div(c, t[j]));
      }
    }
  }
  std::uniform_int_distribution<unsigned> graph(0, m.graph_period() - 1);
  std::uniform_int_distribution<unsigned> field(0, m.field_period() - 1);
  const unsigned a = graph(rng);
  return make_word(m, std::move(t), a, field(rng));
}

bool is_power_of(const TorusModel& m, const std::vector<Elem>& x, const std::vector<Elem>& t) {
  const std::uint64_t n = m.element_order(t);
  const std::vector<Elem> target = m.normalize(x);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (m.normalize(m.power(t, static_cast<std::int64_t>(k))) == target) return true;
  }
  return false;
}

namespace {

bool is_three_power(std::uint64_t n) {
  while (n % 3 == 0) n /= 3;
  return n == 1;
}

}  // namespace

std::vector<std::pair<char, bool>> torus_order_verdicts(const TorusModel& m, const AutoWord& beta) {
  std::vector<std::pair<char, bool>> out;
  const std::uint64_t qe = m.epsilon == 1 ? m.q - 1 : m.q + 1;
  if (qe % 3 != 0) return out;
  const std::uint64_t order = auto_order(m, beta);
  const std::uint64_t df = static_cast<std::uint64_t>(m.delta()) * m.f;
  const std::uint64_t t_order = m.element_order(beta.t);
  if (t_order == 1) out.emplace_back('a', df % order == 0);
  if (is_three_power(t_order)) out.emplace_back('b', (3 * df) % order == 0);
  if (m.epsilon == -1 && mu_order(m, beta.graph_exp, beta.field_exp) % 2 == 0 &&
      m.normalize(m.power(beta.t, static_cast<std::int64_t>(m.q + 1))) == m.one()) {
    out.emplace_back('c', (2ULL * m.f) % order == 0);
  }
  return out;
}

bool TorusOrderReport::ok() const {
  for (const auto& c : checks) {
    if (c.passed != c.tested) return false;
  }
  return true;
}

TorusOrderReport verify_torus_orders(unsigned d, std::uint64_t q, int epsilon) {
  const TorusModel m = TorusModel::make(d, q, epsilon);
  if ((epsilon == 1 ? q - 1 : q + 1) % 3 != 0) throw DomainError("verify_torus_orders requires 3 | q - eps");
  if (d > 4 || m.f * m.delta() > 6) throw DomainError("verify_torus_orders requires d <= 4 and f delta <= 6");
  TorusOrderReport report{epsilon, d, q};
  report.checks = {{'a', "t = 1: |beta| divides delta f"},
                   {'b', "t a 3-element: |beta| divides 3 delta f"},
                   {'c', "eps = -1, |mu| even, t^{q+1} = 1: |beta| divides 2f"}};
  for (const auto& t : m.torus_elements()) {
    for (unsigned a = 0; a < m.graph_period(); ++a) {
      for (unsigned b = 0; b < m.field_period(); ++b) {
        const AutoWord w = make_word(m, t, a, b);
        ++report.words;
        for (const auto& [part, ok] : torus_order_verdicts(m, w)) {
          BoundCheck& check = report.checks[static_cast<std::size_t>(part - 'a')];
          ++check.tested;
          if (ok) {
            ++check.passed;
          } else if (check.violations.size() < 5) {
            check.violations.push_back(to_string(w));
          }
        }
      }
    }
  }
  return report;
}

std::string to_string(const AutoWord& w) {
  std::string s = "ad_diag(";
  for (std::size_t i = 0; i < w.t.size(); ++i) {
    if (i != 0) s += ",";
    s += std::to_string(w.t[i]);
  }
  s += ") iota^" + std::to_string(w.graph_exp) + " phi^" + std::to_string(w.field_exp);
  return s;
}

}  // namespace e1forge::autos
