#include "e1forge/matrix.hpp"

#include <utility>

#include "e1forge/error.hpp"

namespace e1forge::linalg {

Matrix::Matrix(const FieldSpec& field, unsigned d) : field_(&field), d_(d), a_(static_cast<std::size_t>(d) * d, 0) {}

Matrix::Matrix(const FieldSpec& field, unsigned d, std::vector<Elem> entries)
    : field_(&field), d_(d), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(d) * d) throw DomainError("matrix: wrong number of entries");
  for (Elem e : a_) {
    if (!field.contains(e)) throw DomainError("matrix entry out of range for " + field.descriptor());
  }
}

Matrix Matrix::identity(const FieldSpec& field, unsigned d) {
  Matrix m(field, d);
  for (unsigned i = 0; i < d; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::diagonal(const FieldSpec& field, const std::vector<Elem>& diag) {
  const auto d = static_cast<unsigned>(diag.size());
  Matrix m(field, d);
  for (unsigned i = 0; i < d; ++i) m.set(i, i, diag[i]);
  return m;
}

Matrix Matrix::antidiagonal_ones(const FieldSpec& field, unsigned d) {
  Matrix m(field, d);
  for (unsigned i = 0; i < d; ++i) m.set(i, d - 1 - i, 1);
  return m;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.field_ != y.field_ || x.d_ != y.d_) throw DomainError("matrix shape or field mismatch");
  const auto& k = *x.field_;
  const unsigned d = x.d_;
  Matrix r(k, d);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned l = 0; l < d; ++l) {
      const Elem a = x.a_[i * d + l];
      if (a == 0) continue;
      for (unsigned j = 0; j < d; ++j) r.a_[i * d + j] ^= k.mul(a, y.a_[l * d + j]);
    }
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(*field_, d_);
  for (unsigned i = 0; i < d_; ++i) {
    for (unsigned j = 0; j < d_; ++j) r.set(j, i, at(i, j));
  }
  return r;
}

Matrix Matrix::frobenius(unsigned power) const {
  Matrix r = *this;
  for (Elem& e : r.a_) e = field_->frobenius(e, power);
  return r;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix r = *this;
  for (Elem& e : r.a_) e = field_->mul(e, c);
  return r;
}

Matrix Matrix::pow(std::uint64_t n) const {
  Matrix r = identity(*field_, d_);
  Matrix b = *this;
  while (n != 0) {
    if (n & 1U) r = r * b;
    n >>= 1;
    if (n != 0) b = b * b;
  }
  return r;
}

Elem Matrix::det() const {
  const auto& k = *field_;
  std::vector<Elem> m = a_;
  const unsigned d = d_;
  Elem det = 1;
  for (unsigned c = 0; c < d; ++c) {
    unsigned p = c;
    while (p < d && m[p * d + c] == 0) ++p;
    if (p == d) return 0;
    if (p != c) {
      for (unsigned j = 0; j < d; ++j) std::swap(m[p * d + j], m[c * d + j]);
    }
    const Elem piv = m[c * d + c];
    det = k.mul(det, piv);
    const Elem inv = k.inv(piv);
    for (unsigned r = c + 1; r < d; ++r) {
      const Elem f = k.mul(m[r * d + c], inv);
      if (f == 0) continue;
      for (unsigned j = c; j < d; ++j) m[r * d + j] ^= k.mul(f, m[c * d + j]);
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  const auto& k = *field_;
  const unsigned d = d_;
  std::vector<Elem> m = a_;
  Matrix inv = identity(k, d);
  auto& v = inv.a_;
  for (unsigned c = 0; c < d; ++c) {
    unsigned p = c;
    while (p < d && m[p * d + c] == 0) ++p;
    if (p == d) throw DomainError("matrix is singular");
    if (p != c) {
      for (unsigned j = 0; j < d; ++j) {
        std::swap(m[p * d + j], m[c * d + j]);
        std::swap(v[p * d + j], v[c * d + j]);
      }
    }
    const Elem pinv = k.inv(m[c * d + c]);
    for (unsigned j = 0; j < d; ++j) {
      m[c * d + j] = k.mul(m[c * d + j], pinv);
      v[c * d + j] = k.mul(v[c * d + j], pinv);
    }
    for (unsigned r = 0; r < d; ++r) {
      if (r == c) continue;
      const Elem f = m[r * d + c];
      if (f == 0) continue;
      for (unsigned j = 0; j < d; ++j) {
        m[r * d + j] ^= k.mul(f, m[c * d + j]);
        v[r * d + j] ^= k.mul(f, v[c * d + j]);
      }
    }
  }
  return inv;
}

bool Matrix::is_identity() const { return *this == identity(*field_, d_); }

bool Matrix::is_scalar() const {
  for (unsigned i = 0; i < d_; ++i) {
    for (unsigned j = 0; j < d_; ++j) {
      if (i != j && at(i, j) != 0) return false;
    }
    if (at(i, i) != at(0, 0)) return false;
  }
  return true;
}

poly::MonicPoly Matrix::charpoly() const {
  const auto& k = *field_;
  const unsigned n = d_;
  std::vector<Elem> h = a_;
  auto H = [&](unsigned i, unsigned j) -> Elem& { return h[i * n + j]; };
  // Similarity reduction to upper Hessenberg form.
  for (unsigned m = 1; m + 1 < n; ++m) {
    unsigned i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (unsigned j = 0; j < n; ++j) std::swap(H(i, j), H(m, j));
      for (unsigned j = 0; j < n; ++j) std::swap(H(j, i), H(j, m));
    }
    const Elem pinv = k.inv(H(m, m - 1));
    for (unsigned r = m + 1; r < n; ++r) {
      const Elem u = k.mul(H(r, m - 1), pinv);
      if (u == 0) continue;
      for (unsigned j = 0; j < n; ++j) H(r, j) ^= k.mul(u, H(m, j));
      for (unsigned j = 0; j < n; ++j) H(j, m) ^= k.mul(u, H(j, r));
    }
  }
  // p_m = (x + h_mm) p_{m-1} + sum_i (prod of subdiagonal) h_{m-i,m} p_{m-i-1}; 1-based.
  std::vector<poly::Poly> p;
  p.push_back(poly::Poly::constant(k, 1));
  for (unsigned m = 1; m <= n; ++m) {
    poly::Poly pm = poly::Poly::linear(k, H(m - 1, m - 1)) * p[m - 1];
    Elem t = 1;
    for (unsigned i = 1; i < m; ++i) {
      t = k.mul(t, H(m - i, m - i - 1));
      const Elem c = k.mul(t, H(m - i - 1, m - 1));
      if (c != 0) pm = pm + p[m - i - 1].scaled(c);
    }
    p.push_back(std::move(pm));
  }
  return poly::MonicPoly(p[n]);
}

std::uint64_t Matrix::order(std::uint64_t limit) const {
  if (det() == 0) throw DomainError("order of a singular matrix");
  const Matrix id = identity(*field_, d_);
  Matrix cur = *this;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (cur == id) return n;
    cur = cur * *this;
  }
  throw DomainError("matrix order exceeds limit");
}

bool keyable(const FieldSpec& field, unsigned d) {
  return static_cast<std::uint64_t>(d) * d * field.degree() <= 64;
}

std::uint64_t Matrix::key() const {
  if (!keyable(*field_, d_)) throw DomainError("matrix too large for a 64-bit key");
  const unsigned w = field_->degree();
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) key |= static_cast<std::uint64_t>(a_[i]) << (w * i);
  return key;
}

Matrix Matrix::from_key(const FieldSpec& field, unsigned d, std::uint64_t key) {
  if (!keyable(field, d)) throw DomainError("matrix too large for a 64-bit key");
  const unsigned w = field.degree();
  const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
  Matrix m(field, d);
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = static_cast<Elem>((key >> (w * i)) & mask);
  return m;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (unsigned i = 0; i < d_; ++i) {
    if (i != 0) s += ",";
    s += "[";
    for (unsigned j = 0; j < d_; ++j) {
      if (j != 0) s += ",";
      s += std::to_string(at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace e1forge::linalg
