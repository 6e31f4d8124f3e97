#pragma once

// Small square matrices (dimension <= 4) over a finite local ring, and
// symmetric matrices as a checked wrapper.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/ring.hpp"

namespace gwsym {

inline constexpr std::size_t kMaxDim = 4;

class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n) {
    if (n == 0 || n > kMaxDim) throw PreconditionError("matrix dimension must be 1..4");
  }
  SquareMatrix(std::size_t n, std::initializer_list<std::initializer_list<Code>> rows) : SquareMatrix(n) {
    if (rows.size() != n) throw PreconditionError("row count mismatch");
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n) throw PreconditionError("column count mismatch");
      std::size_t j = 0;
      for (Code v : r) (*this)(i, j++) = v;
      ++i;
    }
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static SquareMatrix diagonal(const std::vector<Code>& d) {
    SquareMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t dim() const { return n_; }
  Code& operator()(std::size_t i, std::size_t j) { return e_[i * kMaxDim + j]; }
  Code operator()(std::size_t i, std::size_t j) const { return e_[i * kMaxDim + j]; }

  SquareMatrix transpose() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }
  std::vector<Code> diag() const {
    std::vector<Code> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::array<Code, kMaxDim * kMaxDim> e_{};
};

inline SquareMatrix mat_mul(const Ring& R, const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw PreconditionError("matrix dimension mismatch");
  const std::size_t n = a.dim();
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Code s = 0;
      for (std::size_t k = 0; k < n; ++k) s = R.add(s, R.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

/// P * A * P^T
inline SquareMatrix congruence(const Ring& R, const SquareMatrix& P, const SquareMatrix& A) {
  return mat_mul(R, mat_mul(R, P, A), P.transpose());
}

inline Code determinant(const Ring& R, const SquareMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 1) return m(0, 0);
  // Laplace expansion along the first row; n <= 4
  Code det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    SquareMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cj = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) minor(i - 1, cj++) = m(i, k);
    }
    const Code term = R.mul(m(0, j), determinant(R, minor));
    det = (j % 2 == 0) ? R.add(det, term) : R.sub(det, term);
  }
  return det;
}

inline bool is_invertible(const Ring& R, const SquareMatrix& m) { return R.is_unit(determinant(R, m)); }

/// Entrywise residue in F2, as a bitmask (bit i*n + j).
inline std::uint32_t residue_mask(const SquareMatrix& m) {
  std::uint32_t mask = 0;
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) & 1u) mask |= 1u << (i * n + j);
  return mask;
}

/// Inverse via the adjugate; throws NonUnitError when not invertible.
inline SquareMatrix inverse(const Ring& R, const SquareMatrix& m) {
  const std::size_t n = m.dim();
  const Code idet = R.inv(determinant(R, m));
  if (n == 1) {
    SquareMatrix r(1);
    r(0, 0) = idet;
    return r;
  }
  SquareMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SquareMatrix minor(n - 1);
      std::size_t ri = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (a == i) continue;
        std::size_t cj = 0;
        for (std::size_t b = 0; b < n; ++b)
          if (b != j) minor(ri, cj++) = m(a, b);
        ++ri;
      }
      Code cof = determinant(R, minor);
      if ((i + j) % 2) cof = R.neg(cof);
      inv(j, i) = R.mul(cof, idet);
    }
  return inv;
}

/// Symmetric matrix over a ring; symmetry is enforced at construction.
class SymMatrix {
 public:
  SymMatrix(RingSpec spec, SquareMatrix m) : spec_(spec), m_(m) {
    if (!m_.is_symmetric()) throw PreconditionError("matrix is not symmetric");
  }
  static SymMatrix diagonal(RingSpec spec, const std::vector<Code>& d) {
    return SymMatrix(spec, SquareMatrix::diagonal(d));
  }

  const RingSpec& spec() const { return spec_; }
  std::size_t dim() const { return m_.dim(); }
  const SquareMatrix& matrix() const { return m_; }
  Code operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  bool is_unimodular(const Ring& R) const { return is_invertible(R, m_); }

  bool operator==(const SymMatrix&) const = default;

 private:
  RingSpec spec_;
  SquareMatrix m_;
};

inline std::vector<std::vector<std::string>> to_text(const Ring& R, const SquareMatrix& m) {
  std::vector<std::vector<std::string>> rows(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) rows[i].push_back(R.format(m(i, j)));
  return rows;
}

}  // namespace gwsym
