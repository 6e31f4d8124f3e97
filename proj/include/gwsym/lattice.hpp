#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms over
// arbitrary-precision integers, and finitely generated abelian groups
// presented as Z^k / L for a row lattice L.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gwsym/errors.hpp"

namespace gwsym {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("ragged integer matrix");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void append_row(const IntVector& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw PreconditionError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  // (row a, row b) <- (p*a + q*b, r*a + s*b) with ps - qr = +-1
  void combine_rows(std::size_t a, std::size_t b, const BigInt& p, const BigInt& q,
                    const BigInt& r, const BigInt& s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      BigInt x = (*this)(a, j), y = (*this)(b, j);
      (*this)(a, j) = p * x + q * y;
      (*this)(b, j) = r * x + s * y;
    }
  }
  void combine_cols(std::size_t a, std::size_t b, const BigInt& p, const BigInt& q,
                    const BigInt& r, const BigInt& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
      BigInt x = (*this)(i, a), y = (*this)(i, b);
      (*this)(i, a) = p * x + q * y;
      (*this)(i, b) = r * x + s * y;
    }
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

/// Row vector times matrix.
inline IntVector operator*(const IntVector& x, const IntMatrix& m) {
  if (x.size() != m.rows()) throw PreconditionError("vector-matrix shape mismatch");
  IntVector y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<BigInt, BigInt, BigInt> xgcd(const BigInt& a, const BigInt& b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, BigInt(r0 - q * r1));
    std::tie(s0, s1) = std::make_tuple(s1, BigInt(s0 - q * s1));
    std::tie(t0, t1) = std::make_tuple(t1, BigInt(t0 - q * t1));
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  return {r0, s0, t0};
}

/// Floor-style remainder in [0, |m|).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += (m < 0 ? BigInt(-m) : m);
  return r;
}

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix S;  // rows x cols, diagonal, S(i,i) | S(i+1,i+1), nonnegative
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;

  BigInt diag(std::size_t i) const { return i < S.rows() && i < S.cols() ? S(i, i) : BigInt(0); }
};

/// U * M * V = S with S in Smith normal form. Exact; no modular shortcuts.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm f{IntMatrix::identity(m), M, IntMatrix::identity(n), 0};
  IntMatrix& S = f.S;
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block as pivot
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (!piv || abs(S(i, j)) < abs(S(piv->first, piv->second))))
          piv = {i, j};
    if (!piv) break;
    S.swap_rows(t, piv->first);
    f.U.swap_rows(t, piv->first);
    S.swap_cols(t, piv->second);
    f.V.swap_cols(t, piv->second);

    for (;;) {
      bool dirty = false;
      // clear column t below the pivot with unimodular 2x2 row combinations
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        const BigInt a = S(t, t), b = S(i, t);
        if (b % a == 0) {
          const BigInt q = b / a;
          S.add_row(i, t, -q);
          f.U.add_row(i, t, -q);
        } else {
          auto [g, s, tt] = xgcd(a, b);
          const BigInt ag = a / g, bg = b / g;
          S.combine_rows(t, i, s, tt, -bg, ag);
          f.U.combine_rows(t, i, s, tt, -bg, ag);
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        const BigInt a = S(t, t), b = S(t, j);
        if (b % a == 0) {
          const BigInt q = b / a;
          S.add_col(j, t, -q);
          f.V.add_col(j, t, -q);
        } else {
          auto [g, s, tt] = xgcd(a, b);
          const BigInt ag = a / g, bg = b / g;
          S.combine_cols(t, j, s, tt, -bg, ag);
          f.V.combine_cols(t, j, s, tt, -bg, ag);
          dirty = true;  // column ops may refill column t
        }
      }
      for (std::size_t i = t + 1; i < m && !dirty; ++i)
        if (S(i, t) != 0) dirty = true;
      if (dirty) continue;
      // divisibility: fold any offending row into row t and redo
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      S.add_row(t, *bad, 1);
      f.U.add_row(t, *bad, 1);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      f.U.negate_row(t);
    }
  }
  f.rank = t;
  return f;
}

/// Canonical row Hermite normal form of the lattice spanned by the rows,
/// zero rows dropped. Pivots are positive and entries above a pivot lie in
/// [0, pivot). Two row sets span the same lattice iff their forms are equal.
inline IntMatrix hermite_normal_form(IntMatrix A) {
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (A(i, c) == 0) continue;
      if (A(r, c) == 0) {
        A.swap_rows(r, i);
        continue;
      }
      const BigInt a = A(r, c), b = A(i, c);
      auto [g, s, t] = xgcd(a, b);
      A.combine_rows(r, i, s, t, BigInt(-b / g), BigInt(a / g));
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) A.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      const BigInt q = (A(i, c) - mod_floor(A(i, c), A(r, c))) / A(r, c);
      A.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(0, n);
  for (std::size_t i = 0; i < r; ++i) out.append_row(A.row(i));
  return out;
}

/// Incrementally maintained lattice basis (HNF), for feeding very many rows.
class LatticeBuilder {
 public:
  explicit LatticeBuilder(std::size_t dim) : dim_(dim), basis_(0, dim), pending_(0, dim) {}

  void add(const IntVector& row) {
    pending_.append_row(row);
    if (pending_.rows() >= 4 * dim_ + 16) flush();
  }
  const IntMatrix& basis() {
    flush();
    return basis_;
  }
  std::size_t dim() const { return dim_; }

 private:
  void flush() {
    if (pending_.rows() == 0) return;
    IntMatrix all = basis_;
    for (std::size_t i = 0; i < pending_.rows(); ++i) all.append_row(pending_.row(i));
    basis_ = hermite_normal_form(std::move(all));
    pending_ = IntMatrix(0, dim_);
  }

  std::size_t dim_;
  IntMatrix basis_;
  IntMatrix pending_;
};

/// Basis of {y : y * A = 0}, as rows.
inline IntMatrix left_kernel(const IntMatrix& A) {
  const SmithForm f = smith_normal_form(A);
  IntMatrix out(0, A.rows());
  for (std::size_t i = f.rank; i < A.rows(); ++i) out.append_row(f.U.row(i));
  return out;
}

/// Some integer y with y * A = x, if one exists.
inline std::optional<IntVector> solve_left(const IntMatrix& A, const IntVector& x) {
  if (x.size() != A.cols()) throw PreconditionError("solve_left shape mismatch");
  const SmithForm f = smith_normal_form(A);
  const IntVector xv = x * f.V;
  IntVector z(A.rows());
  for (std::size_t i = 0; i < A.cols(); ++i) {
    if (i < f.rank) {
      if (xv[i] % f.S(i, i) != 0) return std::nullopt;
      z[i] = xv[i] / f.S(i, i);
    } else if (xv[i] != 0) {
      return std::nullopt;
    }
  }
  return z * f.U;
}

/// Determinant by fraction-free elimination (Bareiss).
inline BigInt determinant(IntMatrix A) {
  const std::size_t n = A.rows();
  if (n != A.cols()) throw PreconditionError("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      A.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

/// Structure of a finitely generated abelian group.
struct GroupInvariants {
  std::vector<BigInt> invariant_factors;  // d1 | d2 | ..., each >= 2
  std::size_t free_rank = 0;

  bool operator==(const GroupInvariants&) const = default;
  bool trivial() const { return invariant_factors.empty() && free_rank == 0; }
  BigInt torsion_order() const {
    BigInt p = 1;
    for (const auto& d : invariant_factors) p *= d;
    return p;
  }
};

/// Text form such as `Z + Z/4 + Z/2` using the given cyclic orders (0 = Z).
inline std::string format_cyclic(const std::vector<BigInt>& orders, const std::string& plus = " ⊕ ") {
  if (orders.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += plus;
    out += orders[i] == 0 ? std::string("Z") : "Z/" + orders[i].str();
  }
  return out;
}

inline std::string format_invariants(const GroupInvariants& g, const std::string& plus = " ⊕ ") {
  std::vector<BigInt> orders(g.free_rank, BigInt(0));
  orders.insert(orders.end(), g.invariant_factors.begin(), g.invariant_factors.end());
  return format_cyclic(orders, plus);
}

/// The group Z^k / L, where L is spanned by the given relation rows.
class AbelianQuotient {
 public:
  AbelianQuotient(std::size_t k, const IntMatrix& relations)
      : k_(k), relations_(hermite_normal_form(relations.rows() ? relations : IntMatrix(0, k))) {
    if (relations.rows() && relations.cols() != k) throw PreconditionError("relation width mismatch");
    snf_ = smith_normal_form(relations_);
    for (std::size_t i = 0; i < snf_.rank; ++i)
      if (snf_.S(i, i) != 1) inv_.invariant_factors.push_back(snf_.S(i, i));
    inv_.free_rank = k_ - snf_.rank;
  }

  std::size_t dim() const { return k_; }
  const IntMatrix& relations() const { return relations_; }
  const GroupInvariants& invariants() const { return inv_; }

  /// Coordinates in the Smith basis: x*V, torsion entries reduced.
  IntVector smith_coords(const IntVector& x) const {
    IntVector y = x * snf_.V;
    for (std::size_t i = 0; i < snf_.rank; ++i) y[i] = mod_floor(y[i], snf_.S(i, i));
    return y;
  }
  bool is_zero(const IntVector& x) const {
    const IntVector y = smith_coords(x);
    return std::all_of(y.begin(), y.end(), [](const BigInt& v) { return v == 0; });
  }
  bool equal(const IntVector& x, const IntVector& y) const {
    IntVector d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return is_zero(d);
  }
  /// Additive order of the class of x; 0 when infinite.
  BigInt order(const IntVector& x) const {
    const IntVector y = x * snf_.V;
    BigInt l = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      if (i >= snf_.rank) {
        if (y[i] != 0) return 0;
        continue;
      }
      const BigInt& d = snf_.S(i, i);
      const BigInt o = d / gcd(d, mod_floor(y[i], d));
      l = l / gcd(l, o) * o;
    }
    return l;
  }

  /// Lattice of integer combinations c with sum c_j gens_j in L.
  IntMatrix relation_lattice(const std::vector<IntVector>& gens) const {
    IntMatrix A(0, k_);
    for (const auto& g : gens) A.append_row(g);
    for (std::size_t i = 0; i < relations_.rows(); ++i) A.append_row(relations_.row(i));
    const IntMatrix K = left_kernel(A);
    IntMatrix proj(0, gens.size());
    for (std::size_t i = 0; i < K.rows(); ++i) {
      IntVector r(gens.size());
      for (std::size_t j = 0; j < gens.size(); ++j) r[j] = K(i, j);
      proj.append_row(r);
    }
    return hermite_normal_form(proj.rows() ? proj : IntMatrix(0, gens.size()));
  }

  /// Structure of the subgroup generated by the classes of `gens`.
  GroupInvariants subgroup_invariants(const std::vector<IntVector>& gens) const {
    if (gens.empty()) return {};
    return AbelianQuotient(gens.size(), relation_lattice(gens)).invariants();
  }

  /// True iff the classes of `gens` generate the whole group.
  bool generates(const std::vector<IntVector>& gens) const {
    IntMatrix A(0, k_);
    for (const auto& g : gens) A.append_row(g);
    for (std::size_t i = 0; i < relations_.rows(); ++i) A.append_row(relations_.row(i));
    const IntMatrix H = hermite_normal_form(A);
    return H == IntMatrix::identity(k_);
  }

  /// Lattice L + span(extra): the quotient by the subgroup `extra` generates.
  AbelianQuotient quotient(const std::vector<IntVector>& extra) const {
    IntMatrix A = relations_;
    for (const auto& e : extra) A.append_row(e);
    return AbelianQuotient(k_, A);
  }

 private:
  std::size_t k_;
  IntMatrix relations_;
  SmithForm snf_;
  GroupInvariants inv_;
};

}  // namespace gwsym
