#pragma once

// Constructive ingredients behind the presentation: orthogonal groups over
// F2 in dimensions 2..4, good matrices relative to a diagonal form and the
// factorization of congruences lying over diagonal matrices into good
// ones, and the explicit 4x4 congruence lying over Phi that realizes the
// odd relation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/matrix.hpp"
#include "gwsym/ring.hpp"
#include "gwsym/square_classes.hpp"

namespace gwsym {

// ---------------------------------------------------------------------------
// Orthogonal groups over F2

/// n x n matrix over F2 packed as a bitmask, bit i*n + j.
struct F2Matrix {
  std::size_t n = 0;
  std::uint32_t bits = 0;

  bool at(std::size_t i, std::size_t j) const { return (bits >> (i * n + j)) & 1u; }
  bool operator==(const F2Matrix&) const = default;
  auto operator<=>(const F2Matrix&) const = default;
};

inline F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix c{a.n, 0};
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) {
      unsigned s = 0;
      for (std::size_t k = 0; k < a.n; ++k) s ^= static_cast<unsigned>(a.at(i, k) && b.at(k, j));
      if (s) c.bits |= 1u << (i * a.n + j);
    }
  return c;
}

inline F2Matrix f2_transpose(const F2Matrix& a) {
  F2Matrix t{a.n, 0};
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      if (a.at(i, j)) t.bits |= 1u << (j * a.n + i);
  return t;
}

inline F2Matrix f2_identity(std::size_t n) {
  F2Matrix m{n, 0};
  for (std::size_t i = 0; i < n; ++i) m.bits |= 1u << (i * n + i);
  return m;
}

inline bool f2_invertible(const F2Matrix& a) {
  std::array<std::uint32_t, kMaxDim> rows{};
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      if (a.at(i, j)) rows[i] |= 1u << j;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.n; ++c) {
    std::size_t p = rank;
    while (p < a.n && !((rows[p] >> c) & 1u)) ++p;
    if (p == a.n) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < a.n; ++i)
      if (i != rank && ((rows[i] >> c) & 1u)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank == a.n;
}

inline bool f2_is_permutation(const F2Matrix& a) {
  for (std::size_t i = 0; i < a.n; ++i) {
    int row = 0, col = 0;
    for (std::size_t j = 0; j < a.n; ++j) {
      row += a.at(i, j);
      col += a.at(j, i);
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

/// All-ones minus identity in dimension 4.
inline F2Matrix phi_matrix() {
  F2Matrix m{4, 0};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) m.bits |= 1u << (i * 4 + j);
  return m;
}

inline std::vector<F2Matrix> f2_permutation_matrices(std::size_t n) {
  std::array<std::size_t, kMaxDim> perm{0, 1, 2, 3};
  std::vector<F2Matrix> out;
  do {
    F2Matrix m{n, 0};
    for (std::size_t i = 0; i < n; ++i) m.bits |= 1u << (i * n + perm[i]);
    out.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n)));
  std::sort(out.begin(), out.end());
  return out;
}

struct OrthogonalGroupReport {
  std::size_t n = 0;
  std::size_t gl_order = 0;
  std::vector<F2Matrix> elements;  // ascending bitmask
  bool all_permutations = false;
  // n = 4 only
  bool phi_involution = false;
  bool phi_commutes_with_permutations = false;
  bool permutations_times_phi = false;
};

/// O_n(F2) = {P in GL_n(F2) : P P^T = I} by exhaustive enumeration.
inline OrthogonalGroupReport orthogonal_group(std::size_t n) {
  if (n < 2 || n > 4) throw PreconditionError("orthogonal_group: n must be 2..4");
  OrthogonalGroupReport r;
  r.n = n;
  const F2Matrix id = f2_identity(n);
  const std::uint32_t total = 1u << (n * n);
  for (std::uint32_t bits = 0; bits < total; ++bits) {
    const F2Matrix p{n, bits};
    if (!f2_invertible(p)) continue;
    ++r.gl_order;
    if (f2_mul(p, f2_transpose(p)) == id) r.elements.push_back(p);
  }
  r.all_permutations = std::all_of(r.elements.begin(), r.elements.end(), f2_is_permutation);
  if (n == 4) {
    const F2Matrix phi = phi_matrix();
    const auto perms = f2_permutation_matrices(4);
    r.phi_involution = f2_mul(phi, phi) == id;
    r.phi_commutes_with_permutations = std::all_of(perms.begin(), perms.end(), [&](const F2Matrix& s) {
      return f2_mul(phi, s) == f2_mul(s, phi);
    });
    std::vector<F2Matrix> generated;
    for (const auto& s : perms) {
      generated.push_back(s);
      generated.push_back(f2_mul(s, phi));
    }
    std::sort(generated.begin(), generated.end());
    generated.erase(std::unique(generated.begin(), generated.end()), generated.end());
    r.permutations_times_phi = generated == r.elements;
  }
  return r;
}

inline F2Matrix residue_matrix(const SquareMatrix& m) { return F2Matrix{m.dim(), residue_mask(m)}; }

// ---------------------------------------------------------------------------
// Good matrices

struct GoodMatrixCertificate {
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // (k, l), k < l, 0-based
  Code p_kl = 0, p_lk = 0;
  std::vector<Code> resulting_diagonal;
};

namespace detail {
inline void check_diagonal_unimodular(const Ring& R, const SquareMatrix& D, const char* what) {
  if (!D.is_diagonal()) throw PreconditionError(std::string(what) + " is not diagonal");
  for (Code d : D.diag())
    if (!R.is_unit(d)) throw PreconditionError(std::string(what) + " has a non-unit diagonal entry");
}
}  // namespace detail

/// Certificate iff P is good relative to the diagonal form D: P lies over a
/// diagonal matrix, has at most two nonzero off-diagonal entries, and
/// P D P^T is diagonal.
inline std::optional<GoodMatrixCertificate> is_good_matrix(const Ring& R, const SquareMatrix& P,
                                                           const SquareMatrix& D) {
  if (P.dim() != D.dim()) throw PreconditionError("is_good_matrix: dimension mismatch");
  detail::check_diagonal_unimodular(R, D, "D");
  const std::size_t n = P.dim();
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool unit = R.is_unit(P(i, j));
      if ((i == j) != unit) return std::nullopt;
      if (i != j && P(i, j) != 0) off.emplace_back(i, j);
    }
  if (off.size() > 2) return std::nullopt;
  const SquareMatrix out = congruence(R, P, D);
  if (!out.is_diagonal()) return std::nullopt;

  GoodMatrixCertificate cert;
  cert.resulting_diagonal = out.diag();
  if (!off.empty()) {
    std::size_t k = std::min(off[0].first, off[0].second), l = std::max(off[0].first, off[0].second);
    for (const auto& [i, j] : off)
      if (std::min(i, j) != k || std::max(i, j) != l) return std::nullopt;
    cert.pair = {k, l};
    cert.p_kl = P(k, l);
    cert.p_lk = P(l, k);
  }
  // the closed-form diagonal must agree with the literal product
  const auto d = D.diag();
  std::vector<Code> formula(n);
  for (std::size_t i = 0; i < n; ++i) formula[i] = R.mul(R.sqr(P(i, i)), d[i]);
  if (cert.pair) {
    const auto [k, l] = *cert.pair;
    ensure(R.add(R.mul(R.mul(cert.p_lk, P(k, k)), d[k]), R.mul(R.mul(cert.p_kl, P(l, l)), d[l])) == 0,
           "good matrix pair condition fails on a diagonal congruence");
    formula[k] = R.add(R.mul(R.sqr(P(k, k)), d[k]), R.mul(R.sqr(cert.p_kl), d[l]));
    formula[l] = R.add(R.mul(R.sqr(P(l, l)), d[l]), R.mul(R.sqr(cert.p_lk), d[k]));
  }
  ensure(formula == cert.resulting_diagonal, "good matrix diagonal formula disagrees with P D P^T");
  return cert;
}

/// Diagonal predicted for a good matrix from its certificate data alone.
inline std::vector<Code> apply_good(const Ring& R, const SquareMatrix& P, const std::vector<Code>& d,
                                    std::optional<std::pair<std::size_t, std::size_t>> pair) {
  std::vector<Code> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = R.mul(R.sqr(P(i, i)), d[i]);
  if (pair) {
    const auto [k, l] = *pair;
    out[k] = R.add(R.mul(R.sqr(P(k, k)), d[k]), R.mul(R.sqr(P(k, l)), d[l]));
    out[l] = R.add(R.mul(R.sqr(P(l, l)), d[l]), R.mul(R.sqr(P(l, k)), d[k]));
  }
  return out;
}

namespace detail {

inline SquareMatrix embed(const SquareMatrix& small, std::size_t n) {
  SquareMatrix big = SquareMatrix::identity(n);
  for (std::size_t i = 0; i < small.dim(); ++i)
    for (std::size_t j = 0; j < small.dim(); ++j) big(i, j) = small(i, j);
  return big;
}

inline SquareMatrix leading_block(const SquareMatrix& m, std::size_t k) {
  SquareMatrix b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b(i, j) = m(i, j);
  return b;
}

// Factors P (dimension m) relative to diag(d); factors are returned in
// application order, i.e. P = F.back() * ... * F.front().
inline std::vector<SquareMatrix> factor_rec(const Ring& R, const SquareMatrix& P, std::vector<Code> d) {
  const std::size_t m = P.dim();
  if (is_good_matrix(R, P, SquareMatrix::diagonal(d))) return {P};
  ensure(m > 1, "1x1 invertible matrix is always good");
  const std::size_t last = m - 1;
  const Code x = P(last, last);
  ensure(R.is_unit(x), "bottom-right coefficient is not a unit");

  // largest index k with v_k != 0 in the bottom row V
  std::optional<std::size_t> k;
  for (std::size_t j = 0; j < last; ++j)
    if (P(last, j) != 0) k = j;

  if (!k) {
    for (std::size_t i = 0; i < last; ++i) ensure(P(i, last) == 0, "U must vanish when V does");
    // P = [[P',0],[0,x]] = diag(1,...,1,x) * [[P',0],[0,1]]
    std::vector<SquareMatrix> out;
    SquareMatrix scale = SquareMatrix::identity(m);
    scale(last, last) = x;
    std::vector<Code> d_inner(d.begin(), d.end() - 1);
    if (x != 1) {
      out.push_back(scale);
      d[last] = R.mul(R.sqr(x), d[last]);
    }
    for (const auto& f : factor_rec(R, leading_block(P, last), d_inner)) out.push_back(embed(f, m));
    return out;
  }

  const std::size_t kk = *k;
  const Code vk = P(last, kk);
  // s = -(v_k d_k) / (x d_{n+1})
  const Code s = R.neg(R.div(R.mul(vk, d[kk]), R.mul(x, d[last])));
  SquareMatrix E = SquareMatrix::identity(m);
  E(kk, last) = s;
  E(last, kk) = vk;
  E(last, last) = x;

  // Q' = (x P' - v_k U e_k^T)(x I - s v_k e_k e_k^T)^-1; the right factor
  // is diagonal and congruent to x I mod m, hence invertible.
  const Code pivot = R.sub(x, R.mul(s, vk));
  ensure(R.is_unit(pivot), "x - s v_k is not a unit");
  const Code ix = R.inv(x), ipivot = R.inv(pivot);
  SquareMatrix Q(m);
  for (std::size_t i = 0; i < last; ++i)
    for (std::size_t j = 0; j < last; ++j) {
      Code t = R.mul(x, P(i, j));
      if (j == kk) t = R.sub(t, R.mul(vk, P(i, last)));
      Q(i, j) = R.mul(t, j == kk ? ipivot : ix);
    }
  for (std::size_t i = 0; i < last; ++i)
    Q(i, last) = R.mul(ix, R.sub(P(i, last), R.mul(s, Q(i, kk))));
  for (std::size_t j = 0; j < last; ++j) Q(last, j) = j == kk ? 0 : P(last, j);
  Q(last, last) = 1;
  ensure(mat_mul(R, Q, E) == P, "P = Q E fails");

  const auto dE = congruence(R, E, SquareMatrix::diagonal(d));
  ensure(dE.is_diagonal(), "E D E^T is not diagonal");
  std::vector<SquareMatrix> out{E};
  for (auto& f : factor_rec(R, Q, dE.diag())) out.push_back(std::move(f));
  return out;
}

}  // namespace detail

/// Writes P = P_k ... P_1 with each P_{i+1} good relative to the running
/// diagonal P_i ... P_1 D P_1^T ... P_i^T. Returned in application order
/// (front() = P_1). Requires D and P D P^T diagonal unimodular and P
/// invertible lying over a diagonal matrix.
inline std::vector<SquareMatrix> factor_into_good(const Ring& R, const SquareMatrix& P, const SquareMatrix& D) {
  if (P.dim() != D.dim()) throw PreconditionError("factor_into_good: dimension mismatch");
  detail::check_diagonal_unimodular(R, D, "D");
  if (!is_invertible(R, P)) throw PreconditionError("factor_into_good: P is not invertible");
  for (std::size_t i = 0; i < P.dim(); ++i)
    for (std::size_t j = 0; j < P.dim(); ++j)
      if (i != j && R.is_unit(P(i, j)))
        throw PreconditionError("factor_into_good: P does not lie over a diagonal matrix");
  if (!congruence(R, P, D).is_diagonal()) throw PreconditionError("factor_into_good: P D P^T is not diagonal");

  std::vector<SquareMatrix> out;
  for (auto& f : detail::factor_rec(R, P, D.diag()))
    if (f != SquareMatrix::identity(P.dim())) out.push_back(std::move(f));
  if (out.empty()) out.push_back(SquareMatrix::identity(P.dim()));
  return out;
}

/// Checks a factorization: product equals P and each factor is good
/// relative to the running diagonal.
inline bool verify_good_factorization(const Ring& R, const SquareMatrix& P, const SquareMatrix& D,
                                      const std::vector<SquareMatrix>& factors) {
  SquareMatrix prod = SquareMatrix::identity(P.dim());
  SquareMatrix running = D;
  for (const auto& f : factors) {
    if (!is_good_matrix(R, f, running)) return false;
    running = congruence(R, f, running);
    prod = mat_mul(R, f, prod);
  }
  return prod == P;
}

/// Random matrix good relative to diag(d): random unit diagonal, and with
/// probability 3/4 one off-diagonal pair (k, l) with p_kl a random non-unit
/// and p_lk solving the pair condition.
template <class Rng>
SquareMatrix random_good_matrix(const Ring& R, const std::vector<Code>& d, Rng& rng) {
  const std::size_t n = d.size();
  const auto units = R.units();
  const auto ideal = R.maximal_ideal();
  auto pick = [&](const std::vector<Code>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  SquareMatrix P(n);
  for (std::size_t i = 0; i < n; ++i) P(i, i) = pick(units);
  if (n >= 2 && std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    std::size_t l = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
    if (l >= k) ++l;
    P(k, l) = pick(ideal);
    // p_lk p_kk d_k + p_kl p_ll d_l = 0
    P(l, k) = R.neg(R.div(R.mul(R.mul(P(k, l), P(l, l)), d[l]), R.mul(P(k, k), d[k])));
  }
  return P;
}

struct GoodProduct {
  SquareMatrix P, D;
  std::vector<SquareMatrix> factors;  // application order
};

/// P = P_len ... P_1 with each factor good relative to the running diagonal,
/// starting from a random unit diagonal D of dimension n.
template <class Rng>
GoodProduct random_good_product(const Ring& R, std::size_t n, std::size_t len, Rng& rng) {
  const auto units = R.units();
  std::vector<Code> d(n);
  for (auto& x : d) x = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
  GoodProduct g{SquareMatrix::identity(n), SquareMatrix::diagonal(d), {}};
  std::vector<Code> running = d;
  for (std::size_t i = 0; i < len; ++i) {
    SquareMatrix f = random_good_matrix(R, running, rng);
    const auto cert = is_good_matrix(R, f, SquareMatrix::diagonal(running));
    ensure(cert.has_value(), "random good matrix is not good");
    running = cert->resulting_diagonal;
    g.P = mat_mul(R, f, g.P);
    g.factors.push_back(std::move(f));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Explicit congruence over Phi for the odd relation

struct OddRelationMatrix {
  SquareMatrix P;  // P diag(a,b,c,d) P^T = diag(t,u,v,w)
  Code t, u, v, w;
};

/// The 4x4 matrix P with P = Phi mod m and P diag(a,b,c,d) P^T =
/// diag(t,u,v,w), for units a..d and parameters p, q, r. The closed forms
/// of t, u, v, w and the square-class identities are checked; any mismatch
/// is an InternalError. With p = 1/a, q = 1/b, r = 1 the classes reduce to
/// <u> = <a + 1/c + 1/d>, <v> = <1/a + 1/b + d>, <w> = <a + b + a^2 c>.
inline OddRelationMatrix odd_relation_matrix(const Ring& R, const SquareClassGroup& g, Code a, Code b, Code c,
                                             Code d, Code p, Code q, Code r) {
  for (Code e : {a, b, c, d, p, q, r})
    if (!R.is_unit(e)) throw PreconditionError("odd_relation_matrix: inputs must be units");
  auto M = [&](auto... xs) {
    Code acc = 1;
    ((acc = R.mul(acc, xs)), ...);
    return acc;
  };
  auto I = [&](Code x) { return R.inv(x); };
  auto add = [&](auto... xs) {
    Code acc = 0;
    ((acc = R.add(acc, xs)), ...);
    return acc;
  };
  auto neg = [&](Code x) { return R.neg(x); };
  const Code r2 = R.sqr(r), p2 = R.sqr(p), q2 = R.sqr(q);

  // rows of P^T
  SquareMatrix T(4);
  T(0, 0) = R.sub(M(I(r2), a, c, I(b), I(d)), r2);
  T(0, 1) = neg(M(r, d, I(p), I(a)));
  T(0, 2) = p;
  T(0, 3) = neg(M(q, r, I(p), b, I(a), I(d)));

  T(1, 0) = neg(add(M(p, I(q), I(r2), R.sqr(a), c, I(R.sqr(b)), I(d)), M(I(p), I(q), a, c, I(R.sqr(b))),
                    M(q, r2, I(p))));
  T(1, 1) = 0;
  T(1, 2) = q;
  T(1, 3) = M(r, I(d));

  T(2, 0) = neg(add(M(p2, I(q), I(r), R.sqr(a), I(b), I(d)), M(q, a, I(r), I(d)), M(r, a, I(q), I(b))));
  T(2, 1) = M(q, r2, I(p), b, d, I(a), I(c));
  T(2, 2) = 0;
  T(2, 3) = neg(M(I(p), I(d)));

  T(3, 0) = add(M(p, r, a, I(d)), M(I(p), I(r), a, c, I(b), I(d)), M(q2, r, I(p), b, I(d)));
  T(3, 1) = 1;
  T(3, 2) = r;
  T(3, 3) = 0;

  OddRelationMatrix out;
  out.P = T.transpose();
  ensure(residue_matrix(out.P) == phi_matrix(), "odd relation matrix does not lie over Phi");

  const Code a2 = R.sqr(a), b2 = R.sqr(b), d2 = R.sqr(d);
  out.u = M(r2, d2, I(p2), I(a2), add(a, M(p2, I(r2), a2, I(d)), M(q2, r2, b2, I(c))));
  out.v = add(M(p2, a), M(q2, b), M(r2, d));
  out.w = M(r2, I(p2), I(a2), I(d2), add(M(p2, a2, b), M(I(r2), a2, c), M(q2, a, b2)));
  out.t = M(p2, I(q2), I(R.sqr(r2)), a2, a, c, I(M(b2, b)), I(d), out.u, out.v, out.w);

  const SquareMatrix D = SquareMatrix::diagonal({a, b, c, d});
  ensure(congruence(R, out.P, D) == SquareMatrix::diagonal({out.t, out.u, out.v, out.w}),
         "P D P^T differs from diag(t, u, v, w)");

  // square-class identities for general p, q, r
  const Code uvw = M(out.u, out.v, out.w);
  ensure(g.class_of(out.t) == g.class_of(M(a, b, c, d, uvw)), "<t> != <abcd uvw>");
  ensure(g.class_of(out.u) == g.class_of(add(a, M(p2, I(r2), a2, I(d)), M(q2, r2, b2, I(c)))), "<u> identity");
  ensure(g.class_of(out.w) == g.class_of(add(M(p2, a2, b), M(I(r2), a2, c), M(q2, a, b2))), "<w> identity");
  if (p == I(a) && q == I(b) && r == 1) {
    ensure(g.class_of(out.u) == g.class_of(add(a, I(c), I(d))), "<u> != <a + 1/c + 1/d>");
    ensure(g.class_of(out.v) == g.class_of(add(I(a), I(b), d)), "<v> != <1/a + 1/b + d>");
    ensure(g.class_of(out.w) == g.class_of(add(a, b, M(a2, c))), "<w> != <a + b + a^2 c>");
  }
  return out;
}

/// Default parameters p = 1/a, q = 1/b, r = 1.
inline OddRelationMatrix odd_relation_matrix(const Ring& R, const SquareClassGroup& g, Code a, Code b, Code c,
                                             Code d) {
  if (!R.is_unit(a) || !R.is_unit(b)) throw PreconditionError("odd_relation_matrix: inputs must be units");
  return odd_relation_matrix(R, g, a, b, c, d, R.inv(a), R.inv(b), 1);
}

/// Exercises the transcription on every unit 4-tuple of Z/8 and F2[x]/(x^3).
inline void odd_relation_self_test() {
  for (RingSpec s : {RingSpec{Family::Z2K, 3}, RingSpec{Family::TRUNC2, 3}}) {
    const Ring R(s);
    const SquareClassGroup g(R);
    for (Code a : R.units())
      for (Code b : R.units())
        for (Code c : R.units())
          for (Code d : R.units()) odd_relation_matrix(R, g, a, b, c, d);
  }
}

}  // namespace gwsym
