#pragma once

// Brute-force congruence of small symmetric matrices: breadth-first orbit
// search with witness reconstruction, exhaustive classification by
// union-find, and unit-pivot diagonalization.
//
// Generator moves X -> M X M^T: transvections I + t E_ij (t != 0, i != j),
// scaling of one row by a unit, and transpositions. Over a local ring these
// generate GL_n.

#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/matrix.hpp"
#include "gwsym/ring.hpp"

namespace gwsym {

inline constexpr std::uint64_t kDefaultVisitedCap = 50'000'000;
inline constexpr std::uint64_t kDefaultClassifyCap = std::uint64_t{1} << 24;

struct Move {
  enum class Kind : std::uint8_t { Transvection, Scale, Swap } kind;
  std::uint8_t i, j;
  Code t;  // transvection coefficient or scaling unit

  SquareMatrix matrix(const Ring& R, std::size_t n) const {
    SquareMatrix m = SquareMatrix::identity(n);
    switch (kind) {
      case Kind::Transvection: m(i, j) = t; break;
      case Kind::Scale: m(i, i) = t; break;
      case Kind::Swap:
        m(i, i) = m(j, j) = 0;
        m(i, j) = m(j, i) = 1;
        break;
    }
    (void)R;
    return m;
  }

  /// X <- M X M^T, in place.
  void apply(const Ring& R, SquareMatrix& x) const {
    const std::size_t n = x.dim();
    switch (kind) {
      case Kind::Transvection:
        for (std::size_t c = 0; c < n; ++c) x(i, c) = R.add(x(i, c), R.mul(t, x(j, c)));
        for (std::size_t r = 0; r < n; ++r) x(r, i) = R.add(x(r, i), R.mul(t, x(r, j)));
        break;
      case Kind::Scale:
        for (std::size_t c = 0; c < n; ++c) x(i, c) = R.mul(t, x(i, c));
        for (std::size_t r = 0; r < n; ++r) x(r, i) = R.mul(t, x(r, i));
        break;
      case Kind::Swap:
        for (std::size_t c = 0; c < n; ++c) std::swap(x(i, c), x(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(x(r, i), x(r, j));
        break;
    }
  }
};

inline std::vector<Move> generator_moves(const Ring& R, std::size_t n) {
  std::vector<Move> moves;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        for (Code t = 1; t < R.size(); ++t)
          moves.push_back({Move::Kind::Transvection, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), t});
  for (std::size_t i = 0; i < n; ++i)
    for (Code u : R.units())
      if (u != 1) moves.push_back({Move::Kind::Scale, static_cast<std::uint8_t>(i), 0, u});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      moves.push_back({Move::Kind::Swap, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), 0});
  return moves;
}

/// Packs the upper triangle of a symmetric matrix into 64 bits.
class SymCodec {
 public:
  SymCodec(const RingSpec& spec, std::size_t n) : bits_(spec.n), n_(n) {
    if (n == 0 || n > kMaxDim) throw PreconditionError("dimension must be 1..4");
    if (bits_ * n * (n + 1) / 2 > 64) throw CapExceeded("symmetric matrices do not pack into 64 bits");
  }
  std::size_t key_bits() const { return bits_ * n_ * (n_ + 1) / 2; }

  std::uint64_t encode(const SquareMatrix& m) const {
    std::uint64_t k = 0;
    unsigned shift = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j, shift += bits_) k |= std::uint64_t{m(i, j)} << shift;
    return k;
  }
  SquareMatrix decode(std::uint64_t k) const {
    SquareMatrix m(n_);
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    unsigned shift = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j, shift += bits_) m(i, j) = m(j, i) = static_cast<Code>((k >> shift) & mask);
    return m;
  }

 private:
  unsigned bits_;
  std::size_t n_;
};

enum class Congruence { Congruent, NotCongruent, CapExceeded };

inline const char* to_string(Congruence c) {
  switch (c) {
    case Congruence::Congruent: return "congruent";
    case Congruence::NotCongruent: return "not_congruent";
    case Congruence::CapExceeded: return "cap_exceeded";
  }
  return "?";
}

struct BfsResult {
  Congruence decision = Congruence::CapExceeded;
  std::optional<SquareMatrix> witness;  // P with P A P^T = B
  std::uint64_t visited = 0;
};

/// Breadth-first search of the congruence orbit of A for B. Answers
/// not_congruent only after closing the whole orbit.
inline BfsResult congruent_bfs(const Ring& R, const SymMatrix& A, const SymMatrix& B,
                               std::uint64_t visited_cap = kDefaultVisitedCap) {
  if (A.spec() != B.spec() || A.spec() != R.spec()) throw SpecMismatch("congruent_bfs: ring mismatch");
  if (A.dim() != B.dim()) throw PreconditionError("congruent_bfs: dimension mismatch");
  if (!A.is_unimodular(R) || !B.is_unimodular(R)) throw PreconditionError("congruent_bfs: forms must be unimodular");
  const std::size_t n = A.dim();
  const SymCodec codec(R.spec(), n);
  const auto moves = generator_moves(R, n);
  const std::uint64_t start = codec.encode(A.matrix()), goal = codec.encode(B.matrix());

  struct Parent {
    std::uint64_t key;
    std::uint32_t move;
  };
  std::unordered_map<std::uint64_t, Parent> seen;
  seen.reserve(1024);
  seen.emplace(start, Parent{start, ~0u});
  std::deque<std::uint64_t> frontier{start};
  BfsResult res;

  auto witness = [&](std::uint64_t k) {
    SquareMatrix P = SquareMatrix::identity(n);
    while (k != start) {
      const Parent& p = seen.at(k);
      P = mat_mul(R, P, moves[p.move].matrix(R, n));
      k = p.key;
    }
    return P;
  };

  if (start == goal) {
    res.decision = Congruence::Congruent;
    res.witness = SquareMatrix::identity(n);
    res.visited = 1;
    return res;
  }
  while (!frontier.empty()) {
    const std::uint64_t k = frontier.front();
    frontier.pop_front();
    const SquareMatrix x = codec.decode(k);
    for (std::uint32_t mi = 0; mi < moves.size(); ++mi) {
      SquareMatrix y = x;
      moves[mi].apply(R, y);
      const std::uint64_t ky = codec.encode(y);
      if (!seen.emplace(ky, Parent{k, mi}).second) continue;
      if (ky == goal) {
        res.decision = Congruence::Congruent;
        res.witness = witness(ky);
        res.visited = seen.size();
        ensure(congruence(R, *res.witness, A.matrix()) == B.matrix(), "BFS witness is wrong");
        return res;
      }
      if (seen.size() >= visited_cap) {
        res.decision = Congruence::CapExceeded;
        res.visited = seen.size();
        return res;
      }
      frontier.push_back(ky);
    }
  }
  res.decision = Congruence::NotCongruent;
  res.visited = seen.size();
  return res;
}

/// Exhaustive partition of the unimodular symmetric n x n matrices over R
/// into congruence classes.
class Classification {
 public:
  Classification(const Ring& R, std::size_t n, std::uint64_t cap = kDefaultClassifyCap)
      : ring_(R), n_(n), codec_(R.spec(), n), moves_(generator_moves(R, n)) {
    if (codec_.key_bits() >= 40 || (std::uint64_t{1} << codec_.key_bits()) > cap)
      throw CapExceeded("classify_small: " + std::to_string(R.size()) + "^" + std::to_string(n * (n + 1) / 2) +
                        " matrices exceed the enumeration cap; use congruent_bfs instead");
    const std::uint64_t total = std::uint64_t{1} << codec_.key_bits();
    parent_.resize(total);
    std::iota(parent_.begin(), parent_.end(), 0u);
    unimodular_.assign(total, false);
    for (std::uint64_t k = 0; k < total; ++k) unimodular_[k] = is_invertible(R, codec_.decode(k));
    for (std::uint64_t k = 0; k < total; ++k) {
      if (!unimodular_[k]) continue;
      const SquareMatrix x = codec_.decode(k);
      for (const auto& m : moves_) {
        SquareMatrix y = x;
        m.apply(R, y);
        unite(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(codec_.encode(y)));
      }
    }
    class_id_.assign(total, -1);
    for (std::uint64_t k = 0; k < total; ++k) {
      if (!unimodular_[k]) continue;
      const std::uint32_t r = find(static_cast<std::uint32_t>(k));
      if (class_id_[r] < 0) class_id_[r] = num_classes_++;
      class_id_[k] = class_id_[r];
    }
  }

  std::size_t dim() const { return n_; }
  int num_classes() const { return num_classes_; }
  std::uint64_t num_states() const { return parent_.size(); }
  std::uint64_t num_unimodular() const {
    return static_cast<std::uint64_t>(std::count(unimodular_.begin(), unimodular_.end(), true));
  }
  const SymCodec& codec() const { return codec_; }
  const std::vector<Move>& moves() const { return moves_; }

  /// Class id of a unimodular symmetric matrix.
  int class_of(const SquareMatrix& m) const {
    const int id = class_id_.at(codec_.encode(m));
    if (id < 0) throw PreconditionError("class_of: matrix is not unimodular");
    return id;
  }
  int class_of_key(std::uint64_t k) const { return class_id_.at(k); }
  bool is_unimodular_key(std::uint64_t k) const { return unimodular_.at(k); }

 private:
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  const Ring& ring_;
  std::size_t n_;
  SymCodec codec_;
  std::vector<Move> moves_;
  std::vector<std::uint32_t> parent_;
  std::vector<bool> unimodular_;
  std::vector<int> class_id_;
  int num_classes_ = 0;
};

inline Classification classify_small(const Ring& R, std::size_t n, std::uint64_t cap = kDefaultClassifyCap) {
  return Classification(R, n, cap);
}

/// Unit-pivot diagonalization by congruence. Returns the diagonal form, or
/// nothing when at some stage no remaining diagonal entry is a unit.
inline std::optional<SymMatrix> diagonalize(const Ring& R, const SymMatrix& A) {
  SquareMatrix x = A.matrix();
  const std::size_t n = x.dim();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = i;
    while (p < n && !R.is_unit(x(p, p))) ++p;
    if (p == n) return std::nullopt;
    if (p != i) Move{Move::Kind::Swap, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(p), 0}.apply(R, x);
    const Code ipiv = R.inv(x(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x(j, i) == 0) continue;
      const Code t = R.neg(R.mul(x(j, i), ipiv));
      Move{Move::Kind::Transvection, static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(i), t}.apply(R, x);
    }
  }
  ensure(x.is_diagonal(), "diagonalize left off-diagonal entries");
  return SymMatrix(A.spec(), x);
}

}  // namespace gwsym
