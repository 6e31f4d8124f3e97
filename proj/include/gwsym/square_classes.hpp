#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/ring.hpp"

namespace gwsym {

using ClassIndex = std::uint32_t;

/// R^x / R^x2 as an elementary abelian 2-group. Class 0 is the class of 1;
/// the representative of each class is its smallest unit code.
class SquareClassGroup {
 public:
  explicit SquareClassGroup(const Ring& ring) : spec_(ring.spec()) {
    const auto q = ring.size();
    std::vector<bool> is_square(q, false);
    for (Code u : ring.units()) is_square[ring.sqr(u)] = true;
    squares_.clear();
    for (Code s = 1; s < q; s += 2)
      if (is_square[s]) squares_.push_back(s);

    class_of_.assign(q, kNoClass);
    for (Code u : ring.units()) {
      if (class_of_[u] != kNoClass) continue;
      const auto idx = static_cast<ClassIndex>(reps_.size());
      reps_.push_back(u);
      for (Code s : squares_) class_of_[ring.mul(u, s)] = idx;
    }

    const std::size_t k = reps_.size();
    mul_table_.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        mul_table_[i * k + j] = class_of_[ring.mul(reps_[i], reps_[j])];
    minus_one_ = class_of_[ring.neg(1)];
  }

  const RingSpec& spec() const { return spec_; }
  std::size_t size() const { return reps_.size(); }
  const std::vector<Code>& reps() const { return reps_; }
  Code rep(ClassIndex c) const { return reps_.at(c); }
  const std::vector<Code>& squares() const { return squares_; }

  ClassIndex class_of(Code unit) const {
    if (unit >= class_of_.size() || class_of_[unit] == kNoClass)
      throw NonUnitError("square class of a non-unit");
    return class_of_[unit];
  }
  ClassIndex mul(ClassIndex a, ClassIndex b) const { return mul_table_[a * size() + b]; }
  ClassIndex minus_one() const { return minus_one_; }

  /// Unchecked lookup for hot loops; the caller guarantees `unit` is a unit.
  ClassIndex class_of_unit(Code unit) const { return class_of_[unit]; }

 private:
  static constexpr ClassIndex kNoClass = ~ClassIndex{0};

  RingSpec spec_;
  std::vector<Code> reps_;
  std::vector<Code> squares_;
  std::vector<ClassIndex> class_of_;
  std::vector<ClassIndex> mul_table_;
  ClassIndex minus_one_ = 0;
};

inline SquareClassGroup compute_square_classes(const RingSpec& spec) {
  return SquareClassGroup(Ring(spec));
}

namespace detail {

// Subgroup generated by `gens` as a membership mask over class indices.
inline std::vector<bool> span_of(const SquareClassGroup& g, const std::vector<ClassIndex>& gens) {
  std::vector<bool> in(g.size(), false);
  in[0] = true;
  std::vector<ClassIndex> members{0};
  for (ClassIndex b : gens) {
    if (in[b]) continue;
    const std::size_t m = members.size();
    for (std::size_t i = 0; i < m; ++i) {
      const ClassIndex c = g.mul(members[i], b);
      if (!in[c]) {
        in[c] = true;
        members.push_back(c);
      }
    }
  }
  return in;
}

inline std::size_t span_size(const SquareClassGroup& g, const std::vector<ClassIndex>& gens) {
  const auto in = span_of(g, gens);
  return static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
}

}  // namespace detail

/// True iff `gens` is an F2-basis: independent and spanning.
inline bool is_f2_basis(const SquareClassGroup& g, const std::vector<ClassIndex>& gens) {
  if (gens.size() >= 8 * sizeof(std::size_t)) return false;
  return detail::span_size(g, gens) == g.size() &&
         (std::size_t{1} << gens.size()) == g.size();
}

/// An F2-basis of the square class group. For truncated polynomial rings
/// this is the family [1+x], [1+x^3], ..., [1+x^(2k+1)] with k maximal
/// such that 2k+2 <= n (for n = 1 the basis is empty); otherwise classes
/// are chosen greedily in index order.
inline std::vector<ClassIndex> f2_basis(const SquareClassGroup& g) {
  std::vector<ClassIndex> basis;
  const RingSpec& s = g.spec();
  if (s.family == Family::TRUNC2) {
    // e = 2l+1 runs over 1, 3, ..., 2k+1 with 2k+2 <= n
    for (unsigned e = 1; e + 1 <= s.n; e += 2) basis.push_back(g.class_of((Code{1} << e) | 1u));
    ensure(is_f2_basis(g, basis), "canonical truncated-polynomial basis does not span");
    return basis;
  }
  std::size_t spanned = 1;
  for (ClassIndex c = 1; c < g.size() && spanned < g.size(); ++c) {
    auto trial = basis;
    trial.push_back(c);
    const std::size_t sz = detail::span_size(g, trial);
    if (sz > spanned) {
      basis = std::move(trial);
      spanned = sz;
    }
  }
  ensure(is_f2_basis(g, basis), "greedy square-class basis does not span");
  return basis;
}

/// Map on square classes induced by the canonical surjection source -> target.
inline std::vector<ClassIndex> class_projection(const SquareClassGroup& source,
                                                const SquareClassGroup& target) {
  if (!has_projection(source.spec(), target.spec()))
    throw PreconditionError("no canonical surjection " + source.spec().to_string() + " -> " +
                            target.spec().to_string());
  std::vector<ClassIndex> map(source.size());
  for (ClassIndex c = 0; c < source.size(); ++c)
    map[c] = target.class_of(arith::project(target.spec(), source.rep(c)));
  return map;
}

/// Classes of the source sent to the trivial class.
inline std::vector<ClassIndex> projection_kernel(const std::vector<ClassIndex>& map) {
  std::vector<ClassIndex> ker;
  for (ClassIndex c = 0; c < map.size(); ++c)
    if (map[c] == 0) ker.push_back(c);
  return ker;
}

}  // namespace gwsym
