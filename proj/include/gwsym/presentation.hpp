#pragma once

// Relations generating the kernel of Z[R^x/R^x2] -> GW^sym(R) for a local
// ring R with residue field F2:
//
//   even:  <a> + <b> = <a + n^2 b> + <b + m^2 a>   (a, b units; m, n in m;
//                                                    ma + nb = 0)
//   odd:   <a> + <b> + <c> + <d> = <u> + <v> + <w> + <abcd uvw>
//          u = a + 1/c + 1/d,  v = 1/a + 1/b + d,  w = a + b + a^2 c
//
// Relations are stored as integer vectors over square-class indices
// (left side minus right side), sign-normalized and deduplicated.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/lattice.hpp"
#include "gwsym/ring.hpp"
#include "gwsym/square_classes.hpp"

namespace gwsym {

/// Exhaustive odd enumeration when |units|^4 is at most this.
inline constexpr std::uint64_t kDefaultOddCap = std::uint64_t{1} << 30;

struct EvenSource {
  Code a, b, m, n;
};
struct OddSource {
  Code a, b, c, d;
};
struct HyperbolicSource {};
using RelationSource = std::variant<EvenSource, OddSource, HyperbolicSource>;

/// LHS - RHS of a relation, indexed by square class.
using RelationVector = std::vector<int>;

struct Presentation {
  RingSpec spec;
  std::size_t num_classes = 0;
  std::vector<RelationVector> relations;
  std::vector<RelationSource> sources;  // first tuple that produced each relation
  bool sampled = false;
  std::uint64_t cap = kDefaultOddCap;
  std::uint64_t odd_tuples_examined = 0;

  IntMatrix matrix() const {
    IntMatrix m(0, num_classes);
    for (const auto& r : relations) m.append_row(IntVector(r.begin(), r.end()));
    return m;
  }
};

/// Flips the sign so the first nonzero coordinate is positive. Returns false
/// for the zero vector.
inline bool normalize_relation(RelationVector& v) {
  auto it = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
  if (it == v.end()) return false;
  if (*it < 0)
    for (int& x : v) x = -x;
  return true;
}

namespace detail {

// Deduplicates relations by the pair of sorted class multisets they name,
// before expanding them to coordinate vectors.
template <std::size_t K>
class RelationCollector {
 public:
  explicit RelationCollector(std::size_t num_classes) : k_(num_classes) {}

  void add(std::array<ClassIndex, K> lhs, std::array<ClassIndex, K> rhs, const RelationSource& src) {
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs == rhs) return;
    if (rhs < lhs) std::swap(lhs, rhs);
    Key key{lhs, rhs};
    seen_.try_emplace(key, src);
  }

  void drain_into(Presentation& p, std::map<RelationVector, std::size_t>& index) const {
    // std::map keeps the output independent of hash iteration order
    std::map<Key, RelationSource> ordered(seen_.begin(), seen_.end());
    for (const auto& [key, src] : ordered) {
      RelationVector v(k_, 0);
      for (ClassIndex c : key.first) ++v[c];
      for (ClassIndex c : key.second) --v[c];
      if (!normalize_relation(v)) continue;
      if (index.try_emplace(v, p.relations.size()).second) {
        p.relations.push_back(std::move(v));
        p.sources.push_back(src);
      }
    }
  }

 private:
  using Key = std::pair<std::array<ClassIndex, K>, std::array<ClassIndex, K>>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 0;
      for (ClassIndex c : k.first) h = h * 1000003u + c;
      for (ClassIndex c : k.second) h = h * 1000003u + c + 7;
      return h;
    }
  };
  std::size_t k_;
  std::unordered_map<Key, RelationSource, KeyHash> seen_;
};

}  // namespace detail

/// Even relation for one (a, b, m); n is forced to -m a / b.
inline std::pair<std::array<Code, 2>, EvenSource> even_relation_terms(const Ring& R, Code a, Code b,
                                                                      Code m) {
  const Code n = R.neg(R.div(R.mul(m, a), b));
  const Code left = R.add(a, R.mul(R.sqr(n), b));
  const Code right = R.add(b, R.mul(R.sqr(m), a));
  ensure(!R.is_unit(n), "even relation: n is a unit");
  ensure(R.is_unit(left) && R.is_unit(right), "even relation: right-hand side is not a unit");
  return {{left, right}, EvenSource{a, b, m, n}};
}

struct OddTerms {
  Code u, v, w, t;  // t = abcd uvw
};

inline OddTerms odd_relation_terms(const Ring& R, Code a, Code b, Code c, Code d) {
  const Code ia = R.inv(a), ib = R.inv(b), ic = R.inv(c), id = R.inv(d);
  OddTerms o;
  o.u = R.add(a, R.add(ic, id));
  o.v = R.add(ia, R.add(ib, d));
  o.w = R.add(a, R.add(b, R.mul(R.sqr(a), c)));
  ensure(R.is_unit(o.u) && R.is_unit(o.v) && R.is_unit(o.w), "odd relation: u, v, w not units");
  o.t = R.mul(R.mul(R.mul(a, b), R.mul(c, d)), R.mul(R.mul(o.u, o.v), o.w));
  return o;
}

/// Coordinates of one relation, unnormalized.
inline RelationVector relation_vector(const SquareClassGroup& g, const std::vector<Code>& lhs,
                                      const std::vector<Code>& rhs) {
  RelationVector v(g.size(), 0);
  for (Code x : lhs) ++v[g.class_of(x)];
  for (Code x : rhs) --v[g.class_of(x)];
  return v;
}

inline std::vector<RelationVector> enumerate_even_relations(const Ring& R, const SquareClassGroup& g,
                                                            std::vector<RelationSource>* sources = nullptr) {
  detail::RelationCollector<2> col(g.size());
  const auto units = R.units();
  const auto ideal = R.maximal_ideal();
  for (Code a : units)
    for (Code b : units)
      for (Code m : ideal) {
        const auto [rhs, src] = even_relation_terms(R, a, b, m);
        col.add({g.class_of_unit(a), g.class_of_unit(b)},
                {g.class_of_unit(rhs[0]), g.class_of_unit(rhs[1])}, src);
      }
  Presentation p;
  std::map<RelationVector, std::size_t> index;
  col.drain_into(p, index);
  if (sources) *sources = p.sources;
  return p.relations;
}

struct OddEnumeration {
  std::vector<RelationVector> relations;
  std::vector<RelationSource> sources;
  bool sampled = false;
  std::uint64_t tuples = 0;
};

/// Odd relations over all unit 4-tuples when |units|^4 <= cap; otherwise all
/// tuples of class representatives plus seeded uniform tuples up to the cap.
/// `reps_only` restricts to class-representative tuples (sentinel checks).
inline OddEnumeration enumerate_odd_relations(const Ring& R, const SquareClassGroup& g,
                                              std::uint64_t cap = kDefaultOddCap,
                                              std::uint64_t seed = 0, bool reps_only = false) {
  detail::RelationCollector<4> col(g.size());
  OddEnumeration out;
  auto emit = [&](Code a, Code b, Code c, Code d) {
    const OddTerms o = odd_relation_terms(R, a, b, c, d);
    col.add({g.class_of_unit(a), g.class_of_unit(b), g.class_of_unit(c), g.class_of_unit(d)},
            {g.class_of_unit(o.u), g.class_of_unit(o.v), g.class_of_unit(o.w), g.class_of_unit(o.t)},
            OddSource{a, b, c, d});
    ++out.tuples;
  };
  const auto units = reps_only ? g.reps() : R.units();
  const std::uint64_t nu = units.size();
  const bool exhaustive = reps_only || (nu <= 65536 && nu * nu * nu * nu <= cap);
  if (exhaustive) {
    for (Code a : units)
      for (Code b : units)
        for (Code c : units)
          for (Code d : units) emit(a, b, c, d);
  } else {
    out.sampled = true;
    const auto& reps = g.reps();
    for (Code a : reps)
      for (Code b : reps)
        for (Code c : reps)
          for (Code d : reps) emit(a, b, c, d);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    while (out.tuples < cap) emit(units[pick(rng)], units[pick(rng)], units[pick(rng)], units[pick(rng)]);
  }
  Presentation p;
  std::map<RelationVector, std::size_t> index;
  col.drain_into(p, index);
  out.relations = std::move(p.relations);
  out.sources = std::move(p.sources);
  return out;
}

struct PresentationOptions {
  std::uint64_t cap = kDefaultOddCap;
  std::uint64_t seed = 0;
  bool odd_reps_only = false;
};

inline Presentation build_presentation(const Ring& R, const SquareClassGroup& g,
                                       const PresentationOptions& opt = {}) {
  Presentation p;
  p.spec = R.spec();
  p.num_classes = g.size();
  p.cap = opt.cap;
  std::map<RelationVector, std::size_t> index;
  auto take = [&](std::vector<RelationVector>& rels, std::vector<RelationSource>& srcs) {
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (index.try_emplace(rels[i], p.relations.size()).second) {
        p.relations.push_back(std::move(rels[i]));
        p.sources.push_back(srcs[i]);
      }
  };
  std::vector<RelationSource> even_src;
  auto even = enumerate_even_relations(R, g, &even_src);
  take(even, even_src);
  auto odd = enumerate_odd_relations(R, g, opt.cap, opt.seed, opt.odd_reps_only);
  take(odd.relations, odd.sources);
  p.sampled = odd.sampled;
  p.odd_tuples_examined = odd.tuples;
  return p;
}

inline Presentation build_presentation(const RingSpec& spec, const PresentationOptions& opt = {}) {
  const Ring R(spec);
  return build_presentation(R, SquareClassGroup(R), opt);
}

}  // namespace gwsym
