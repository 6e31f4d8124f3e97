#pragma once

// Cross-checks between the presentation side (relation lattice, GW
// coordinates) and the brute-force congruence side.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwsym/congruence.hpp"
#include "gwsym/errors.hpp"
#include "gwsym/forms.hpp"
#include "gwsym/gw.hpp"
#include "gwsym/lattice.hpp"
#include "gwsym/matrix.hpp"
#include "gwsym/presentation.hpp"

namespace gwsym {

/// Square root of a unit square, by search; nullopt when y is not a square.
inline std::optional<Code> unit_sqrt(const Ring& R, Code y) {
  for (Code x : R.units())
    if (R.sqr(x) == y) return x;
  return std::nullopt;
}

/// True iff the residue of P lies in O_n(F2), i.e. res(P) res(P)^T = I.
inline bool lies_over_orthogonal(const SquareMatrix& P) {
  const F2Matrix r = residue_matrix(P);
  return f2_mul(r, f2_transpose(r)) == f2_identity(P.dim());
}

struct RelationCheck {
  std::size_t index = 0;
  RelationSource source;
  std::vector<Code> lhs, rhs;  // the two diagonal forms
  std::string method;          // "bfs" or "witness"
  Congruence decision = Congruence::CapExceeded;
  std::optional<SquareMatrix> witness;
  bool over_orthogonal = false;
  bool ok = false;
};

struct RelationCheckReport {
  RingSpec spec;
  std::vector<RelationCheck> checks;
  std::size_t confirmed_bfs = 0, confirmed_witness = 0, failures = 0, skipped = 0;
  bool passed() const { return failures == 0; }
};

struct RelationCheckOptions {
  std::uint64_t visited_cap = 2'000'000;
  // rank-4 BFS only when |R|^10 fits this many states; otherwise an explicit witness
  std::uint64_t rank4_bfs_states = std::uint64_t{1} << 20;
  PresentationOptions presentation{};
};

namespace detail {

// The odd relation made literal: the lemma matrix, then the permutation
// moving (t,u,v,w) to (u,v,w,t), then square scalings onto the exact
// entries named by the relation.
inline std::optional<SquareMatrix> odd_relation_witness(const Ring& R, const SquareClassGroup& g,
                                                        const OddSource& s, const OddTerms& o) {
  const OddRelationMatrix L = odd_relation_matrix(R, g, s.a, s.b, s.c, s.d);
  SquareMatrix perm(4);
  perm(0, 1) = perm(1, 2) = perm(2, 3) = perm(3, 0) = 1;
  const std::vector<Code> from{L.u, L.v, L.w, L.t}, to{o.u, o.v, o.w, o.t};
  SquareMatrix scale(4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto s2 = unit_sqrt(R, R.div(to[i], from[i]));
    if (!s2) return std::nullopt;
    scale(i, i) = *s2;
  }
  return mat_mul(R, scale, mat_mul(R, perm, L.P));
}

}  // namespace detail

/// Confirms every relation of the presentation by an actual congruence of
/// the two diagonal forms it names: even relations at rank 2, odd ones at
/// rank 4. Uses breadth-first search when the orbit is small enough and an
/// explicit witness otherwise; both are verified by literal multiplication.
inline RelationCheckReport oracle_relation_check(const RingSpec& spec, const RelationCheckOptions& opt = {}) {
  const Ring R(spec);
  const SquareClassGroup g(R);
  const Presentation pres = build_presentation(R, g, opt.presentation);
  RelationCheckReport rep;
  rep.spec = spec;
  const std::uint64_t size10 = (spec.n * 10 < 64) ? (std::uint64_t{1} << (spec.n * 10)) : ~std::uint64_t{0};
  const bool rank4_bfs = size10 <= opt.rank4_bfs_states;

  for (std::size_t i = 0; i < pres.relations.size(); ++i) {
    RelationCheck c;
    c.index = i;
    c.source = pres.sources[i];
    std::optional<SquareMatrix> explicit_witness;
    bool try_bfs = true;
    if (const auto* e = std::get_if<EvenSource>(&c.source)) {
      c.lhs = {e->a, e->b};
      c.rhs = {R.add(e->a, R.mul(R.sqr(e->n), e->b)), R.add(e->b, R.mul(R.sqr(e->m), e->a))};
      explicit_witness = SquareMatrix(2, {{1, e->n}, {e->m, 1}});
    } else if (const auto* o = std::get_if<OddSource>(&c.source)) {
      const OddTerms t = odd_relation_terms(R, o->a, o->b, o->c, o->d);
      c.lhs = {o->a, o->b, o->c, o->d};
      c.rhs = {t.u, t.v, t.w, t.t};
      explicit_witness = detail::odd_relation_witness(R, g, *o, t);
      try_bfs = rank4_bfs;
    } else {
      ++rep.skipped;
      continue;
    }
    const SymMatrix A = SymMatrix::diagonal(spec, c.lhs), B = SymMatrix::diagonal(spec, c.rhs);
    if (try_bfs) {
      const BfsResult r = congruent_bfs(R, A, B, opt.visited_cap);
      c.decision = r.decision;
      if (r.decision == Congruence::Congruent) {
        c.method = "bfs";
        c.witness = r.witness;
      }
    }
    if (!c.witness && c.decision != Congruence::NotCongruent && explicit_witness &&
        congruence(R, *explicit_witness, A.matrix()) == B.matrix()) {
      c.method = "witness";
      c.decision = Congruence::Congruent;
      c.witness = explicit_witness;
    }
    c.ok = c.decision == Congruence::Congruent && c.witness && congruence(R, *c.witness, A.matrix()) == B.matrix();
    c.over_orthogonal = c.witness && lies_over_orthogonal(*c.witness);
    c.ok = c.ok && c.over_orthogonal;
    if (!c.ok)
      ++rep.failures;
    else if (c.method == "bfs")
      ++rep.confirmed_bfs;
    else
      ++rep.confirmed_witness;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

struct ConsistencyRank {
  std::size_t rank = 0;
  int congruence_classes = 0;       // unimodular classes at this rank
  std::size_t diagonal_forms = 0;   // unit diagonal tuples tested
  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t congruent_not_equal = 0;  // would contradict soundness
  std::uint64_t equal_not_congruent = 0;  // stably equal, cancellation fails at this rank
};

struct ConsistencyMismatch {
  std::vector<Code> x, y;
  bool congruent = false;
  bool equal_in_gw = false;
};

struct ConsistencyReport {
  RingSpec spec;
  std::vector<ConsistencyRank> ranks;
  std::vector<ConsistencyMismatch> mismatches;  // first few
  bool passed() const { return mismatches.empty(); }
};

/// For every rank up to max_rank: two unit diagonal forms are congruent
/// (exhaustive classification) iff their symbol sums agree in GW.
/// Throws CapExceeded when a classification is out of reach.
inline ConsistencyReport gw_consistency_check(const GrothendieckWitt& gw, std::size_t max_rank,
                                              std::uint64_t cap = kDefaultClassifyCap) {
  if (max_rank < 1 || max_rank > kMaxDim) throw PreconditionError("max rank must be 1..4");
  const Ring& R = gw.ring();
  const SquareClassGroup& g = gw.classes();
  ConsistencyReport rep;
  rep.spec = gw.spec();
  // check every rank is in reach before the expensive work
  for (std::size_t r = 1; r <= max_rank; ++r) {
    const std::uint64_t bits = std::uint64_t{R.spec().n} * r * (r + 1) / 2;
    if (bits >= 40 || (std::uint64_t{1} << bits) > cap)
      throw CapExceeded("oracle: rank " + std::to_string(r) + " classification over " + R.spec().to_string() +
                        " exceeds the enumeration cap");
  }
  const auto units = R.units();
  for (std::size_t r = 1; r <= max_rank; ++r) {
    const Classification C(R, r, cap);
    ConsistencyRank cr;
    cr.rank = r;
    cr.congruence_classes = C.num_classes();
    std::vector<std::vector<Code>> tuples{{}};
    for (std::size_t k = 0; k < r; ++k) {
      std::vector<std::vector<Code>> next;
      for (const auto& t : tuples)
        for (Code u : units) {
          auto e = t;
          e.push_back(u);
          next.push_back(std::move(e));
        }
      tuples = std::move(next);
    }
    std::vector<int> cls;
    std::vector<GWElement> sums;
    for (const auto& t : tuples) {
      cls.push_back(C.class_of(SquareMatrix::diagonal(t)));
      IntVector v(g.size());
      for (Code u : t) v[g.class_of(u)] += 1;
      sums.push_back(gw.gw().coords(v));
    }
    cr.diagonal_forms = tuples.size();
    for (std::size_t i = 0; i < tuples.size(); ++i)
      for (std::size_t j = i + 1; j < tuples.size(); ++j) {
        ++cr.pairs;
        const bool cong = cls[i] == cls[j], eq = sums[i] == sums[j];
        if (cong != eq) {
          ++cr.mismatches;
          ++(cong ? cr.congruent_not_equal : cr.equal_not_congruent);
          if (rep.mismatches.size() < 8) rep.mismatches.push_back({tuples[i], tuples[j], cong, eq});
        }
      }
    rep.ranks.push_back(cr);
  }
  return rep;
}

/// Applying any generator move to any unimodular matrix keeps its class.
inline bool classification_closed(const Ring& R, const Classification& C) {
  const auto& codec = C.codec();
  for (std::uint64_t k = 0; k < C.num_states(); ++k) {
    if (!C.is_unimodular_key(k)) continue;
    const SquareMatrix x = codec.decode(k);
    const int id = C.class_of_key(k);
    for (const auto& m : C.moves()) {
      SquareMatrix y = x;
      m.apply(R, y);
      if (C.class_of_key(codec.encode(y)) != id) return false;
    }
  }
  return true;
}

struct SentinelReport {
  std::size_t full_relations = 0, reps_relations = 0;
  bool full_sampled = false;
  bool equal = false;
};

/// Compares the relation lattice from all unit tuples with the one from
/// class-representative tuples only.
inline SentinelReport exhaustiveness_sentinel(const RingSpec& spec, const PresentationOptions& opt = {}) {
  const Ring R(spec);
  const SquareClassGroup g(R);
  PresentationOptions full = opt, reps = opt;
  full.odd_reps_only = false;
  reps.odd_reps_only = true;
  const Presentation a = build_presentation(R, g, full), b = build_presentation(R, g, reps);
  SentinelReport s;
  s.full_relations = a.relations.size();
  s.reps_relations = b.relations.size();
  s.full_sampled = a.sampled;
  s.equal = hermite_normal_form(a.matrix()) == hermite_normal_form(b.matrix());
  return s;
}

}  // namespace gwsym
