#include <gtest/gtest.h>

#include <map>
#include <set>

#include "brute.hpp"
#include "gwsym/congruence.hpp"
#include "gwsym/oracle.hpp"

using namespace gwsym;

namespace {

SymMatrix diag(const RingSpec& s, std::vector<Code> d) { return SymMatrix::diagonal(s, d); }

// Orbits of 2x2 unimodular symmetric matrices under every invertible P,
// with products computed by schoolbook arithmetic.
std::map<std::array<Code, 3>, int> naive_orbits2(const RingSpec& spec) {
  const brute::NaiveRing N{spec.family == Family::TRUNC2, spec.n};
  const Code q = N.size();
  const Code minus1 = spec.family == Family::TRUNC2 ? 1 : q - 1;
  std::vector<std::array<Code, 4>> gl;
  for (Code a = 0; a < q; ++a)
    for (Code b = 0; b < q; ++b)
      for (Code c = 0; c < q; ++c)
        for (Code d = 0; d < q; ++d) {
          const Code det = N.add(N.mul(a, d), N.mul(N.mul(b, c), minus1));
          if (det & 1) gl.push_back({a, b, c, d});
        }
  auto act = [&](const std::array<Code, 4>& p, const std::array<Code, 3>& x) {
    // x = (x00, x01, x11); y = P X P^T
    const Code a = p[0], b = p[1], c = p[2], d = p[3];
    auto form = [&](Code r0, Code r1, Code s0, Code s1) {
      return N.add(N.add(N.mul(N.mul(r0, x[0]), s0), N.mul(N.mul(r0, x[1]), s1)),
                   N.add(N.mul(N.mul(r1, x[1]), s0), N.mul(N.mul(r1, x[2]), s1)));
    };
    return std::array<Code, 3>{form(a, b, a, b), form(a, b, c, d), form(c, d, c, d)};
  };
  std::map<std::array<Code, 3>, int> id;
  int next = 0;
  for (Code x0 = 0; x0 < q; ++x0)
    for (Code x1 = 0; x1 < q; ++x1)
      for (Code x2 = 0; x2 < q; ++x2) {
        const std::array<Code, 3> x{x0, x1, x2};
        const Code det = N.add(N.mul(x0, x2), N.mul(N.mul(x1, x1), minus1));
        if (!(det & 1) || id.count(x)) continue;
        for (const auto& p : gl) id[act(p, x)] = next;
        ++next;
      }
  return id;
}

}  // namespace

TEST(Bfs, SmallExamples) {
  const RingSpec z4 = parse_ring_spec("z2k:2"), z8 = parse_ring_spec("z2k:3");
  const Ring R4(z4), R8(z8);
  EXPECT_EQ(congruent_bfs(R8, diag(z8, {1, 3}), diag(z8, {3, 1})).decision, Congruence::Congruent);
  EXPECT_EQ(congruent_bfs(R4, diag(z4, {1, 1}), diag(z4, {3, 3})).decision, Congruence::NotCongruent);
  EXPECT_EQ(congruent_bfs(R4, diag(z4, {1, 3}), diag(z4, {3, 1})).decision, Congruence::Congruent);
  EXPECT_EQ(congruent_bfs(R4, diag(z4, {1, 1}), diag(z4, {1, 1})).visited, 1u);
  const auto r = congruent_bfs(R4, diag(z4, {1, 1, 1, 1}), diag(z4, {3, 3, 3, 3}));
  ASSERT_EQ(r.decision, Congruence::Congruent);
  EXPECT_EQ(congruence(R4, *r.witness, SquareMatrix::identity(4)), SquareMatrix::diagonal({3, 3, 3, 3}));
  // 2<1> = 2<5> over Z/8
  EXPECT_EQ(congruent_bfs(R8, diag(z8, {1, 1}), diag(z8, {5, 5})).decision, Congruence::Congruent);
  EXPECT_EQ(congruent_bfs(R8, diag(z8, {1, 1}), diag(z8, {3, 3})).decision, Congruence::NotCongruent);
}

TEST(Bfs, CapAndErrors) {
  const RingSpec z8 = parse_ring_spec("z2k:3");
  const Ring R(z8);
  EXPECT_EQ(congruent_bfs(R, diag(z8, {1, 1, 1}), diag(z8, {7, 7, 7}), 10).decision, Congruence::CapExceeded);
  EXPECT_THROW(congruent_bfs(R, diag(z8, {1, 1}), diag(z8, {1, 2})), PreconditionError);
  EXPECT_THROW(congruent_bfs(R, diag(z8, {1, 1}), diag(z8, {1, 1, 1})), PreconditionError);
  EXPECT_THROW(congruent_bfs(R, diag(z8, {1}), diag(parse_ring_spec("trunc2:3"), {1})), SpecMismatch);
}

TEST(Classify, SmallCounts) {
  const Ring z4(parse_ring_spec("z2k:2")), f2(parse_ring_spec("z2k:1"));
  EXPECT_EQ(classify_small(z4, 1).num_classes(), 2);
  const Classification c(f2, 2);
  EXPECT_EQ(c.num_classes(), 2);  // odd (identity) and even (hyperbolic)
  EXPECT_NE(c.class_of(SquareMatrix::identity(2)), c.class_of(SquareMatrix(2, {{0, 1}, {1, 0}})));
  EXPECT_EQ(c.class_of(SquareMatrix::identity(2)), c.class_of(SquareMatrix(2, {{1, 1}, {1, 0}})));
  EXPECT_THROW(c.class_of(SquareMatrix(2, {{1, 1}, {1, 1}})), PreconditionError);
}

TEST(Classify, AgreesWithNaiveOrbitsAtRankTwo) {
  for (auto s : {"z2k:2", "z2k:3", "trunc2:2", "trunc2:3"}) {
    const RingSpec spec = parse_ring_spec(s);
    const Ring R(spec);
    const Classification C(R, 2);
    const auto naive = naive_orbits2(spec);
    std::set<int> ids;
    for (const auto& [x, id] : naive) ids.insert(id);
    EXPECT_EQ(C.num_classes(), static_cast<int>(ids.size())) << s;
    for (const auto& [x, id] : naive)
      for (const auto& [y, jd] : naive) {
        const SquareMatrix a(2, {{x[0], x[1]}, {x[1], x[2]}}), b(2, {{y[0], y[1]}, {y[1], y[2]}});
        ASSERT_EQ(C.class_of(a) == C.class_of(b), id == jd) << s;
      }
  }
}

TEST(Classify, ClosedUnderMovesAndAgreesWithBfs) {
  const Ring R(parse_ring_spec("z2k:2"));
  const Classification C(R, 3);
  EXPECT_TRUE(classification_closed(R, C));
  const auto units = R.units();
  for (Code a : units)
    for (Code b : units)
      for (Code c : units) {
        const SymMatrix A = diag(R.spec(), {a, b, c}), B = diag(R.spec(), {1, 1, 1});
        const bool same = C.class_of(A.matrix()) == C.class_of(B.matrix());
        EXPECT_EQ(congruent_bfs(R, A, B).decision == Congruence::Congruent, same);
      }
}

TEST(Classify, RefusesLargeSpaces) {
  const Ring R(parse_ring_spec("z2k:5"));
  EXPECT_THROW(Classification(R, 4), CapExceeded);
  EXPECT_THROW(Classification(R, 3, 1000), CapExceeded);
}

TEST(Diagonalize, Examples) {
  const RingSpec z8 = parse_ring_spec("z2k:3");
  const Ring R(z8);
  const auto d = diagonalize(R, SymMatrix(z8, SquareMatrix(2, {{1, 2}, {2, 1}})));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->matrix(), SquareMatrix::diagonal({1, 5}));
  EXPECT_FALSE(diagonalize(R, SymMatrix(z8, SquareMatrix(2, {{0, 1}, {1, 0}}))));
  const auto e = diagonalize(R, SymMatrix(z8, SquareMatrix(3, {{2, 1, 0}, {1, 3, 2}, {0, 2, 5}})));
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->matrix().is_diagonal());
  const RingSpec z4 = parse_ring_spec("z2k:2"), f2 = parse_ring_spec("z2k:1");
  const SymMatrix m4(z4, SquareMatrix(2, {{1, 1}, {1, 2}}));
  const auto d4 = diagonalize(Ring(z4), m4);
  ASSERT_TRUE(d4);
  EXPECT_EQ(d4->matrix(), SquareMatrix::identity(2));
  EXPECT_EQ(congruent_bfs(Ring(z4), m4, *d4).decision, Congruence::Congruent);
  EXPECT_FALSE(diagonalize(Ring(f2), SymMatrix(f2, SquareMatrix(2, {{0, 1}, {1, 0}}))));
  const SymMatrix src(z8, SquareMatrix(3, {{2, 1, 0}, {1, 3, 2}, {0, 2, 5}}));
  EXPECT_EQ(congruent_bfs(R, src, *e).decision, Congruence::Congruent);
}

TEST(Witnesses, LieOverOrthogonalMatrices) {
  const RingSpec z8 = parse_ring_spec("z2k:3");
  const Ring R(z8);
  const auto units = R.units();
  for (Code a : units)
    for (Code b : units)
      for (Code c : units)
        for (Code d : units) {
          const auto r = congruent_bfs(R, diag(z8, {a, b}), diag(z8, {c, d}));
          if (r.decision != Congruence::Congruent) continue;
          EXPECT_TRUE(lies_over_orthogonal(*r.witness));
        }
  for (auto s : {"z2k:2", "z2k:3", "trunc2:3", "trunc2:4"}) {
    const auto rep = oracle_relation_check(parse_ring_spec(s));
    EXPECT_TRUE(rep.passed()) << s;
    for (const auto& c : rep.checks) EXPECT_TRUE(c.over_orthogonal);
  }
}

TEST(Consistency, CongruenceMatchesGWForSmallPowersOfTwo) {
  for (auto [s, rank] : {std::pair{"z2k:1", 3}, std::pair{"z2k:2", 3}, std::pair{"z2k:3", 3}}) {
    const GrothendieckWitt gw(parse_ring_spec(s));
    const auto rep = gw_consistency_check(gw, rank);
    EXPECT_TRUE(rep.passed()) << s;
    EXPECT_EQ(rep.ranks.size(), static_cast<std::size_t>(rank));
  }
}

TEST(Consistency, CancellationFailsOverTruncatedRingsButSoundnessHolds) {
  const GrothendieckWitt gw(parse_ring_spec("trunc2:3"));
  const auto rep = gw_consistency_check(gw, 2);
  EXPECT_FALSE(rep.passed());
  std::uint64_t bad = 0;
  for (const auto& r : rep.ranks) bad += r.congruent_not_equal;
  EXPECT_EQ(bad, 0u);
  EXPECT_GT(rep.ranks[1].equal_not_congruent, 0u);
  // <1> + <1> and <1+x> + <1+x> agree in GW but are not congruent
  const Ring& R = gw.ring();
  const Code u = R.parse("110");
  EXPECT_EQ(gw.gw().scale(2, gw.symbol(0)), gw.gw().scale(2, gw.symbol(gw.classes().class_of(u))));
  EXPECT_EQ(congruent_bfs(R, diag(R.spec(), {1, 1}), diag(R.spec(), {u, u})).decision, Congruence::NotCongruent);
  EXPECT_THROW(gw_consistency_check(gw, 5), PreconditionError);
  EXPECT_THROW(gw_consistency_check(GrothendieckWitt(parse_ring_spec("z2k:5")), 4), CapExceeded);
}

TEST(Sentinel, RepresentativeTuplesGiveTheSameLattice) {
  for (auto s : {"z2k:3", "z2k:4", "trunc2:4", "trunc2:5"}) {
    const auto r = exhaustiveness_sentinel(parse_ring_spec(s));
    EXPECT_TRUE(r.equal) << s;
    EXPECT_FALSE(r.full_sampled);
  }
}
