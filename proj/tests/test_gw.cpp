#include <gtest/gtest.h>

#include "gwsym/gw.hpp"
#include "gwsym/report.hpp"

using namespace gwsym;

namespace {

GWElement e(std::initializer_list<long> v) { return GWElement{IntVector(v.begin(), v.end())}; }

std::vector<long> orders(const PresentedGroup& g) {
  std::vector<long> out;
  for (const auto& o : g.orders()) out.push_back(static_cast<long>(o));
  return out;
}

}  // namespace

TEST(GW, ZModFour) {
  const GrothendieckWitt gw(parse_ring_spec("z2k:2"));
  EXPECT_EQ(format_invariants(gw.gw().quotient().invariants()), "Z ⊕ Z/4");
  EXPECT_EQ(gw.gw().labels(), (std::vector<std::string>{"<1>", "<<3>>"}));
  EXPECT_EQ(orders(gw.gw()), (std::vector<long>{0, 4}));
  EXPECT_EQ(gw.symbol(0), e({1, 0}));
  EXPECT_EQ(gw.pfister1(1), e({0, 1}));
  EXPECT_EQ(gw.symbol(1), e({1, 3}));  // <3> = <1> - <<3>>
  EXPECT_EQ(format_invariants(gw.witt().quotient().invariants()), "Z/8");
  EXPECT_EQ(gw.witt().labels(), (std::vector<std::string>{"<1>"}));
}

TEST(GW, ZModEight) {
  const GrothendieckWitt gw(parse_ring_spec("z2k:3"));
  EXPECT_EQ(gw.gw().labels(), (std::vector<std::string>{"<1>", "<<3>>", "<<5>>"}));
  EXPECT_EQ(orders(gw.gw()), (std::vector<long>{0, 4, 2}));
  EXPECT_EQ(group_text(gw.gw()), "Z ⊕ Z/4 ⊕ Z/2");
  EXPECT_EQ(gw.witt().labels(), (std::vector<std::string>{"<1>", "<<5>>"}));
  EXPECT_EQ(orders(gw.witt()), (std::vector<long>{8, 2}));
  EXPECT_EQ(format_invariants(gw.witt().quotient().invariants()), "Z/2 ⊕ Z/8");
  EXPECT_FALSE(gw.sampled());
}

TEST(GW, FieldWithTwoElements) {
  const GrothendieckWitt gw(parse_ring_spec("z2k:1"));
  EXPECT_EQ(format_invariants(gw.gw().quotient().invariants()), "Z");
  EXPECT_EQ(format_invariants(gw.witt().quotient().invariants()), "Z/2");
}

TEST(GW, TruncatedPolynomials) {
  for (unsigned n = 2; n <= 6; ++n) {
    const GrothendieckWitt gw(RingSpec{Family::TRUNC2, n});
    const auto inv = gw.gw().quotient().invariants();
    EXPECT_EQ(inv.free_rank, 1u);
    EXPECT_EQ(inv.invariant_factors, std::vector<BigInt>(n / 2, 2)) << n;
    EXPECT_TRUE(gw.gw().pfister_basis());
  }
  const GrothendieckWitt gw(parse_ring_spec("trunc2:4"));
  EXPECT_EQ(gw.gw().labels(), (std::vector<std::string>{"<1>", "<<1100>>", "<<1001>>"}));
}

TEST(RingStructure, ZModFourIsZxModFourXAndXSquaredMinusTwoX) {
  const GrothendieckWitt gw(parse_ring_spec("z2k:2"));
  const auto t = gw.structure_table(gw.gw());
  EXPECT_EQ(t[1][1], e({0, 2}));  // x^2 = 2x
  EXPECT_EQ(t[0][1], e({0, 1}));
  EXPECT_EQ(gw.gw().scale(4, e({0, 1})), gw.gw().zero());
}

TEST(RingStructure, ZModEight) {
  const GrothendieckWitt gw(parse_ring_spec("z2k:3"));
  const auto t = gw.structure_table(gw.gw());
  EXPECT_EQ(t[1][1], e({0, 2, 0}));  // x^2 = 2x
  EXPECT_EQ(t[1][2], gw.gw().zero());  // xy = 0
  EXPECT_EQ(t[2][2], gw.gw().zero());  // y^2 = 0
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(t[0][i], t[i][0]);
  EXPECT_EQ(gw.pfister2(1, 1), e({0, 2, 0}));
}

TEST(RingStructure, OneIsMultiplicativeIdentity) {
  for (auto s : {"z2k:4", "trunc2:5"}) {
    const GrothendieckWitt gw(parse_ring_spec(s));
    const auto t = gw.structure_table(gw.gw());
    for (std::size_t i = 0; i < gw.gw().dim(); ++i) {
      GWElement b = gw.gw().zero();
      b.coords[i] = 1;
      EXPECT_EQ(t[0][i], b);
    }
  }
}

TEST(RingStructure, TruncatedTorsionSquaresToZero) {
  for (unsigned n = 2; n <= 6; ++n) {
    const GrothendieckWitt gw(RingSpec{Family::TRUNC2, n});
    const auto t = gw.structure_table(gw.gw());
    for (std::size_t i = 1; i < gw.gw().dim(); ++i)
      for (std::size_t j = 1; j < gw.gw().dim(); ++j) EXPECT_EQ(t[i][j], gw.gw().zero());
  }
  const GrothendieckWitt gw(parse_ring_spec("trunc2:6"));
  const Ring& R = gw.ring();
  EXPECT_EQ(gw.pfister2(gw.classes().class_of(R.parse("110000")), gw.classes().class_of(R.parse("100100"))),
            gw.gw().zero());
  // <u><<1+x^k>> = <<1+x^k>>
  for (Code u : R.units())
    for (ClassIndex b : gw.f2_basis_classes())
      EXPECT_EQ(gw.mul(gw.symbol(gw.classes().class_of(u)), gw.pfister1(b)), gw.pfister1(b));
}

TEST(Properties, RankAndHyperbolicSymmetry) {
  for (auto s : {"z2k:3", "z2k:5", "trunc2:5"}) {
    const GrothendieckWitt gw(parse_ring_spec(s));
    const auto& g = gw.classes();
    const GWElement h = gw.gw().add(gw.symbol(0), gw.symbol(g.minus_one()));
    for (ClassIndex a = 0; a < g.size(); ++a) {
      EXPECT_EQ(gw.rank(gw.symbol(a)), 1);
      EXPECT_EQ(gw.gw().add(gw.symbol(a), gw.symbol(g.mul(a, g.minus_one()))), h);
      EXPECT_EQ(gw.rank(gw.pfister1(a)), 0);
    }
  }
}

TEST(InducedMap, TowerOfPowersOfTwo) {
  const auto steps = tower_check(Family::Z2K, 2, 6);
  ASSERT_EQ(steps.size(), 4u);
  EXPECT_FALSE(steps[0].isomorphism);  // Z/8 -> Z/4
  EXPECT_EQ(format_invariants(steps[0].kernel), "Z/2");
  for (std::size_t i = 1; i < steps.size(); ++i) EXPECT_TRUE(steps[i].isomorphism) << steps[i].source_n;
  for (const auto& s : steps) EXPECT_TRUE(s.kernel_generated_by_pfister);
}

TEST(InducedMap, TruncatedTower) {
  const auto steps = tower_check(Family::TRUNC2, 1, 7);
  for (const auto& s : steps) {
    EXPECT_EQ(s.isomorphism, s.target_n % 2 == 0) << s.source_n;
    if (!s.isomorphism) EXPECT_EQ(format_invariants(s.kernel), "Z/2");
    EXPECT_TRUE(s.kernel_generated_by_pfister);
  }
  const GrothendieckWitt g4(parse_ring_spec("trunc2:4")), g3(parse_ring_spec("trunc2:3"));
  const auto m = induced_map(g4, g3);
  EXPECT_TRUE(m.surjective);
  EXPECT_FALSE(m.isomorphism());
  // <<1+x^3>> has order 2 and dies under the projection
  const ClassIndex c = g4.classes().class_of(g4.ring().parse("1001"));
  EXPECT_EQ(g4.gw().quotient().order(g4.gw().lift(g4.pfister1(c))), 2);
  EXPECT_EQ(g3.classes().rep(class_projection(g4.classes(), g3.classes())[c]), 1u);
}

TEST(InducedMap, RejectsBadRanges) {
  EXPECT_THROW(tower_check(Family::Z2K, 5, 5), PreconditionError);
  const GrothendieckWitt a(parse_ring_spec("z2k:3")), b(parse_ring_spec("z2k:4"));
  EXPECT_THROW(induced_map(a, b), PreconditionError);
}

TEST(Quotients, Symmetrisation) {
  const GrothendieckWitt z4(parse_ring_spec("z2k:2")), z8(parse_ring_spec("z2k:3"));
  EXPECT_EQ(symmetrisation_element(z4), e({4}));
  EXPECT_EQ(format_invariants(quotient_by_elements(z4.witt(), {symmetrisation_element(z4)})), "Z/4");
  EXPECT_EQ(symmetrisation_element(z8), e({4, 1}));
  EXPECT_EQ(format_invariants(quotient_by_elements(z8.witt(), {symmetrisation_element(z8)})), "Z/8");
  EXPECT_EQ(quotient_by_elements(z8.witt(), {}), z8.witt().quotient().invariants());
  EXPECT_THROW(symmetrisation_element(GrothendieckWitt(parse_ring_spec("trunc2:3"))), PreconditionError);
}

TEST(Report, JsonShapeAndDeterminism) {
  const GrothendieckWitt gw(parse_ring_spec("z2k:3"));
  const Json j = compute_json(gw);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["gw"]["free_rank"], 1);
  EXPECT_EQ(j["gw"]["torsion"], Json::parse("[4, 2]"));
  EXPECT_EQ(j["gw"]["generators"]["1"], Json::parse("[1, 0, 0]"));
  EXPECT_EQ(j["gw"]["generators"]["3"], Json::parse("[1, 3, 0]"));
  EXPECT_EQ(j["witt"]["torsion"], Json::parse("[8, 2]"));
  EXPECT_EQ(j["sampled"], false);
  EXPECT_EQ(compute_json(GrothendieckWitt(parse_ring_spec("z2k:3"))).dump(), j.dump());
}
