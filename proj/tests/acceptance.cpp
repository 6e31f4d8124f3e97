// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "gwsym/congruence.hpp"
#include "gwsym/forms.hpp"
#include "gwsym/gw.hpp"
#include "gwsym/oracle.hpp"
#include "gwsym/verify.hpp"

using namespace gwsym;

namespace {

struct Check {
  bool ok = true;
  std::string note;
  void expect(bool c, const std::string& what) {
    if (!c && ok) note = what;
    ok = ok && c;
  }
};

GWElement e(std::initializer_list<long> v) { return GWElement{IntVector(v.begin(), v.end())}; }

std::vector<BigInt> big(std::initializer_list<long> v) { return std::vector<BigInt>(v.begin(), v.end()); }

GWElement basis_vec(const PresentedGroup& g, std::size_t i) {
  GWElement x = g.zero();
  x.coords[i] = 1;
  return x;
}

Check c1() {
  Check c;
  const GrothendieckWitt gw(parse_ring_spec("z2k:2"));
  c.expect(gw.gw().orders() == big({0, 4}), "GW(Z/4) orders");
  c.expect(gw.gw().labels() == std::vector<std::string>{"<1>", "<<3>>"}, "GW(Z/4) basis");
  c.expect(gw.symbol(0) == e({1, 0}), "<1> -> (1,0)");
  c.expect(gw.pfister1(gw.classes().class_of(3)) == e({0, 1}), "<<3>> -> (0,1)");
  c.expect(format_invariants(gw.gw().quotient().invariants()) == "Z ⊕ Z/4", "GW(Z/4) invariants");
  c.expect(format_invariants(gw.witt().quotient().invariants()) == "Z/8", "W(Z/4)");
  return c;
}

Check c2() {
  Check c;
  const GrothendieckWitt gw(parse_ring_spec("z2k:3"));
  c.expect(!gw.sampled() && gw.presentation().odd_tuples_examined == 256, "odd relations were sampled");
  c.expect(gw.gw().orders() == big({0, 4, 2}), "GW(Z/8) orders");
  c.expect(gw.gw().labels() == std::vector<std::string>{"<1>", "<<3>>", "<<5>>"}, "GW(Z/8) basis");
  c.expect(gw.witt().orders() == big({8, 2}), "W(Z/8) orders");
  c.expect(gw.witt().labels() == std::vector<std::string>{"<1>", "<<5>>"}, "W(Z/8) basis");
  return c;
}

Check c3() {
  Check c;
  {
    const GrothendieckWitt gw(parse_ring_spec("z2k:2"));
    const auto& G = gw.gw();
    const GWElement x = basis_vec(G, 1);
    c.expect(G.scale(4, x) == G.zero() && G.scale(2, x) != G.zero(), "Z/4: 4x = 0 exactly");
    c.expect(gw.mul(x, x) == G.scale(2, x), "Z/4: x^2 = 2x");
    c.expect(gw.mul(basis_vec(G, 0), x) == x, "Z/4: 1 x = x");
  }
  {
    const GrothendieckWitt gw(parse_ring_spec("z2k:3"));
    const auto& G = gw.gw();
    const GWElement x = basis_vec(G, 1), y = basis_vec(G, 2);
    c.expect(G.scale(4, x) == G.zero() && G.scale(2, x) != G.zero(), "Z/8: 4x = 0 exactly");
    c.expect(G.scale(2, y) == G.zero() && y != G.zero(), "Z/8: 2y = 0 exactly");
    c.expect(gw.mul(x, x) == G.scale(2, x), "Z/8: x^2 = 2x");
    c.expect(gw.mul(y, y) == G.zero(), "Z/8: y^2 = 0");
    c.expect(gw.mul(x, y) == G.zero() && gw.mul(y, x) == G.zero(), "Z/8: xy = 0");
  }
  return c;
}

std::vector<TowerStep> z2k_tower, trunc_tower;

Check c4() {
  Check c;
  z2k_tower = tower_check(Family::Z2K, 2, 6);
  c.expect(z2k_tower.size() == 4, "tower length");
  for (const auto& s : z2k_tower)
    c.expect(s.isomorphism == (s.target_n >= 3), "Z/2^" + std::to_string(s.source_n) + " -> Z/2^" +
                                                     std::to_string(s.target_n));
  return c;
}

Check c5() {
  Check c;
  for (unsigned n = 2; n <= 7; ++n) {
    const std::string tag = "trunc2:" + std::to_string(n);
    const GrothendieckWitt gw(RingSpec{Family::TRUNC2, n});
    const auto& G = gw.gw();
    c.expect(!gw.sampled(), tag + " sampled");
    const std::uint64_t nu = gw.ring().units().size();
    c.expect(gw.presentation().odd_tuples_examined == nu * nu * nu * nu, tag + " odd tuples not exhaustive");
    std::vector<BigInt> want{0};
    for (unsigned k = 0; k < n / 2; ++k) want.push_back(2);
    c.expect(G.orders() == want, tag + " orders");
    c.expect(G.quotient().invariants().free_rank == 1, tag + " free rank");
    std::vector<std::string> labels{"<1>"};
    for (unsigned l = 0; 2 * l + 1 < n; ++l) {
      Code u = 1u | (1u << (2 * l + 1));
      labels.push_back("<<" + gw.ring().format(u) + ">>");
    }
    c.expect(G.labels() == labels, tag + " basis <<1+x^(2l+1)>>");
    for (std::size_t i = 1; i < G.dim(); ++i)
      for (std::size_t j = 1; j < G.dim(); ++j)
        c.expect(gw.mul(basis_vec(G, i), basis_vec(G, j)) == G.zero(), tag + " torsion product");
  }
  return c;
}

Check c6() {
  Check c;
  const unsigned z2k_counts[] = {1, 2, 4, 4, 4};
  for (unsigned n = 1; n <= 5; ++n) {
    const SquareClassGroup g(Ring(RingSpec{Family::Z2K, n}));
    c.expect(g.size() == z2k_counts[n - 1], "Z/2^" + std::to_string(n));
    c.expect(g.size() == brute::NaiveRing{false, n}.square_class_reps().size(), "naive Z/2^" + std::to_string(n));
  }
  for (unsigned n = 1; n <= 8; ++n) {
    const SquareClassGroup g(Ring(RingSpec{Family::TRUNC2, n}));
    c.expect(g.size() == (std::size_t{1} << (n / 2)), "trunc2:" + std::to_string(n));
    c.expect(g.size() == brute::NaiveRing{true, n}.square_class_reps().size(), "naive trunc2:" + std::to_string(n));
  }
  return c;
}

Check c7() {
  Check c;
  const std::size_t sizes[] = {2, 6, 48};
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = orthogonal_group(n);
    c.expect(r.elements.size() == sizes[n - 2], "|O_" + std::to_string(n) + "|");
    if (n < 4) c.expect(r.all_permutations, "O_n permutations");
    if (n == 4) {
      c.expect(r.gl_order == 20160, "|GL_4(F2)|");
      c.expect(r.phi_involution, "Phi^2 = I");
      c.expect(r.phi_commutes_with_permutations, "Phi central");
      c.expect(r.permutations_times_phi, "O_4 = S_4 x {I, Phi}");
    }
  }
  return c;
}

Check c8() {
  Check c;
  for (auto s : {"z2k:3", "z2k:4", "trunc2:4", "trunc2:6"}) {
    const auto r = verify_lemma_odd(parse_ring_spec(s), 1000, 20240101);
    c.expect(r.passed() && r.trials == 1000, std::string(s) + ": " + r.counterexample);
  }
  return c;
}

Check c9() {
  Check c;
  for (auto s : {"z2k:2", "z2k:3", "z2k:4", "trunc2:2", "trunc2:3", "trunc2:4"}) {
    const auto r = verify_factorization(parse_ring_spec(s), 500, 42);
    c.expect(r.passed() && r.trials == 500, std::string(s) + ": " + r.counterexample);
  }
  return c;
}

Check c10() {
  Check c;
  for (auto [s, rank] : {std::pair{"z2k:2", 4}, std::pair{"z2k:3", 3}}) {
    const GrothendieckWitt gw(parse_ring_spec(s));
    const auto rep = gw_consistency_check(gw, rank);
    std::uint64_t pairs = 0;
    for (const auto& r : rep.ranks) pairs += r.pairs;
    c.expect(rep.passed() && rep.ranks.size() == static_cast<std::size_t>(rank) && pairs > 0,
             std::string(s) + " mismatch");
  }
  const RingSpec z4 = parse_ring_spec("z2k:2");
  const Ring R(z4);
  const Classification C(R, 4);
  c.expect(C.class_of(SquareMatrix::diagonal({1, 1, 1, 1})) == C.class_of(SquareMatrix::diagonal({3, 3, 3, 3})),
           "diag(1,1,1,1) ~ diag(3,3,3,3)");
  c.expect(congruent_bfs(R, SymMatrix::diagonal(z4, {1, 1}), SymMatrix::diagonal(z4, {3, 3})).decision ==
               Congruence::NotCongruent,
           "diag(1,1) !~ diag(3,3)");
  return c;
}

Check c11() {
  Check c;
  for (unsigned n = 2; n <= 4; ++n) {
    const GrothendieckWitt gw(RingSpec{Family::Z2K, n});
    const auto q = quotient_by_elements(gw.witt(), {symmetrisation_element(gw)});
    c.expect(format_invariants(q) == (n == 2 ? "Z/4" : "Z/8"), "cokernel over Z/2^" + std::to_string(n));
    if (n == 3) c.expect(symmetrisation_element(gw) == e({4, 1}), "3<1> - <3> = (4,1)");
  }
  return c;
}

bool snf_certificate(const IntMatrix& M) {
  const SmithForm f = smith_normal_form(M);
  if (f.U * M * f.V != f.S) return false;
  const BigInt du = determinant(f.U), dv = determinant(f.V);
  if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) return false;
  for (std::size_t i = 0; i < f.S.rows(); ++i)
    for (std::size_t j = 0; j < f.S.cols(); ++j)
      if (i != j && f.S(i, j) != 0) return false;
  return true;
}

Check c12() {
  Check c;
  for (auto s : {"z2k:1", "z2k:2", "z2k:3", "z2k:4", "z2k:5", "trunc2:2", "trunc2:3", "trunc2:4", "trunc2:5",
                 "trunc2:6"}) {
    const GrothendieckWitt gw(parse_ring_spec(s));
    const auto p = verify_presentation_properties(gw);
    c.expect(p.nonzero_sum == 0, std::string(s) + " relation with nonzero sum");
    c.expect(p.remark_failures == 0, std::string(s) + " <a> + <-a> != <1> + <-1>");
    c.expect(p.rank_failures == 0, std::string(s) + " rank");
    const IntMatrix M = gw.presentation().matrix();
    if (M.rows()) c.expect(snf_certificate(M), std::string(s) + " SNF certificate");
  }
  trunc_tower = tower_check(Family::TRUNC2, 1, 7);
  for (const auto* t : {&z2k_tower, &trunc_tower})
    for (const auto& s : *t)
      c.expect(s.kernel_generated_by_pfister, "kernel check at parameter " + std::to_string(s.source_n));
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"GW and W of Z/4 with <1> -> (1,0), <<3>> -> (0,1)", c1},
      {"GW and W of Z/8 in the bases (<1>, <<3>>, <<5>>) and (<1>, <<5>>)", c2},
      {"ring structure of GW(Z/4) and GW(Z/8) from structure constants", c3},
      {"tower GW(Z/2^(n+1)) -> GW(Z/2^n): iso for n = 3..5, not for n = 2", c4},
      {"GW(F2[x]/(x^n)) = Z + (Z/2)^floor(n/2), n = 2..7, square-zero torsion", c5},
      {"square class counts", c6},
      {"orthogonal groups O_n(F2), n = 2, 3, 4", c7},
      {"odd relation matrix identity, 1000 tuples on four rings", c8},
      {"good-matrix factorization, 500 products per ring of size <= 16", c9},
      {"congruence oracle agrees with GW over Z/4 (rank <= 4) and Z/8 (rank <= 3)", c10},
      {"symmetrisation cokernels over Z/4, Z/8, Z/16", c11},
      {"property suite: relation sums, <a> + <-a>, SNF certificates, kernel checks", c12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.note = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " (" << buf
              << ")";
    if (!c.ok) std::cout << "  -- " << c.note;
    std::cout << std::endl;
    failed += !c.ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
