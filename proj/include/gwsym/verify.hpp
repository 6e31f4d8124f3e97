#pragma once

// Seeded randomized and exhaustive verification runs over the constructive
// ingredients. Each run returns a summary with the first counterexample.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/forms.hpp"
#include "gwsym/gw.hpp"
#include "gwsym/oracle.hpp"

namespace gwsym {

struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::string counterexample;  // first failure, human readable
  bool passed() const { return failures == 0; }
};

namespace detail {
inline std::string codes_text(const Ring& R, const std::vector<Code>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + R.format(v[i]);
  return s + ")";
}
inline std::string coords_text(const GWElement& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.coords.size(); ++i) s += (i ? ", " : "") + e.coords[i].str();
  return s + ")";
}
inline std::string matrix_text(const Ring& R, const SquareMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    s += i ? ";" : "";
    for (std::size_t j = 0; j < m.dim(); ++j) s += (j ? " " : "") + R.format(m(i, j));
  }
  return s + "]";
}
}  // namespace detail

/// Random unit tuples (a, b, c, d, p, q, r); each trial builds the odd
/// relation matrix, which checks the congruence, the residue Phi and the
/// class identities.
inline TrialSummary verify_lemma_odd(const RingSpec& spec, std::uint64_t trials, std::uint64_t seed) {
  odd_relation_self_test();
  const Ring R(spec);
  const SquareClassGroup g(R);
  const auto units = R.units();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  TrialSummary s;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<Code> x(7);
    for (auto& e : x) e = units[pick(rng)];
    ++s.trials;
    try {
      odd_relation_matrix(R, g, x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
    } catch (const InternalError& e) {
      if (s.failures++ == 0) s.counterexample = "(a,b,c,d,p,q,r) = " + detail::codes_text(R, x) + ": " + e.what();
    }
  }
  return s;
}

/// Random products of 1..4 good matrices in dimensions 2..max_dim, then
/// factor_into_good and an exact check of the factorization.
inline TrialSummary verify_factorization(const RingSpec& spec, std::uint64_t trials, std::uint64_t seed,
                                         std::size_t max_dim = 4) {
  if (max_dim < 2 || max_dim > kMaxDim) throw PreconditionError("factorization: dimension must be 2..4");
  const Ring R(spec);
  std::mt19937_64 rng(seed);
  TrialSummary s;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_dim)(rng);
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const GoodProduct gp = random_good_product(R, n, len, rng);
    ++s.trials;
    bool ok = false;
    std::string why;
    try {
      ok = verify_good_factorization(R, gp.P, gp.D, factor_into_good(R, gp.P, gp.D));
      if (!ok) why = "factors do not multiply to P or are not good";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok && s.failures++ == 0)
      s.counterexample = "P = " + detail::matrix_text(R, gp.P) + ", D = " + detail::matrix_text(R, gp.D) + ": " + why;
  }
  return s;
}

struct PfisterReport {
  std::uint64_t pairs = 0;
  std::uint64_t nonzero = 0;
  std::string counterexample;
  bool passed() const { return nonzero == 0; }
};

/// Every 2-fold Pfister form <<a, b>> vanishes, and so does every product of
/// two rank-0 basis elements.
inline PfisterReport verify_pfister_vanishing(const GrothendieckWitt& gw) {
  PfisterReport r;
  const auto& G = gw.gw();
  const Ring& R = gw.ring();
  for (ClassIndex a = 0; a < gw.num_classes(); ++a)
    for (ClassIndex b = 0; b < gw.num_classes(); ++b) {
      ++r.pairs;
      const GWElement p = gw.pfister2(a, b);
      if (p != G.zero() && r.nonzero++ == 0)
        r.counterexample = "<<" + R.format(gw.classes().rep(a)) + ", " + R.format(gw.classes().rep(b)) +
                           ">> = " + detail::coords_text(p);
    }
  std::vector<std::size_t> rank0;
  for (std::size_t i = 0; i < G.dim(); ++i) {
    GWElement e = G.zero();
    e.coords[i] = 1;
    if (gw.rank(e) == 0) rank0.push_back(i);
  }
  for (std::size_t i : rank0)
    for (std::size_t j : rank0) {
      ++r.pairs;
      GWElement x = G.zero(), y = G.zero();
      x.coords[i] = 1;
      y.coords[j] = 1;
      const GWElement p = gw.mul(x, y);
      if (p != G.zero() && r.nonzero++ == 0)
        r.counterexample = G.labels()[i] + " * " + G.labels()[j] + " = " + detail::coords_text(p);
    }
  return r;
}

struct SymmetrisationReport {
  GWElement element;      // 3<1> - <3> in W coordinates
  GroupInvariants witt;   // W itself
  GroupInvariants cokernel;
  std::string expected;   // Z/4 for n = 2, Z/8 for n >= 3
  bool passed() const { return format_invariants(cokernel) == expected; }
};

inline SymmetrisationReport verify_symmetrisation(const GrothendieckWitt& gw) {
  SymmetrisationReport r;
  r.element = symmetrisation_element(gw);
  r.witt = gw.witt().quotient().invariants();
  r.cokernel = quotient_by_elements(gw.witt(), {r.element});
  r.expected = gw.spec().n == 2 ? "Z/4" : "Z/8";
  return r;
}

struct PropertyReport {
  std::uint64_t relations = 0, nonzero_sum = 0;
  std::uint64_t classes = 0, remark_failures = 0;  // <a> + <-a> = <1> + <-1>
  std::uint64_t rank_failures = 0;                 // rank <a> = 1
  bool passed() const { return nonzero_sum == 0 && remark_failures == 0 && rank_failures == 0; }
};

inline PropertyReport verify_presentation_properties(const GrothendieckWitt& gw) {
  PropertyReport r;
  for (const auto& rel : gw.presentation().relations) {
    ++r.relations;
    long s = 0;
    for (int x : rel) s += x;
    if (s != 0) ++r.nonzero_sum;
  }
  const auto& g = gw.classes();
  const auto& G = gw.gw();
  const GWElement h = G.add(gw.symbol(0), gw.symbol(g.minus_one()));
  for (ClassIndex a = 0; a < g.size(); ++a) {
    ++r.classes;
    if (G.add(gw.symbol(a), gw.symbol(g.mul(a, g.minus_one()))) != h) ++r.remark_failures;
    if (gw.rank(gw.symbol(a)) != 1) ++r.rank_failures;
  }
  return r;
}

}  // namespace gwsym
