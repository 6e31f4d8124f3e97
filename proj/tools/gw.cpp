// gw: Grothendieck-Witt and Witt groups of Z/2^n and F2[x]/(x^n), with
// brute-force cross-checks.
//
// exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource cap

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gwsym/congruence.hpp"
#include "gwsym/forms.hpp"
#include "gwsym/gw.hpp"
#include "gwsym/oracle.hpp"
#include "gwsym/report.hpp"
#include "gwsym/verify.hpp"

using namespace gwsym;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCap = 3 };

struct Config {
  std::string ring;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;  // 0 = target default
  std::size_t max_rank = 4;
  bool exact = false;
  std::optional<std::uint64_t> cap;
  std::string target;
  std::string family;
  unsigned from = 0, to = 0;
};

bool json_out(const Config& c) { return c.format == "json"; }

RingSpec need_ring(const Config& c) {
  if (c.ring.empty()) throw ParseError("--ring is required");
  return parse_ring_spec(c.ring);
}

int emit(const Config& c, const Json& j, const std::string& text, bool ok) {
  if (json_out(c))
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
  return ok ? kPass : kFail;
}

GWOptions gw_options(const Config& c) {
  GWOptions o;
  o.seed = c.seed;
  if (c.cap) o.cap = *c.cap;
  return o;
}

int cmd_compute(const Config& c) {
  const GrothendieckWitt gw(need_ring(c), gw_options(c));
  if (c.exact && gw.sampled()) {
    std::cerr << "odd relations were sampled (cap " << gw.presentation().cap << ") and --exact was given\n";
    return kCap;
  }
  return emit(c, compute_json(gw), compute_text(gw), true);
}

int cmd_square_classes(const Config& c) {
  const Ring R(need_ring(c));
  const SquareClassGroup g(R);
  Json j{{"schema", kSchemaVersion}};
  j.update(square_classes_json(R, g));
  std::string text = "ring: " + R.spec().to_string() + "\nclasses: " + std::to_string(g.size()) + "\nreps:";
  for (Code r : g.reps()) text += " " + R.format(r);
  text += "\nbasis:";
  for (ClassIndex b : f2_basis(g)) text += " [" + R.format(g.rep(b)) + "]";
  return emit(c, j, text + "\n", true);
}

int verify_orthogonal(const Config& c) {
  Json groups = Json::array();
  std::string text;
  bool ok = true;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = orthogonal_group(n);
    Json g{{"n", n}, {"order", r.elements.size()}, {"gl_order", r.gl_order}, {"all_permutations", r.all_permutations}};
    text += "O_" + std::to_string(n) + "(F2): " + std::to_string(r.elements.size()) + " of " +
            std::to_string(r.gl_order) + " in GL_" + std::to_string(n);
    if (n < 4) {
      ok = ok && r.all_permutations;
      text += r.all_permutations ? ", all permutations\n" : ", NOT all permutations\n";
    } else {
      g["phi_involution"] = r.phi_involution;
      g["phi_commutes_with_permutations"] = r.phi_commutes_with_permutations;
      g["permutations_times_phi"] = r.permutations_times_phi;
      ok = ok && r.phi_involution && r.phi_commutes_with_permutations && r.permutations_times_phi;
      text += std::string(", Phi^2 = I: ") + (r.phi_involution ? "yes" : "no") +
              ", Phi central in S4: " + (r.phi_commutes_with_permutations ? "yes" : "no") +
              ", O_4 = S4 x {I, Phi}: " + (r.permutations_times_phi ? "yes" : "no") + "\n";
    }
    groups.push_back(g);
  }
  text += ok ? "pass\n" : "FAIL\n";
  return emit(c, Json{{"schema", kSchemaVersion}, {"target", c.target}, {"groups", groups}, {"passed", ok}}, text, ok);
}

int verify_trials(const Config& c, const TrialSummary& s, const std::string& what) {
  Json j{{"schema", kSchemaVersion}, {"target", c.target}, {"ring", c.ring}, {"seed", c.seed},
         {"trials", s.trials},       {"failures", s.failures}, {"passed", s.passed()}};
  std::string text = what + " over " + c.ring + ": " + std::to_string(s.trials) + " trials, " +
                     std::to_string(s.failures) + " failures (seed " + std::to_string(c.seed) + ")\n";
  if (!s.passed()) {
    j["counterexample"] = s.counterexample;
    text += "counterexample: " + s.counterexample + "\n";
  }
  return emit(c, j, text + (s.passed() ? "pass\n" : "FAIL\n"), s.passed());
}

int verify_relations(const Config& c) {
  const RingSpec spec = need_ring(c);
  RelationCheckOptions ro;
  ro.presentation = gw_options(c);
  if (c.cap) ro.visited_cap = *c.cap;
  const auto rep = oracle_relation_check(spec, ro);
  const GrothendieckWitt gw(spec, gw_options(c));
  const auto props = verify_presentation_properties(gw);
  const auto sentinel = exhaustiveness_sentinel(spec, gw_options(c));
  const Ring R(spec);
  const bool ok = rep.passed() && props.passed() && sentinel.equal;

  Json failures = Json::array();
  for (const auto& ch : rep.checks)
    if (!ch.ok && failures.size() < 5)
      failures.push_back(Json{{"lhs", detail::codes_text(R, ch.lhs)}, {"rhs", detail::codes_text(R, ch.rhs)},
                              {"decision", to_string(ch.decision)}});
  Json j{{"schema", kSchemaVersion},
         {"target", c.target},
         {"ring", spec.to_string()},
         {"relations", rep.checks.size()},
         {"confirmed_bfs", rep.confirmed_bfs},
         {"confirmed_witness", rep.confirmed_witness},
         {"failures", rep.failures},
         {"zero_sum_violations", props.nonzero_sum},
         {"hyperbolic_identity_failures", props.remark_failures},
         {"rank_failures", props.rank_failures},
         {"sentinel", Json{{"full", sentinel.full_relations}, {"reps_only", sentinel.reps_relations},
                           {"full_sampled", sentinel.full_sampled}, {"same_lattice", sentinel.equal}}},
         {"failed_relations", failures},
         {"passed", ok}};
  std::string text = "relations over " + spec.to_string() + ": " + std::to_string(rep.checks.size()) +
                     " (congruence by search " + std::to_string(rep.confirmed_bfs) + ", by explicit witness " +
                     std::to_string(rep.confirmed_witness) + ", failed " + std::to_string(rep.failures) + ")\n";
  text += "zero coordinate sum violations: " + std::to_string(props.nonzero_sum) + "\n";
  text += "<a> + <-a> = <1> + <-1> failures: " + std::to_string(props.remark_failures) + "\n";
  text += std::string("class-representative tuples give the same lattice: ") + (sentinel.equal ? "yes" : "no") + "\n";
  return emit(c, j, text + (ok ? "pass\n" : "FAIL\n"), ok);
}

int verify_pfister(const Config& c) {
  const GrothendieckWitt gw(need_ring(c), gw_options(c));
  const auto r = verify_pfister_vanishing(gw);
  Json j{{"schema", kSchemaVersion}, {"target", c.target}, {"ring", c.ring},
         {"products", r.pairs},      {"nonzero", r.nonzero},  {"passed", r.passed()}};
  std::string text = "2-fold Pfister forms and torsion products over " + c.ring + ": " + std::to_string(r.pairs) +
                     " checked, " + std::to_string(r.nonzero) + " nonzero\n";
  if (!r.passed()) {
    j["counterexample"] = r.counterexample;
    text += "counterexample: " + r.counterexample + "\n";
  }
  return emit(c, j, text + (r.passed() ? "pass\n" : "FAIL\n"), r.passed());
}

int verify_symmetrisation_cmd(const Config& c) {
  const GrothendieckWitt gw(need_ring(c), gw_options(c));
  const auto r = verify_symmetrisation(gw);
  Json j{{"schema", kSchemaVersion},
         {"target", c.target},
         {"ring", c.ring},
         {"element", to_json(r.element.coords)},
         {"witt", to_json(r.witt)},
         {"cokernel", to_json(r.cokernel)},
         {"expected", r.expected},
         {"passed", r.passed()}};
  std::string text = "W(" + c.ring + ") = " + group_text(gw.witt()) + "\n3<1> - <3> = " +
                     element_text(gw.witt(), r.element) + " = " + detail::coords_text(r.element) +
                     "\ncokernel: " + format_invariants(r.cokernel) + " (expected " + r.expected + ")\n";
  return emit(c, j, text + (r.passed() ? "pass\n" : "FAIL\n"), r.passed());
}

int cmd_verify(const Config& c) {
  if (c.target == "orthogonal-groups") return verify_orthogonal(c);
  if (c.target == "lemma-odd")
    return verify_trials(c, verify_lemma_odd(need_ring(c), c.trials ? c.trials : 1000, c.seed), "odd relation matrix");
  if (c.target == "factorization")
    return verify_trials(c, verify_factorization(need_ring(c), c.trials ? c.trials : 500, c.seed, c.max_rank),
                         "good-matrix factorization");
  if (c.target == "relations") return verify_relations(c);
  if (c.target == "pfister-vanishing") return verify_pfister(c);
  if (c.target == "symmetrisation") return verify_symmetrisation_cmd(c);
  throw ParseError("unknown verify target " + c.target);
}

int cmd_oracle(const Config& c) {
  const GrothendieckWitt gw(need_ring(c), gw_options(c));
  const auto rep = gw_consistency_check(gw, c.max_rank, c.cap.value_or(kDefaultClassifyCap));
  const Ring& R = gw.ring();
  Json ranks = Json::array();
  std::string text = "diagonal forms over " + c.ring + ": congruence (exhaustive) vs equality in GW\n";
  for (const auto& r : rep.ranks) {
    ranks.push_back(Json{{"rank", r.rank},
                         {"congruence_classes", r.congruence_classes},
                         {"diagonal_forms", r.diagonal_forms},
                         {"pairs", r.pairs},
                         {"mismatches", r.mismatches},
                         {"congruent_not_equal", r.congruent_not_equal},
                         {"equal_not_congruent", r.equal_not_congruent}});
    text += "  rank " + std::to_string(r.rank) + ": " + std::to_string(r.congruence_classes) + " classes, " +
            std::to_string(r.pairs) + " pairs, " + std::to_string(r.mismatches) + " mismatches";
    if (r.mismatches)
      text += " (" + std::to_string(r.congruent_not_equal) + " congruent but unequal in GW, " +
              std::to_string(r.equal_not_congruent) + " equal in GW but not congruent)";
    text += "\n";
  }
  Json mm = Json::array();
  for (const auto& m : rep.mismatches) {
    mm.push_back(Json{{"x", detail::codes_text(R, m.x)}, {"y", detail::codes_text(R, m.y)},
                      {"congruent", m.congruent}, {"equal_in_gw", m.equal_in_gw}});
    text += "  e.g. " + detail::codes_text(R, m.x) + " vs " + detail::codes_text(R, m.y) +
            (m.congruent ? ": congruent, unequal in GW\n" : ": equal in GW, not congruent\n");
  }
  Json j{{"schema", kSchemaVersion}, {"ring", c.ring},        {"max_rank", c.max_rank},
         {"ranks", ranks},           {"mismatches", mm},      {"match", rep.passed()}};
  return emit(c, j, text + (rep.passed() ? "match\n" : "MISMATCH\n"), rep.passed());
}

int cmd_tower(const Config& c) {
  const Family f = parse_family(c.family);
  if (c.from >= c.to) throw PreconditionError("--from must be smaller than --to");
  const auto steps = tower_check(f, c.from, c.to, gw_options(c));
  Json js = Json::array();
  bool ok = true;
  std::string text;
  for (const auto& s : steps) {
    const std::string src = RingSpec{f, s.source_n}.to_string(), tgt = RingSpec{f, s.target_n}.to_string();
    ok = ok && s.kernel_generated_by_pfister;
    js.push_back(Json{{"source", src},
                      {"target", tgt},
                      {"source_gw", format_invariants(s.source_gw)},
                      {"target_gw", format_invariants(s.target_gw)},
                      {"isomorphism", s.isomorphism},
                      {"kernel", to_json(s.kernel)},
                      {"kernel_generated_by_pfister", s.kernel_generated_by_pfister}});
    text += src + " -> " + tgt + ": " + format_invariants(s.source_gw) + " -> " + format_invariants(s.target_gw) +
            (s.isomorphism ? "  iso" : "  kernel " + format_invariants(s.kernel)) +
            (s.kernel_generated_by_pfister ? "" : "  [kernel check FAILED]") + "\n";
  }
  return emit(c, Json{{"schema", kSchemaVersion}, {"family", c.family}, {"steps", js}, {"passed", ok}}, text, ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grothendieck-Witt and Witt groups of finite local rings with residue field F2"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* s, bool ring) {
    if (ring) s->add_option("--ring", cfg.ring, "ring, z2k:<n> or trunc2:<n>");
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--seed", cfg.seed, "random seed");
    s->add_option("--cap", cfg.cap, "enumeration or search limit");
  };

  auto* compute = app.add_subcommand("compute", "square classes, GW and W groups, multiplication table");
  common(compute, true);
  compute->add_flag("--exact", cfg.exact, "fail with exit 3 instead of sampling odd relations");

  auto* sq = app.add_subcommand("square-classes", "the group of square classes");
  common(sq, true);

  auto* verify = app.add_subcommand("verify", "check one constructive ingredient");
  common(verify, true);
  verify
      ->add_option("target", cfg.target, "what to verify")
      ->required()
      ->check(CLI::IsMember({"orthogonal-groups", "lemma-odd", "factorization", "relations", "pfister-vanishing",
                             "symmetrisation"}));
  verify->add_option("--trials", cfg.trials, "randomized trials");
  verify->add_option("--max-rank", cfg.max_rank, "largest matrix dimension")->check(CLI::Range(2, 4));

  auto* oracle = app.add_subcommand("oracle", "compare brute-force congruence with GW equality");
  common(oracle, true);
  oracle->add_option("--max-rank", cfg.max_rank, "largest rank")->check(CLI::Range(1, 4));

  auto* tower = app.add_subcommand("tower", "induced maps along the canonical surjections");
  common(tower, false);
  tower->add_option("--family", cfg.family, "z2k or trunc2")->required();
  tower->add_option("--from", cfg.from, "smallest parameter")->required();
  tower->add_option("--to", cfg.to, "largest parameter")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*compute) return cmd_compute(cfg);
    if (*sq) return cmd_square_classes(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*tower) return cmd_tower(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SpecMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
