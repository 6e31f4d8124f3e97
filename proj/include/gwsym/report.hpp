#pragma once

// JSON and text renderings of computed objects, shared by the command line
// tool and the tests. JSON documents carry "schema": 1.

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwsym/gw.hpp"
#include "gwsym/lattice.hpp"
#include "gwsym/matrix.hpp"
#include "gwsym/ring.hpp"
#include "gwsym/square_classes.hpp"

namespace gwsym {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Integer as a JSON number when it fits in 64 bits, else a decimal string.
inline Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const Ring& R, const SquareMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : to_text(R, m)) rows.push_back(r);
  return rows;
}

inline Json to_json(const GroupInvariants& g) {
  Json inv = Json::array();
  for (const auto& d : g.invariant_factors) inv.push_back(to_json(d));
  return Json{{"free_rank", g.free_rank}, {"invariant_factors", inv}, {"group", format_invariants(g)}};
}

/// Group text in basis order, e.g. "Z ⊕ Z/4 ⊕ Z/2".
inline std::string group_text(const PresentedGroup& g) { return format_cyclic(g.orders()); }

/// Linear combination of basis labels, e.g. "<1> + 2<<3>>"; "0" when zero.
inline std::string element_text(const PresentedGroup& g, const GWElement& e) {
  std::string out;
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    const BigInt& c = e.coords[i];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const BigInt a = c < 0 ? BigInt(-c) : c;
    if (a != 1) out += a.str();
    out += g.labels()[i];
  }
  return out.empty() ? "0" : out;
}

inline Json square_classes_json(const Ring& R, const SquareClassGroup& g) {
  Json reps = Json::array(), basis = Json::array();
  for (Code r : g.reps()) reps.push_back(R.format(r));
  for (ClassIndex c : f2_basis(g)) basis.push_back(R.format(g.rep(c)));
  return Json{{"ring", R.spec().to_string()}, {"num_classes", g.size()}, {"reps", reps}, {"basis", basis}};
}

inline Json group_json(const GrothendieckWitt& gw, const PresentedGroup& g) {
  Json torsion = Json::array(), labels = Json::array(), gens = Json::object();
  std::size_t free_rank = 0;
  for (const auto& o : g.orders()) {
    if (o == 0)
      ++free_rank;
    else
      torsion.push_back(to_json(o));
  }
  for (const auto& l : g.labels()) labels.push_back(l);
  for (ClassIndex c = 0; c < gw.num_classes(); ++c)
    gens[gw.ring().format(gw.classes().rep(c))] = to_json(gw.symbol(g, c).coords);
  Json inv = Json::array();
  for (const auto& d : g.quotient().invariants().invariant_factors) inv.push_back(to_json(d));
  return Json{{"group", group_text(g)},       {"free_rank", free_rank},
              {"torsion", torsion},           {"invariant_factors", inv},
              {"basis", labels},              {"pfister_basis", g.pfister_basis()},
              {"generators", gens}};
}

inline Json mult_table_json(const GrothendieckWitt& gw) {
  const auto& g = gw.gw();
  const auto table = gw.structure_table(g);
  Json out = Json::object();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) out[g.labels()[i] + "*" + g.labels()[j]] = to_json(table[i][j].coords);
  return out;
}

inline Json compute_json(const GrothendieckWitt& gw) {
  return Json{{"schema", kSchemaVersion},
              {"ring", gw.spec().to_string()},
              {"square_classes", square_classes_json(gw.ring(), gw.classes())},
              {"relations", gw.presentation().relations.size()},
              {"gw", group_json(gw, gw.gw())},
              {"witt", group_json(gw, gw.witt())},
              {"mult_table", mult_table_json(gw)},
              {"sampled", gw.sampled()}};
}

inline std::string compute_text(const GrothendieckWitt& gw) {
  const Ring& R = gw.ring();
  const auto& g = gw.classes();
  std::ostringstream os;
  os << "ring: " << gw.spec().to_string() << "\n";
  os << "square classes: " << g.size() << " (reps";
  for (Code r : g.reps()) os << " " << R.format(r);
  os << "; basis";
  for (ClassIndex c : f2_basis(g)) os << " [" << R.format(g.rep(c)) << "]";
  os << ")\n";
  os << "relations: " << gw.presentation().relations.size() << "\n";
  auto group = [&](const char* name, const PresentedGroup& G) {
    os << name << ": " << group_text(G) << "  basis (";
    for (std::size_t i = 0; i < G.dim(); ++i) os << (i ? ", " : "") << G.labels()[i];
    os << ")\n";
    for (ClassIndex c = 0; c < g.size(); ++c)
      os << "  <" << R.format(g.rep(c)) << "> = " << element_text(G, gw.symbol(G, c)) << "\n";
  };
  group("GW", gw.gw());
  group("W", gw.witt());
  os << "products:\n";
  const auto& G = gw.gw();
  const auto table = gw.structure_table(G);
  for (std::size_t i = 0; i < G.dim(); ++i)
    for (std::size_t j = i; j < G.dim(); ++j)
      os << "  " << G.labels()[i] << " * " << G.labels()[j] << " = " << element_text(G, table[i][j]) << "\n";
  os << "sampled: " << (gw.sampled() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace gwsym
