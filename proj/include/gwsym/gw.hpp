#pragma once

// Grothendieck-Witt and Witt groups of a finite local ring with residue
// field F2, computed from the relation presentation, together with the
// ring structure, Pfister forms, induced maps along canonical surjections
// and quotients by explicit elements.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwsym/errors.hpp"
#include "gwsym/lattice.hpp"
#include "gwsym/presentation.hpp"
#include "gwsym/ring.hpp"
#include "gwsym/square_classes.hpp"

namespace gwsym {

/// Element of a presented group, in the coordinates of its chosen basis.
struct GWElement {
  IntVector coords;
  bool operator==(const GWElement&) const = default;
};

/// Structure of a presented group plus the coordinates of every square-class
/// symbol <a> in the chosen basis.
struct AbelianGroupInfo {
  GroupInvariants invariants;
  std::vector<BigInt> orders;  // order of each basis element, 0 = infinite
  std::vector<std::string> basis_labels;
  std::vector<IntVector> generator_coords;  // indexed by square class
  bool pfister_basis = true;  // false when the raw Smith basis had to be used
  bool sampled = false;
};

/// A labelled element of Z[R^x/R^x2], offered as a basis candidate.
struct BasisCandidate {
  std::string label;
  IntVector lift;
};

/// Z^k / L with a chosen basis. The basis is taken greedily from the
/// candidates (keeping a candidate iff it stays independent of those kept);
/// if the kept candidates do not generate, the Smith basis is used instead.
class PresentedGroup {
 public:
  PresentedGroup(AbelianQuotient q, const std::vector<BasisCandidate>& candidates)
      : q_(std::move(q)) {
    choose_basis(candidates);
    IntMatrix A(0, q_.dim());
    for (const auto& l : lifts_) A.append_row(l);
    for (std::size_t i = 0; i < q_.relations().rows(); ++i) A.append_row(q_.relations().row(i));
    solver_rows_ = A.rows();
    solver_ = smith_normal_form(A);
    for (std::size_t i = 0; i < solver_.rank; ++i)
      ensure(solver_.S(i, i) == 1, "chosen basis does not generate the group");
    ensure(solver_.rank == q_.dim(), "chosen basis does not generate the group");
  }

  const AbelianQuotient& quotient() const { return q_; }
  std::size_t dim() const { return lifts_.size(); }
  const std::vector<BigInt>& orders() const { return orders_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<IntVector>& lifts() const { return lifts_; }
  bool pfister_basis() const { return pfister_basis_; }

  /// Coordinates of the class of x in Z^k (x given over square classes).
  GWElement coords(const IntVector& x) const {
    if (x.size() != q_.dim()) throw PreconditionError("class vector has wrong length");
    const IntVector xv = x * solver_.V;
    IntVector z(solver_rows_);
    for (std::size_t i = 0; i < q_.dim(); ++i) z[i] = xv[i];
    const IntVector y = z * solver_.U;
    GWElement e{IntVector(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(dim()))};
    return reduce(std::move(e));
  }

  GWElement reduce(GWElement e) const {
    check(e);
    for (std::size_t j = 0; j < dim(); ++j)
      if (orders_[j] != 0) e.coords[j] = mod_floor(e.coords[j], orders_[j]);
    return e;
  }

  /// A preimage in Z^k.
  IntVector lift(const GWElement& e) const {
    check(e);
    IntVector x(q_.dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t i = 0; i < q_.dim(); ++i) x[i] += e.coords[j] * lifts_[j][i];
    return x;
  }

  GWElement zero() const { return GWElement{IntVector(dim())}; }
  GWElement add(const GWElement& a, const GWElement& b) const {
    check(a);
    check(b);
    GWElement r = a;
    for (std::size_t j = 0; j < dim(); ++j) r.coords[j] += b.coords[j];
    return reduce(std::move(r));
  }
  GWElement scale(const BigInt& k, const GWElement& a) const {
    check(a);
    GWElement r = a;
    for (auto& c : r.coords) c *= k;
    return reduce(std::move(r));
  }
  GWElement sub(const GWElement& a, const GWElement& b) const { return add(a, scale(-1, b)); }

  /// Quotient by the subgroup generated by `elems`, same candidate basis.
  PresentedGroup quotient_by(const std::vector<GWElement>& elems) const {
    std::vector<IntVector> extra;
    for (const auto& e : elems) extra.push_back(lift(e));
    return PresentedGroup(q_.quotient(extra), candidates_);
  }

  void check(const GWElement& e) const {
    if (e.coords.size() != dim()) throw PreconditionError("element is not over this basis");
  }

 private:
  void choose_basis(const std::vector<BasisCandidate>& candidates) {
    candidates_ = candidates;
    std::vector<IntVector> kept;
    std::vector<BigInt> kept_orders;
    std::vector<std::string> kept_labels;
    for (const auto& c : candidates) {
      const BigInt o = q_.order(c.lift);
      if (o == 1) continue;
      auto trial = kept;
      trial.push_back(c.lift);
      auto trial_orders = kept_orders;
      trial_orders.push_back(o);
      if (!is_direct(trial, trial_orders)) continue;
      kept = std::move(trial);
      kept_orders = std::move(trial_orders);
      kept_labels.push_back(c.label);
      if (q_.generates(kept)) break;
    }
    if (q_.generates(kept) || (kept.empty() && q_.invariants().trivial())) {
      lifts_ = std::move(kept);
      orders_ = std::move(kept_orders);
      labels_ = std::move(kept_labels);
      return;
    }
    use_smith_basis();
  }

  // The kept elements form a direct sum of cyclic groups of the given orders.
  bool is_direct(const std::vector<IntVector>& gens, const std::vector<BigInt>& orders) const {
    const GroupInvariants sub = q_.subgroup_invariants(gens);
    std::size_t free = 0;
    BigInt tors = 1;
    for (const auto& o : orders) {
      if (o == 0) ++free;
      else tors *= o;
    }
    return sub.free_rank == free && sub.torsion_order() == tors;
  }

  void use_smith_basis() {
    pfister_basis_ = false;
    const SmithForm f = smith_normal_form(q_.relations().rows() ? q_.relations() : IntMatrix(0, q_.dim()));
    lifts_.clear();
    orders_.clear();
    labels_.clear();
    for (std::size_t i = 0; i < q_.dim(); ++i) {
      const BigInt d = i < f.rank ? f.S(i, i) : BigInt(0);
      if (d == 1) continue;
      IntVector e(q_.dim());
      e[i] = 1;
      // rows of V^-1 are the Smith basis vectors
      auto row = solve_left(f.V, e);
      ensure(row.has_value(), "Smith transform is not unimodular");
      lifts_.push_back(*row);
      orders_.push_back(d);
      labels_.push_back("s" + std::to_string(lifts_.size()));
    }
  }

  AbelianQuotient q_;
  std::vector<BasisCandidate> candidates_;
  std::vector<IntVector> lifts_;
  std::vector<BigInt> orders_;
  std::vector<std::string> labels_;
  bool pfister_basis_ = true;
  SmithForm solver_;
  std::size_t solver_rows_ = 0;
};

/// Options forwarded to relation enumeration.
using GWOptions = PresentationOptions;

/// GW^sym(R) and W^sym(R) for one ring, with ring operations on elements.
class GrothendieckWitt {
 public:
  explicit GrothendieckWitt(RingSpec spec, const GWOptions& opt = {})
      : ring_(spec), classes_(ring_), presentation_(build_presentation(ring_, classes_, opt)),
        basis_(f2_basis(classes_)), gw_(make_group(presentation_.matrix())),
        witt_(make_group(with_hyperbolic(presentation_.matrix()))) {}

  const RingSpec& spec() const { return ring_.spec(); }
  const Ring& ring() const { return ring_; }
  const SquareClassGroup& classes() const { return classes_; }
  const Presentation& presentation() const { return presentation_; }
  const std::vector<ClassIndex>& f2_basis_classes() const { return basis_; }
  const PresentedGroup& gw() const { return gw_; }
  const PresentedGroup& witt() const { return witt_; }
  bool sampled() const { return presentation_.sampled; }

  std::size_t num_classes() const { return classes_.size(); }

  IntVector class_vector(ClassIndex c) const {
    IntVector v(num_classes());
    v.at(c) = 1;
    return v;
  }

  /// <a> in the given group.
  GWElement symbol(const PresentedGroup& g, ClassIndex c) const { return g.coords(class_vector(c)); }
  GWElement symbol(ClassIndex c) const { return symbol(gw_, c); }

  /// <<a>> = <1> - <a>
  GWElement pfister1(const PresentedGroup& g, ClassIndex a) const {
    return g.sub(symbol(g, 0), symbol(g, a));
  }
  GWElement pfister1(ClassIndex a) const { return pfister1(gw_, a); }

  /// <<a, b>> = <<a>> <<b>>
  GWElement pfister2(const PresentedGroup& g, ClassIndex a, ClassIndex b) const {
    return mul(g, pfister1(g, a), pfister1(g, b));
  }
  GWElement pfister2(ClassIndex a, ClassIndex b) const { return pfister2(gw_, a, b); }

  /// Product induced by <a><b> = <ab> on square classes.
  GWElement mul(const PresentedGroup& g, const GWElement& x, const GWElement& y) const {
    const IntVector lx = g.lift(x), ly = g.lift(y);
    IntVector prod(num_classes());
    for (ClassIndex a = 0; a < num_classes(); ++a) {
      if (lx[a] == 0) continue;
      for (ClassIndex b = 0; b < num_classes(); ++b)
        if (ly[b] != 0) prod[classes_.mul(a, b)] += lx[a] * ly[b];
    }
    return g.coords(prod);
  }
  GWElement mul(const GWElement& x, const GWElement& y) const { return mul(gw_, x, y); }

  /// Rank homomorphism GW -> Z (sum of preimage coordinates).
  BigInt rank(const GWElement& x) const {
    const IntVector l = gw_.lift(x);
    return std::accumulate(l.begin(), l.end(), BigInt(0));
  }

  /// Products of the chosen basis elements, row-major over basis pairs.
  std::vector<std::vector<GWElement>> structure_table(const PresentedGroup& g) const {
    std::vector<std::vector<GWElement>> t(g.dim(), std::vector<GWElement>(g.dim()));
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        GWElement ei = g.zero(), ej = g.zero();
        ei.coords[i] = 1;
        ej.coords[j] = 1;
        t[i][j] = mul(g, ei, ej);
      }
    return t;
  }

  AbelianGroupInfo info(const PresentedGroup& g) const {
    AbelianGroupInfo out;
    out.invariants = g.quotient().invariants();
    out.orders = g.orders();
    out.basis_labels = g.labels();
    out.pfister_basis = g.pfister_basis();
    out.sampled = sampled();
    for (ClassIndex c = 0; c < num_classes(); ++c) out.generator_coords.push_back(symbol(g, c).coords);
    return out;
  }

  std::vector<BasisCandidate> basis_candidates() const {
    std::vector<BasisCandidate> cands;
    cands.push_back({"<1>", class_vector(0)});
    std::vector<ClassIndex> order = basis_;
    for (ClassIndex c = 1; c < num_classes(); ++c)
      if (std::find(basis_.begin(), basis_.end(), c) == basis_.end()) order.push_back(c);
    for (ClassIndex c : order) {
      IntVector v = class_vector(0);
      v[c] -= 1;
      cands.push_back({"<<" + ring_.format(classes_.rep(c)) + ">>", v});
    }
    return cands;
  }

 private:
  IntMatrix with_hyperbolic(IntMatrix m) const {
    IntVector h(num_classes());
    h[0] += 1;
    h[classes_.minus_one()] += 1;
    m.append_row(h);
    return m;
  }

  PresentedGroup make_group(const IntMatrix& relations) const {
    LatticeBuilder lb(num_classes());
    for (std::size_t i = 0; i < relations.rows(); ++i) lb.add(relations.row(i));
    return PresentedGroup(AbelianQuotient(num_classes(), lb.basis()), basis_candidates());
  }

  Ring ring_;
  SquareClassGroup classes_;
  Presentation presentation_;
  std::vector<ClassIndex> basis_;
  PresentedGroup gw_;
  PresentedGroup witt_;
};

inline AbelianGroupInfo gw_group(const RingSpec& spec, const GWOptions& opt = {}) {
  const GrothendieckWitt gw(spec, opt);
  return gw.info(gw.gw());
}

inline AbelianGroupInfo witt_group(const RingSpec& spec, const GWOptions& opt = {}) {
  const GrothendieckWitt gw(spec, opt);
  return gw.info(gw.witt());
}

/// Invariants of the quotient of `g` by the subgroup generated by `elems`.
inline GroupInvariants quotient_by_elements(const PresentedGroup& g, const std::vector<GWElement>& elems) {
  return g.quotient_by(elems).quotient().invariants();
}

struct InducedMap {
  RingSpec source, target;
  std::vector<GWElement> images;  // image of each source basis element
  bool surjective = false;
  GroupInvariants kernel;
  /// Kernel equals the subgroup generated by <a><<x>> with x = 1 in the target.
  bool kernel_generated_by_pfister = false;

  bool isomorphism() const { return surjective && kernel.trivial(); }
};

/// GW map induced by the canonical surjection source -> target.
inline InducedMap induced_map(const GrothendieckWitt& src, const GrothendieckWitt& tgt) {
  if (!has_projection(src.spec(), tgt.spec()))
    throw PreconditionError("no canonical surjection " + src.spec().to_string() + " -> " +
                            tgt.spec().to_string());
  InducedMap out{src.spec(), tgt.spec(), {}, false, {}, false};
  const auto proj = class_projection(src.classes(), tgt.classes());
  const std::size_t k = src.num_classes(), kt = tgt.num_classes();
  auto push = [&](const IntVector& x) {
    IntVector y(kt);
    for (std::size_t c = 0; c < k; ++c) y[proj[c]] += x[c];
    return y;
  };
  for (const auto& l : src.gw().lifts()) out.images.push_back(tgt.gw().coords(push(l)));

  std::vector<IntVector> class_images;
  for (ClassIndex c = 0; c < k; ++c) class_images.push_back(tgt.class_vector(proj[c]));
  out.surjective = tgt.gw().quotient().generates(class_images);

  // preimage of the target relation lattice: x with push(x) in L_t
  IntMatrix A(0, kt);
  for (const auto& v : class_images) A.append_row(v);
  const IntMatrix& Lt = tgt.gw().quotient().relations();
  for (std::size_t i = 0; i < Lt.rows(); ++i) A.append_row(Lt.row(i));
  const IntMatrix K = left_kernel(A);
  std::vector<IntVector> ker_gens;
  IntMatrix preimage(0, k);
  for (std::size_t i = 0; i < K.rows(); ++i) {
    IntVector r = K.row(i);
    r.resize(k);
    preimage.append_row(r);
    ker_gens.push_back(std::move(r));
  }
  out.kernel = src.gw().quotient().subgroup_invariants(ker_gens);

  // <a><<x>> = <a> - <ax> for source units x projecting to 1
  const Ring& R = src.ring();
  std::vector<bool> x_class(k, false);
  for (Code u : R.units())
    if (arith::project(tgt.spec(), u) == 1) x_class[src.classes().class_of(u)] = true;
  IntMatrix J = src.gw().quotient().relations();
  if (J.rows() == 0) J = IntMatrix(0, k);
  for (ClassIndex x = 0; x < k; ++x) {
    if (!x_class[x]) continue;
    for (ClassIndex a = 0; a < k; ++a) {
      IntVector v(k);
      v[a] += 1;
      v[src.classes().mul(a, x)] -= 1;
      J.append_row(v);
    }
  }
  const IntMatrix Lsrc = src.gw().quotient().relations();
  IntMatrix P = preimage;
  for (std::size_t i = 0; i < Lsrc.rows(); ++i) P.append_row(Lsrc.row(i));
  out.kernel_generated_by_pfister = hermite_normal_form(P) == hermite_normal_form(J);
  return out;
}

struct TowerStep {
  unsigned source_n = 0, target_n = 0;
  bool isomorphism = false;
  GroupInvariants kernel;
  bool kernel_generated_by_pfister = false;
  GroupInvariants source_gw, target_gw;
};

/// Induced GW maps for each consecutive pair n+1 -> n with from <= n < to.
inline std::vector<TowerStep> tower_check(Family family, unsigned n_from, unsigned n_to,
                                          const GWOptions& opt = {}) {
  if (n_from >= n_to) throw PreconditionError("tower range is empty");
  if (n_from == 0) throw PreconditionError("ring parameter must be >= 1");
  std::vector<TowerStep> steps;
  GrothendieckWitt lower(RingSpec{family, n_from}, opt);
  for (unsigned n = n_from; n < n_to; ++n) {
    GrothendieckWitt upper(RingSpec{family, n + 1}, opt);
    const InducedMap m = induced_map(upper, lower);
    steps.push_back({n + 1, n, m.isomorphism(), m.kernel, m.kernel_generated_by_pfister,
                     upper.gw().quotient().invariants(), lower.gw().quotient().invariants()});
    lower = std::move(upper);
  }
  return steps;
}

/// 3<1> - <3> in W^sym(Z/2^n), n >= 2.
inline GWElement symmetrisation_element(const GrothendieckWitt& gw) {
  if (gw.spec().family != Family::Z2K || gw.spec().n < 2)
    throw PreconditionError("symmetrisation element needs Z/2^n with n >= 2");
  const auto& W = gw.witt();
  return W.sub(W.scale(3, gw.symbol(W, 0)), gw.symbol(W, gw.classes().class_of(3)));
}

}  // namespace gwsym
