#pragma once

// Finite local commutative rings with residue field F2:
//   Z2K    : Z/2^n
//   TRUNC2 : F2[x]/(x^n)
// Both have 2^n elements. An element is stored as a canonical code in
// [0, 2^n): the residue itself for Z2K, the coefficient bitmask (bit i is
// the coefficient of x^i) for TRUNC2.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gwsym/errors.hpp"

namespace gwsym {

using Code = std::uint32_t;

enum class Family { Z2K, TRUNC2 };

inline constexpr unsigned kMaxRingParameter = 30;

struct RingSpec {
  Family family = Family::Z2K;
  unsigned n = 1;

  auto operator<=>(const RingSpec&) const = default;

  std::uint64_t size() const { return std::uint64_t{1} << n; }
  Code mask() const { return static_cast<Code>(size() - 1); }

  std::string to_string() const {
    return (family == Family::Z2K ? "z2k:" : "trunc2:") + std::to_string(n);
  }
};

inline std::string family_name(Family f) { return f == Family::Z2K ? "z2k" : "trunc2"; }

inline Family parse_family(std::string_view text) {
  if (text == "z2k") return Family::Z2K;
  if (text == "trunc2") return Family::TRUNC2;
  throw ParseError("unknown ring family '" + std::string(text) + "'");
}

/// Parses `z2k:<n>` or `trunc2:<n>` (case-sensitive, n >= 1 decimal).
inline RingSpec parse_ring_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("ring spec '" + std::string(text) + "' lacks ':'");
  const Family family = parse_family(text.substr(0, colon));
  const std::string_view digits = text.substr(colon + 1);
  if (digits.empty() || digits.size() > 4)
    throw ParseError("bad ring parameter '" + std::string(digits) + "'");
  unsigned n = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw ParseError("bad ring parameter '" + std::string(digits) + "'");
    n = n * 10 + static_cast<unsigned>(ch - '0');
  }
  if (n == 0) throw ParseError("ring parameter '" + std::string(digits) + "' must be >= 1");
  if (n > kMaxRingParameter)
    throw ParseError("ring parameter '" + std::string(digits) + "' exceeds " +
                     std::to_string(kMaxRingParameter));
  return RingSpec{family, n};
}

namespace arith {

inline Code add(const RingSpec& s, Code a, Code b) {
  if (s.family == Family::Z2K) return (a + b) & s.mask();
  return a ^ b;
}

inline Code neg(const RingSpec& s, Code a) {
  if (s.family == Family::Z2K) return (0u - a) & s.mask();
  return a;
}

inline Code sub(const RingSpec& s, Code a, Code b) { return add(s, a, neg(s, b)); }

inline Code mul(const RingSpec& s, Code a, Code b) {
  if (s.family == Family::Z2K)
    return static_cast<Code>((std::uint64_t{a} * b) & s.mask());
  // carry-less product truncated at x^n
  std::uint64_t r = 0;
  for (unsigned i = 0; b >> i; ++i)
    if ((b >> i) & 1u) r ^= std::uint64_t{a} << i;
  return static_cast<Code>(r & s.mask());
}

inline bool is_unit(const RingSpec&, Code a) { return (a & 1u) != 0; }

inline unsigned residue(const RingSpec&, Code a) { return a & 1u; }

inline Code inv(const RingSpec& s, Code a) {
  if (!is_unit(s, a)) throw NonUnitError("element is not a unit");
  // Newton iteration x <- x(2 - ax) starting from x = 1 (a = 1 mod m);
  // the error term squares at each step.
  const Code two = add(s, 1, 1);
  Code x = 1;
  for (int it = 0; it < 8 && mul(s, a, x) != 1; ++it) x = mul(s, x, sub(s, two, mul(s, a, x)));
  ensure(mul(s, a, x) == 1, "Newton inversion failed to converge");
  return x;
}

/// Image under the canonical surjection onto the same family with a
/// smaller parameter.
inline Code project(const RingSpec& target, Code a) { return a & target.mask(); }

}  // namespace arith

/// Arithmetic context for one ring. Caches inverses and, for small rings,
/// the full multiplication table, since relation enumeration is dominated
/// by products of units.
class Ring {
 public:
  explicit Ring(RingSpec spec) : spec_(spec) {
    const auto q = spec_.size();
    if (q <= (std::uint64_t{1} << 20)) {
      inv_.assign(q, 0);
      for (Code a = 1; a < q; a += 2) inv_[a] = arith::inv(spec_, a);
    }
    if (spec_.family == Family::TRUNC2 && spec_.n <= 9) {
      mul_table_.resize(q * q);
      for (Code a = 0; a < q; ++a)
        for (Code b = 0; b < q; ++b) mul_table_[a * q + b] = arith::mul(spec_, a, b);
    }
  }

  const RingSpec& spec() const { return spec_; }
  std::uint64_t size() const { return spec_.size(); }

  static constexpr Code zero() { return 0; }
  static constexpr Code one() { return 1; }

  Code add(Code a, Code b) const { return arith::add(spec_, a, b); }
  Code sub(Code a, Code b) const { return arith::sub(spec_, a, b); }
  Code neg(Code a) const { return arith::neg(spec_, a); }
  Code mul(Code a, Code b) const {
    if (!mul_table_.empty()) return mul_table_[std::size_t{a} * size() + b];
    return arith::mul(spec_, a, b);
  }
  Code sqr(Code a) const { return mul(a, a); }
  Code inv(Code a) const {
    if (!is_unit(a)) throw NonUnitError("inverse of non-unit " + format(a));
    if (!inv_.empty()) return inv_[a];
    return arith::inv(spec_, a);
  }
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  bool is_unit(Code a) const { return arith::is_unit(spec_, a); }
  unsigned residue(Code a) const { return arith::residue(spec_, a); }

  /// All elements, ascending code.
  std::vector<Code> elements() const {
    std::vector<Code> out(size());
    for (Code a = 0; a < size(); ++a) out[a] = a;
    return out;
  }
  /// Units, ascending code (the odd codes in both families).
  std::vector<Code> units() const {
    std::vector<Code> out;
    out.reserve(size() / 2);
    for (Code a = 1; a < size(); a += 2) out.push_back(a);
    return out;
  }
  /// Non-units, i.e. the maximal ideal, ascending code.
  std::vector<Code> maximal_ideal() const {
    std::vector<Code> out;
    out.reserve(size() / 2);
    for (Code a = 0; a < size(); a += 2) out.push_back(a);
    return out;
  }

  /// Decimal for Z2K; length-n bit string, constant term first, for TRUNC2.
  std::string format(Code a) const {
    if (spec_.family == Family::Z2K) return std::to_string(a);
    std::string s(spec_.n, '0');
    for (unsigned i = 0; i < spec_.n; ++i)
      if ((a >> i) & 1u) s[i] = '1';
    return s;
  }

  Code parse(std::string_view text) const {
    if (text.empty()) throw ParseError("empty element text");
    if (spec_.family == Family::Z2K) {
      std::uint64_t v = 0;
      for (char ch : text) {
        if (ch < '0' || ch > '9' || v >= size())
          throw ParseError("bad element '" + std::string(text) + "' for " + spec_.to_string());
        v = v * 10 + static_cast<unsigned>(ch - '0');
      }
      if (v >= size())
        throw ParseError("element '" + std::string(text) + "' out of range for " + spec_.to_string());
      return static_cast<Code>(v);
    }
    if (text.size() > spec_.n)
      throw ParseError("element '" + std::string(text) + "' has degree >= " + std::to_string(spec_.n));
    Code v = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') v |= Code{1} << i;
      else if (text[i] != '0') throw ParseError("bad bit string '" + std::string(text) + "'");
    }
    return v;
  }

 private:
  RingSpec spec_;
  std::vector<Code> inv_;
  std::vector<Code> mul_table_;
};

/// Self-describing element value with spec-checked arithmetic.
struct RingElement {
  RingSpec spec;
  Code repr = 0;

  auto operator<=>(const RingElement&) const = default;
};

namespace detail {
inline const RingSpec& common_spec(const RingElement& a, const RingElement& b) {
  if (a.spec != b.spec)
    throw SpecMismatch("operands from " + a.spec.to_string() + " and " + b.spec.to_string());
  return a.spec;
}
}  // namespace detail

inline RingElement add(const RingElement& a, const RingElement& b) {
  const auto& s = detail::common_spec(a, b);
  return {s, arith::add(s, a.repr, b.repr)};
}
inline RingElement mul(const RingElement& a, const RingElement& b) {
  const auto& s = detail::common_spec(a, b);
  return {s, arith::mul(s, a.repr, b.repr)};
}
inline RingElement neg(const RingElement& a) { return {a.spec, arith::neg(a.spec, a.repr)}; }
inline RingElement inv(const RingElement& a) { return {a.spec, arith::inv(a.spec, a.repr)}; }
inline bool is_unit(const RingElement& a) { return arith::is_unit(a.spec, a.repr); }
inline unsigned residue(const RingElement& a) { return arith::residue(a.spec, a.repr); }

inline std::vector<RingElement> enumerate_elements(const RingSpec& s) {
  std::vector<RingElement> out;
  for (Code c : Ring(s).elements()) out.push_back({s, c});
  return out;
}
inline std::vector<RingElement> enumerate_units(const RingSpec& s) {
  std::vector<RingElement> out;
  for (Code c : Ring(s).units()) out.push_back({s, c});
  return out;
}
inline std::vector<RingElement> enumerate_maximal_ideal(const RingSpec& s) {
  std::vector<RingElement> out;
  for (Code c : Ring(s).maximal_ideal()) out.push_back({s, c});
  return out;
}

/// True when the canonical surjection source -> target exists.
inline bool has_projection(const RingSpec& source, const RingSpec& target) {
  return source.family == target.family && source.n >= target.n;
}

}  // namespace gwsym
