#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvapx/ext_int.hpp"

namespace mvapx {

using IntVector = std::vector<std::int64_t>;

}  // namespace mvapx

namespace mvapx::gpoly {

/// Subset of the ground set; bit i stands for element i.
using Subset = std::uint64_t;

/// Largest ground set for operations that enumerate all subsets.
inline constexpr std::size_t kEnumerationCap = 16;
/// Largest ground set representable at all.
inline constexpr std::size_t kMaxGroundSize = 64;

struct GroundSet {
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }
  Subset full() const;
  /// Throws Error(kInvalidInput) on an unknown name.
  std::size_t index_of(const std::string& name) const;
};

struct Border {
  ExtInt lower;  // p(X), finite or -inf
  ExtInt upper;  // b(X), finite or +inf
};

/// Evaluates (p(X), b(X)) for subsets of a fixed-size ground set.
class BorderNode {
 public:
  virtual ~BorderNode() = default;
  virtual std::size_t size() const = 0;
  virtual Border query(Subset x) const = 0;
};

/// A paramodular pair (p, b) over a ground set. Immutable; operations return
/// new pairs that share the underlying evaluators.
class BorderPair {
 public:
  BorderPair(GroundSet ground, std::shared_ptr<const BorderNode> node);

  const GroundSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  Border query(Subset x) const { return node_->query(x); }
  ExtInt p(Subset x) const { return query(x).lower; }
  ExtInt b(Subset x) const { return query(x).upper; }
  const std::shared_ptr<const BorderNode>& node() const { return node_; }

 private:
  GroundSet ground_;
  std::shared_ptr<const BorderNode> node_;
};

/// Throws Error(kGroundSetTooLarge) if the pair exceeds `cap` elements.
void require_enumerable(const BorderPair& pair, std::size_t cap = kEnumerationCap);

struct ParamodularViolation {
  enum class Family { kBordersAtEmptySet, kSupermodularP, kSubmodularB, kCross };
  Family family;
  Subset x;
  Subset y;
  std::string describe(const GroundSet& ground) const;
};

/// First violated inequality, scanning X then Y in mask order. Inequalities
/// with an infinite left-hand side count as satisfied.
std::optional<ParamodularViolation> find_paramodular_violation(const BorderPair& pair);
bool is_paramodular(const BorderPair& pair);

/// Tables indexed by subset mask, 2^|S| entries each. Throws
/// Error(kNotParamodular) naming a violating (X, Y), or kInvalidInput for
/// malformed tables (wrong length, p = +inf, b = -inf).
BorderPair make_explicit(GroundSet ground, std::vector<ExtInt> p, std::vector<ExtInt> b);

/// Same, skipping the paramodularity check. For tables that are
/// paramodular by construction.
BorderPair make_explicit_unchecked(GroundSet ground, std::vector<ExtInt> p,
                                   std::vector<ExtInt> b);

std::int64_t subset_sum(const IntVector& x, Subset y);

bool contains(const BorderPair& pair, const IntVector& x);

/// Restriction to S - z; indices of the remaining elements keep their order.
BorderPair delete_elements(const BorderPair& pair, Subset z);

/// (p - z, b - z). Throws Error(kElementNotInPolyhedron) unless z lies in
/// the pair, which is what keeps the result paramodular.
BorderPair contract(const BorderPair& pair, const IntVector& z);

/// (p - z, b - z) without the membership check.
BorderPair translate(const BorderPair& pair, const IntVector& z);

/// Intersection with the box lo <= x <= hi (entries may be infinite).
/// The new border tables are computed once, over all subsets. Throws
/// Error(kEmptyIntersection) when the intersection has no point.
BorderPair intersect_box(const BorderPair& pair, const std::vector<ExtInt>& lo,
                         const std::vector<ExtInt>& hi);

/// The intersected borders at one subset, evaluated directly from the
/// max/min over all Z' of the defining formula. Used to cross-check the
/// tables built by intersect_box.
Border box_border_by_enumeration(const BorderPair& pair, const std::vector<ExtInt>& lo,
                                 const std::vector<ExtInt>& hi, Subset z);

/// Base polymatroid of b(F) = |V(F)| - comp(F) + r(V) - n + 1 (b(empty) = 0)
/// over the edges of K_n with one loop per vertex, ordered as
/// complete_edges_with_loops(n). comp(F) counts components among the
/// vertices covered by F. The lower border is p(X) = b(S) - b(S - X).
BorderPair graphic_mvtsp_border(std::size_t n, const std::vector<std::int64_t>& r);

/// Calls visit(x) for every integer point of the pair in lexicographic
/// order; stops early when visit returns false. Coordinates range over
/// [p({s}), b({s})], which must be finite.
void for_each_integer_point(const BorderPair& pair,
                            const std::function<bool(const IntVector&)>& visit);

/// All integer points; throws Error(kBudgetExceeded) beyond max_points.
std::vector<IntVector> integer_points(const BorderPair& pair, std::size_t max_points);

}  // namespace mvapx::gpoly
