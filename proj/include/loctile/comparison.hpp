#pragma once

#include "loctile/group.hpp"
#include "loctile/rational.hpp"
#include "loctile/tiling_types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace loctile {

class ComparisonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts in [0, cap] on a finite domain, aligned with the sorted domain.
/// Points outside the domain count zero.
struct Multiset {
  FiniteSubset domain;
  std::vector<std::int64_t> counts;
  std::int64_t cap = 1;

  std::int64_t count_at(const Element& g) const;
  std::int64_t total() const;
  friend bool operator==(const Multiset&, const Multiset&) = default;
};

/// Indicator multiset of a set (cap 1).
Multiset indicator(const FiniteSubset& s);
/// Drops zero entries.
Multiset make_multiset(const GroupSpec& spec, std::vector<std::pair<Element, std::int64_t>> entries,
                       std::int64_t cap);

/// Source h sends its i-th unit to R(h)_i h. Sources are sorted and carry
/// nonempty sequences.
struct SubequivalenceWitness {
  FiniteSubset displacements;
  std::vector<std::pair<Element, std::vector<Element>>> assignment;

  const std::vector<Element>* sequence_at(const Element& source) const;
  std::size_t units() const;
  friend bool operator==(const SubequivalenceWitness&, const SubequivalenceWitness&) = default;
};

/// Builds a witness from (source, targets) lists: displacements are
/// target * source^-1, each sequence ordered by target.
SubequivalenceWitness witness_from_routes(
    const GroupSpec& spec, std::vector<std::pair<Element, std::vector<Element>>> routes);

enum class Side { Upper, Lower };

struct ProfileReport {
  bool passes = true;
  Element extremal_translate;
  std::int64_t extremal_sum = 0;
  std::size_t translates = 0;
};

/// Upper: every admissible translate has sum_{g in L} a(gh) < bound |L|.
/// Lower: every one has sum > bound |L|. Admissible means Lh inside the domain.
ProfileReport profile_report(const Multiset& a, const FiniteSubset& l, const Rational& bound,
                             Side side);
bool check_profile(const Multiset& a, const FiniteSubset& l, const Rational& bound, Side side);

/// Greedy lexicographic routing on one tile given as count vectors aligned
/// with the sorted tile. Returns target indices, unit by unit in source
/// order. Throws ComparisonError("capacity exceeded") unless sum a < sum b.
std::vector<std::size_t> tile_match_units(std::span<const std::int64_t> a,
                                          std::span<const std::int64_t> b);
/// Checks per-source lengths and per-target capacities of a unit routing.
bool verify_tile_units(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                       std::span<const std::size_t> targets);

/// Per-tile witness on Q; displacements lie in QQ^-1.
SubequivalenceWitness tile_match(const FiniteSubset& q, const Multiset& a, const Multiset& b);

/// Applies tile_match inside each tile. Tiles carrying no mass of a are
/// skipped. Throws ComparisonError naming the tile center when a tile has
/// sum a >= sum b, and when a has mass outside every tile.
SubequivalenceWitness comparison_from_tiling(const ApproximateTiling& t, const Multiset& a,
                                             const Multiset& b);

/// For every target g, #{(i,h) : R(h)_i h = g} <= b(g), every source h
/// carries exactly a(h) units, and displacements lie in D. Strict also asks
/// for equality at every target.
bool verify_witness(const SubequivalenceWitness& r, const Multiset& a, const Multiset& b,
                    bool strict);

/// Inverse of an equivalence, from b to a, canonical (sequences sorted by
/// target), so inversion is an involution on canonical witnesses.
/// Throws ComparisonError("not invertible") unless verify_witness(strict).
SubequivalenceWitness invert_equivalence(const SubequivalenceWitness& r, const Multiset& a,
                                         const Multiset& b);

/// Routes each unit of r1 onward through r2. The k-th unit arriving at g,
/// arrivals ranked by (source, index), follows R2(g)_k.
SubequivalenceWitness compose_witnesses(const SubequivalenceWitness& r2,
                                        const SubequivalenceWitness& r1);

/// Multiset of arrivals: count at g of units routed to g.
Multiset image_of(const SubequivalenceWitness& r, const GroupSpec& spec, std::int64_t cap);

/// A witness for (a restricted to the region) into b, with the region on
/// which the provider can vouch for it.
struct ComparisonResult {
  SubequivalenceWitness witness;
  FiniteSubset region;
};

/// Produces a subequivalence from the set A into the set B.
using ComparisonProvider =
    std::function<ComparisonResult(const FiniteSubset& a, const FiniteSubset& b)>;

}  // namespace loctile
