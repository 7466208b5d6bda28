#pragma once

#include "loctile/coloring.hpp"
#include "loctile/comparison.hpp"
#include "loctile/invariance.hpp"
#include "loctile/local_map.hpp"
#include "loctile/rational.hpp"
#include "loctile/tiling_types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace loctile {

/// Dependence window base^power, kept symbolic because the expanded set can
/// be far larger than the window it is applied to.
struct Collar {
  FiniteSubset base;
  std::size_t power = 1;

  FiniteSubset expand(std::size_t cap = kDefaultElementCap) const { return power_set(base, power, cap); }
};

/// interior(window, base^power), computed by iterating interior(., base).
/// Equal to the expanded form whenever base contains the identity.
FiniteSubset collar_interior(const FiniteSubset& window, const Collar& collar);

/// Smallest n with (1-eps)^n < eps.
std::int64_t ow_level_count(const Rational& eps);
/// Largest beta = 2^-k with (1+beta)^-1 (1 - (1-(1+beta)eps)^n) > 1 - eps.
Rational ow_beta(const Rational& eps, std::int64_t n);
/// Exact evaluation of the beta inequality.
bool ow_beta_admissible(const Rational& eps, std::int64_t n, const Rational& beta);

struct OwOptions {
  FolnerFamily family = FolnerFamily::Default;
  /// Largest family parameter a scale may use.
  std::int64_t max_scale_parameter = 64;
  /// Required (F_i^-1, tol)-invariance of later scales; defaults to beta(1-eps).
  std::optional<Rational> nesting_tolerance;
};

struct OwParameters {
  FiniteSubset k;
  Rational delta;
  Rational eps;
  std::int64_t n = 1;
  Rational beta;
  /// Distinct scales, strictly increasing. Level i (1-based) of the n levels
  /// runs with scale F_{n-i+1}; F_n is the last entry and the first n - s
  /// levels below the chain reuse the smallest entry.
  std::vector<FiniteSubset> scales;
  FolnerFamily family = FolnerFamily::Default;
  Rational nesting_tolerance;
  /// True when all n scales are distinct and meet the nesting requirement.
  bool nesting_certified = false;
  /// Coloring base set symmetrize(F_n^-1 F_n) and the palette it admits.
  FiniteSubset base_set;
  Color palette = 1;

  const FiniteSubset& largest_scale() const { return scales.back(); }
  /// Scale used at level i in [1, n].
  const FiniteSubset& level_scale(std::int64_t i) const;
  /// Levels that can add tiles: the distinct scales, largest first.
  std::size_t effective_levels() const { return scales.size(); }
};

/// Throws InvarianceError when delta is outside (0, 1/2) or no scale exists.
OwParameters ow_parameters(const GroupSpec& spec, const FiniteSubset& k, const Rational& delta,
                           const OwOptions& options = {});

/// Runs levels i = 1..n and colors j = 1..palette in lexicographic order.
/// A point g of color j becomes a center with shape F' = {f in Q : fg
/// uncovered} when Qg lies in the window, g is not yet a center and
/// |F'| >= (1-eps)|Q|. The returned tiling declares interior(window, F).
ApproximateTiling ow_quasi_tiling(const ProperColoring& coloring, const OwParameters& params);

/// F^(s p + 1) with s the number of effective levels.
Collar ow_dependence_collar(const OwParameters& params);

/// ow_quasi_tiling as a local rule: output at g is the shape of the tile
/// centered at g, or nothing.
using ShapeOrStar = std::optional<FiniteSubset>;
LocalMap<Color, ShapeOrStar> ow_local_map(const OwParameters& params);

struct TilingReport {
  bool disjoint = true;
  bool shapes_invariant = true;
  bool within_window = true;
  Rational covering_fraction{0};
  bool exact_on_interior = false;
  std::size_t interior_size = 0;
  std::size_t covered_in_interior = 0;
  std::size_t tiles = 0;
  std::size_t non_invariant_shapes = 0;
};

TilingReport verify_tiling(const ApproximateTiling& t, const FiniteSubset& k, const Rational& delta,
                           const FiniteSubset& collar);
/// Covering and exactness measured on an explicit region.
TilingReport verify_tiling_on(const ApproximateTiling& t, const FiniteSubset& k,
                              const Rational& delta, const FiniteSubset& region);
/// Uses the tiling's declared interior, or the whole window when absent.
TilingReport verify_tiling(const ApproximateTiling& t, const FiniteSubset& k, const Rational& delta);

/// Throws TilingError("not a tiling") on overlapping tiles.
RelativePosition relative_position(const ApproximateTiling& t);
/// Tiles read back from T, clipped to the window.
ApproximateTiling tiling_from_relative_position(const RelativePosition& rp,
                                                const FiniteSubset& shape_universe);

/// Translates of [0,N)^d at points of (NZ)^d for Z^d; for the Heisenberg
/// group, central intervals {(0,0,j) : 0 <= j < N} anchored at c = 0 mod N
/// in every centre coset. Only tiles inside the window are kept; the declared
/// interior is interior(window, QQ^-1).
ApproximateTiling base_lattice_tiling(const FiniteSubset& window, std::int64_t n);

/// Lexicographically first floor(kappa |Q|) elements of Q.
FiniteSubset mark_subset(const FiniteSubset& q, const Rational& kappa);
/// Union of mark_subset(S(g)) g over all tiles.
FiniteSubset marked_set(const ApproximateTiling& t, const Rational& kappa);

struct ExactifyStats {
  std::size_t remainder_matched = 0;
  Rational max_growth{1};
};

/// Matches the remainder inside the declared interior into the marked
/// portions of the tiles and grows each shape by the points routed into it:
/// S'(g) = S(g) u A_g g^-1. The output interior is the input interior
/// intersected with the provider's region.
ApproximateTiling exactify(const ApproximateTiling& t, const ComparisonProvider& comparison,
                           const Rational& kappa, ExactifyStats* stats = nullptr);

/// Comparison through an exact base lattice tiling of the window.
ComparisonProvider lattice_comparison(const FiniteSubset& window, std::int64_t n);

/// Comparison provider for the Heisenberg group built from exact tilings of
/// the centre cosets. Sets are first spread over L: the part of C in an
/// interval tile is split round-robin into |L| parts C_r, and the units of
/// C_r move by r^-1. The spread multisets are compared along the centre,
/// and the three routings are composed.
class OvergroupComparison {
 public:
  OvergroupComparison(FiniteSubset window, FiniteSubset l, Rational gamma, std::int64_t base_n);

  ComparisonResult operator()(const FiniteSubset& a, const FiniteSubset& b);

  struct Spread {
    SubequivalenceWitness witness;  // from the set onto the multiset
    Multiset multiset;
    FiniteSubset kept;              // points whose units stayed in the footprint
  };
  Spread spread(const FiniteSubset& c);

  const ApproximateTiling& centre_tiling() const { return tiling_; }
  const FiniteSubset& region() const { return region_; }
  const FiniteSubset& spread_set() const { return l_; }
  /// Every part size produced by spread(), with the matching portion size.
  const std::vector<std::pair<std::size_t, std::size_t>>& partition_log() const { return log_; }

 private:
  FiniteSubset window_;
  FiniteSubset l_;
  Rational gamma_;
  std::int64_t base_n_;
  ApproximateTiling tiling_;
  FiniteSubset footprint_;
  FiniteSubset region_;
  std::vector<std::pair<std::size_t, std::size_t>> log_;
};

/// Round-robin part sizes of a portion of size c over l parts.
std::vector<std::size_t> partition_sizes(std::size_t c, std::size_t l);

std::shared_ptr<OvergroupComparison> extend_to_overgroup(const FiniteSubset& window,
                                                         const FiniteSubset& l,
                                                         const Rational& gamma,
                                                         std::int64_t base_n);

}  // namespace loctile
