#pragma once

#include "loctile/group.hpp"
#include "loctile/local_map.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace loctile {

class ColoringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Color = std::int64_t;

/// Colors aligned with the sorted domain, values in [1, palette].
struct ProperColoring {
  FiniteSubset base_set;
  FiniteSubset domain;
  std::vector<Color> colors;
  Color palette = 1;

  Color color_of(const Element& g) const;  // 0 when g is outside the domain
  friend bool operator==(const ProperColoring&, const ProperColoring&) = default;
};

/// 3^|F|, saturated at INT64_MAX.
Color palette_bound(const FiniteSubset& f);

/// Every F-edge {h, gh} inside the domain is bichromatic, colors lie in
/// [1, palette], and palette <= 3^|F|.
bool is_proper(const ProperColoring& c);

/// Lexicographic greedy. Palette is the largest color used, at most |F|.
ProperColoring greedy_coloring(const FiniteSubset& window, const FiniteSubset& f);

/// Keeps the partial colors and greedily colors the rest of the window in
/// lexicographic order.
ProperColoring extend_coloring(const ProperColoring& partial, const FiniteSubset& window);

/// Colors a pseudo-random fraction of the window with random admissible
/// colors in [1, |F|], then completes it with extend_coloring. Deterministic
/// in (window, F, seed, fraction).
ProperColoring seeded_coloring(const FiniteSubset& window, const FiniteSubset& f,
                               std::uint64_t seed, double fraction);

/// Palette reduction from a coloring proper over F' to one proper over F
/// (F inside F'). Color classes of x are processed in ascending order; a point
/// takes the least color unused by its F-neighbours from earlier classes.
ProperColoring reduce_palette(const ProperColoring& x, const FiniteSubset& f);

/// reduce_palette as a local rule with window F^p, valid on inputs proper over
/// f_prime with colors in [1, p].
LocalMap<Color, Color> palette_reduction_map(const FiniteSubset& f_prime, const FiniteSubset& f,
                                             Color p);

PartialConfiguration<Color> as_configuration(const ProperColoring& c);

}  // namespace loctile
