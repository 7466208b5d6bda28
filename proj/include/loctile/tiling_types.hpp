#pragma once

#include "loctile/group.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace loctile {

class TilingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tile {
  Element center;
  FiniteSubset shape;

  FiniteSubset cells() const { return right_translate(shape, center); }
  friend bool operator==(const Tile&, const Tile&) = default;
};

/// Centers are window points; tiles are kept sorted by center. Centers not
/// listed carry the empty symbol. `interior` is the region on which the
/// producing algorithm states its guarantees, when it states one.
struct ApproximateTiling {
  FiniteSubset window;
  FiniteSubset shape_universe;
  std::vector<Tile> tiles;
  std::optional<FiniteSubset> interior;

  FiniteSubset center_set() const;
  /// Union of all tiles S(g)g.
  FiniteSubset footprint() const;
  /// Window points not covered by any tile.
  FiniteSubset remainder() const;
  const Tile* tile_at(const Element& center) const;
  void sort_tiles();

  friend bool operator==(const ApproximateTiling&, const ApproximateTiling&) = default;
};

/// T(g) = s when g = s c for a tile (S, c) with s in S; empty when uncovered.
struct RelativePosition {
  FiniteSubset window;
  std::vector<std::optional<Element>> position;
};

}  // namespace loctile
