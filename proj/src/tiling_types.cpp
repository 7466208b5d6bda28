#include "loctile/tiling_types.hpp"

#include <algorithm>

namespace loctile {

FiniteSubset ApproximateTiling::center_set() const {
  std::vector<Element> out;
  out.reserve(tiles.size());
  for (const auto& t : tiles) out.push_back(t.center);
  return FiniteSubset(window.spec(), std::move(out));
}

FiniteSubset ApproximateTiling::footprint() const {
  std::vector<Element> out;
  for (const auto& t : tiles) {
    for (const auto& s : t.shape) out.push_back(mul(s, t.center));
  }
  return FiniteSubset(window.spec(), std::move(out));
}

FiniteSubset ApproximateTiling::remainder() const { return set_difference(window, footprint()); }

const Tile* ApproximateTiling::tile_at(const Element& center) const {
  auto it = std::lower_bound(tiles.begin(), tiles.end(), center,
                             [](const Tile& t, const Element& c) { return t.center < c; });
  return it != tiles.end() && it->center == center ? &*it : nullptr;
}

void ApproximateTiling::sort_tiles() {
  std::sort(tiles.begin(), tiles.end(),
            [](const Tile& a, const Tile& b) { return a.center < b.center; });
}

}  // namespace loctile
