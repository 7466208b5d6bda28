#include "loctile/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace loctile {

namespace {

using Point = std::pair<std::int64_t, std::int64_t>;

struct Frame {
  std::int64_t x0, y1;  // min x, max y + 1 over the window
  Point map(const Point& p) const { return {(p.first - x0) * kSvgUnit, (y1 - p.second) * kSvgUnit}; }
};

// Directed unit edges with the set on the left, chained into closed loops.
std::vector<std::vector<Point>> boundary_loops(const std::set<Point>& cells) {
  std::multimap<Point, Point> next;
  auto in = [&](std::int64_t x, std::int64_t y) { return cells.count({x, y}) > 0; };
  for (const auto& [x, y] : cells) {
    if (!in(x, y - 1)) next.emplace(Point{x, y}, Point{x + 1, y});
    if (!in(x + 1, y)) next.emplace(Point{x + 1, y}, Point{x + 1, y + 1});
    if (!in(x, y + 1)) next.emplace(Point{x + 1, y + 1}, Point{x, y + 1});
    if (!in(x - 1, y)) next.emplace(Point{x, y + 1}, Point{x, y});
  }
  std::vector<std::vector<Point>> loops;
  while (!next.empty()) {
    auto it = next.begin();
    const Point start = it->first;
    std::vector<Point> loop{start};
    Point cur = it->second;
    next.erase(it);
    while (cur != start) {
      loop.push_back(cur);
      it = next.find(cur);
      cur = it->second;
      next.erase(it);
    }
    // Drop collinear vertices.
    std::vector<Point> corners;
    const auto n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = loop[(i + n - 1) % n];
      const auto& b = loop[i];
      const auto& c = loop[(i + 1) % n];
      if ((b.first - a.first) * (c.second - b.second) != (b.second - a.second) * (c.first - b.first)) {
        corners.push_back(b);
      }
    }
    loops.push_back(std::move(corners));
  }
  return loops;
}

std::string path_data(const std::set<Point>& cells, const Frame& frame) {
  std::ostringstream d;
  for (const auto& loop : boundary_loops(cells)) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto p = frame.map(loop[i]);
      d << (i == 0 ? "M" : "L") << p.first << ' ' << p.second;
    }
    d << 'Z';
  }
  return d.str();
}

std::set<Point> as_points(const FiniteSubset& s) {
  std::set<Point> out;
  for (const auto& g : s) out.emplace(g[0], g[1]);
  return out;
}

}  // namespace

std::string tile_fill(const Element& center) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : center.coords()) {
    auto u = static_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  // Channels in [64, 223].
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<unsigned>(64 + (h & 0xff) % 160),
                static_cast<unsigned>(64 + ((h >> 8) & 0xff) % 160),
                static_cast<unsigned>(64 + ((h >> 16) & 0xff) % 160));
  return buf;
}

std::string render_svg(const ApproximateTiling& t) {
  const auto spec = t.window.spec();
  if (spec != GroupSpec::lattice(2)) throw TilingError("render needs a Z2 tiling");
  if (t.window.empty()) throw TilingError("empty window");
  std::int64_t x0 = t.window[0][0], x1 = x0, y0 = t.window[0][1], y1 = y0;
  for (const auto& g : t.window) {
    x0 = std::min(x0, g[0]);
    x1 = std::max(x1, g[0]);
    y0 = std::min(y0, g[1]);
    y1 = std::max(y1, g[1]);
  }
  const Frame frame{x0, y1 + 1};
  const auto width = (x1 - x0 + 1) * kSvgUnit, height = (y1 - y0 + 1) * kSvgUnit;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  for (const auto& tile : t.tiles) {
    out << "<path class=\"tile\" fill=\"" << tile_fill(tile.center) << "\" fill-rule=\"evenodd\" d=\""
        << path_data(as_points(tile.cells()), frame) << "\"/>\n";
  }
  const auto rest = t.remainder();
  if (!rest.empty()) {
    out << "<path class=\"remainder\" fill=\"#000000\" fill-rule=\"evenodd\" d=\""
        << path_data(as_points(rest), frame) << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace loctile
