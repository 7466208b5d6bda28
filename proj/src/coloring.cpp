#include "loctile/coloring.hpp"

#include "loctile/parallel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

namespace loctile {

namespace {

void require_base_set(const FiniteSubset& f) {
  if (f.empty() || !is_symmetric_with_identity(f)) throw ColoringError("base set not symmetrized");
}

std::vector<Element> non_identity(const FiniteSubset& f) {
  std::vector<Element> out;
  for (const auto& g : f) {
    if (!is_identity(g)) out.push_back(g);
  }
  return out;
}

// Least color in [1, ...) missing from `used`.
Color least_free(std::vector<Color>& used) {
  std::sort(used.begin(), used.end());
  Color c = 1;
  for (Color u : used) {
    if (u == c) ++c;
    else if (u > c) break;
  }
  return c;
}

// Lexicographic greedy over the uncolored points of `domain`.
void greedy_fill(const FiniteSubset& domain, const FiniteSubset& f, std::vector<Color>& colors) {
  const ElementIndex index(domain);
  const auto moves = non_identity(f);
  std::vector<Color> used;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (colors[i] != 0) continue;
    used.clear();
    for (const auto& g : moves) {
      const auto j = index.find(mul(g, domain[i]));
      if (j != ElementIndex::npos && colors[j] != 0) used.push_back(colors[j]);
    }
    colors[i] = least_free(used);
  }
}

Color max_color(const std::vector<Color>& colors) {
  Color m = 1;
  for (Color c : colors) m = std::max(m, c);
  return m;
}

}  // namespace

Color ProperColoring::color_of(const Element& g) const {
  const auto i = domain.position(g);
  return i == FiniteSubset::npos ? 0 : colors[i];
}

Color palette_bound(const FiniteSubset& f) {
  Color b = 1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (b > std::numeric_limits<Color>::max() / 3) return std::numeric_limits<Color>::max();
    b *= 3;
  }
  return b;
}

bool is_proper(const ProperColoring& c) {
  if (c.colors.size() != c.domain.size()) return false;
  if (c.palette < 1 || c.palette > palette_bound(c.base_set)) return false;
  const ElementIndex index(c.domain);
  const auto moves = non_identity(c.base_set);
  for (std::size_t i = 0; i < c.domain.size(); ++i) {
    if (c.colors[i] < 1 || c.colors[i] > c.palette) return false;
    for (const auto& g : moves) {
      const auto j = index.find(mul(g, c.domain[i]));
      if (j != ElementIndex::npos && c.colors[j] == c.colors[i]) return false;
    }
  }
  return true;
}

ProperColoring greedy_coloring(const FiniteSubset& window, const FiniteSubset& f) {
  require_base_set(f);
  ProperColoring c;
  c.base_set = f;
  c.domain = window;
  c.colors.assign(window.size(), 0);
  greedy_fill(window, f, c.colors);
  c.palette = max_color(c.colors);
  return c;
}

ProperColoring extend_coloring(const ProperColoring& partial, const FiniteSubset& window) {
  require_base_set(partial.base_set);
  if (!is_proper(partial)) throw ColoringError("improper input");
  if (!is_subset(partial.domain, window)) throw ColoringError("partial domain not inside window");
  ProperColoring c;
  c.base_set = partial.base_set;
  c.domain = window;
  c.colors.assign(window.size(), 0);
  for (std::size_t i = 0; i < partial.domain.size(); ++i) {
    c.colors[window.position(partial.domain[i])] = partial.colors[i];
  }
  greedy_fill(window, partial.base_set, c.colors);
  c.palette = std::max(partial.palette, max_color(c.colors));
  return c;
}

ProperColoring seeded_coloring(const FiniteSubset& window, const FiniteSubset& f,
                               std::uint64_t seed, double fraction) {
  require_base_set(f);
  std::mt19937_64 rng(seed);
  const ElementIndex index(window);
  const auto moves = non_identity(f);
  const auto budget = static_cast<std::uint64_t>(f.size());
  std::vector<Color> colors(window.size(), 0);
  const auto picks = static_cast<std::size_t>(fraction * static_cast<double>(window.size()));
  for (std::size_t k = 0; k < picks; ++k) {
    const std::size_t i = rng() % window.size();
    const Color c = static_cast<Color>(rng() % budget) + 1;
    if (colors[i] != 0) continue;
    const bool clash = std::any_of(moves.begin(), moves.end(), [&](const Element& g) {
      const auto j = index.find(mul(g, window[i]));
      return j != ElementIndex::npos && colors[j] == c;
    });
    if (!clash) colors[i] = c;
  }
  greedy_fill(window, f, colors);
  return {f, window, colors, max_color(colors)};
}

ProperColoring reduce_palette(const ProperColoring& x, const FiniteSubset& f) {
  require_base_set(f);
  require_base_set(x.base_set);
  if (!is_subset(f, x.base_set)) throw ColoringError("target base set not inside input base set");
  if (!is_proper(x)) throw ColoringError("improper input");

  std::map<Color, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < x.colors.size(); ++i) classes[x.colors[i]].push_back(i);

  const ElementIndex index(x.domain);
  const auto moves = non_identity(f);
  ProperColoring y;
  y.base_set = f;
  y.domain = x.domain;
  y.colors.assign(x.domain.size(), 0);
  for (const auto& [k, members] : classes) {
    // Members of one class are never F-adjacent, so they can be assigned
    // independently against the values committed by earlier classes.
    std::vector<Color> fresh(members.size());
    parallel_for(members.size(), [&](std::size_t lo, std::size_t hi) {
      std::vector<Color> used;
      for (std::size_t m = lo; m < hi; ++m) {
        used.clear();
        const auto& g = x.domain[members[m]];
        for (const auto& h : moves) {
          const auto j = index.find(mul(h, g));
          if (j != ElementIndex::npos && x.colors[j] < k) used.push_back(y.colors[j]);
        }
        fresh[m] = least_free(used);
      }
    });
    for (std::size_t m = 0; m < members.size(); ++m) y.colors[members[m]] = fresh[m];
  }
  y.palette = max_color(y.colors);
  return y;
}

PartialConfiguration<Color> as_configuration(const ProperColoring& c) {
  return {c.domain, c.colors};
}

LocalMap<Color, Color> palette_reduction_map(const FiniteSubset& f_prime, const FiniteSubset& f,
                                             Color p) {
  require_base_set(f);
  require_base_set(f_prime);
  if (!is_subset(f, f_prime)) throw ColoringError("target base set not inside input base set");
  if (p < 1) throw ColoringError("palette must be positive");

  LocalMap<Color, Color> m;
  m.window = power_set(f, static_cast<std::size_t>(p));
  m.input = {"colors<=" + std::to_string(p), [p](const Color& c) { return c >= 1 && c <= p; }};
  const Color out_max = static_cast<Color>(f.size()) + 1;
  m.output = {"colors<=" + std::to_string(out_max),
              [out_max](const Color& c) { return c >= 1 && c <= out_max; }};

  const FiniteSubset w = m.window;
  const auto moves = non_identity(f);
  std::vector<std::vector<std::size_t>> nb(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const auto& h : moves) nb[i].push_back(w.position(mul(h, w[i])));
  }
  const std::size_t origin = w.position(identity(w.spec()));

  m.rule = [nb, origin](std::span<const Color> x) {
    std::vector<Color> memo(x.size(), 0);
    auto value = [&](auto&& self, std::size_t i) -> Color {
      if (memo[i] != 0) return memo[i];
      std::vector<Color> used;
      for (auto j : nb[i]) {
        if (j == FiniteSubset::npos) continue;
        if (x[j] < x[i]) used.push_back(self(self, j));
      }
      return memo[i] = least_free(used);
    };
    return value(value, origin);
  };
  m.bulk = [f, f_prime, p](const PartialConfiguration<Color>& c) {
    ProperColoring x{f_prime, c.domain, c.values, p};
    const auto y = reduce_palette(x, f);
    return PartialConfiguration<Color>{y.domain, y.colors};
  };
  return m;
}

}  // namespace loctile
