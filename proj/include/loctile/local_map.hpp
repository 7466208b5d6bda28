#pragma once

#include "loctile/group.hpp"
#include "loctile/parallel.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loctile {

class LocalMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {g in A : Wg inside A}.
FiniteSubset interior(const FiniteSubset& a, const FiniteSubset& w);
/// interior applied k times with the same W.
FiniteSubset interior_iterated(const FiniteSubset& a, const FiniteSubset& w, std::size_t k);

template <class T>
struct Alphabet {
  std::string name;
  std::function<bool(const T&)> contains = [](const T&) { return true; };
};

/// Values aligned with the sorted domain.
template <class T>
struct PartialConfiguration {
  FiniteSubset domain;
  std::vector<T> values;

  const T* find(const Element& g) const {
    const auto i = domain.position(g);
    return i == FiniteSubset::npos ? nullptr : &values[i];
  }
  friend bool operator==(const PartialConfiguration&, const PartialConfiguration&) = default;
};

template <class T>
PartialConfiguration<T> right_translate(const PartialConfiguration<T>& c, const Element& h) {
  // x -> xh preserves order only for central h, so re-sort through pairs.
  std::vector<std::pair<Element, T>> moved;
  moved.reserve(c.values.size());
  for (std::size_t i = 0; i < c.values.size(); ++i) moved.emplace_back(mul(c.domain[i], h), c.values[i]);
  std::sort(moved.begin(), moved.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  PartialConfiguration<T> out;
  std::vector<Element> dom;
  for (auto& [g, v] : moved) {
    dom.push_back(g);
    out.values.push_back(std::move(v));
  }
  out.domain = FiniteSubset(c.domain.spec(), std::move(dom));
  return out;
}

template <class T>
PartialConfiguration<T> restrict_to(const PartialConfiguration<T>& c, const FiniteSubset& region) {
  PartialConfiguration<T> out;
  std::vector<Element> dom;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (region.contains(c.domain[i])) {
      dom.push_back(c.domain[i]);
      out.values.push_back(c.values[i]);
    }
  }
  out.domain = FiniteSubset(c.domain.spec(), std::move(dom));
  return out;
}

enum class EvalMode {
  PerPosition,  // evaluate the rule on the sampled pattern at every interior point
  Bulk,         // run the whole-configuration evaluator, then restrict to the interior
};

/// Output at g is rule((x_{hg})_{h in W}); the pattern is ordered like the
/// sorted window. An optional bulk evaluator computes the same values for a
/// whole configuration at once; only its values on the interior are used.
template <class In, class Out>
struct LocalMap {
  using Rule = std::function<Out(std::span<const In>)>;
  using Bulk = std::function<PartialConfiguration<Out>(const PartialConfiguration<In>&)>;

  FiniteSubset window;
  Alphabet<In> input;
  Alphabet<Out> output;
  Rule rule;
  Bulk bulk;
};

namespace detail {

template <class T>
void check_alphabet(const Alphabet<T>& alphabet, const T& v) {
  if (!alphabet.contains(v)) throw LocalMapError("alphabet violation");
}

// idx[i][j] = position of sub[j] * outer[i] in `whole`.
inline std::vector<std::vector<std::size_t>> product_positions(const FiniteSubset& sub,
                                                               const FiniteSubset& outer,
                                                               const FiniteSubset& whole) {
  std::vector<std::vector<std::size_t>> idx(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    for (const auto& s : sub) idx[i].push_back(whole.position(mul(s, outer[i])));
  }
  return idx;
}

}  // namespace detail

template <class In, class Out>
PartialConfiguration<Out> apply_local(const LocalMap<In, Out>& map,
                                      const PartialConfiguration<In>& config,
                                      EvalMode mode = EvalMode::PerPosition) {
  const FiniteSubset inner = interior(config.domain, map.window);
  PartialConfiguration<Out> out;
  out.domain = inner;
  if (inner.empty()) return out;

  if (mode == EvalMode::Bulk && map.bulk) {
    for (const auto& v : config.values) detail::check_alphabet(map.input, v);
    const auto full = map.bulk(config);
    out.values.reserve(inner.size());
    for (const auto& g : inner) {
      const Out* v = full.find(g);
      if (!v) throw LocalMapError("bulk evaluator left " + to_string(g) + " undefined");
      out.values.push_back(*v);
    }
    return out;
  }

  const ElementIndex index(config.domain);
  out.values.resize(inner.size());
  parallel_for(inner.size(), [&](std::size_t lo, std::size_t hi) {
    std::vector<In> pattern(map.window.size());
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < map.window.size(); ++j) {
        pattern[j] = config.values[index.find(mul(map.window[j], inner[i]))];
        detail::check_alphabet(map.input, pattern[j]);
      }
      out.values[i] = map.rule(std::span<const In>(pattern));
    }
  });
  return out;
}

/// The pair map. Window W_f u W_g.
template <class In, class A, class B>
LocalMap<In, std::pair<A, B>> join(const LocalMap<In, A>& f, const LocalMap<In, B>& g) {
  LocalMap<In, std::pair<A, B>> out;
  out.window = set_union(f.window, g.window);
  out.input = f.input;
  out.output.name = "(" + f.output.name + "," + g.output.name + ")";
  out.output.contains = [fa = f.output.contains, ga = g.output.contains](const std::pair<A, B>& v) {
    return fa(v.first) && ga(v.second);
  };
  std::vector<std::size_t> fi, gi;
  for (const auto& w : f.window) fi.push_back(out.window.position(w));
  for (const auto& w : g.window) gi.push_back(out.window.position(w));
  out.rule = [f, g, fi, gi](std::span<const In> p) {
    std::vector<In> fp, gp;
    for (auto i : fi) fp.push_back(p[i]);
    for (auto i : gi) gp.push_back(p[i]);
    return std::pair<A, B>(f.rule(fp), g.rule(gp));
  };
  if (f.bulk && g.bulk) {
    out.bulk = [f, g](const PartialConfiguration<In>& c) {
      const auto x = f.bulk(c);
      const auto y = g.bulk(c);
      PartialConfiguration<std::pair<A, B>> r;
      std::vector<Element> dom;
      for (std::size_t i = 0; i < x.values.size(); ++i) {
        if (const B* v = y.find(x.domain[i])) {
          dom.push_back(x.domain[i]);
          r.values.emplace_back(x.values[i], *v);
        }
      }
      r.domain = FiniteSubset(c.domain.spec(), std::move(dom));
      return r;
    };
  }
  return out;
}

/// g after f. Window W_f W_g: the output at x reads f's outputs at W_g x,
/// each of which reads the input at W_f h x.
template <class In, class Mid, class Out>
LocalMap<In, Out> compose(const LocalMap<Mid, Out>& g, const LocalMap<In, Mid>& f) {
  if (g.input.name != f.output.name) {
    throw LocalMapError("alphabet mismatch: '" + f.output.name + "' feeds '" + g.input.name + "'");
  }
  LocalMap<In, Out> out;
  out.window = product_set(f.window, g.window);
  out.input = f.input;
  out.output = g.output;
  const auto idx = detail::product_positions(f.window, g.window, out.window);
  out.rule = [f, g, idx](std::span<const In> p) {
    std::vector<Mid> mid(idx.size());
    std::vector<In> fp(f.window.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx[i].size(); ++j) fp[j] = p[idx[i][j]];
      mid[i] = f.rule(fp);
    }
    return g.rule(mid);
  };
  if (f.bulk && g.bulk) {
    out.bulk = [f, g](const PartialConfiguration<In>& c) {
      return apply_local(g, apply_local(f, c, EvalMode::Bulk), EvalMode::Bulk);
    };
  }
  return out;
}

template <class T>
LocalMap<T, T> identity_map(const GroupSpec& spec, Alphabet<T> alphabet) {
  LocalMap<T, T> m;
  m.window = singleton(identity(spec));
  m.input = alphabet;
  m.output = alphabet;
  m.rule = [](std::span<const T> p) { return p[0]; };
  m.bulk = [](const PartialConfiguration<T>& c) { return c; };
  return m;
}

struct EquivarianceReport {
  bool passes = true;
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  std::optional<Element> first_mismatch;
};

/// Compares apply_local on the right-translated configuration with the
/// right translate of apply_local on the original, over the common interior.
template <class In, class Out>
EquivarianceReport equivariance_report(const LocalMap<In, Out>& map,
                                       const PartialConfiguration<In>& config, const Element& h,
                                       EvalMode mode = EvalMode::Bulk) {
  const auto base = apply_local(map, config, mode);
  const auto moved = apply_local(map, right_translate(config, h), mode);
  EquivarianceReport r;
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    const Out* v = moved.find(mul(base.domain[i], h));
    if (!v) continue;
    ++r.compared;
    if (!(*v == base.values[i])) {
      if (!r.first_mismatch) r.first_mismatch = base.domain[i];
      ++r.mismatches;
    }
  }
  r.passes = r.mismatches == 0;
  return r;
}

template <class In, class Out>
bool equivariance_check(const LocalMap<In, Out>& map, const PartialConfiguration<In>& config,
                        const Element& h, EvalMode mode = EvalMode::Bulk) {
  return equivariance_report(map, config, h, mode).passes;
}

}  // namespace loctile
