#include "loctile/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

namespace loctile {

GroupSpec GroupSpec::lattice(int d) {
  if (d < 1 || d > kMaxRank) {
    throw GroupError("lattice dimension must be in [1, " + std::to_string(kMaxRank) + "]");
  }
  return {GroupKind::IntegerLattice, d};
}

std::string GroupSpec::name() const {
  if (kind == GroupKind::Heisenberg) return "heisenberg";
  return "Z" + std::to_string(dim);
}

Element make_element(const GroupSpec& spec, std::span<const std::int64_t> coords) {
  if (static_cast<int>(coords.size()) != spec.rank()) {
    throw GroupError("element of " + spec.name() + " needs " + std::to_string(spec.rank()) +
                     " coordinates, got " + std::to_string(coords.size()));
  }
  Element g;
  g.kind = spec.kind;
  g.dim = static_cast<std::uint8_t>(spec.dim);
  std::copy(coords.begin(), coords.end(), g.c.begin());
  return g;
}

Element make_element(const GroupSpec& spec, std::initializer_list<std::int64_t> coords) {
  return make_element(spec, std::span<const std::int64_t>(coords.begin(), coords.size()));
}

Element identity(const GroupSpec& spec) {
  Element g;
  g.kind = spec.kind;
  g.dim = static_cast<std::uint8_t>(spec.dim);
  return g;
}

Element mul(const Element& g, const Element& h) {
  if (g.kind != h.kind || g.dim != h.dim) throw GroupError("group mismatch");
  Element r = g;
  if (g.kind == GroupKind::Heisenberg) {
    r.c[0] = g.c[0] + h.c[0];
    r.c[1] = g.c[1] + h.c[1];
    r.c[2] = g.c[2] + h.c[2] + g.c[0] * h.c[1];
    return r;
  }
  for (int i = 0; i < g.dim; ++i) r.c[i] = g.c[i] + h.c[i];
  return r;
}

Element inv(const Element& g) {
  Element r = g;
  if (g.kind == GroupKind::Heisenberg) {
    r.c[0] = -g.c[0];
    r.c[1] = -g.c[1];
    r.c[2] = g.c[0] * g.c[1] - g.c[2];
    return r;
  }
  for (int i = 0; i < g.dim; ++i) r.c[i] = -g.c[i];
  return r;
}

bool is_identity(const Element& g) {
  return std::all_of(g.c.begin(), g.c.end(), [](std::int64_t v) { return v == 0; });
}

std::string to_string(const Element& g) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < g.dim; ++i) {
    if (i) os << ',';
    os << g.c[i];
  }
  os << ')';
  return os.str();
}

std::size_t ElementHash::operator()(const Element& g) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(g.kind);
  for (int i = 0; i < g.dim; ++i) {
    h ^= static_cast<std::uint64_t>(g.c[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

FiniteSubset::FiniteSubset(GroupSpec spec, std::vector<Element> elements, std::size_t cap)
    : spec_(spec), elements_(std::move(elements)) {
  for (const auto& g : elements_) {
    if (g.spec() != spec_) throw GroupError("group mismatch");
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.size() > cap) throw GroupError("element cap exceeded");
}

bool FiniteSubset::contains(const Element& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::size_t FiniteSubset::position(const Element& g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || *it != g) return npos;
  return static_cast<std::size_t>(it - elements_.begin());
}

FiniteSubset singleton(const Element& g) { return FiniteSubset(g.spec(), {g}); }

namespace {

void require_same(const FiniteSubset& a, const FiniteSubset& b) {
  if (!a.empty() && !b.empty() && a.spec() != b.spec()) throw GroupError("group mismatch");
}

GroupSpec common_spec(const FiniteSubset& a, const FiniteSubset& b) {
  return a.empty() ? b.spec() : a.spec();
}

}  // namespace

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b) {
  require_same(a, b);
  std::vector<Element> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSubset(common_spec(a, b), std::move(out));
}

FiniteSubset set_intersection(const FiniteSubset& a, const FiniteSubset& b) {
  require_same(a, b);
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSubset(common_spec(a, b), std::move(out));
}

FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b) {
  require_same(a, b);
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSubset(a.spec(), std::move(out));
}

bool is_subset(const FiniteSubset& a, const FiniteSubset& b) {
  require_same(a, b);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

FiniteSubset product_set(const FiniteSubset& a, const FiniteSubset& b, std::size_t cap) {
  require_same(a, b);
  std::unordered_set<Element, ElementHash> seen;
  for (const auto& x : a) {
    for (const auto& y : b) {
      seen.insert(mul(x, y));
      if (seen.size() > cap) throw GroupError("element cap exceeded");
    }
  }
  return FiniteSubset(common_spec(a, b), {seen.begin(), seen.end()}, cap);
}

FiniteSubset inverse_set(const FiniteSubset& a) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(inv(x));
  return FiniteSubset(a.spec(), std::move(out));
}

FiniteSubset symmetrize(const FiniteSubset& f) {
  std::vector<Element> out(f.begin(), f.end());
  for (const auto& x : f) out.push_back(inv(x));
  out.push_back(identity(f.spec()));
  return FiniteSubset(f.spec(), std::move(out));
}

bool is_symmetric_with_identity(const FiniteSubset& f) {
  if (!f.contains(identity(f.spec()))) return false;
  return std::all_of(f.begin(), f.end(), [&](const Element& x) { return f.contains(inv(x)); });
}

FiniteSubset right_translate(const FiniteSubset& a, const Element& h) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(mul(x, h));
  return FiniteSubset(a.spec(), std::move(out));
}

FiniteSubset power_set(const FiniteSubset& f, std::size_t k, std::size_t cap) {
  FiniteSubset result = singleton(identity(f.spec()));
  for (std::size_t i = 0; i < k; ++i) result = product_set(result, f, cap);
  return result;
}

FiniteSubset standard_generators(const GroupSpec& spec) {
  std::vector<Element> gens;
  const int free_dims = spec.kind == GroupKind::Heisenberg ? 2 : spec.dim;
  for (int i = 0; i < free_dims; ++i) {
    for (std::int64_t s : {-1, 1}) {
      Element g = identity(spec);
      g.c[i] = s;
      gens.push_back(g);
    }
  }
  return FiniteSubset(spec, std::move(gens));
}

FiniteSubset ball(const GroupSpec& spec, const FiniteSubset& gens, std::size_t r,
                  std::size_t cap) {
  if (!gens.empty() && gens.spec() != spec) throw GroupError("group mismatch");
  const FiniteSubset sym = symmetrize(gens.empty() ? FiniteSubset(spec) : gens);
  std::unordered_set<Element, ElementHash> seen{identity(spec)};
  std::vector<Element> frontier{identity(spec)};
  for (std::size_t step = 0; step < r && !frontier.empty(); ++step) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (const auto& s : sym) {
        Element y = mul(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw GroupError("ball too large");
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return FiniteSubset(spec, {seen.begin(), seen.end()}, cap);
}

FiniteSubset box(const GroupSpec& spec,
                 std::span<const std::pair<std::int64_t, std::int64_t>> bounds,
                 std::size_t cap) {
  if (static_cast<int>(bounds.size()) != spec.rank()) {
    throw GroupError("box needs one bound pair per coordinate");
  }
  std::size_t total = 1;
  for (const auto& [lo, hi] : bounds) {
    if (hi < lo) return FiniteSubset(spec);
    total *= static_cast<std::size_t>(hi - lo + 1);
    if (total > cap) throw GroupError("element cap exceeded");
  }
  std::vector<Element> out;
  out.reserve(total);
  Element g = identity(spec);
  for (std::size_t i = 0; i < bounds.size(); ++i) g.c[i] = bounds[i].first;
  for (std::size_t n = 0; n < total; ++n) {
    out.push_back(g);
    for (int i = spec.rank() - 1; i >= 0; --i) {
      if (g.c[i] < bounds[static_cast<std::size_t>(i)].second) {
        ++g.c[i];
        break;
      }
      g.c[i] = bounds[static_cast<std::size_t>(i)].first;
    }
  }
  return FiniteSubset(spec, std::move(out), cap);
}

FiniteSubset cube(const GroupSpec& spec, std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> b(static_cast<std::size_t>(spec.rank()),
                                                       {0, n - 1});
  return box(spec, b);
}

std::vector<CosetSlice> coset_slices(const FiniteSubset& window, Subgroup subgroup) {
  (void)subgroup;
  if (!window.empty() && window.spec().kind != GroupKind::Heisenberg) {
    throw GroupError("centre cosets need a Heisenberg window");
  }
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Element>> groups;
  for (const auto& g : window) groups[{g.c[0], g.c[1]}].push_back(g);
  std::vector<CosetSlice> out;
  out.reserve(groups.size());
  for (auto& [ab, elems] : groups) {
    CosetSlice s;
    s.representative = make_element(window.spec(), {ab.first, ab.second, 0});
    for (const auto& g : elems) s.chart.push_back(g.c[2]);
    s.elements = FiniteSubset(window.spec(), std::move(elems));
    out.push_back(std::move(s));
  }
  return out;
}

ElementIndex::ElementIndex(const FiniteSubset& set) : size_(set.size()), spec_(set.spec()) {
  if (set.empty()) return;
  const int rank = spec_.rank();
  std::array<std::int64_t, kMaxRank> hi{};
  lo_ = set[0].c;
  hi = set[0].c;
  for (const auto& g : set) {
    for (int i = 0; i < rank; ++i) {
      lo_[i] = std::min(lo_[i], g.c[i]);
      hi[i] = std::max(hi[i], g.c[i]);
    }
  }
  std::size_t volume = 1;
  bool overflow = false;
  for (int i = 0; i < rank; ++i) {
    extent_[i] = hi[i] - lo_[i] + 1;
    if (volume > set.size() / static_cast<std::size_t>(extent_[i]) + 1) overflow = true;
    volume *= static_cast<std::size_t>(extent_[i]);
  }
  // Sorted lexicographic order of a full box is exactly row-major order.
  is_box_ = !overflow && volume == set.size();
  if (!is_box_) {
    map_.reserve(set.size() * 2);
    for (std::size_t i = 0; i < set.size(); ++i) map_.emplace(set[i], i);
  }
}

std::size_t ElementIndex::find(const Element& g) const {
  if (size_ == 0) return npos;
  if (!is_box_) {
    auto it = map_.find(g);
    return it == map_.end() ? npos : it->second;
  }
  if (g.kind != spec_.kind || g.dim != spec_.dim) return npos;
  std::size_t idx = 0;
  for (int i = 0; i < spec_.rank(); ++i) {
    const std::int64_t off = g.c[i] - lo_[i];
    if (off < 0 || off >= extent_[i]) return npos;
    idx = idx * static_cast<std::size_t>(extent_[i]) + static_cast<std::size_t>(off);
  }
  return idx;
}

}  // namespace loctile
