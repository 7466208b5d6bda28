#include "loctile/serialize.hpp"

#include <fstream>
#include <sstream>

namespace loctile {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + key, "missing");
  return j.at(key);
}

std::int64_t int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw FormatError(field, "expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace

GroupSpec group_from_name(const std::string& name, const std::string& field) {
  if (name == "heisenberg") return GroupSpec::heisenberg();
  if (name.size() == 2 && name[0] == 'Z' && name[1] >= '1' && name[1] <= '0' + kMaxRank) {
    return GroupSpec::lattice(name[1] - '0');
  }
  throw FormatError(field, "unknown group '" + name + "'");
}

Json to_json(const Element& g) {
  Json out = Json::array();
  for (auto x : g.coords()) out.push_back(x);
  return out;
}

Element element_from_json(const GroupSpec& spec, const Json& j, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != spec.rank()) {
    throw FormatError(field, "expected " + std::to_string(spec.rank()) + " coordinates");
  }
  std::vector<std::int64_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(int_from_json(j[i], field));
  return make_element(spec, c);
}

Json to_json(const FiniteSubset& s) {
  Json out = Json::array();
  for (const auto& g : s) out.push_back(to_json(g));
  return out;
}

FiniteSubset subset_from_json(const GroupSpec& spec, const Json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError(field, "expected an array of elements");
  std::vector<Element> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(element_from_json(spec, e, field));
  return FiniteSubset(spec, std::move(v));
}

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) {
      // Round-trips through the shortest decimal form the writer produced.
      return parse_rational(j.dump());
    }
  } catch (const std::exception& e) {
    throw FormatError(field, std::string("not a rational: ") + e.what());
  }
  throw FormatError(field, "expected a rational");
}

Json to_json(const ApproximateTiling& t) {
  Json out;
  out["group"] = t.window.spec().name();
  out["window"] = to_json(t.window);
  out["D"] = to_json(t.shape_universe);
  Json tiles = Json::array();
  for (const auto& tile : t.tiles) tiles.push_back(Json::array({to_json(tile.center), to_json(tile.shape)}));
  out["tiles"] = std::move(tiles);
  if (t.interior) out["interior"] = to_json(*t.interior);
  return out;
}

ApproximateTiling tiling_from_json(const Json& j) {
  const auto spec = group_from_name(require(j, "group", "").get<std::string>());
  ApproximateTiling t;
  t.window = subset_from_json(spec, require(j, "window", ""), "window");
  t.shape_universe = subset_from_json(spec, require(j, "D", ""), "D");
  const auto& tiles = require(j, "tiles", "");
  if (!tiles.is_array()) throw FormatError("tiles", "expected an array");
  for (const auto& e : tiles) {
    if (!e.is_array() || e.size() != 2) throw FormatError("tiles", "expected [center, shape] pairs");
    t.tiles.push_back({element_from_json(spec, e[0], "tiles"), subset_from_json(spec, e[1], "tiles")});
  }
  if (j.contains("interior")) t.interior = subset_from_json(spec, j.at("interior"), "interior");
  t.sort_tiles();
  return t;
}

Json to_json(const ProperColoring& c) {
  Json out;
  out["group"] = c.domain.spec().name();
  out["F"] = to_json(c.base_set);
  out["domain"] = to_json(c.domain);
  Json colors = Json::array();
  for (std::size_t i = 0; i < c.colors.size(); ++i) {
    colors.push_back(Json::array({to_json(c.domain[i]), c.colors[i]}));
  }
  out["colors"] = std::move(colors);
  out["palette"] = c.palette;
  return out;
}

ProperColoring coloring_from_json(const Json& j) {
  const auto spec = group_from_name(require(j, "group", "").get<std::string>());
  ProperColoring c;
  c.base_set = subset_from_json(spec, require(j, "F", ""), "F");
  c.domain = subset_from_json(spec, require(j, "domain", ""), "domain");
  c.palette = int_from_json(require(j, "palette", ""), "palette");
  c.colors.assign(c.domain.size(), 0);
  const auto& colors = require(j, "colors", "");
  if (!colors.is_array() || colors.size() != c.domain.size()) {
    throw FormatError("colors", "expected one entry per domain point");
  }
  for (const auto& e : colors) {
    if (!e.is_array() || e.size() != 2) throw FormatError("colors", "expected [coords, color] pairs");
    const auto pos = c.domain.position(element_from_json(spec, e[0], "colors"));
    if (pos == FiniteSubset::npos) throw FormatError("colors", "point outside the domain");
    c.colors[pos] = int_from_json(e[1], "colors");
  }
  return c;
}

Json witness_to_json(const GroupSpec& spec, const SubequivalenceWitness& r) {
  Json out;
  out["group"] = spec.name();
  out["D"] = to_json(r.displacements);
  Json a = Json::array();
  for (const auto& [src, seq] : r.assignment) {
    Json s = Json::array();
    for (const auto& d : seq) s.push_back(to_json(d));
    a.push_back(Json::array({to_json(src), std::move(s)}));
  }
  out["assignment"] = std::move(a);
  return out;
}

SubequivalenceWitness witness_from_json(const Json& j) {
  const auto spec = group_from_name(require(j, "group", "").get<std::string>());
  SubequivalenceWitness r;
  r.displacements = subset_from_json(spec, require(j, "D", ""), "D");
  const auto& a = require(j, "assignment", "");
  if (!a.is_array()) throw FormatError("assignment", "expected an array");
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_array()) {
      throw FormatError("assignment", "expected [source, [displacement, ...]] pairs");
    }
    std::vector<Element> seq;
    for (const auto& d : e[1]) seq.push_back(element_from_json(spec, d, "assignment"));
    r.assignment.emplace_back(element_from_json(spec, e[0], "assignment"), std::move(seq));
  }
  std::sort(r.assignment.begin(), r.assignment.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

Json to_json(const TilingReport& r) {
  Json out;
  out["disjoint"] = r.disjoint;
  out["shapes_invariant"] = r.shapes_invariant;
  out["within_window"] = r.within_window;
  out["covering_fraction"] = to_json(r.covering_fraction);
  out["exact_on_interior"] = r.exact_on_interior;
  out["interior_size"] = r.interior_size;
  out["covered_in_interior"] = r.covered_in_interior;
  out["tiles"] = r.tiles;
  out["non_invariant_shapes"] = r.non_invariant_shapes;
  return out;
}

Json to_json(const InvarianceReport& r) {
  Json out;
  out["test_set"] = to_json(r.test_set);
  out["epsilon"] = to_json(r.epsilon);
  out["intersection_size"] = r.intersection_size;
  out["set_size"] = r.set_size;
  out["passes"] = r.passes;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path, std::string("invalid JSON: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace loctile
