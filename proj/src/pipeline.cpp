#include "loctile/pipeline.hpp"

namespace loctile {

namespace {

std::int64_t get_int(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw FormatError(key, "expected an integer");
  return v.get<std::int64_t>();
}

Rational get_rational(const Json& j, const char* key, const Rational& fallback) {
  return j.contains(key) ? rational_from_json(j.at(key), key) : fallback;
}

void check_open(const Rational& r, const Rational& lo, const Rational& hi, const char* field) {
  if (!(r > lo && r < hi)) {
    throw FormatError(field, "value " + to_string(r) + " outside (" + to_string(lo) + "," + to_string(hi) + ")");
  }
}

FiniteSubset window_from_json(const GroupSpec& spec, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != spec.rank()) {
    throw FormatError("window", "expected " + std::to_string(spec.rank()) + " [lo, hi] bounds");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> bounds;
  for (const auto& b : j) {
    if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer()) {
      throw FormatError("window", "expected [lo, hi] integer pairs");
    }
    bounds.emplace_back(b[0].get<std::int64_t>(), b[1].get<std::int64_t>());
    if (bounds.back().first > bounds.back().second) throw FormatError("window", "empty window");
  }
  try {
    return box(spec, bounds);
  } catch (const GroupError& e) {
    throw FormatError("window", e.what());
  }
}

}  // namespace

FolnerFamily family_from_name(const std::string& name, const std::string& field) {
  if (name == "default") return FolnerFamily::Default;
  if (name == "cubes") return FolnerFamily::Cubes;
  if (name == "heisenberg-boxes") return FolnerFamily::HeisenbergBoxes;
  if (name == "center-intervals") return FolnerFamily::CenterIntervals;
  throw FormatError(field, "unknown family '" + name + "'");
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw FormatError("<root>", "expected an object");
  RunConfig c;
  if (!j.contains("group") || !j.at("group").is_string()) throw FormatError("group", "expected a group name");
  c.group = group_from_name(j.at("group").get<std::string>());
  if (!j.contains("window")) throw FormatError("window", "missing");
  c.window = window_from_json(c.group, j.at("window"));

  if (!j.contains("K")) throw FormatError("K", "missing");
  const auto& k = j.at("K");
  if (k.is_number_integer()) {
    if (k.get<std::int64_t>() < 0) throw FormatError("K", "negative radius");
    c.k = ball(c.group, standard_generators(c.group), k.get<std::size_t>());
  } else {
    c.k = subset_from_json(c.group, k, "K");
    if (c.k.empty()) throw FormatError("K", "empty set");
  }

  c.delta = get_rational(j, "delta", c.delta);
  check_open(c.delta, Rational(0), Rational(1, 2), "delta");
  c.kappa = get_rational(j, "kappa", c.kappa);
  check_open(c.kappa, Rational(0), Rational(1, 2), "kappa");
  c.gamma = get_rational(j, "gamma", c.gamma);
  check_open(c.gamma, Rational(0), Rational(1), "gamma");
  if (j.contains("nesting_tolerance")) {
    c.nesting_tolerance = rational_from_json(j.at("nesting_tolerance"), "nesting_tolerance");
    check_open(*c.nesting_tolerance, Rational(0), Rational(1), "nesting_tolerance");
  }
  if (j.contains("family")) {
    if (!j.at("family").is_string()) throw FormatError("family", "expected a string");
    c.family = family_from_name(j.at("family").get<std::string>());
  }
  c.max_scale = get_int(j, "max_scale", c.max_scale);
  if (c.max_scale < 1) throw FormatError("max_scale", "must be positive");
  const auto seed = get_int(j, "seed", 0);
  if (seed < 0) throw FormatError("seed", "must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.base_n = get_int(j, "base_N", 0);
  if (c.base_n < 0) throw FormatError("base_N", "must be positive");

  if (j.contains("coloring")) {
    const auto& col = j.at("coloring");
    if (!col.is_object()) throw FormatError("coloring", "expected an object");
    if (col.contains("mode")) {
      if (!col.at("mode").is_string()) throw FormatError("coloring.mode", "expected a string");
      c.coloring = col.at("mode").get<std::string>();
      if (c.coloring != "greedy" && c.coloring != "seeded") {
        throw FormatError("coloring.mode", "expected 'greedy' or 'seeded'");
      }
    }
    if (col.contains("fraction")) {
      if (!col.at("fraction").is_number()) throw FormatError("coloring.fraction", "expected a number");
      c.coloring_fraction = col.at("fraction").get<double>();
      if (!(c.coloring_fraction >= 0 && c.coloring_fraction <= 1)) {
        throw FormatError("coloring.fraction", "outside [0,1]");
      }
    }
  }
  if (j.contains("L")) c.l = subset_from_json(c.group, j.at("L"), "L");
  return c;
}

ProperColoring run_coloring(const RunConfig& c, const FiniteSubset& base_set) {
  if (c.coloring == "seeded") return seeded_coloring(c.window, base_set, c.seed, c.coloring_fraction);
  return greedy_coloring(c.window, base_set);
}

OwParameters run_parameters(const RunConfig& c) {
  OwOptions opt;
  opt.family = c.family;
  opt.max_scale_parameter = c.max_scale;
  opt.nesting_tolerance = c.nesting_tolerance;
  return ow_parameters(c.group, c.k, c.delta, opt);
}

Provider run_provider(const RunConfig& c) {
  if (c.base_n < 1) throw FormatError("base_N", "required and positive");
  Provider p;
  if (c.group.kind == GroupKind::Heisenberg) {
    if (c.l.empty()) throw FormatError("L", "required for the heisenberg group");
    p.overgroup = extend_to_overgroup(c.window, c.l, c.gamma, c.base_n);
    p.provider = [og = p.overgroup](const FiniteSubset& a, const FiniteSubset& b) { return (*og)(a, b); };
    p.kind = "overgroup";
  } else {
    p.provider = lattice_comparison(c.window, c.base_n);
    p.kind = "lattice";
  }
  return p;
}

bool PipelineResult::passes() const {
  return coloring_proper && quasi_report.disjoint && quasi_report.within_window &&
         quasi_report.shapes_invariant && covering_ok && exact_report.disjoint &&
         exact_report.within_window && exact_report.shapes_invariant &&
         exact_report.exact_on_interior && growth_ok && partitions_ok;
}

Json PipelineResult::summary() const {
  Json out;
  out["group"] = coloring.domain.spec().name();
  Json p;
  p["delta"] = to_json(params.delta);
  p["eps"] = to_json(params.eps);
  p["n"] = params.n;
  p["beta"] = to_json(params.beta);
  Json sizes = Json::array();
  for (const auto& s : params.scales) sizes.push_back(s.size());
  p["scale_sizes"] = std::move(sizes);
  p["scale_chain"] = params.nesting_certified ? "certified" : "capped";
  p["palette"] = params.palette;
  p["collar_power"] = ow_dependence_collar(params).power;
  out["parameters"] = std::move(p);

  out["coloring"] = {{"palette", coloring.palette}, {"proper", coloring_proper}};

  auto q = to_json(quasi_report);
  q["covering_bound"] = to_json(1 - 2 * params.eps);
  q["covering_ok"] = covering_ok;
  out["quasi_tiling"] = std::move(q);

  auto e = to_json(exact_report);
  e["delta"] = to_json(exact_delta);
  e["kappa"] = to_json(kappa);
  e["max_growth"] = to_json(stats.max_growth);
  e["growth_ok"] = growth_ok;
  e["remainder_matched"] = stats.remainder_matched;
  e["provider"] = provider;
  if (provider == "overgroup") e["partition_sizes_ok"] = partitions_ok;
  out["exact_tiling"] = std::move(e);
  out["passes"] = passes();
  return out;
}

PipelineResult run_pipeline(const RunConfig& c) {
  PipelineResult r;
  r.params = run_parameters(c);
  r.coloring = run_coloring(c, r.params.base_set);
  r.coloring_proper = is_proper(r.coloring);
  r.quasi = ow_quasi_tiling(r.coloring, r.params);
  r.quasi_report = verify_tiling(r.quasi, c.k, c.delta);
  r.covering_ok = r.quasi_report.covering_fraction >= 1 - 2 * r.params.eps;

  auto provider = run_provider(c);
  r.provider = provider.kind;
  r.exact = exactify(r.quasi, provider.provider, c.kappa, &r.stats);
  r.kappa = c.kappa;
  r.exact_delta = (c.delta + c.kappa) / (1 + c.kappa);
  r.exact_report = verify_tiling(r.exact, c.k, r.exact_delta);
  r.growth_ok = r.stats.max_growth <= 1 + c.kappa;
  if (provider.overgroup) {
    const auto parts = provider.overgroup->spread_set().size();
    for (const auto& [part, portion] : provider.overgroup->partition_log()) {
      if (part != portion / parts && part != (portion + parts - 1) / parts) r.partitions_ok = false;
    }
  }
  return r;
}

}  // namespace loctile
