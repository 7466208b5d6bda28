#include "loctile/parallel.hpp"
#include "loctile/pipeline.hpp"
#include "loctile/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace loctile;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::int64_t> seed;
};

struct ConfigDoc {
  Json json;
  fs::path dir;

  fs::path resolve(const std::string& key) const {
    if (!json.contains(key) || !json.at(key).is_string()) throw FormatError(key, "expected a file path");
    fs::path p = json.at(key).get<std::string>();
    return p.is_absolute() ? p : dir / p;
  }
};

ConfigDoc load_config(const Common& common) {
  if (common.config.empty()) throw FormatError("--config", "required");
  ConfigDoc doc{parse_json_file(common.config), fs::path(common.config).parent_path()};
  if (!doc.json.is_object()) throw FormatError("<root>", "expected an object");
  if (common.seed) doc.json["seed"] = *common.seed;
  return doc;
}

void emit(const Common& common, const std::string& name, const std::string& text) {
  fs::create_directories(common.out);
  write_text_file((fs::path(common.out) / name).string(), text);
}

FiniteSubset f_from_json(const GroupSpec& spec, const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(key, "missing");
  const auto& v = j.at(key);
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw FormatError(key, "negative radius");
    return ball(spec, standard_generators(spec), v.get<std::size_t>());
  }
  return subset_from_json(spec, v, key);
}

// "256,256" gives [0,256)^2; "lo:hi,..." gives inclusive bounds.
FiniteSubset window_from_flag(const GroupSpec& spec, const std::string& text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> bounds;
  std::stringstream ss(text);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) {
      const auto colon = part.find(':');
      if (colon == std::string::npos) {
        const auto n = std::stoll(part);
        if (n < 1) throw FormatError("--window", "empty window");
        bounds.emplace_back(0, n - 1);
      } else {
        bounds.emplace_back(std::stoll(part.substr(0, colon)), std::stoll(part.substr(colon + 1)));
        if (bounds.back().first > bounds.back().second) throw FormatError("--window", "empty window");
      }
    }
  } catch (const std::logic_error&) {
    throw FormatError("--window", "expected sizes or lo:hi ranges");
  }
  if (static_cast<int>(bounds.size()) != spec.rank()) {
    throw FormatError("--window", "expected " + std::to_string(spec.rank()) + " ranges");
  }
  return box(spec, bounds);
}

struct ColorFlags {
  std::string group, window;
  std::optional<std::int64_t> radius;
};

int cmd_color(const Common& common, const ColorFlags& flags) {
  GroupSpec spec;
  FiniteSubset window, f;
  std::string mode = "greedy";
  double fraction = 0;
  std::uint64_t seed = common.seed ? static_cast<std::uint64_t>(*common.seed) : 0;
  if (!common.config.empty()) {
    const auto doc = load_config(common);
    auto rc = doc.json;
    if (!rc.contains("K")) rc["K"] = 0;
    const auto c = parse_run_config(rc);
    spec = c.group;
    window = c.window;
    f = f_from_json(spec, doc.json, "F");
    mode = c.coloring;
    fraction = c.coloring_fraction;
    seed = c.seed;
  } else {
    if (flags.group.empty() || flags.window.empty() || !flags.radius) {
      throw FormatError("--group/--window/--radius", "required without --config");
    }
    if (*flags.radius < 0) throw FormatError("--radius", "negative radius");
    spec = group_from_name(flags.group, "--group");
    window = window_from_flag(spec, flags.window);
    f = ball(spec, standard_generators(spec), static_cast<std::size_t>(*flags.radius));
  }
  const auto coloring = mode == "seeded" ? seeded_coloring(window, f, seed, fraction) : greedy_coloring(window, f);
  emit(common, "coloring.json", dump(to_json(coloring)));
  const bool proper = is_proper(coloring);
  std::cout << dump(Json{{"palette", coloring.palette}, {"proper", proper}, {"points", coloring.domain.size()}});
  return proper ? 0 : 1;
}

bool quasi_ok(const TilingReport& r, const OwParameters& p) {
  return r.disjoint && r.within_window && r.shapes_invariant && r.covering_fraction >= 1 - 2 * p.eps;
}

int cmd_tile(const Common& common) {
  const auto doc = load_config(common);
  const auto c = parse_run_config(doc.json);
  const auto params = run_parameters(c);
  const auto coloring = doc.json.contains("coloring_file")
                            ? coloring_from_json(parse_json_file(doc.resolve("coloring_file").string()))
                            : run_coloring(c, params.base_set);
  const auto t = ow_quasi_tiling(coloring, params);
  const auto report = verify_tiling(t, c.k, c.delta);
  auto rj = to_json(report);
  rj["eps"] = to_json(params.eps);
  rj["covering_bound"] = to_json(1 - 2 * params.eps);
  rj["covering_ok"] = report.covering_fraction >= 1 - 2 * params.eps;
  emit(common, "quasi_tiling.json", dump(to_json(t)));
  emit(common, "tile_report.json", dump(rj));
  std::cout << dump(rj);
  return quasi_ok(report, params) ? 0 : 1;
}

int cmd_exactify(const Common& common) {
  const auto doc = load_config(common);
  const auto c = parse_run_config(doc.json);
  const auto t = tiling_from_json(parse_json_file(doc.resolve("tiling").string()));
  auto provider = run_provider(c);
  ExactifyStats stats;
  const auto e = exactify(t, provider.provider, c.kappa, &stats);
  const auto loose = (c.delta + c.kappa) / (1 + c.kappa);
  const auto report = verify_tiling(e, c.k, loose);
  auto rj = to_json(report);
  rj["delta"] = to_json(loose);
  rj["max_growth"] = to_json(stats.max_growth);
  rj["growth_ok"] = stats.max_growth <= 1 + c.kappa;
  rj["remainder_matched"] = stats.remainder_matched;
  emit(common, "tiling.json", dump(to_json(e)));
  emit(common, "exactify_report.json", dump(rj));
  std::cout << dump(rj);
  const bool ok = report.disjoint && report.within_window && report.shapes_invariant &&
                  report.exact_on_interior && stats.max_growth <= 1 + c.kappa;
  return ok ? 0 : 1;
}

int cmd_compare(const Common& common) {
  const auto doc = load_config(common);
  const auto t = tiling_from_json(parse_json_file(doc.resolve("tiling").string()));
  const auto spec = t.window.spec();
  if (!doc.json.contains("a")) throw FormatError("a", "missing");
  if (!doc.json.contains("b")) throw FormatError("b", "missing");
  const auto a = indicator(subset_from_json(spec, doc.json.at("a"), "a"));
  const auto b = indicator(subset_from_json(spec, doc.json.at("b"), "b"));
  const auto w = comparison_from_tiling(t, a, b);
  emit(common, "witness.json", dump(witness_to_json(spec, w)));
  const bool ok = verify_witness(w, a, b, false);
  std::cout << dump(Json{{"units", w.units()}, {"verified", ok}});
  return ok ? 0 : 1;
}

int cmd_verify_invariance(const Common& common) {
  const auto doc = load_config(common);
  const auto& j = doc.json;
  if (!j.contains("group") || !j.at("group").is_string()) throw FormatError("group", "expected a group name");
  const auto spec = group_from_name(j.at("group").get<std::string>());
  const auto s = f_from_json(spec, j, "S");
  const auto k = f_from_json(spec, j, "K");
  if (!j.contains("eps")) throw FormatError("eps", "missing");
  const auto eps = rational_from_json(j.at("eps"), "eps");
  if (!(eps > Rational(0) && eps <= Rational(1))) throw FormatError("eps", "outside (0,1]");
  if (s.empty()) throw FormatError("S", "empty set");
  const auto r = is_invariant(s, k, eps);
  std::cout << dump(to_json(r));
  return r.passes ? 0 : 1;
}

int cmd_verify_tiling(const Common& common) {
  const auto doc = load_config(common);
  const auto& j = doc.json;
  const auto t = tiling_from_json(parse_json_file(doc.resolve("tiling").string()));
  const auto spec = t.window.spec();
  const auto k = f_from_json(spec, j, "K");
  if (!j.contains("delta")) throw FormatError("delta", "missing");
  const auto delta = rational_from_json(j.at("delta"), "delta");
  if (!(delta > Rational(0) && delta < Rational(1))) throw FormatError("delta", "outside (0,1)");
  bool require_exact = true;
  if (j.contains("require_exact")) {
    if (!j.at("require_exact").is_boolean()) throw FormatError("require_exact", "expected a boolean");
    require_exact = j.at("require_exact").get<bool>();
  }
  const auto r = verify_tiling(t, k, delta);
  std::cout << dump(to_json(r));
  const bool ok = r.disjoint && r.within_window && r.shapes_invariant && (!require_exact || r.exact_on_interior);
  return ok ? 0 : 1;
}

int cmd_render(const Common& common, const std::string& tiling_flag) {
  fs::path path;
  if (!tiling_flag.empty()) {
    path = tiling_flag;
  } else {
    path = load_config(common).resolve("tiling");
  }
  const auto t = tiling_from_json(parse_json_file(path.string()));
  emit(common, "tiling.svg", render_svg(t));
  return 0;
}

int cmd_pipeline(const Common& common) {
  const auto doc = load_config(common);
  const auto c = parse_run_config(doc.json);
  const auto r = run_pipeline(c);
  emit(common, "coloring.json", dump(to_json(r.coloring)));
  emit(common, "quasi_tiling.json", dump(to_json(r.quasi)));
  emit(common, "tiling.json", dump(to_json(r.exact)));
  const auto summary = r.summary();
  emit(common, "pipeline.json", dump(summary));
  std::cout << dump(summary);
  return r.passes() ? 0 : 1;
}

int cmd_bench(const Common& common, int repeat) {
  const auto doc = load_config(common);
  const auto c = parse_run_config(doc.json);
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  Json runs = Json::array();
  bool ok = true;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = Clock::now();
    const auto params = run_parameters(c);
    const auto t1 = Clock::now();
    const auto coloring = run_coloring(c, params.base_set);
    const auto t2 = Clock::now();
    const auto quasi = ow_quasi_tiling(coloring, params);
    const auto t3 = Clock::now();
    auto provider = run_provider(c);
    const auto exact = exactify(quasi, provider.provider, c.kappa);
    const auto t4 = Clock::now();
    const auto report = verify_tiling(exact, c.k, (c.delta + c.kappa) / (1 + c.kappa));
    const auto t5 = Clock::now();
    ok = ok && report.exact_on_interior && report.disjoint;
    runs.push_back({{"parameters_ms", ms(t0, t1)}, {"coloring_ms", ms(t1, t2)},
                    {"quasi_tiling_ms", ms(t2, t3)}, {"exactify_ms", ms(t3, t4)},
                    {"verify_ms", ms(t4, t5)}, {"total_ms", ms(t0, t5)}});
  }
  const Json out{{"threads", thread_limit()}, {"window", c.window.size()}, {"runs", runs}};
  emit(common, "bench.json", dump(out));
  std::cout << dump(out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local colorings, quasi-tilings and exact tilings on finite windows of Z^d and H3(Z)"};
  app.require_subcommand(1);
  Common common;
  std::optional<int> threads;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "JSON configuration file");
    sub->add_option("--out", common.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", common.seed, "Overrides the configured seed");
    sub->add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);
  };

  ColorFlags color_flags;
  auto* color = app.add_subcommand("color", "Greedy or seeded proper coloring of a window");
  add_common(color);
  color->add_option("--group", color_flags.group, "Z1..Z4 or heisenberg");
  color->add_option("--window", color_flags.window, "Sizes '256,256' or ranges 'lo:hi,...'");
  color->add_option("--radius", color_flags.radius, "Radius of the base ball F");

  auto* tile = app.add_subcommand("tile", "Quasi-tiling of a colored window");
  add_common(tile);
  auto* exact = app.add_subcommand("exactify", "Exact tiling from a quasi-tiling");
  add_common(exact);
  auto* compare = app.add_subcommand("compare", "Subequivalence witness through a tiling");
  add_common(compare);

  auto* verify = app.add_subcommand("verify", "Check a set or a tiling");
  verify->require_subcommand(1);
  auto* verify_inv = verify->add_subcommand("invariance", "Report on {S, K, eps}");
  add_common(verify_inv);
  auto* verify_tiling_cmd = verify->add_subcommand("tiling", "Report on {tiling, K, delta}");
  add_common(verify_tiling_cmd);

  std::string tiling_flag;
  auto* render = app.add_subcommand("render", "SVG of a Z2 tiling");
  add_common(render);
  render->add_option("--tiling", tiling_flag, "Tiling JSON file");

  auto* pipeline = app.add_subcommand("pipeline", "Coloring, quasi-tiling and exactification");
  add_common(pipeline);
  int repeat = 3;
  auto* bench = app.add_subcommand("bench", "Timings of the pipeline stages");
  add_common(bench);
  bench->add_option("--repeat", repeat, "Runs")->check(CLI::PositiveNumber)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (threads) set_thread_limit(static_cast<std::size_t>(*threads));

  try {
    if (color->parsed()) return cmd_color(common, color_flags);
    if (tile->parsed()) return cmd_tile(common);
    if (exact->parsed()) return cmd_exactify(common);
    if (compare->parsed()) return cmd_compare(common);
    if (verify_inv->parsed()) return cmd_verify_invariance(common);
    if (verify_tiling_cmd->parsed()) return cmd_verify_tiling(common);
    if (render->parsed()) return cmd_render(common, tiling_flag);
    if (pipeline->parsed()) return cmd_pipeline(common);
    if (bench->parsed()) return cmd_bench(common, repeat);
  } catch (const FormatError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
