#pragma once

#include "loctile/serialize.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace loctile {

/// Parameters shared by the tile, exactify and pipeline commands.
struct RunConfig {
  GroupSpec group;
  FiniteSubset window;
  FiniteSubset k;
  Rational delta{1, 5};
  Rational kappa{1, 10};
  FolnerFamily family = FolnerFamily::Default;
  std::int64_t max_scale = 64;
  std::optional<Rational> nesting_tolerance;
  std::string coloring = "greedy";  // or "seeded"
  double coloring_fraction = 0.0;
  std::uint64_t seed = 0;
  /// Lattice period for Z^d, centre interval length for the Heisenberg group.
  std::int64_t base_n = 0;
  FiniteSubset l;
  Rational gamma{1, 2};
};

/// Reads a RunConfig. Throws FormatError naming the field on missing keys,
/// wrong types and out-of-range values.
///   group: "Z1".."Z4" | "heisenberg"
///   window: [[lo, hi], ...] inclusive bounds per coordinate
///   K: radius (integer) or explicit element list
///   delta, kappa, gamma: rationals; family: "default" | "cubes" |
///   "heisenberg-boxes" | "center-intervals"; max_scale, base_N, seed: integers;
///   coloring: {mode: "greedy" | "seeded", fraction}; L: element list
RunConfig parse_run_config(const Json& j);
FolnerFamily family_from_name(const std::string& name, const std::string& field = "family");

ProperColoring run_coloring(const RunConfig& c, const FiniteSubset& base_set);
OwParameters run_parameters(const RunConfig& c);
/// Lattice comparison for Z^d, overgroup comparison for the Heisenberg group.
struct Provider {
  ComparisonProvider provider;
  std::shared_ptr<OvergroupComparison> overgroup;
  std::string kind;
};
Provider run_provider(const RunConfig& c);

struct PipelineResult {
  OwParameters params;
  ProperColoring coloring;
  ApproximateTiling quasi;
  ApproximateTiling exact;
  TilingReport quasi_report;
  /// Exact tiling checked at (delta + kappa) / (1 + kappa).
  TilingReport exact_report;
  Rational exact_delta;
  Rational kappa;
  ExactifyStats stats;
  std::string provider;
  bool coloring_proper = false;
  bool covering_ok = false;
  bool growth_ok = false;
  bool partitions_ok = true;

  bool passes() const;
  /// Deterministic summary: parameters, both reports and every check.
  Json summary() const;
};

/// color, ow_parameters, ow_quasi_tiling, exactify.
PipelineResult run_pipeline(const RunConfig& c);

}  // namespace loctile
