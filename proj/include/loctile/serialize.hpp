#pragma once

#include "loctile/coloring.hpp"
#include "loctile/comparison.hpp"
#include "loctile/invariance.hpp"
#include "loctile/tiling.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace loctile {

using Json = nlohmann::json;

/// Malformed document or configuration. `field` names the offending key path.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, const std::string& what)
      : std::runtime_error("field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// "Z1".."Z4" or "heisenberg".
GroupSpec group_from_name(const std::string& name, const std::string& field = "group");

Json to_json(const Element& g);
Element element_from_json(const GroupSpec& spec, const Json& j, const std::string& field);
Json to_json(const FiniteSubset& s);
FiniteSubset subset_from_json(const GroupSpec& spec, const Json& j, const std::string& field);
/// Rationals travel as "p/q" strings; integers and decimals are accepted on input.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& field);

/// {group, window, D, tiles: [[center, shape], ...], interior?}
Json to_json(const ApproximateTiling& t);
ApproximateTiling tiling_from_json(const Json& j);
/// {group, F, domain, colors: [[coords, color], ...], palette}
Json to_json(const ProperColoring& c);
ProperColoring coloring_from_json(const Json& j);
/// {group, D, assignment: [[source, [displacement, ...]], ...]}
Json witness_to_json(const GroupSpec& spec, const SubequivalenceWitness& r);
SubequivalenceWitness witness_from_json(const Json& j);

Json to_json(const TilingReport& r);
Json to_json(const InvarianceReport& r);

/// Pretty-printed with two-space indent and a trailing newline. Object keys
/// come out sorted.
std::string dump(const Json& j);
Json parse_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace loctile
