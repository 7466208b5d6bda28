#pragma once

// Hand-rolled generators for property tests.

#include "loctile/group.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline loctile::Element element(Rng& rng, const loctile::GroupSpec& spec, std::int64_t radius) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(spec.rank()));
  for (auto& x : c) x = uniform(rng, -radius, radius);
  return loctile::make_element(spec, c);
}

inline loctile::FiniteSubset subset_of(Rng& rng, const loctile::FiniteSubset& universe,
                                       double keep) {
  std::bernoulli_distribution coin(keep);
  std::vector<loctile::Element> out;
  for (const auto& g : universe) {
    if (coin(rng)) out.push_back(g);
  }
  return loctile::FiniteSubset(universe.spec(), out);
}

}  // namespace gen
