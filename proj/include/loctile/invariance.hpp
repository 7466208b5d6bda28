#pragma once

#include "loctile/group.hpp"
#include "loctile/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace loctile {

class InvarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvarianceReport {
  FiniteSubset test_set;
  Rational epsilon;
  std::size_t intersection_size = 0;
  std::size_t set_size = 0;
  bool passes = false;
};

/// Exact |intersection over g in K of gS| and the strict test
/// intersection > (1 - eps)|S|.
InvarianceReport is_invariant(const FiniteSubset& s, const FiniteSubset& k, const Rational& eps);

/// Same verdict as is_invariant(...).passes, stopping at the first count that
/// decides it. Intended for searches.
bool invariant_quick(const FiniteSubset& s, const FiniteSubset& k, const Rational& eps);

struct DensityValue {
  Rational value;
  Element witness_translate;
};

/// Extremal |A n Fy| / |F| over translates y with Fy inside the window.
/// Ties resolve to the lexicographically smallest y.
DensityValue upper_density(const FiniteSubset& a, const FiniteSubset& f, const FiniteSubset& window);
DensityValue lower_density(const FiniteSubset& a, const FiniteSubset& f, const FiniteSubset& window);

/// All y with Fy inside the window, sorted.
FiniteSubset admissible_translates(const FiniteSubset& f, const FiniteSubset& window);

enum class FolnerFamily {
  Default,         // cubes for Z^d, boxes for the Heisenberg group
  Cubes,           // [0,N)^d
  HeisenbergBoxes, // |a|,|b| <= N, |c| <= N^2
  CenterIntervals, // {(0,0,c) : 0 <= c < N}
};

/// N-th member of a one-parameter family. Sizes are nondecreasing in N.
FiniteSubset folner_member(const GroupSpec& spec, FolnerFamily family, std::int64_t n);
/// Smallest parameter accepted by the family.
std::int64_t folner_first_parameter(FolnerFamily family);

/// Smallest family member that is (K, eps)-invariant.
/// Throws InvarianceError("no Følner set within cap") once members exceed max_size.
FiniteSubset find_folner(const GroupSpec& spec, const FiniteSubset& k, const Rational& eps,
                         FolnerFamily family = FolnerFamily::Default,
                         std::size_t max_size = 1'000'000);

/// delta / (2(|K| + 1)).
Rational ks_epsilon(const FiniteSubset& k, const Rational& delta);

}  // namespace loctile
