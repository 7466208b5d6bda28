#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace loctile {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GroupKind : std::uint8_t { IntegerLattice, Heisenberg };

inline constexpr int kMaxRank = 4;
inline constexpr std::size_t kDefaultElementCap = 10'000'000;

/// A finitely generated group with an exact word problem: Z^d (1 <= d <= 4)
/// or the discrete Heisenberg group H3(Z) in (a, b, c) coordinates.
struct GroupSpec {
  GroupKind kind = GroupKind::IntegerLattice;
  int dim = 1;

  static GroupSpec lattice(int d);
  static GroupSpec heisenberg() { return {GroupKind::Heisenberg, 3}; }

  /// Number of integer coordinates of an element.
  int rank() const { return dim; }
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Canonical coordinates of a group element. Unused trailing coordinates are
/// zero, so equality and ordering are plain coordinate comparisons.
struct Element {
  GroupKind kind = GroupKind::IntegerLattice;
  std::uint8_t dim = 1;
  std::array<std::int64_t, kMaxRank> c{};

  GroupSpec spec() const { return {kind, dim}; }
  std::int64_t operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  std::span<const std::int64_t> coords() const { return {c.data(), dim}; }

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;
};

Element make_element(const GroupSpec& spec, std::span<const std::int64_t> coords);
Element make_element(const GroupSpec& spec, std::initializer_list<std::int64_t> coords);
Element identity(const GroupSpec& spec);

/// Group product g*h. Throws GroupError("group mismatch") on mixed groups.
Element mul(const Element& g, const Element& h);
Element inv(const Element& g);
bool is_identity(const Element& g);

std::string to_string(const Element& g);

struct ElementHash {
  std::size_t operator()(const Element& g) const noexcept;
};

/// Finite set of elements of one group, kept sorted lexicographically.
class FiniteSubset {
 public:
  FiniteSubset() = default;
  explicit FiniteSubset(GroupSpec spec) : spec_(spec) {}
  /// Sorts and deduplicates. Throws GroupError on mixed groups or when the
  /// element count exceeds `cap`.
  FiniteSubset(GroupSpec spec, std::vector<Element> elements,
               std::size_t cap = kDefaultElementCap);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const Element& g) const;
  /// Position of g in sorted order, or npos.
  std::size_t position(const Element& g) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    return a.spec_ == b.spec_ && a.elements_ == b.elements_;
  }

 private:
  GroupSpec spec_{};
  std::vector<Element> elements_;
};

FiniteSubset singleton(const Element& g);
FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_intersection(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b);
bool is_subset(const FiniteSubset& a, const FiniteSubset& b);

/// {ab : a in A, b in B}.
FiniteSubset product_set(const FiniteSubset& a, const FiniteSubset& b,
                         std::size_t cap = kDefaultElementCap);
/// {a^-1 : a in A}.
FiniteSubset inverse_set(const FiniteSubset& a);
/// F u F^-1 u {e}.
FiniteSubset symmetrize(const FiniteSubset& f);
bool is_symmetric_with_identity(const FiniteSubset& f);
/// Right translate {a h : a in A}.
FiniteSubset right_translate(const FiniteSubset& a, const Element& h);
/// F^k, with F^0 = {e}.
FiniteSubset power_set(const FiniteSubset& f, std::size_t k,
                       std::size_t cap = kDefaultElementCap);

/// Standard symmetric generators: +-e_i for Z^d, (+-1,0,0), (0,+-1,0) for H3.
FiniteSubset standard_generators(const GroupSpec& spec);
/// All products of at most r elements of symmetrize(gens).
FiniteSubset ball(const GroupSpec& spec, const FiniteSubset& gens, std::size_t r,
                  std::size_t cap = kDefaultElementCap);

/// Coordinate box with inclusive bounds per coordinate.
FiniteSubset box(const GroupSpec& spec,
                 std::span<const std::pair<std::int64_t, std::int64_t>> bounds,
                 std::size_t cap = kDefaultElementCap);
/// [0,n)^d in Z^d.
FiniteSubset cube(const GroupSpec& spec, std::int64_t n);

enum class Subgroup { HeisenbergCenter };

/// Intersection of a window with one coset H g of the centre H = {(0,0,c)}.
/// `chart[i]` is the centre coordinate of `elements[i]`; `representative`
/// is (a, b, 0).
struct CosetSlice {
  Element representative;
  FiniteSubset elements;
  std::vector<std::int64_t> chart;
};

std::vector<CosetSlice> coset_slices(const FiniteSubset& window, Subgroup subgroup);

/// Constant-time membership/index lookup for a fixed set. Uses arithmetic
/// addressing when the set is a full coordinate box, a hash map otherwise.
class ElementIndex {
 public:
  explicit ElementIndex(const FiniteSubset& set);

  std::size_t find(const Element& g) const;
  bool contains(const Element& g) const { return find(g) != npos; }
  std::size_t size() const { return size_; }
  static constexpr std::size_t npos = FiniteSubset::npos;

 private:
  std::size_t size_ = 0;
  bool is_box_ = false;
  GroupSpec spec_{};
  std::array<std::int64_t, kMaxRank> lo_{};
  std::array<std::int64_t, kMaxRank> extent_{};
  std::unordered_map<Element, std::size_t, ElementHash> map_;
};

}  // namespace loctile
