#include "loctile/local_map.hpp"

#include <mutex>

namespace loctile {

FiniteSubset interior(const FiniteSubset& a, const FiniteSubset& w) {
  if (a.empty()) return a;
  const ElementIndex index(a);
  std::vector<char> keep(a.size(), 0);
  parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      bool ok = true;
      for (const auto& h : w) {
        if (!index.contains(mul(h, a[i]))) {
          ok = false;
          break;
        }
      }
      keep[i] = ok;
    }
  });
  std::vector<Element> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (keep[i]) out.push_back(a[i]);
  }
  return FiniteSubset(a.spec(), std::move(out));
}

FiniteSubset interior_iterated(const FiniteSubset& a, const FiniteSubset& w, std::size_t k) {
  FiniteSubset out = a;
  for (std::size_t i = 0; i < k && !out.empty(); ++i) out = interior(out, w);
  return out;
}

}  // namespace loctile
