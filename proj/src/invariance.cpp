#include "loctile/invariance.hpp"

#include "loctile/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

namespace loctile {

namespace {

void check_eps(const Rational& eps) {
  if (eps <= 0 || eps > 1) throw InvarianceError("eps must lie in (0,1]");
}

// Elements x of k0*S lying in gS for all g in K, i.e. g^-1 x in S.
template <class Visit>
void scan_intersection(const FiniteSubset& s, const FiniteSubset& k, Visit&& visit) {
  const ElementIndex index(s);
  std::vector<Element> k_inv;
  for (const auto& g : k) k_inv.push_back(inv(g));
  const Element k0 = k[0];
  for (const auto& x0 : s) {
    const Element x = mul(k0, x0);
    bool inside = true;
    for (const auto& gi : k_inv) {
      if (!index.contains(mul(gi, x))) {
        inside = false;
        break;
      }
    }
    if (!visit(inside)) return;
  }
}

}  // namespace

InvarianceReport is_invariant(const FiniteSubset& s, const FiniteSubset& k, const Rational& eps) {
  if (s.empty()) throw InvarianceError("empty set");
  check_eps(eps);
  InvarianceReport r;
  r.test_set = k;
  r.epsilon = eps;
  r.set_size = s.size();
  if (k.empty()) {
    // Empty intersection convention: the whole group; report |S|.
    r.intersection_size = s.size();
  } else {
    scan_intersection(s, k, [&](bool inside) {
      r.intersection_size += inside ? 1 : 0;
      return true;
    });
  }
  r.passes = greater_than_fraction(static_cast<std::int64_t>(r.intersection_size), 1 - eps,
                                   static_cast<std::int64_t>(r.set_size));
  return r;
}

bool invariant_quick(const FiniteSubset& s, const FiniteSubset& k, const Rational& eps) {
  if (s.empty()) throw InvarianceError("empty set");
  check_eps(eps);
  if (k.empty()) return true;
  // passes iff misses < eps|S|.
  const auto total = static_cast<std::int64_t>(s.size());
  std::int64_t misses = 0;
  bool failed = false;
  scan_intersection(s, k, [&](bool inside) {
    if (!inside && !less_than_fraction(++misses, eps, total)) {
      failed = true;
      return false;
    }
    return true;
  });
  return !failed;
}

FiniteSubset admissible_translates(const FiniteSubset& f, const FiniteSubset& window) {
  if (f.empty()) throw InvarianceError("empty averaging set");
  const ElementIndex index(window);
  const Element f0_inv = inv(f[0]);
  std::vector<Element> out;
  std::mutex m;
  parallel_for(window.size(), [&](std::size_t lo, std::size_t hi) {
    std::vector<Element> local;
    for (std::size_t i = lo; i < hi; ++i) {
      const Element y = mul(f0_inv, window[i]);
      bool ok = true;
      for (const auto& g : f) {
        if (!index.contains(mul(g, y))) {
          ok = false;
          break;
        }
      }
      if (ok) local.push_back(y);
    }
    std::lock_guard lock(m);
    out.insert(out.end(), local.begin(), local.end());
  });
  return FiniteSubset(window.spec(), std::move(out));
}

namespace {

DensityValue extremal_density(const FiniteSubset& a, const FiniteSubset& f,
                              const FiniteSubset& window, bool upper) {
  const FiniteSubset ys = admissible_translates(f, window);
  if (ys.empty()) throw InvarianceError("window smaller than F");
  const ElementIndex a_index(a);
  std::vector<std::size_t> counts(ys.size());
  parallel_for(ys.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t c = 0;
      for (const auto& g : f) c += a_index.contains(mul(g, ys[i])) ? 1 : 0;
      counts[i] = c;
    }
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (upper ? counts[i] > counts[best] : counts[i] < counts[best]) best = i;
  }
  return {Rational(static_cast<std::int64_t>(counts[best]), static_cast<std::int64_t>(f.size())),
          ys[best]};
}

}  // namespace

DensityValue upper_density(const FiniteSubset& a, const FiniteSubset& f, const FiniteSubset& window) {
  return extremal_density(a, f, window, true);
}

DensityValue lower_density(const FiniteSubset& a, const FiniteSubset& f, const FiniteSubset& window) {
  return extremal_density(a, f, window, false);
}

std::int64_t folner_first_parameter(FolnerFamily family) {
  return family == FolnerFamily::HeisenbergBoxes ? 0 : 1;
}

FiniteSubset folner_member(const GroupSpec& spec, FolnerFamily family, std::int64_t n) {
  if (family == FolnerFamily::Default) {
    family = spec.kind == GroupKind::Heisenberg ? FolnerFamily::HeisenbergBoxes : FolnerFamily::Cubes;
  }
  switch (family) {
    case FolnerFamily::Cubes:
      if (spec.kind != GroupKind::IntegerLattice) throw InvarianceError("cube family needs Z^d");
      return cube(spec, n);
    case FolnerFamily::HeisenbergBoxes: {
      if (spec.kind != GroupKind::Heisenberg) throw InvarianceError("box family needs Heisenberg");
      const std::pair<std::int64_t, std::int64_t> b[] = {{-n, n}, {-n, n}, {-n * n, n * n}};
      return box(spec, b);
    }
    case FolnerFamily::CenterIntervals: {
      if (spec.kind != GroupKind::Heisenberg) throw InvarianceError("interval family needs Heisenberg");
      const std::pair<std::int64_t, std::int64_t> b[] = {{0, 0}, {0, 0}, {0, n - 1}};
      return box(spec, b);
    }
    case FolnerFamily::Default:
      break;
  }
  throw InvarianceError("unknown Følner family");
}

namespace {

std::size_t member_size(const GroupSpec& spec, FolnerFamily family, std::int64_t n) {
  if (family == FolnerFamily::Default) {
    family = spec.kind == GroupKind::Heisenberg ? FolnerFamily::HeisenbergBoxes : FolnerFamily::Cubes;
  }
  const auto u = static_cast<std::size_t>(n);
  switch (family) {
    case FolnerFamily::Cubes: {
      std::size_t s = 1;
      for (int i = 0; i < spec.rank(); ++i) s *= u;
      return s;
    }
    case FolnerFamily::HeisenbergBoxes:
      return (2 * u + 1) * (2 * u + 1) * (2 * u * u + 1);
    default:
      return u;
  }
}

}  // namespace

FiniteSubset find_folner(const GroupSpec& spec, const FiniteSubset& k, const Rational& eps,
                         FolnerFamily family, std::size_t max_size) {
  check_eps(eps);
  for (std::int64_t n = folner_first_parameter(family); member_size(spec, family, n) <= max_size;
       ++n) {
    FiniteSubset s = folner_member(spec, family, n);
    if (invariant_quick(s, k, eps)) return s;
  }
  throw InvarianceError("no Følner set within cap");
}

Rational ks_epsilon(const FiniteSubset& k, const Rational& delta) {
  if (delta <= 0 || delta >= 1) throw InvarianceError("delta must lie in (0,1)");
  return delta / Rational(2 * (static_cast<std::int64_t>(k.size()) + 1));
}

}  // namespace loctile
