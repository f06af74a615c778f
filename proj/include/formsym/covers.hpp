#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formsym/colimit.hpp"
#include "formsym/symmetry.hpp"

namespace formsym {

/// A finite family of opens inside a target open.
struct CoverSpec {
  StarOpen target;
  std::vector<StarOpen> elements;
};

/// Each element lies in the target and together they exhaust it.
inline bool is_cover(const CoverSpec& c) {
  std::vector<bool> seen(c.target.complex().size(), false);
  for (const auto& u : c.elements) {
    if (!same_complex(u.parent(), c.target.parent()) || !u.is_subset_of(c.target)) return false;
    for (SimplexId s : u.ids()) seen[s] = true;
  }
  for (SimplexId s : c.target.ids())
    if (!seen[s]) return false;
  return true;
}

/// Enumeration cap for supportiveness checks, from FORMSYM_ENUM_BUDGET.
inline std::size_t enumeration_budget() {
  constexpr std::size_t fallback = 20'000'000;
  const char* env = std::getenv("FORMSYM_ENUM_BUDGET");
  if (!env || !*env) return fallback;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    require(used == std::string(env).size() && v > 0, ErrorCode::kValidation, "");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    fail(ErrorCode::kValidation, "FORMSYM_ENUM_BUDGET must be a positive integer");
  }
}

struct SupportiveParams {
  int k = 0;
  std::size_t s = 1;
  /// Barycentric subdivisions applied before enumerating test complexes.
  int subdivisions = 0;
};

struct SupportiveVerdict {
  bool verified = false;
  std::size_t bound = 0;            // the facet bound s that was checked
  std::size_t complexes_checked = 0;
  /// Facets of an uncovered test complex, on the subdivided complex when
  /// subdivisions > 0. Vertices of a subdivision are simplex ids one level up.
  std::vector<Simplex> counterexample;
};

/// Every subcomplex K of the target with dim K <= k and at most s facets
/// lies inside a single element.
inline SupportiveVerdict is_k_supportive(const CoverSpec& c, const SupportiveParams& p) {
  require(is_cover(c), ErrorCode::kValidation, "family is not a cover of its target");
  require(p.k >= 0 && p.k <= c.target.complex().dimension(), ErrorCode::kValidation, "need 0 <= k <= d");
  require(p.s >= 1, ErrorCode::kValidation, "facet bound must be at least 1");
  require(p.subdivisions >= 0 && p.subdivisions <= 3, ErrorCode::kValidation, "at most 3 subdivisions");

  StarOpen target = c.target;
  std::vector<StarOpen> elements = c.elements;
  for (int r = 0; r < p.subdivisions; ++r) {
    Subdivision sd = barycentric_subdivide(target.parent());
    target = refine_open(target, sd);
    for (auto& u : elements) u = refine_open(u, sd);
  }
  const auto& x = target.complex();

  // candidate facets: simplices of dim <= k whose closure lies in the target,
  // with the set of elements containing that closure
  const std::size_t words = (elements.size() + 63) / 64;
  std::vector<SimplexId> candidates;
  std::vector<std::vector<std::uint64_t>> masks;
  std::vector<bool> closed_in(x.size(), false);
  for (SimplexId s = 0; s < x.size(); ++s) {
    if (!target.contains(s)) continue;
    closed_in[s] = std::all_of(x.faces(s).begin(), x.faces(s).end(), [&](SimplexId f) { return closed_in[f]; });
    if (!closed_in[s] || x.dim_of(s) > p.k) continue;
    std::vector<SimplexId> closure{s};
    for (std::size_t j = 0; j < closure.size(); ++j)
      for (SimplexId f : x.faces(closure[j]))
        if (std::find(closure.begin(), closure.end(), f) == closure.end()) closure.push_back(f);
    std::vector<std::uint64_t> m(words, 0);
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (std::all_of(closure.begin(), closure.end(), [&](SimplexId t) { return elements[i].contains(t); }))
        m[i / 64] |= std::uint64_t{1} << (i % 64);
    candidates.push_back(s);
    masks.push_back(std::move(m));
  }

  const std::size_t budget = enumeration_budget();
  SupportiveVerdict v;
  v.bound = p.s;
  std::vector<std::size_t> chosen;
  // depth-first over increasing index sets, carrying the common elements
  auto search = [&](auto&& self, std::size_t start, const std::vector<std::uint64_t>& common) -> bool {
    for (std::size_t i = start; i < candidates.size(); ++i) {
      // facets form an antichain
      bool comparable = false;
      for (std::size_t j : chosen)
        if (x.is_face(candidates[j], candidates[i])) comparable = true;
      if (comparable) continue;
      require(++v.complexes_checked <= budget, ErrorCode::kBudget,
              "supportiveness enumeration exceeded " + std::to_string(budget) + " complexes");
      std::vector<std::uint64_t> next(words);
      bool any = false;
      for (std::size_t w = 0; w < words; ++w) any |= (next[w] = common[w] & masks[i][w]) != 0;
      chosen.push_back(i);
      if (!any) return true;
      if (chosen.size() < p.s && self(self, i + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  std::vector<std::uint64_t> all(words, ~std::uint64_t{0});
  if (search(search, 0, all)) {
    for (std::size_t j : chosen) v.counterexample.push_back(x.simplex(candidates[j]));
    return v;
  }
  v.verified = true;
  return v;
}

enum class WeissStyle { kVertexComplements, kSimplexComplements };

/// Complements of closed vertices, or of closed top simplices.
inline CoverSpec weiss_cover(const ComplexPtr& x, WeissStyle style) {
  CoverSpec c{StarOpen::whole(x), {}};
  if (style == WeissStyle::kVertexComplements) {
    require(x->vertex_count() >= 3, ErrorCode::kPrecondition, "vertex-complement cover needs at least 3 vertices");
    for (SimplexId v : x->of_dim(0)) c.elements.push_back(open_complement(Subcomplex::closure(x, {x->simplex(v)})));
  } else {
    for (SimplexId t : x->of_dim(x->dimension()))
      c.elements.push_back(open_complement(Subcomplex::closure(x, {x->simplex(t)})));
  }
  require(is_cover(c), ErrorCode::kPrecondition, "complex is too small for a complement cover");
  return c;
}

struct DescentReport {
  std::size_t elements = 0;  // distinct cover elements
  std::size_t poset_size = 0;
  std::size_t colimit_size = 0;
  std::size_t target_size = 0;
  bool injective = false;
  bool surjective = false;
  /// Two classes identified by the comparison, or a target class that is missed.
  std::string witness;
  AbelianGroup abelian_colimit;
  AbelianGroup target_group;

  bool bijective() const noexcept { return injective && surjective; }
};

namespace detail {

/// Distinct elements in a canonical order, and every nonempty intersection
/// of them, followed by the empty open.
inline std::vector<StarOpen> intersection_poset(std::vector<StarOpen> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<StarOpen> nodes;
  std::set<StarOpen> seen;
  for (const auto& u : elements)
    if (!u.empty() && seen.insert(u).second) nodes.push_back(u);
  const std::size_t budget = enumeration_budget();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (const auto& u : elements) {
      StarOpen w = nodes[i].intersect(u);
      if (!w.empty() && seen.insert(w).second) {
        nodes.push_back(std::move(w));
        require(nodes.size() <= budget, ErrorCode::kBudget, "intersection poset exceeds the enumeration budget");
      }
    }
  auto by_size = [](const StarOpen& a, const StarOpen& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  };
  std::sort(nodes.begin(), nodes.end(), by_size);
  nodes.push_back(StarOpen::empty_open(elements.front().parent()));
  return nodes;
}

}  // namespace detail

/// pi_0 descent: the set colimit of H^{q+1}_c over the intersection poset,
/// compared with H^{q+1}_c of the target.
inline DescentReport descent_check(const QFormAlgebra& f, const CoverSpec& c) {
  require(f.coefficients().is_finite(), ErrorCode::kUnsupported,
          "descent is checked on finite value sets; coefficients " + f.coefficients().to_string() + " are infinite");
  require(same_complex(f.complex(), c.target.parent()), ErrorCode::kMismatch, "cover is on another complex");
  require(!c.elements.empty() && is_cover(c), ErrorCode::kValidation, "family is not a cover of its target");

  std::vector<StarOpen> nodes = detail::intersection_poset(c.elements);
  const std::size_t n = nodes.size();
  std::vector<AbelianGroup> groups;
  std::vector<std::vector<Element>> carriers;
  for (const auto& u : nodes) {
    groups.push_back(f.value(u));
    carriers.push_back(groups.back().elements());
  }

  // Hasse edges of inclusion
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) below[a][b] = a != b && nodes[a].is_subset_of(nodes[b]);
  SetDiagram sets;
  GroupDiagram abelian;
  for (std::size_t a = 0; a < n; ++a) {
    sets.add_node(carriers[a].size());
    abelian.add_node(groups[a]);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool cover_relation = true;
      for (std::size_t m = 0; m < n && cover_relation; ++m)
        if (below[a][m] && below[m][b]) cover_relation = false;
      if (!cover_relation) continue;
      GroupHom e = f.extension(nodes[a], nodes[b]);
      SetMap map;
      for (const auto& x : carriers[a]) map.push_back(groups[b].index_of(e.apply(x)));
      sets.add_edge(a, b, std::move(map));
      abelian.add_edge(a, b, std::move(e));
    }

  SetColimit colim = colimit_set(sets);
  DescentReport r;
  r.elements = [&] {
    auto e = c.elements;
    std::sort(e.begin(), e.end());
    return static_cast<std::size_t>(std::unique(e.begin(), e.end()) - e.begin());
  }();
  r.poset_size = n;
  r.colimit_size = colim.size;
  r.target_group = f.value(c.target);
  r.target_size = static_cast<std::size_t>(r.target_group.order());
  r.abelian_colimit = colimit_abelian(abelian).group;

  // comparison: class -> image in the target, with one representative per class
  std::vector<std::optional<std::size_t>> image(colim.size);
  std::vector<std::pair<std::size_t, std::size_t>> rep(colim.size);
  for (std::size_t a = 0; a < n; ++a) {
    GroupHom e = f.extension(nodes[a], c.target);
    for (std::size_t i = 0; i < carriers[a].size(); ++i) {
      std::size_t cls = colim.injections[a][i];
      std::size_t y = r.target_group.index_of(e.apply(carriers[a][i]));
      if (!image[cls]) {
        image[cls] = y;
        rep[cls] = {a, i};
      } else {
        require(*image[cls] == y, ErrorCode::kInternal, "comparison map is not well defined");
      }
    }
  }
  auto name = [&](std::size_t cls) {
    auto [a, i] = rep[cls];
    return element_to_string(carriers[a][i]) + " on " + describe_open(nodes[a]);
  };
  std::vector<std::optional<std::size_t>> hit(r.target_size);
  r.injective = true;
  for (std::size_t cls = 0; cls < colim.size; ++cls) {
    auto& h = hit[*image[cls]];
    if (h && r.injective) {
      r.injective = false;
      r.witness = "classes " + name(*h) + " and " + name(cls) + " both map to " +
                  element_to_string(r.target_group.elements()[*image[cls]]);
    }
    if (!h) h = cls;
  }
  r.surjective = std::all_of(hit.begin(), hit.end(), [](const auto& h) { return h.has_value(); });
  if (!r.surjective && r.witness.empty())
    for (std::size_t y = 0; y < hit.size(); ++y)
      if (!hit[y]) {
        r.witness = "target class " + element_to_string(r.target_group.elements()[y]) + " is not in the image";
        break;
      }
  return r;
}

}  // namespace formsym
