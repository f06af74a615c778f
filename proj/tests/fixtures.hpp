#pragma once

#include <random>
#include <vector>

#include "formsym/complex.hpp"
#include "formsym/library.hpp"
#include "oracle.hpp"

namespace fixtures {

using namespace formsym;

/// Closed curve {0,1,2} on the 7-vertex torus. It is essential, and its open
/// star retracts onto it, an annulus.
inline Subcomplex torus_meridian(const ComplexPtr& t2) { return Subcomplex::closure(t2, {{0, 1}, {1, 2}, {0, 2}}); }

/// Closed curve {0,2,4}, independent of the meridian in first homology.
inline Subcomplex torus_longitude(const ComplexPtr& t2) { return Subcomplex::closure(t2, {{0, 2}, {2, 4}, {0, 4}}); }

/// Row i of a grid torus with n columns: the closed curve (i,0),(i,1),...
inline Subcomplex grid_row(const ComplexPtr& grid, Vertex i, Vertex n) {
  std::vector<Simplex> edges;
  for (Vertex j = 0; j < n; ++j) {
    Simplex e{i * n + j, i * n + (j + 1) % n};
    std::sort(e.begin(), e.end());
    edges.push_back(e);
  }
  return Subcomplex::closure(grid, edges);
}

/// Random up-closed set: the star of a few random simplices, possibly empty.
inline StarOpen random_open(const ComplexPtr& x, std::mt19937& rng, std::size_t max_generators = 4) {
  std::vector<Simplex> gens;
  std::size_t count = rng() % (max_generators + 1);
  for (std::size_t i = 0; i < count; ++i) gens.push_back(x->simplex(rng() % x->size()));
  return star_open(x, gens);
}

inline std::vector<std::vector<int>> facets_of(const SimplicialComplex& x) {
  std::vector<std::vector<int>> out;
  for (SimplexId f : x.facets()) {
    std::vector<int> s;
    for (Vertex v : x.simplex(f)) s.push_back(static_cast<int>(v));
    out.push_back(s);
  }
  return out;
}

/// The oracle's view of an open set of the library complex x.
inline oracle::RelativeCochains oracle_cochains(const oracle::Complex& k, const StarOpen& u) {
  return oracle::RelativeCochains(k, [&](const std::vector<int>& s) {
    Simplex t(s.begin(), s.end());
    return u.contains(t);
  });
}

inline oracle::Group oracle_group(const AbelianGroup& g) {
  std::vector<oracle::i64> t;
  for (const auto& d : g.torsion()) t.push_back(static_cast<oracle::i64>(d));
  return {g.rank(), t};
}

/// Sum of oracle groups over the cyclic summands of a coefficient group.
template <class PerModulus>
oracle::Group over_summands(const AbelianGroup& a, PerModulus f) {
  std::size_t rank = 0;
  std::vector<oracle::i64> orders;
  for (std::size_t j = 0; j < a.dimension(); ++j) {
    oracle::Group g = f(static_cast<oracle::i64>(a.modulus(j)));
    rank += g.rank;
    orders.insert(orders.end(), g.torsion.begin(), g.torsion.end());
  }
  return oracle::make_group(rank, orders);
}

inline std::vector<AbelianGroup> sample_coefficients() {
  return {AbelianGroup::free(1), AbelianGroup::cyclic(2), AbelianGroup::cyclic(4),
          AbelianGroup::from_invariants({2}, 1)};
}

}  // namespace fixtures
