#pragma once

#include <string>
#include <vector>

#include "formsym/complex.hpp"

// Standard small triangulations used as fixtures and by the command line.
namespace formsym::library {

/// n-gon circle, n >= 3.
inline ComplexPtr circle(Vertex n) {
  require(n >= 3, ErrorCode::kValidation, "a simplicial circle needs at least 3 vertices");
  std::vector<Simplex> f;
  for (Vertex i = 0; i < n; ++i) f.push_back({i, (i + 1) % n});
  return build_complex(f);
}

/// Boundary of the (d+1)-simplex, a d-sphere on d+2 vertices.
inline ComplexPtr sphere(int d) {
  require(d >= 0 && d <= 8, ErrorCode::kValidation, "sphere dimension out of range");
  std::vector<Simplex> f;
  for (Vertex skip = 0; skip < static_cast<Vertex>(d + 2); ++skip) {
    Simplex s;
    for (Vertex v = 0; v < static_cast<Vertex>(d + 2); ++v)
      if (v != skip) s.push_back(v);
    f.push_back(s);
  }
  return build_complex(f);
}

/// Icosahedron: apex 0, upper ring 1..5, lower ring 6..10, apex 11.
inline ComplexPtr icosahedron() {
  std::vector<Simplex> f;
  for (Vertex i = 0; i < 5; ++i) {
    Vertex u = 1 + i, u2 = 1 + (i + 1) % 5, l = 6 + i, l2 = 6 + (i + 1) % 5;
    f.push_back({0, u, u2});
    f.push_back({11, l, l2});
    f.push_back({u, u2, l});
    f.push_back({u2, l, l2});
  }
  return build_complex(f);
}

/// Moebius torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline ComplexPtr torus7() {
  std::vector<Simplex> f;
  for (Vertex i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return build_complex(f);
}

/// m x n grid torus, vertex (i, j) labeled i * n + j; m, n >= 3.
inline ComplexPtr torus_grid(Vertex m, Vertex n) {
  require(m >= 3 && n >= 3, ErrorCode::kValidation, "grid torus needs at least 3 x 3 vertices");
  auto at = [&](Vertex i, Vertex j) { return (i % m) * n + (j % n); };
  std::vector<Simplex> f;
  for (Vertex i = 0; i < m; ++i)
    for (Vertex j = 0; j < n; ++j) {
      f.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      f.push_back({at(i, j), at(i, j + 1), at(i + 1, j + 1)});
    }
  return build_complex(f);
}

/// An 8-vertex, 16-triangle Klein bottle.
inline ComplexPtr klein_bottle() {
  return build_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 4}, {1, 2, 5}, {1, 3, 6}, {1, 4, 5}, {1, 4, 6},
                        {2, 4, 6}, {2, 3, 5}, {2, 3, 7}, {2, 6, 7}, {3, 4, 7}, {3, 5, 6}, {4, 5, 7}, {5, 6, 7}});
}

/// Hemi-icosahedron: the 6-vertex projective plane.
inline ComplexPtr projective_plane() {
  return build_complex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                        {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

/// Names: S1tri, S1hex, S2tet, S2icos, T2, K2, RP2, S1..S4, T2grid:m,n, Cn
/// (n-gon), and sd:<name> for a barycentric subdivision.
inline ComplexPtr by_name(const std::string& name) {
  if (name.rfind("sd:", 0) == 0) return barycentric_subdivide(by_name(name.substr(3))).complex;
  if (name == "S1tri") return circle(3);
  if (name == "S1hex") return circle(6);
  if (name == "S2tet") return sphere(2);
  if (name == "S2icos") return icosahedron();
  if (name == "T2") return torus7();
  if (name == "K2") return klein_bottle();
  if (name == "RP2") return projective_plane();
  if (name.size() == 2 && name[0] == 'S' && name[1] >= '1' && name[1] <= '4') return sphere(name[1] - '0');
  auto number = [&](const std::string& s) -> Vertex {
    require(!s.empty() && s.size() <= 4 && s.find_first_not_of("0123456789") == std::string::npos,
            ErrorCode::kValidation, "bad size in library name '" + name + "'");
    return static_cast<Vertex>(std::stoul(s));
  };
  if (name.rfind("T2grid:", 0) == 0) {
    auto rest = name.substr(7);
    auto comma = rest.find(',');
    require(comma != std::string::npos, ErrorCode::kValidation, "expected T2grid:m,n");
    return torus_grid(number(rest.substr(0, comma)), number(rest.substr(comma + 1)));
  }
  if (name.size() > 1 && name[0] == 'C') return circle(number(name.substr(1)));
  fail(ErrorCode::kValidation, "unknown library complex '" + name + "'");
}

}  // namespace formsym::library
