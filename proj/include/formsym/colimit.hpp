#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formsym/abelian_group.hpp"

namespace formsym {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --classes_offset_;
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t classes() const noexcept { return parent_.size() + classes_offset_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::ptrdiff_t classes_offset_ = 0;
};

/// A map between finite sets: image index per source index.
using SetMap = std::vector<std::size_t>;

/// Functor from a finite poset, given by node values and maps along the
/// Hasse edges (from < to). Value is AbelianGroup or a set cardinality.
template <class Value, class Map>
struct PosetDiagram {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Map map;
  };
  std::vector<Value> nodes;
  std::vector<Edge> edges;

  std::size_t add_node(Value v) {
    nodes.push_back(std::move(v));
    return nodes.size() - 1;
  }
  void add_edge(std::size_t from, std::size_t to, Map m) { edges.push_back({from, to, std::move(m)}); }
};

using GroupDiagram = PosetDiagram<AbelianGroup, GroupHom>;
using SetDiagram = PosetDiagram<std::size_t, SetMap>;

namespace detail {

inline GroupHom compose_maps(const GroupHom& outer, const GroupHom& inner) { return outer.compose(inner); }
inline SetMap compose_maps(const SetMap& outer, const SetMap& inner) {
  SetMap out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer.at(inner[i]);
  return out;
}

}  // namespace detail

/// Verifies that all Hasse paths between two nodes induce the same map.
/// Throws a functoriality error naming the offending pair of paths.
template <class Value, class Map>
void check_functoriality(const PosetDiagram<Value, Map>& d) {
  const std::size_t n = d.nodes.size();
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t k = 0; k < d.edges.size(); ++k) {
    const auto& e = d.edges[k];
    require(e.from < n && e.to < n && e.from != e.to, ErrorCode::kValidation, "edge endpoint out of range");
    out_edges[e.from].push_back(k);
  }
  for (std::size_t src = 0; src < n; ++src) {
    // composite[v]: map src -> v along the first path found. Every later
    // path into v must agree with it.
    std::vector<std::optional<Map>> composite(n);
    std::vector<std::size_t> via(n, n);
    std::vector<std::size_t> queue{src};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      for (std::size_t k : out_edges[u]) {
        const auto& e = d.edges[k];
        Map m = u == src ? e.map : detail::compose_maps(e.map, *composite[u]);
        if (!composite[e.to]) {
          composite[e.to] = std::move(m);
          via[e.to] = u;
          queue.push_back(e.to);
        } else if (!(*composite[e.to] == m)) {
          fail(ErrorCode::kFunctoriality,
               "square from node " + std::to_string(src) + " to node " + std::to_string(e.to) +
                   " does not commute (via " + std::to_string(via[e.to]) + " vs via " + std::to_string(u) + ")");
        }
      }
    }
  }
}

/// Nodes in an order where every edge goes forward; throws on cycles.
template <class Value, class Map>
std::vector<std::size_t> topological_order(const PosetDiagram<Value, Map>& d) {
  const std::size_t n = d.nodes.size();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : d.edges) {
    ++indeg[e.to];
    succ[e.from].push_back(e.to);
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (std::size_t qi = 0; qi < order.size(); ++qi)
    for (std::size_t v : succ[order[qi]])
      if (--indeg[v] == 0) order.push_back(v);
  require(order.size() == n, ErrorCode::kValidation, "diagram relations contain a cycle");
  return order;
}

struct AbelianColimit {
  AbelianGroup group;
  std::vector<GroupHom> injections;
};

/// Cokernel of (+)_{p<p'} F(p) -> (+)_p F(p), x -> i_p'(f x) - i_p(x).
inline AbelianColimit colimit_abelian(const GroupDiagram& d) {
  check_functoriality(d);
  std::vector<std::size_t> offset(d.nodes.size() + 1, 0);
  for (std::size_t p = 0; p < d.nodes.size(); ++p) offset[p + 1] = offset[p] + d.nodes[p].dimension();
  const std::size_t gens = offset.back();
  std::vector<Vector> rel;
  for (std::size_t p = 0; p < d.nodes.size(); ++p)
    for (std::size_t i = 0; i < d.nodes[p].torsion().size(); ++i) {
      Vector v(gens);
      v[offset[p] + i] = d.nodes[p].torsion()[i];
      rel.push_back(std::move(v));
    }
  for (const auto& e : d.edges) {
    require(e.map.source() == d.nodes[e.from] && e.map.target() == d.nodes[e.to], ErrorCode::kMismatch,
            "edge map does not match its node values");
    for (std::size_t j = 0; j < d.nodes[e.from].dimension(); ++j) {
      Vector v(gens);
      for (std::size_t i = 0; i < d.nodes[e.to].dimension(); ++i) v[offset[e.to] + i] = e.map.matrix()(i, j);
      v[offset[e.from] + j] -= 1;
      rel.push_back(std::move(v));
    }
  }
  PresentedGroup p = present(IntMatrix::from_columns(gens, rel), gens);
  AbelianColimit out;
  out.group = p.group;
  for (std::size_t node = 0; node < d.nodes.size(); ++node) {
    std::vector<std::size_t> idx(d.nodes[node].dimension());
    std::iota(idx.begin(), idx.end(), offset[node]);
    out.injections.emplace_back(d.nodes[node], out.group, p.to_canonical.select_cols(idx));
  }
  return out;
}

struct SetColimit {
  std::size_t size = 0;
  /// Per node, the class index of each element.
  std::vector<SetMap> injections;
};

/// Quotient of the disjoint union by x ~ f(x) over Hasse edges.
inline SetColimit colimit_set(const SetDiagram& d) {
  check_functoriality(d);
  std::vector<std::size_t> offset(d.nodes.size() + 1, 0);
  for (std::size_t p = 0; p < d.nodes.size(); ++p) offset[p + 1] = offset[p] + d.nodes[p];
  UnionFind uf(offset.back());
  for (const auto& e : d.edges) {
    require(e.map.size() == d.nodes[e.from], ErrorCode::kMismatch, "set map has wrong domain size");
    for (std::size_t x = 0; x < e.map.size(); ++x) {
      require(e.map[x] < d.nodes[e.to], ErrorCode::kMismatch, "set map leaves its codomain");
      uf.unite(offset[e.from] + x, offset[e.to] + e.map[x]);
    }
  }
  // Classes numbered by first appearance in node order.
  std::vector<std::size_t> label(offset.back(), SIZE_MAX);
  SetColimit out;
  out.injections.resize(d.nodes.size());
  for (std::size_t p = 0; p < d.nodes.size(); ++p)
    for (std::size_t x = 0; x < d.nodes[p]; ++x) {
      std::size_t root = uf.find(offset[p] + x);
      if (label[root] == SIZE_MAX) label[root] = out.size++;
      out.injections[p].push_back(label[root]);
    }
  return out;
}

}  // namespace formsym
