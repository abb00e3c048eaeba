#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "tutteparity/edge_subset.hpp"
#include "tutteparity/graph.hpp"

namespace tutteparity {

struct CycleSpace {
  MultiGraph graph;
  std::vector<EdgeSubset> basis;  // fundamental cycles, one per non-forest edge
  std::vector<int> forest_edges;
  std::vector<int> chord_edges;   // chord_edges[i] is the non-forest edge of basis[i]
};

// Exploration order for the spanning forest. Both give valid bases; the second
// exists so coset sums can be checked for independence of the transversal.
enum class ForestOrder { forward, reverse };

inline CycleSpace cycle_basis(const MultiGraph& g, ForestOrder order = ForestOrder::forward) {
  const int nv = g.vertex_count, m = g.edge_count();
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, other end)
  for (int e = 0; e < m; ++e) {
    const Edge& ed = g.edges[e];
    if (ed.is_loop()) continue;
    adj[ed.tail].push_back({e, ed.head});
    adj[ed.head].push_back({e, ed.tail});
  }
  if (order == ForestOrder::reverse)
    for (auto& a : adj) std::reverse(a.begin(), a.end());

  std::vector<int> parent_edge(nv, -1);
  std::vector<char> seen(nv, 0), in_forest(m, 0);
  auto visit_root = [&](int root) {
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == adj[v].size()) {
        stack.pop_back();
        continue;
      }
      auto [e, w] = adj[v][next++];
      if (seen[w]) continue;
      seen[w] = 1;
      parent_edge[w] = e;
      in_forest[e] = 1;
      stack.push_back({w, 0});
    }
  };
  if (order == ForestOrder::forward) {
    for (int v = 0; v < nv; ++v)
      if (!seen[v]) visit_root(v);
  } else {
    for (int v = nv - 1; v >= 0; --v)
      if (!seen[v]) visit_root(v);
  }

  auto root_path = [&](int v) {
    EdgeSubset p(m);
    while (parent_edge[v] >= 0) {
      int e = parent_edge[v];
      p.flip(e);
      v = g.edges[e].tail == v ? g.edges[e].head : g.edges[e].tail;
    }
    return p;
  };

  CycleSpace cs;
  cs.graph = g;
  for (int e = 0; e < m; ++e) {
    if (in_forest[e]) {
      cs.forest_edges.push_back(e);
      continue;
    }
    EdgeSubset c(m);
    c.set(e);
    if (!g.edges[e].is_loop()) c ^= root_path(g.edges[e].tail) ^ root_path(g.edges[e].head);
    cs.basis.push_back(c);
    cs.chord_edges.push_back(e);
  }
  return cs;
}

// Stars of every vertex except the smallest one in each component.
inline std::vector<EdgeSubset> cocycle_basis(const MultiGraph& g) {
  UnionFind uf(g.vertex_count);
  for (const Edge& e : g.edges) uf.unite(e.tail, e.head);
  std::vector<char> root_taken(g.vertex_count, 0);
  std::vector<EdgeSubset> out;
  for (int v = 0; v < g.vertex_count; ++v) {
    int c = uf.find(v);
    if (!root_taken[c]) {
      root_taken[c] = 1;
      continue;
    }
    EdgeSubset star(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges[e];
      if (!ed.is_loop() && (ed.tail == v || ed.head == v)) star.set(e);
    }
    out.push_back(star);
  }
  return out;
}

inline bool is_eulerian(const MultiGraph& g, const EdgeSubset& a) {
  if (a.size() != g.edge_count()) throw DomainError("edge subset size mismatch");
  std::vector<char> parity(g.vertex_count, 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!a.test(e) || g.edges[e].is_loop()) continue;
    parity[g.edges[e].tail] ^= 1;
    parity[g.edges[e].head] ^= 1;
  }
  for (char p : parity)
    if (p) return false;
  return true;
}

inline bool is_eulerian_graph(const MultiGraph& g) {
  return is_eulerian(g, EdgeSubset::full(g.edge_count()));
}

// GF(2) rank by elimination on the lowest set bit.
inline int gf2_rank(std::vector<EdgeSubset> rows) {
  int rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto ids = rows[i].ids();
    if (ids.empty()) continue;
    int pivot = ids.front();
    ++rank;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j].test(pivot)) rows[j] ^= rows[i];
  }
  return rank;
}

// dim(C2 ∩ C2^⊥) = n + r - rank of the stacked bases.
inline int bicycle_dimension(const MultiGraph& g) {
  auto cs = cycle_basis(g);
  auto cut = cocycle_basis(g);
  std::vector<EdgeSubset> rows = cs.basis;
  rows.insert(rows.end(), cut.begin(), cut.end());
  return static_cast<int>(cs.basis.size() + cut.size()) - gf2_rank(rows);
}

// Packed view used by the enumeration kernels (|E| <= 64).
struct PackedSpace {
  int edge_count = 0;
  std::vector<std::uint64_t> cycles;     // basis of C2
  std::vector<std::uint64_t> forest;     // single-edge masks of the forest
  std::vector<std::uint64_t> cocycles;   // basis of C2^⊥
};

inline PackedSpace pack(const CycleSpace& cs) {
  PackedSpace p;
  p.edge_count = cs.graph.edge_count();
  require_size(p.edge_count <= kMaxExactEdges,
               "exact enumeration supports at most " + std::to_string(kMaxExactEdges) +
                   " edges, graph has " + std::to_string(p.edge_count));
  for (const auto& b : cs.basis) p.cycles.push_back(b.mask());
  for (int e : cs.forest_edges) p.forest.push_back(std::uint64_t{1} << e);
  for (const auto& c : cocycle_basis(cs.graph)) p.cocycles.push_back(c.mask());
  return p;
}

// Visits every element of span(gens) + offset in Gray-code order.
template <class F>
void for_each_in_span(const std::vector<std::uint64_t>& gens, std::uint64_t offset, F&& visit) {
  std::uint64_t x = offset;
  visit(x);
  const std::uint64_t total = std::uint64_t{1} << gens.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    x ^= gens[std::countr_zero(i)];
    visit(x);
  }
}

// Calls visit(z, hist) for each transversal element z (a subset of the forest
// edges, Gray-code order), where hist[w] = #{x in C2 + z : |x| = w}.
template <class F>
void for_each_coset_histogram(const PackedSpace& p, F&& visit) {
  std::vector<std::uint64_t> hist(p.edge_count + 1);
  for_each_in_span(p.forest, 0, [&](std::uint64_t z) {
    std::fill(hist.begin(), hist.end(), 0);
    for_each_in_span(p.cycles, z, [&](std::uint64_t x) { ++hist[std::popcount(x)]; });
    visit(z, static_cast<const std::vector<std::uint64_t>&>(hist));
  });
}

inline constexpr int kMaxTransversalRank = 20;

inline std::vector<EdgeSubset> coset_transversal(const CycleSpace& cs) {
  require_size(static_cast<int>(cs.forest_edges.size()) <= kMaxTransversalRank,
               "transversal of 2^" + std::to_string(cs.forest_edges.size()) +
                   " cosets exceeds the materialization bound");
  const int m = cs.graph.edge_count();
  std::vector<EdgeSubset> out;
  EdgeSubset z(m);
  out.push_back(z);
  const std::uint64_t total = std::uint64_t{1} << cs.forest_edges.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    z.flip(cs.forest_edges[std::countr_zero(i)]);
    out.push_back(z);
  }
  return out;
}

inline std::vector<EdgeSubset> coset_transversal(const MultiGraph& g) {
  return coset_transversal(cycle_basis(g));
}

inline bool valid_modulus(int q) { return q == 2 || q == 3 || q == 4 || q == 6; }

// p[l] = #{x in C2 + z : |E| - |x| = l mod q}.
inline std::vector<std::uint64_t> weight_class_counts(const CycleSpace& cs, const EdgeSubset& z,
                                                      int q) {
  require_domain(valid_modulus(q), "modulus must be 2, 3, 4 or 6");
  auto p = pack(cs);
  const int m = p.edge_count;
  std::vector<std::uint64_t> counts(q, 0);
  for_each_in_span(p.cycles, z.mask(),
                   [&](std::uint64_t x) { ++counts[(m - std::popcount(x)) % q]; });
  return counts;
}

inline std::vector<std::uint64_t> weight_class_counts(const MultiGraph& g, const EdgeSubset& z,
                                                      int q) {
  return weight_class_counts(cycle_basis(g), z, q);
}

}  // namespace tutteparity
