#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tutteparity/graph.hpp"

namespace tutteparity {

// Straight-line plane drawing, used only to derive rotation systems for the
// planar corpus members.
using Coordinates = std::vector<std::pair<double, double>>;

struct NamedGraph {
  std::string name;
  MultiGraph graph;
  std::optional<Coordinates> drawing;
};

namespace corpus_detail {

inline MultiGraph complete(int n) {
  MultiGraph g;
  g.vertex_count = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.push_back({u, v});
  return g;
}

inline MultiGraph cycle(int n) {
  MultiGraph g;
  g.vertex_count = n;
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  return g;
}

// Parts {0..a-1} and {a..a+b-1}, edges in lexicographic order.
inline MultiGraph complete_bipartite(int a, int b) {
  MultiGraph g;
  g.vertex_count = a + b;
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) g.edges.push_back({u, v});
  return g;
}

inline Coordinates polygon(int n, double radius, double phase_deg) {
  Coordinates c;
  for (int i = 0; i < n; ++i) {
    double a = (phase_deg + 360.0 * i / n) * 3.14159265358979323846 / 180.0;
    c.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return c;
}

inline Coordinates polar(std::initializer_list<std::pair<double, double>> rad_deg) {
  Coordinates c;
  for (auto [r, d] : rad_deg) {
    double a = d * 3.14159265358979323846 / 180.0;
    c.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return c;
}

}  // namespace corpus_detail

// Edge orderings:
//   K3      (0,1) (1,2) (2,0)
//   Kn      all pairs u<v in lexicographic order
//   Cn      (i, i+1 mod n)
//   K23/K33 parts {0..a-1}, {a..}; pairs in lexicographic order
//   prism   triangles 012 and 345, then rungs (0,3) (1,4) (2,5)
//   octahedron  K6 minus {01, 23, 45}, lexicographic
//   petersen    outer (i,i+1), spokes (i,i+5), inner (5+i, 5+(i+2)%5)
//   loop    one vertex with one loop; edge: K2
//   K3+K2   K3 on {0,1,2} plus the edge (3,4)
//   C4x2    C4 with every edge doubled, copies adjacent in the list
inline std::vector<NamedGraph> corpus() {
  using namespace corpus_detail;
  std::vector<NamedGraph> out;
  out.push_back({"K3", cycle(3), polygon(3, 1, 90)});
  out.push_back({"K4", complete(4), polar({{2, 90}, {2, 210}, {2, 330}, {0, 0}})});
  out.push_back({"K5", complete(5), std::nullopt});
  out.push_back({"C4", cycle(4), polygon(4, 1, 0)});
  out.push_back({"C5", cycle(5), polygon(5, 1, 0)});
  out.push_back({"K23", complete_bipartite(2, 3), std::nullopt});
  out.push_back({"K33", complete_bipartite(3, 3), std::nullopt});

  MultiGraph prism;
  prism.vertex_count = 6;
  prism.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}};
  out.push_back({"prism", prism,
                 polar({{2, 90}, {2, 210}, {2, 330}, {1, 90}, {1, 210}, {1, 330}})});

  MultiGraph octa;
  octa.vertex_count = 6;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (!(u % 2 == 0 && v == u + 1)) octa.edges.push_back({u, v});
  // Outer triangle 0,2,4; each inner vertex sits opposite its non-neighbour.
  out.push_back({"octahedron", octa,
                 polar({{2, 90}, {0.5, 270}, {2, 210}, {0.5, 30}, {2, 330}, {0.5, 150}})});

  MultiGraph pet;
  pet.vertex_count = 10;
  for (int i = 0; i < 5; ++i) pet.edges.push_back({i, (i + 1) % 5});
  for (int i = 0; i < 5; ++i) pet.edges.push_back({i, i + 5});
  for (int i = 0; i < 5; ++i) pet.edges.push_back({5 + i, 5 + (i + 2) % 5});
  out.push_back({"petersen", pet, std::nullopt});

  out.push_back({"loop", MultiGraph(1, {{0, 0}}), std::nullopt});
  out.push_back({"edge", MultiGraph(2, {{0, 1}}), std::nullopt});
  out.push_back({"K3+K2", disjoint_union(cycle(3), MultiGraph(2, {{0, 1}})), std::nullopt});

  MultiGraph c4x2;
  c4x2.vertex_count = 4;
  for (int i = 0; i < 4; ++i) {
    c4x2.edges.push_back({i, (i + 1) % 4});
    c4x2.edges.push_back({i, (i + 1) % 4});
  }
  out.push_back({"C4x2", c4x2, std::nullopt});

  MultiGraph k3x2;
  k3x2.vertex_count = 3;
  for (int i = 0; i < 3; ++i) {
    k3x2.edges.push_back({i, (i + 1) % 3});
    k3x2.edges.push_back({i, (i + 1) % 3});
  }
  out.push_back({"K3x2+K3x2", disjoint_union(k3x2, k3x2), std::nullopt});
  return out;
}

inline std::optional<NamedGraph> corpus_entry(const std::string& name) {
  for (auto& g : corpus())
    if (g.name == name) return g;
  return std::nullopt;
}

inline MultiGraph corpus_graph(const std::string& name) {
  auto g = corpus_entry(name);
  if (!g) throw DomainError("unknown corpus graph '" + name + "'");
  return g->graph;
}

}  // namespace tutteparity
