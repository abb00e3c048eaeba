#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tutteparity/errors.hpp"

namespace tutteparity {

struct Edge {
  int tail = 0;
  int head = 0;
  bool is_loop() const { return tail == head; }
  bool operator==(const Edge&) const = default;
};

// Vertex count plus an ordered edge list. Edge id = list position.
struct MultiGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;

  MultiGraph() = default;
  MultiGraph(int n, std::vector<Edge> es) : vertex_count(n), edges(std::move(es)) {
    if (n < 0) throw DomainError("negative vertex count");
    for (const Edge& e : edges)
      if (e.tail < 0 || e.head < 0 || e.tail >= n || e.head >= n)
        throw DomainError("edge endpoint out of range");
  }

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool operator==(const MultiGraph&) const = default;
};

struct RankProfile {
  int k = 0;
  int r = 0;
  int n = 0;
  bool operator==(const RankProfile&) const = default;
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), sets_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    --sets_;
    return true;
  }
  int sets() const { return sets_; }

 private:
  std::vector<int> parent_;
  int sets_;
};

inline RankProfile rank_profile(const MultiGraph& g) {
  UnionFind uf(g.vertex_count);
  for (const Edge& e : g.edges) uf.unite(e.tail, e.head);
  RankProfile p;
  p.k = uf.sets();
  p.r = g.vertex_count - p.k;
  p.n = g.edge_count() - p.r;
  return p;
}

// Degree with loops counted twice.
inline std::vector<int> degrees(const MultiGraph& g) {
  std::vector<int> d(g.vertex_count, 0);
  for (const Edge& e : g.edges) {
    ++d[e.tail];
    ++d[e.head];
  }
  return d;
}

inline bool is_regular(const MultiGraph& g, int degree) {
  auto d = degrees(g);
  return std::all_of(d.begin(), d.end(), [&](int x) { return x == degree; });
}

inline int loop_count(const MultiGraph& g) {
  return static_cast<int>(std::count_if(g.edges.begin(), g.edges.end(),
                                        [](const Edge& e) { return e.is_loop(); }));
}

// An isthmus is a non-loop edge whose removal increases k.
inline bool is_isthmus(const MultiGraph& g, int e) {
  if (g.edges.at(e).is_loop()) return false;
  UnionFind uf(g.vertex_count);
  for (int i = 0; i < g.edge_count(); ++i)
    if (i != e) uf.unite(g.edges[i].tail, g.edges[i].head);
  return uf.find(g.edges[e].tail) != uf.find(g.edges[e].head);
}

inline int isthmus_count(const MultiGraph& g) {
  int c = 0;
  for (int e = 0; e < g.edge_count(); ++e) c += is_isthmus(g, e);
  return c;
}

inline MultiGraph delete_edge(const MultiGraph& g, int e) {
  if (e < 0 || e >= g.edge_count()) throw DomainError("edge id out of range");
  MultiGraph h = g;
  h.edges.erase(h.edges.begin() + e);
  return h;
}

struct Contraction {
  MultiGraph graph;
  std::vector<int> vertex_map;  // old vertex -> new vertex
  std::vector<int> edge_map;    // old edge -> new edge, -1 for the contracted edge
};

// Merges the endpoints of a non-loop edge. The higher endpoint is removed and
// the vertices above it shift down by one.
inline Contraction contract_edge(const MultiGraph& g, int e) {
  if (e < 0 || e >= g.edge_count()) throw DomainError("edge id out of range");
  const Edge ce = g.edges[e];
  if (ce.is_loop()) throw DomainError("cannot contract a loop");
  const int keep = std::min(ce.tail, ce.head), gone = std::max(ce.tail, ce.head);
  Contraction c;
  c.vertex_map.resize(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) {
    int w = v == gone ? keep : v;
    c.vertex_map[v] = w > gone ? w - 1 : w;
  }
  c.graph.vertex_count = g.vertex_count - 1;
  c.edge_map.assign(g.edge_count(), -1);
  for (int i = 0; i < g.edge_count(); ++i) {
    if (i == e) continue;
    c.edge_map[i] = static_cast<int>(c.graph.edges.size());
    c.graph.edges.push_back({c.vertex_map[g.edges[i].tail], c.vertex_map[g.edges[i].head]});
  }
  return c;
}

inline MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b) {
  MultiGraph u = a;
  u.vertex_count += b.vertex_count;
  for (const Edge& e : b.edges)
    u.edges.push_back({e.tail + a.vertex_count, e.head + a.vertex_count});
  return u;
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Parses exactly `count` non-negative integers from a line, or fails.
inline std::vector<long long> read_ints(const std::string& line, std::size_t count,
                                        std::size_t lineno) {
  std::istringstream in(line);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                    [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError(lineno, "expected non-negative integer, got '" + tok + "'");
    if (tok.size() > 9) throw ParseError(lineno, "integer too large: " + tok);
    out.push_back(std::stoll(tok));
  }
  if (out.size() != count)
    throw ParseError(lineno, "expected " + std::to_string(count) + " integers");
  return out;
}

inline bool is_section_line(const std::string& s) {
  std::istringstream in(s);
  std::string w;
  in >> w;
  return w == "rot" || w == "tri";
}

}  // namespace detail

// "n m" then m lines "u v". Blank lines are skipped. Trailing "rot" and "tri"
// lines belong to embedding sections and are left for their own parsers.
inline MultiGraph parse_edge_list(const std::string& text) {
  auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && detail::blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError(1, "missing header 'n m'");
  auto header = detail::read_ints(lines[i], 2, i + 1);
  const std::size_t header_line = i + 1;
  const long long n = header[0], m = header[1];
  MultiGraph g;
  g.vertex_count = static_cast<int>(n);
  for (++i; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    if (detail::is_section_line(lines[i])) break;
    if (static_cast<long long>(g.edges.size()) == m)
      throw ParseError(i + 1, "edge count mismatch: header declares " + std::to_string(m) +
                                  " edges but more follow");
    auto uv = detail::read_ints(lines[i], 2, i + 1);
    for (long long v : uv)
      if (v >= n)
        throw ParseError(i + 1, "vertex index " + std::to_string(v) + " >= n = " +
                                    std::to_string(n));
    g.edges.push_back({static_cast<int>(uv[0]), static_cast<int>(uv[1])});
  }
  if (static_cast<long long>(g.edges.size()) != m)
    throw ParseError(header_line, "edge count mismatch: header declares " + std::to_string(m) +
                                      " edges, found " + std::to_string(g.edges.size()));
  return g;
}

inline std::string to_edge_list(const MultiGraph& g) {
  std::ostringstream out;
  out << g.vertex_count << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges) out << e.tail << ' ' << e.head << '\n';
  return out.str();
}

inline nlohmann::json to_json(const MultiGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges) edges.push_back({e.tail, e.head});
  return {{"edges", edges}, {"n", g.vertex_count}};
}

// Compact, sorted keys: byte-stable for equal graphs.
inline std::string to_json_string(const MultiGraph& g) { return to_json(g).dump(); }

inline MultiGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw ParseError(0, "graph JSON needs keys \"n\" and \"edges\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0)
    throw ParseError(0, "\"n\" must be a non-negative integer");
  MultiGraph g;
  g.vertex_count = j["n"].get<int>();
  if (!j["edges"].is_array()) throw ParseError(0, "\"edges\" must be an array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError(0, "edge entries must be [u, v] integer pairs");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count)
      throw ParseError(0, "edge endpoint out of range");
    g.edges.push_back({u, v});
  }
  return g;
}

// Accepts either the edge-list text or the JSON form.
inline MultiGraph parse_graph(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_edge_list(text);
}

}  // namespace tutteparity
