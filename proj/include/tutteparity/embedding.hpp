#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tutteparity/check.hpp"
#include "tutteparity/corpus.hpp"
#include "tutteparity/cyclespace.hpp"
#include "tutteparity/flows.hpp"
#include "tutteparity/parity_bias.hpp"
#include "tutteparity/tutte.hpp"

namespace tutteparity {

// One end of an edge: the head or the tail.
struct End {
  int edge = 0;
  bool head = false;
  bool operator==(const End&) const = default;
  auto operator<=>(const End&) const = default;
};

inline int end_vertex(const MultiGraph& g, End x) { return x.head ? g.edges[x.edge].head : g.edges[x.edge].tail; }

inline std::string to_string(End x) { return std::to_string(x.edge) + (x.head ? ":h" : ":t"); }

// Cyclic (clockwise) order of the edge ends at each vertex.
struct RotationSystem {
  std::vector<std::vector<End>> at;
  bool operator==(const RotationSystem&) const = default;
};

inline void validate_rotation(const MultiGraph& g, const RotationSystem& rot) {
  if (static_cast<int>(rot.at.size()) != g.vertex_count)
    throw DomainError("rotation lists " + std::to_string(rot.at.size()) + " vertices, graph has " +
                      std::to_string(g.vertex_count));
  std::vector<int> seen(2 * g.edge_count(), 0);
  for (int v = 0; v < g.vertex_count; ++v)
    for (End x : rot.at[v]) {
      if (x.edge < 0 || x.edge >= g.edge_count()) throw DomainError("rotation names unknown edge " + std::to_string(x.edge));
      if (end_vertex(g, x) != v)
        throw DomainError("end " + to_string(x) + " is listed at vertex " + std::to_string(v) + " but lies at " +
                          std::to_string(end_vertex(g, x)));
      if (seen[2 * x.edge + x.head]++) throw DomainError("end " + to_string(x) + " appears twice in the rotation");
    }
  for (int i = 0; i < 2 * g.edge_count(); ++i)
    if (!seen[i]) throw DomainError("end " + to_string(End{i / 2, i % 2 == 1}) + " is missing from the rotation");
}

// Lines "rot v: e:h e:t ..."; every other line is ignored.
inline RotationSystem parse_rotation(const MultiGraph& g, const std::string& text) {
  RotationSystem rot;
  rot.at.assign(g.vertex_count, {});
  std::vector<char> given(g.vertex_count, 0);
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string tag;
    if (!(in >> tag) || tag != "rot") continue;
    const int line = static_cast<int>(i) + 1;
    std::string vtok;
    in >> vtok;
    if (vtok.empty() || vtok.back() != ':') throw ParseError(line, "expected 'rot v:'");
    int v = 0;
    try {
      v = std::stoi(vtok.substr(0, vtok.size() - 1));
    } catch (const std::exception&) {
      throw ParseError(line, "bad vertex '" + vtok + "'");
    }
    if (v < 0 || v >= g.vertex_count) throw ParseError(line, "vertex " + std::to_string(v) + " out of range");
    if (given[v]++) throw ParseError(line, "vertex " + std::to_string(v) + " has two rotation lines");
    std::string tok;
    while (in >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon + 2 != tok.size() || (tok.back() != 'h' && tok.back() != 't'))
        throw ParseError(line, "bad end '" + tok + "' (expected e:h or e:t)");
      try {
        rot.at[v].push_back({std::stoi(tok.substr(0, colon)), tok.back() == 'h'});
      } catch (const std::exception&) {
        throw ParseError(line, "bad edge id in '" + tok + "'");
      }
    }
  }
  validate_rotation(g, rot);
  return rot;
}

inline std::string to_string(const RotationSystem& rot) {
  std::string s;
  for (std::size_t v = 0; v < rot.at.size(); ++v) {
    s += "rot " + std::to_string(v) + ":";
    for (End x : rot.at[v]) s += " " + to_string(x);
    s += "\n";
  }
  return s;
}

// Clockwise order of the ends at each vertex of a straight-line drawing,
// starting from the smallest end.
inline RotationSystem rotation_from_drawing(const MultiGraph& g, const Coordinates& xy) {
  require_domain(static_cast<int>(xy.size()) == g.vertex_count, "drawing does not match the graph");
  RotationSystem rot;
  rot.at.assign(g.vertex_count, {});
  for (int e = 0; e < g.edge_count(); ++e) {
    require_domain(!g.edges[e].is_loop(), "a straight-line drawing cannot place a loop");
    rot.at[g.edges[e].tail].push_back({e, false});
    rot.at[g.edges[e].head].push_back({e, true});
  }
  for (int v = 0; v < g.vertex_count; ++v) {
    auto angle = [&](End x) {
      const Edge& ed = g.edges[x.edge];
      int w = x.head ? ed.tail : ed.head;
      return std::atan2(xy[w].second - xy[v].second, xy[w].first - xy[v].first);
    };
    auto& ends = rot.at[v];
    std::sort(ends.begin(), ends.end(), [&](End a, End b) { return angle(a) > angle(b); });
    for (std::size_t i = 1; i < ends.size(); ++i)
      require_domain(angle(ends[i]) != angle(ends[i - 1]), "two edges leave vertex " + std::to_string(v) +
                                                                 " in the same direction");
    std::rotate(ends.begin(), std::min_element(ends.begin(), ends.end()), ends.end());
  }
  return rot;
}

// Face boundaries as edge sequences. A dart leaves through one end and
// arrives at the other; the next dart is the successor of the arrival end.
inline std::vector<std::vector<int>> trace_faces(const MultiGraph& g, const RotationSystem& rot) {
  validate_rotation(g, rot);
  std::vector<std::pair<int, int>> pos(2 * g.edge_count());
  for (int v = 0; v < g.vertex_count; ++v)
    for (std::size_t i = 0; i < rot.at[v].size(); ++i) {
      End x = rot.at[v][i];
      pos[2 * x.edge + x.head] = {v, static_cast<int>(i)};
    }
  std::vector<char> used(2 * g.edge_count(), 0);
  std::vector<std::vector<int>> faces;
  for (int d0 = 0; d0 < 2 * g.edge_count(); ++d0) {
    if (used[d0]) continue;
    std::vector<int> face;
    for (int d = d0; !used[d];) {
      used[d] = 1;
      face.push_back(d / 2);
      int arrive = d ^ 1;
      auto [v, i] = pos[arrive];
      End next = rot.at[v][(i + 1) % rot.at[v].size()];
      d = 2 * next.edge + next.head;
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

// Euler genus data; isolated vertices count as one face each.
struct EmbeddingSummary {
  int vertices = 0, edges = 0, faces = 0, components = 0;
  int genus = 0;
  bool plane() const { return genus == 0; }
};

inline EmbeddingSummary embedding_summary(const MultiGraph& g, const RotationSystem& rot) {
  EmbeddingSummary s;
  s.vertices = g.vertex_count;
  s.edges = g.edge_count();
  s.faces = static_cast<int>(trace_faces(g, rot).size());
  for (int v = 0; v < g.vertex_count; ++v) s.faces += rot.at[v].empty();
  s.components = rank_profile(g).k;
  s.genus = (2 * s.components - (s.vertices - s.edges + s.faces)) / 2;
  return s;
}

using Triangle = std::array<int, 3>;
using TriangleCover = std::vector<Triangle>;

inline bool is_triangle(const MultiGraph& g, const Triangle& t) {
  if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) return false;
  std::map<int, int> deg;
  for (int e : t) {
    if (e < 0 || e >= g.edge_count() || g.edges[e].is_loop()) return false;
    ++deg[g.edges[e].tail];
    ++deg[g.edges[e].head];
  }
  return deg.size() == 3 && std::all_of(deg.begin(), deg.end(), [](auto& p) { return p.second == 2; });
}

// Each triangle is a 3-cycle; each edge lies in exactly `times` triangles.
inline void validate_triangles(const MultiGraph& g, const TriangleCover& cover, int times) {
  std::vector<int> count(g.edge_count(), 0);
  for (const auto& t : cover) {
    if (!is_triangle(g, t))
      throw DomainError("tri " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) +
                        " is not a triangle of the graph");
    for (int e : t) ++count[e];
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (count[e] != times)
      throw DomainError("edge " + std::to_string(e) + " lies in " + std::to_string(count[e]) + " triangles, expected " +
                        std::to_string(times));
}

inline void validate_triangle_cover(const MultiGraph& g, const TriangleCover& cover) { validate_triangles(g, cover, 2); }

// Lines "tri e f g"; every other line is ignored.
inline TriangleCover parse_triangles(const MultiGraph& g, const std::string& text) {
  TriangleCover cover;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string tag;
    if (!(in >> tag) || tag != "tri") continue;
    Triangle t{};
    std::string extra;
    if (!(in >> t[0] >> t[1] >> t[2]) || (in >> extra)) throw ParseError(static_cast<int>(i) + 1, "expected 'tri e f g'");
    cover.push_back(t);
  }
  validate_triangle_cover(g, cover);
  return cover;
}

inline std::string to_string(const TriangleCover& cover) {
  std::string s;
  for (const auto& t : cover)
    s += "tri " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  return s;
}

// Faces of length three, each listed with its edges sorted.
inline TriangleCover facial_triangles(const MultiGraph& g, const RotationSystem& rot) {
  TriangleCover out;
  for (auto& f : trace_faces(g, rot))
    if (f.size() == 3) {
      Triangle t{f[0], f[1], f[2]};
      std::sort(t.begin(), t.end());
      out.push_back(t);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// A, B eulerian with A u B = E; biases of |A| - |B| = c mod 3.
struct TriangulationReport {
  std::array<long long, 3> counts{};
  long long gamma_count = 0;
  BigRational p_gamma;
  std::array<BigRational, 3> bias_conditional;
  std::array<BigRational, 3> bias_unconditional;
  BigRational ratio;
  BigRational ratio_expected;
  std::vector<CheckResult> checks;
};

inline TriangulationReport triangulation_bias(const TutteData& d, const TriangleCover& cover) {
  const MultiGraph& g = d.graph;
  validate_triangle_cover(g, cover);
  const int m = g.edge_count();
  auto pk = pack(cycle_basis(g));
  require_size(pk.cycles.size() <= 14, "eulerian pair enumeration needs 4^n(G) steps, n(G) at most 14");
  std::vector<std::uint64_t> eul;
  for_each_in_span(pk.cycles, 0, [&](std::uint64_t x) { eul.push_back(x); });
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  TriangulationReport r;
  for (auto a : eul)
    for (auto b : eul)
      if ((a | b) == all) ++r.counts[((std::popcount(a) - std::popcount(b)) % 3 + 3) % 3];
  r.gamma_count = r.counts[0] + r.counts[1] + r.counts[2];
  if (r.gamma_count == 0) throw DomainError("P(Gamma) = 0: no eulerian pair covers E");
  r.p_gamma = BigRational(r.gamma_count) * pow2(-2 * m);
  for (int c = 0; c < 3; ++c) {
    r.bias_conditional[c] = make_rational(2 * r.counts[c], r.gamma_count) - 1;
    r.bias_unconditional[c] = unconditional_bias(m, make_event(EventKind::difference, 3, {c}));
  }
  const BigRational f4 = flow_value(g, d.poly, 4), p4 = chromatic_value(g, d.poly, 4);
  if (f4 == 0) throw DomainError("F(G;4) = 0");
  r.ratio = (r.bias_conditional[0] - r.bias_conditional[1]) / (r.bias_unconditional[0] - r.bias_unconditional[1]);
  r.ratio_expected = pow2(3 * m - 2 * g.vertex_count) * p4 / f4;
  r.checks.push_back(compare("triangulation gamma", r.p_gamma, pow2(-2 * m) * f4));
  r.checks.push_back(compare("triangulation equal", r.bias_conditional[1], r.bias_conditional[2]));
  r.checks.push_back(compare("triangulation ratio", r.ratio, r.ratio_expected));
  return r;
}

inline TriangulationReport triangulation_bias(const MultiGraph& g, const TriangleCover& cover) {
  return triangulation_bias(TutteData(g), cover);
}

// +1 keeps the edge list direction, -1 reverses it.
struct Orientation {
  std::vector<int> sign;
  bool operator==(const Orientation&) const = default;
};

inline MultiGraph reorient(const MultiGraph& g, const Orientation& o) {
  require_domain(static_cast<int>(o.sign.size()) == g.edge_count(), "orientation does not match the graph");
  MultiGraph h = g;
  for (int e = 0; e < g.edge_count(); ++e) {
    require_domain(o.sign[e] == 1 || o.sign[e] == -1, "orientation entries must be +1 or -1");
    if (o.sign[e] < 0) std::swap(h.edges[e].tail, h.edges[e].head);
  }
  return h;
}

struct Medial {
  MultiGraph graph;
  Orientation gamma;
  TriangleCover black;  // each edge in exactly one black triangle
  bool plane = false;   // the rotation of H has genus 0
};

// Vertices are the edges of H. Around each vertex v of H with rotation
// (e0, e1, e2), medial edges 3v + i run e_i -> e_(i+1), so the black
// triangle of v is directed in rotation order.
inline Medial medial(const MultiGraph& h, const RotationSystem& rot) {
  if (!is_regular(h, 3)) throw DomainError("medial graph needs a cubic graph");
  validate_rotation(h, rot);
  Medial out;
  out.graph.vertex_count = h.edge_count();
  for (int v = 0; v < h.vertex_count; ++v) {
    const auto& ends = rot.at[v];
    for (int i = 0; i < 3; ++i) out.graph.edges.push_back({ends[i].edge, ends[(i + 1) % 3].edge});
    out.black.push_back({3 * v, 3 * v + 1, 3 * v + 2});
  }
  out.gamma.sign.assign(out.graph.edge_count(), 1);
  out.plane = embedding_summary(h, rot).plane();
  return out;
}

struct PenroseReport {
  long long signed_sum = 0;    // sum over nowhere-zero flows of (-1)^#(x_e = -1)
  long long nowhere_zero = 0;  // F(G;3)
  BigRational bias;
  std::optional<CheckResult> check;
};

inline constexpr double kMaxPenroseFlows = 1e8;

// Nowhere-zero Z3 flows in gamma's frame are the eulerian orientations;
// x_e = +1 agrees with gamma. |E| is even, so the parity of the
// agreements equals the parity of #(x_e = -1).
inline PenroseReport penrose_bias(const TutteData& d, const Orientation& gamma, bool assert_plane) {
  const MultiGraph& g = d.graph;
  if (!is_regular(g, 4)) throw DomainError("penrose bias needs a 4-regular graph");
  auto h = reorient(g, gamma);
  require_size(std::pow(3.0, d.profile.n) <= kMaxPenroseFlows, "3^n(G) flows exceed the enumeration bound 1e8");
  const int m = g.edge_count();
  PenroseReport r;
  for_each_in_module(flow_basis(h, Ring::Z3), Ring::Z3, m, [&](std::uint64_t x) {
    if (!packed::nowhere_zero(x, m)) return;
    ++r.nowhere_zero;
    int minus = 0;
    for (int e = 0; e < m; ++e) minus += packed::get(x, e) == 2;
    r.signed_sum += minus % 2 ? -1 : 1;
  });
  if (r.nowhere_zero == 0) throw DomainError("F(G;3) = 0: no eulerian orientation");
  r.bias = make_rational(r.signed_sum, r.nowhere_zero);
  if (assert_plane)
    r.check = compare("penrose", r.bias, chromatic_value(g, d.poly, 3) / flow_value(g, d.poly, 3));
  return r;
}

inline PenroseReport penrose_bias(const MultiGraph& g, const Orientation& gamma, bool assert_plane) {
  return penrose_bias(TutteData(g), gamma, assert_plane);
}

// Two uniform orientations alpha, beta. Gamma: the partial orientation
// alpha + beta (edges where they agree) is an F3-flow. Sigma: |alpha + beta| even.
struct OrientationPairReport {
  BigRational sum_count_squares;   // sum over cosets of (#nowhere-zero)^2
  BigRational sum_signed_squares;  // sum over cosets of (signed count)^2
  BigRational p_gamma;
  BigRational bias;
  std::vector<CheckResult> checks;
};

inline constexpr double kMaxOrientationCosetWork = 1e8;

inline OrientationPairReport orientation_pair_stats(const TutteData& d, ForestOrder order = ForestOrder::forward) {
  const MultiGraph& g = d.graph;
  if (!is_regular(g, 4)) throw DomainError("orientation pairs need a 4-regular graph");
  const int m = g.edge_count();
  require_size(std::pow(3.0, m) <= kMaxOrientationCosetWork, "3^|E| coset enumeration exceeds the bound 1e8");
  std::vector<std::uint64_t> flows;
  for_each_in_module(flow_basis(g, Ring::Z3, order), Ring::Z3, m, [&](std::uint64_t x) { flows.push_back(x); });
  // Vectors supported on the forest form a transversal of the flows.
  auto forest = cycle_basis(g, order).forest_edges;
  std::vector<QAssignment> shifts;
  for (int e : forest) {
    QAssignment s{Ring::Z3, std::vector<int>(m, 0)};
    s.values[e] = 1;
    shifts.push_back(std::move(s));
  }
  BigInt count_sq = 0, signed_sq = 0;
  for_each_in_module(shifts, Ring::Z3, m, [&](std::uint64_t z) {
    long long count = 0, sig = 0;
    for (auto f : flows) {
      auto x = packed::add(z, f, Ring::Z3, m);
      if (!packed::nowhere_zero(x, m)) continue;
      ++count;
      int minus = 0;
      for (int e = 0; e < m; ++e) minus += packed::get(x, e) == 2;
      sig += minus % 2 ? -1 : 1;
    }
    count_sq += BigInt(count) * count;
    signed_sq += BigInt(sig) * sig;
  });
  OrientationPairReport r;
  r.sum_count_squares = BigRational(count_sq);
  r.sum_signed_squares = BigRational(signed_sq);
  if (count_sq == 0) throw std::logic_error("no orientation pair lies in Gamma");
  r.p_gamma = r.sum_count_squares * pow2(-2 * m);
  r.bias = r.sum_signed_squares / r.sum_count_squares;
  const BigRational t24 = evaluate(d.poly, BigRational(2), BigRational(4));
  if (t24 == 0) throw std::logic_error("T(G;2,4) = 0 for a graph with edges");
  r.checks.push_back(compare("orientation pairs gamma", r.p_gamma, pow2(-2 * m) * t24));
  r.checks.push_back(compare("orientation pairs bias", r.bias,
                             power(BigRational(3), m - g.vertex_count) * chromatic_value(g, d.poly, 3) / t24));
  return r;
}

inline OrientationPairReport orientation_pair_stats(const MultiGraph& g, ForestOrder order = ForestOrder::forward) {
  return orientation_pair_stats(TutteData(g), order);
}

// All 4^|E| pairs of orientations, straight from the definitions.
struct OrientationPairCount {
  long long f3_flow = 0;    // alpha + beta is an F3-flow
  long long signed_sum = 0; // over those pairs, (-1)^|alpha + beta|
  long long balanced = 0;   // alpha + beta has in-degree = out-degree everywhere
};

inline constexpr int kMaxDirectPairEdges = 13;

inline OrientationPairCount orientation_pairs_direct(const MultiGraph& g) {
  const int m = g.edge_count();
  require_size(m <= kMaxDirectPairEdges, "direct pair enumeration supports at most 13 edges");
  std::vector<std::uint64_t> out(g.vertex_count, 0), in(g.vertex_count, 0);
  for (int e = 0; e < m; ++e) {
    out[g.edges[e].tail] |= std::uint64_t{1} << e;
    in[g.edges[e].head] |= std::uint64_t{1} << e;
  }
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  OrientationPairCount c;
  // Bit e set: reversed relative to the edge list.
  for (std::uint64_t a = 0; a <= all; ++a)
    for (std::uint64_t b = 0; b <= all; ++b) {
      std::uint64_t agree = ~(a ^ b) & all, fwd = agree & ~a, rev = agree & a;
      bool f3 = true, zero = true;
      for (int v = 0; v < g.vertex_count; ++v) {
        int net = std::popcount(fwd & out[v]) - std::popcount(fwd & in[v]) - std::popcount(rev & out[v]) +
                  std::popcount(rev & in[v]);
        f3 = f3 && net % 3 == 0;
        zero = zero && net == 0;
      }
      if (f3) {
        ++c.f3_flow;
        c.signed_sum += std::popcount(agree) % 2 ? -1 : 1;
      }
      c.balanced += zero;
    }
  return c;
}

}  // namespace tutteparity
