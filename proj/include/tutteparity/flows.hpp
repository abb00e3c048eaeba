#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tutteparity/check.hpp"
#include "tutteparity/cyclespace.hpp"
#include "tutteparity/cyclotomic.hpp"
#include "tutteparity/tutte.hpp"

namespace tutteparity {

// Scalars are stored as 2-bit codes. Z3 and Z4 use the residue; F4 uses
// c0 + 2 c1 for c0 + c1 w, so 1 = 1, 2 = w, 3 = w^2 = 1 + w.
enum class Ring { Z3, Z4, F4 };

inline int ring_order(Ring r) { return r == Ring::Z3 ? 3 : 4; }

inline std::string to_string(Ring r) {
  return r == Ring::Z3 ? "Z3" : r == Ring::Z4 ? "Z4" : "F4";
}

inline Ring parse_ring(const std::string& s) {
  if (s == "Z3" || s == "z3" || s == "3") return Ring::Z3;
  if (s == "Z4" || s == "z4") return Ring::Z4;
  if (s == "F4" || s == "f4") return Ring::F4;
  throw DomainError("unknown ring '" + s + "' (expected Z3, Z4 or F4)");
}

inline int ring_add(Ring r, int a, int b) { return r == Ring::F4 ? a ^ b : (a + b) % ring_order(r); }
inline int ring_neg(Ring r, int a) { return r == Ring::F4 ? a : (ring_order(r) - a) % ring_order(r); }

inline int ring_mul(Ring r, int a, int b) {
  if (r != Ring::F4) return a * b % ring_order(r);
  if (!a || !b) return 0;
  static const int log[4] = {0, 0, 1, 2}, exp[3] = {1, 2, 3};
  return exp[(log[a] + log[b]) % 3];
}

// Discrete log base w of a non-zero F4 code.
inline int f4_log(int a) { return a == 1 ? 0 : a == 2 ? 1 : 2; }

inline std::string scalar_string(Ring r, int a) {
  if (r == Ring::F4) return a == 0 ? "0" : a == 1 ? "1" : a == 2 ? "w" : "w2";
  return std::to_string(a);
}

// Edge-indexed vector over a ring, relative to the edge list orientation.
struct QAssignment {
  Ring ring = Ring::Z3;
  std::vector<int> values;

  int weight() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(), [](int v) { return v != 0; }));
  }
  bool operator==(const QAssignment&) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t e = 0; e < values.size(); ++e) s += (e ? "," : "") + scalar_string(ring, values[e]);
    return s + ")";
  }
};

inline int dot(const QAssignment& a, const QAssignment& b) {
  require_domain(a.ring == b.ring && a.values.size() == b.values.size(), "dot product of mismatched vectors");
  int s = 0;
  for (std::size_t e = 0; e < a.values.size(); ++e) s = ring_add(a.ring, s, ring_mul(a.ring, a.values[e], b.values[e]));
  return s;
}

// Signed fundamental cycles of the forest chosen by cycle_basis.
inline std::vector<QAssignment> flow_basis(const MultiGraph& g, Ring ring, ForestOrder order = ForestOrder::forward) {
  const auto cs = cycle_basis(g, order);
  const int nv = g.vertex_count;
  std::vector<std::vector<int>> adj(nv);
  for (int e : cs.forest_edges) {
    adj[g.edges[e].tail].push_back(e);
    adj[g.edges[e].head].push_back(e);
  }
  std::vector<int> parent_edge(nv, -1), depth(nv, -1);
  for (int root = 0; root < nv; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : adj[v]) {
        int w = g.edges[e].tail == v ? g.edges[e].head : g.edges[e].tail;
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent_edge[w] = e;
        stack.push_back(w);
      }
    }
  }
  auto up = [&](int v) {
    const Edge& f = g.edges[parent_edge[v]];
    return f.tail == v ? f.head : f.tail;
  };
  const int minus_one = ring_neg(ring, 1);
  std::vector<QAssignment> out;
  for (int c : cs.chord_edges) {
    QAssignment x{ring, std::vector<int>(g.edge_count(), 0)};
    x.values[c] = 1;
    // Traverse tail -> head along c, then head back to tail through the forest.
    int a = g.edges[c].head, b = g.edges[c].tail;
    std::vector<std::pair<int, int>> from_b;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        int f = parent_edge[a];
        x.values[f] = g.edges[f].tail == a ? 1 : minus_one;
        a = up(a);
      } else {
        int f = parent_edge[b];
        // Walked later in the opposite direction: parent -> b.
        x.values[f] = g.edges[f].tail == b ? minus_one : 1;
        b = up(b);
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Coboundaries of the vertices other than the first of each component:
// x_e = [head = v] - [tail = v].
inline std::vector<QAssignment> tension_basis(const MultiGraph& g, Ring ring) {
  std::vector<QAssignment> out;
  UnionFind uf(g.vertex_count);
  for (const Edge& e : g.edges) uf.unite(e.tail, e.head);
  std::vector<char> seen(g.vertex_count, 0);
  for (int v = 0; v < g.vertex_count; ++v) {
    int root = uf.find(v);
    if (!seen[root]) {
      seen[root] = 1;
      continue;
    }
    QAssignment x{ring, std::vector<int>(g.edge_count(), 0)};
    for (int e = 0; e < g.edge_count(); ++e) {
      int val = (g.edges[e].head == v) - (g.edges[e].tail == v);
      x.values[e] = val >= 0 ? val : ring_neg(ring, 1);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Packed vectors: 2 bits per edge, at most 32 edges.
namespace packed {

inline constexpr std::uint64_t kLow = 0x5555555555555555ULL;
inline constexpr int kMaxEdges = 32;

inline int get(std::uint64_t x, int e) { return static_cast<int>((x >> (2 * e)) & 3); }

inline std::uint64_t pack(const QAssignment& a) {
  require_size(a.values.size() <= kMaxEdges, "packed ring vectors support at most 32 edges");
  std::uint64_t x = 0;
  for (std::size_t e = 0; e < a.values.size(); ++e) x |= static_cast<std::uint64_t>(a.values[e]) << (2 * e);
  return x;
}

inline QAssignment unpack(std::uint64_t x, Ring ring, int m) {
  QAssignment a{ring, std::vector<int>(m)};
  for (int e = 0; e < m; ++e) a.values[e] = get(x, e);
  return a;
}

inline std::uint64_t add(std::uint64_t x, std::uint64_t y, Ring ring, int m) {
  if (ring == Ring::F4) return x ^ y;
  if (ring == Ring::Z4) return (x ^ y) ^ (((x & y) & kLow) << 1);
  std::uint64_t out = 0;
  for (int e = 0; e < m; ++e) out |= static_cast<std::uint64_t>((get(x, e) + get(y, e)) % 3) << (2 * e);
  return out;
}

// Multiplication by w in F4: (c0 + c1 w) w = c1 + (c0 + c1) w.
inline std::uint64_t times_w(std::uint64_t x) {
  std::uint64_t lo = x & kLow, hi = (x >> 1) & kLow;
  return hi | ((lo ^ hi) << 1);
}

inline std::uint64_t nonzero_fields(std::uint64_t x) { return (x | (x >> 1)) & kLow; }
inline int weight(std::uint64_t x) { return std::popcount(nonzero_fields(x)); }
inline std::uint64_t full_mask(int m) { return m == 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * m)) - 1; }
inline bool nowhere_zero(std::uint64_t x, int m) { return nonzero_fields(x) == (full_mask(m) & kLow); }

// x <= y: every non-zero entry of x equals the entry of y.
inline bool below(std::uint64_t x, std::uint64_t y) {
  std::uint64_t nz = nonzero_fields(x);
  return ((x ^ y) & (nz | (nz << 1))) == 0;
}

}  // namespace packed

inline constexpr double kMaxModuleSize = 1e8;

// Visits every element of the module spanned by the basis (each generator
// over the ring; F4 spans also use w times each generator).
template <class F>
void for_each_in_module(const std::vector<QAssignment>& basis, Ring ring, int m, F&& visit) {
  std::vector<std::uint64_t> gens;
  std::vector<int> orders;
  for (const auto& b : basis) {
    gens.push_back(packed::pack(b));
    orders.push_back(ring == Ring::F4 ? 2 : ring_order(ring));
    if (ring == Ring::F4) {
      gens.push_back(packed::times_w(gens.back()));
      orders.push_back(2);
    }
  }
  double size = 1;
  for (int o : orders) size *= o;
  require_size(size <= kMaxModuleSize, "module of " + std::to_string(static_cast<long long>(size)) +
                                           " elements exceeds the enumeration bound 1e8");
  std::vector<int> digit(gens.size(), 0);
  std::uint64_t x = 0;
  while (true) {
    visit(x);
    std::size_t j = 0;
    for (; j < gens.size(); ++j) {
      x = packed::add(x, gens[j], ring, m);
      if (++digit[j] < orders[j]) break;
      digit[j] = 0;  // o_j g_j = 0, so x is back to its value before this digit moved
    }
    if (j == gens.size()) return;
  }
}

enum class Space { flows, tensions };

inline std::vector<QAssignment> space_basis(const MultiGraph& g, Ring ring, Space s) {
  return s == Space::flows ? flow_basis(g, ring) : tension_basis(g, ring);
}

inline constexpr std::size_t kMaxStoredModule = std::size_t{1} << 22;

// Distinct elements, sorted. The count must be q^dim; for Z4 this is the
// check that the fundamental cycles generate every flow.
inline std::vector<std::uint64_t> module_elements(const MultiGraph& g, Ring ring, Space s) {
  require_size(g.edge_count() <= packed::kMaxEdges, "ring enumeration supports at most 32 edges");
  auto basis = space_basis(g, ring, s);
  double expected = std::pow(4.0, static_cast<double>(basis.size()));
  if (ring == Ring::Z3) expected = std::pow(3.0, static_cast<double>(basis.size()));
  require_size(expected <= static_cast<double>(kMaxStoredModule), "module too large to store");
  std::vector<std::uint64_t> out;
  for_each_in_module(basis, ring, g.edge_count(), [&](std::uint64_t x) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (static_cast<double>(out.size()) != expected)
    throw std::logic_error("module generated " + std::to_string(out.size()) + " distinct elements, expected " +
                           std::to_string(static_cast<long long>(expected)));
  return out;
}

inline long long count_nowhere_zero(const MultiGraph& g, Ring ring, Space s) {
  require_size(g.edge_count() <= packed::kMaxEdges, "ring enumeration supports at most 32 edges");
  const int m = g.edge_count();
  long long count = 0;
  for_each_in_module(space_basis(g, ring, s), ring, m, [&](std::uint64_t x) { count += packed::nowhere_zero(x, m); });
  return count;
}

inline long long mobius_flow_sum(const std::vector<std::uint64_t>& flows, std::uint64_t y) {
  long long s = 0;
  for (auto x : flows)
    if (packed::below(x, y)) s += packed::weight(x) % 2 ? -1 : 1;
  return s;
}

// sum over flows x <= y of (-1)^|x|
inline long long mobius_flow_sum(const MultiGraph& g, Ring ring, const QAssignment& y) {
  require_domain(y.ring == ring && static_cast<int>(y.values.size()) == g.edge_count(), "y does not match the graph");
  for (int v : y.values) require_domain(v >= 0 && v < ring_order(ring), "y entry outside the ring");
  return mobius_flow_sum(module_elements(g, ring, Space::flows), packed::pack(y));
}

// Visits y in ({1..q-1})^E in lexicographic order, edge 0 most significant.
// Stops early when visit returns true.
template <class F>
void for_each_nowhere_zero_vector(Ring ring, int m, F&& visit) {
  const int top = ring_order(ring) - 1;
  std::vector<int> v(m, 1);
  std::uint64_t y = 0;
  for (int e = 0; e < m; ++e) y |= std::uint64_t{1} << (2 * e);
  while (true) {
    if (visit(y)) return;
    int e = m - 1;
    while (e >= 0 && v[e] == top) {
      v[e] = 1;
      y = (y & ~(std::uint64_t{3} << (2 * e))) | (std::uint64_t{1} << (2 * e));
      --e;
    }
    if (e < 0) return;
    ++v[e];
    y = (y & ~(std::uint64_t{3} << (2 * e))) | (static_cast<std::uint64_t>(v[e]) << (2 * e));
  }
}

inline constexpr double kOnnBudget = 1e9;

inline void require_onn_budget(const MultiGraph& g, Ring ring) {
  auto p = rank_profile(g);
  const double q = ring_order(ring);
  double work = std::pow(q - 1, g.edge_count()) * std::pow(q, p.n);
  require_size(work <= kOnnBudget, "search needs (q-1)^|E| q^n = " + std::to_string(static_cast<long long>(work)) +
                                       " steps, above the budget 1e9");
}

// First y in (Q \ 0)^E with a non-zero Mobius flow sum. The alphabet order
// is 1 < 2 < 3, that is 1 < w < w^2 for F4.
inline std::optional<QAssignment> onn_criterion(const MultiGraph& g, Ring ring) {
  require_onn_budget(g, ring);
  auto flows = module_elements(g, ring, Space::flows);
  std::optional<QAssignment> witness;
  for_each_nowhere_zero_vector(ring, g.edge_count(), [&](std::uint64_t y) {
    if (mobius_flow_sum(flows, y) == 0) return false;
    witness = packed::unpack(y, ring, g.edge_count());
    return true;
  });
  return witness;
}

// sum over nowhere-zero y of mu 1_C(y) = (-1)^|E| |C| #(nowhere-zero tensions),
// where mu 1_C(y) = sum over flows x <= y of (-1)^(|y| - |x|).
inline CheckResult mobius_aggregate_check(const MultiGraph& g, Ring ring) {
  require_onn_budget(g, ring);
  const int m = g.edge_count();
  auto flows = module_elements(g, ring, Space::flows);
  long long lhs = 0;
  for_each_nowhere_zero_vector(ring, m, [&](std::uint64_t y) {
    lhs += mobius_flow_sum(flows, y);
    return false;
  });
  if (m % 2) lhs = -lhs;
  long long tensions = count_nowhere_zero(g, ring, Space::tensions);
  long long rhs = (m % 2 ? -1 : 1) * static_cast<long long>(flows.size()) * tensions;
  auto c = compare("mobius aggregate", BigRational(lhs), BigRational(rhs));
  c.param("ring", to_string(ring));
  return c;
}

// Tripartition X, Y, Z of E encoded as z in (F4^x)^E: X -> 1, Y -> w, Z -> w^2.
struct TripartitionReport {
  long long signed_sum = 0;     // sum over Gamma of (-1)^(|A|+|B|+|C|)
  long long gamma_count = 0;    // number of (A, B, C) in Gamma
  BigRational joint;            // P(Sigma and Gamma) - P(not Sigma and Gamma)
  BigRational p_gamma;
  BigRational bias_conditional;
  BigRational bias_unconditional;
};

inline std::uint64_t tripartition_code(const MultiGraph& g, const EdgeSubset& x, const EdgeSubset& y,
                                       const EdgeSubset& z) {
  const int m = g.edge_count();
  require_domain(x.size() == m && y.size() == m && z.size() == m, "tripartition sets must cover the edge ids");
  std::uint64_t code = 0;
  for (int e = 0; e < m; ++e) {
    int in = x.test(e) + y.test(e) + z.test(e);
    if (in != 1)
      throw DomainError("X, Y, Z do not partition E: edge " + std::to_string(e) + " lies in " + std::to_string(in) +
                        " parts");
    code |= static_cast<std::uint64_t>(x.test(e) ? 1 : y.test(e) ? 2 : 3) << (2 * e);
  }
  return code;
}

// A subset of X, B of Y, C of Z; Gamma: A + C and C + B eulerian. With
// d = (A + C, B + C) in F4 coordinates, Gamma is d in C4 and d <= z, and
// |d| = |A| + |B| + |C|. The space has 2^|E| points.
inline TripartitionReport tripartition_bias(const MultiGraph& g, const std::vector<std::uint64_t>& f4_flows,
                                            std::uint64_t z) {
  const int m = g.edge_count();
  TripartitionReport r;
  for (auto d : f4_flows)
    if (packed::below(d, z)) {
      ++r.gamma_count;
      r.signed_sum += packed::weight(d) % 2 ? -1 : 1;
    }
  r.joint = BigRational(r.signed_sum) * pow2(-m);
  r.p_gamma = BigRational(r.gamma_count) * pow2(-m);
  r.bias_conditional = make_rational(r.signed_sum, r.gamma_count);
  r.bias_unconditional = m == 0 ? BigRational(1) : BigRational(0);
  return r;
}

inline TripartitionReport tripartition_bias(const MultiGraph& g, const EdgeSubset& x, const EdgeSubset& y,
                                            const EdgeSubset& z) {
  auto code = tripartition_code(g, x, y, z);
  return tripartition_bias(g, module_elements(g, Ring::F4, Space::flows), code);
}

// Bias(Sigma) with no conditioning, by enumerating A, B, C inside X, Y, Z.
inline BigRational tripartition_unconditional_bias(const MultiGraph& g) {
  const int m = g.edge_count();
  require_size(m <= kMaxExactEdges, "unconditional tripartition enumeration over 2^|E| subsets");
  // The parts only restrict which subset each edge may join, so the
  // joint subset A + B + C ranges over all of E.
  long long s = 0;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << m); ++u) s += std::popcount(u) % 2 ? -1 : 1;
  return BigRational(s) * pow2(-m);
}

struct TripartitionScan {
  long long partitions = 0;
  long long nonzero = 0;
  std::optional<std::uint64_t> first_nonzero;
};

// Every tripartition, in the lexicographic order of onn_criterion.
inline TripartitionScan tripartition_scan(const MultiGraph& g) {
  require_onn_budget(g, Ring::F4);
  auto flows = module_elements(g, Ring::F4, Space::flows);
  TripartitionScan s;
  for_each_nowhere_zero_vector(Ring::F4, g.edge_count(), [&](std::uint64_t z) {
    ++s.partitions;
    if (mobius_flow_sum(flows, z) != 0) {
      ++s.nonzero;
      if (!s.first_nonzero) s.first_nonzero = z;
    }
    return false;
  });
  return s;
}

inline std::array<EdgeSubset, 3> tripartition_sets(std::uint64_t z, int m) {
  std::array<EdgeSubset, 3> parts = {EdgeSubset(m), EdgeSubset(m), EdgeSubset(m)};
  for (int e = 0; e < m; ++e) parts[packed::get(z, e) - 1].set(e);
  return parts;
}

// psi(1) = 1, psi(w) = z3, psi(w^2) = z3^2; psi(0) = 0.
struct PsiReport {
  Cyc12 flow_sum;
  Cyc12 tension_sum;
  std::vector<CheckResult> checks;
};

namespace detail {

// counts[j] = number of nowhere-zero elements with product of psi equal z3^j.
inline std::array<long long, 3> psi_classes(const std::vector<std::uint64_t>& elems, int m) {
  std::array<long long, 3> counts{};
  for (auto x : elems) {
    if (!packed::nowhere_zero(x, m)) continue;
    int j = 0;
    for (int e = 0; e < m; ++e) j += f4_log(packed::get(x, e));
    ++counts[j % 3];
  }
  return counts;
}

inline Cyc12 psi_value(const std::array<long long, 3>& c, bool conjugate) {
  Cyc12 w = Cyc12::zeta_pow(conjugate ? 8 : 4);
  return Cyc12(c[0]) + w * BigRational(c[1]) + w * w * BigRational(c[2]);
}

}  // namespace detail

inline PsiReport psi_sums(const TutteData& d, bool conjugate = false) {
  const MultiGraph& g = d.graph;
  const int m = g.edge_count();
  const auto& p = d.profile;
  auto flows = module_elements(g, Ring::F4, Space::flows);
  auto tensions = module_elements(g, Ring::F4, Space::tensions);
  PsiReport r;
  r.flow_sum = detail::psi_value(detail::psi_classes(flows, m), conjugate);
  r.tension_sum = detail::psi_value(detail::psi_classes(tensions, m), conjugate);
  r.checks.push_back(compare("first psi", r.flow_sum, r.tension_sum * pow2(p.n - p.r)));

  // Pair form: A, B eulerian (or cutsets) with A u B = E, weighted w^(|A| - |B|).
  auto pair_sum = [&](const std::vector<std::uint64_t>& span) {
    std::array<long long, 3> c{};
    const std::uint64_t all = (std::uint64_t{1} << m) - 1;
    for (auto a : span)
      for (auto b : span)
        if ((a | b) == all) ++c[((std::popcount(a) - std::popcount(b)) % 3 + 3) % 3];
    return detail::psi_value(c, false);
  };
  auto cs = cycle_basis(g);
  auto pk = pack(cs);
  std::vector<std::uint64_t> eul, cut;
  require_size(pk.cycles.size() <= 14 && pk.cocycles.size() <= 14, "pair enumeration too large");
  for_each_in_span(pk.cycles, 0, [&](std::uint64_t x) { eul.push_back(x); });
  for_each_in_span(pk.cocycles, 0, [&](std::uint64_t x) { cut.push_back(x); });
  r.checks.push_back(compare("second omega", pair_sum(eul), pair_sum(cut) * pow2(p.n - p.r)));

  if (is_regular(g, 3) && loop_count(g) == 0) {
    long long ones = 0, others = 0;
    for (auto x : tensions) {
      if (!packed::nowhere_zero(x, m)) continue;
      int j = 0;
      for (int e = 0; e < m; ++e) j += f4_log(packed::get(x, e));
      (j % 3 == 0 ? ones : others) += 1;
    }
    BigRational lhs = pow2(p.r - p.n) * flow_value(g, d.poly, 4);
    r.checks.push_back(compare("third cubic", lhs, BigRational(ones) - make_rational(others, 2)));
  } else {
    r.checks.push_back(skipped_check("third cubic", "graph is not cubic"));
  }
  for (auto& c : r.checks)
    if (conjugate) c.param("psi", "conjugate");
  return r;
}

inline PsiReport psi_sums(const MultiGraph& g, bool conjugate = false) { return psi_sums(TutteData(g), conjugate); }

}  // namespace tutteparity
