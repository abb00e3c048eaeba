#pragma once

// Brute-force reference computations. Each one works straight from a
// definition, sharing no code with the library kernels it is compared to.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "tutteparity/graph.hpp"
#include "tutteparity/rational.hpp"

namespace oracle {

using tutteparity::BigInt;
using tutteparity::BigRational;
using tutteparity::MultiGraph;

inline bool degrees_even(const MultiGraph& g, std::uint64_t a) {
  std::vector<int> deg(g.vertex_count, 0);
  for (int e = 0; e < g.edge_count(); ++e)
    if ((a >> e) & 1) {
      ++deg[g.edges[e].tail];
      ++deg[g.edges[e].head];
    }
  for (int d : deg)
    if (d % 2) return false;
  return true;
}

inline std::vector<std::uint64_t> eulerian_subsets(const MultiGraph& g) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.edge_count()); ++a)
    if (degrees_even(g, a)) out.push_back(a);
  return out;
}

// Cutsets: subsets with even intersection with every eulerian subset.
inline std::vector<std::uint64_t> cutsets(const MultiGraph& g) {
  auto eul = eulerian_subsets(g);
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.edge_count()); ++a) {
    bool ok = true;
    for (auto c : eul)
      if (std::popcount(a & c) % 2) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return out;
}

inline int components(const MultiGraph& g, std::uint64_t a) {
  std::vector<int> label(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) label[v] = v;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!((a >> e) & 1)) continue;
      int& x = label[g.edges[e].tail];
      int& y = label[g.edges[e].head];
      if (x != y) {
        x = y = std::min(x, y);
        changed = true;
      }
    }
  }
  std::vector<int> seen(label);
  std::sort(seen.begin(), seen.end());
  return static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

inline long long count_proper_colourings(const MultiGraph& g, int q) {
  long long count = 0;
  std::vector<int> col(g.vertex_count, 0);
  long long total = 1;
  for (int v = 0; v < g.vertex_count; ++v) total *= q;
  for (long long idx = 0; idx < total; ++idx) {
    long long t = idx;
    for (int v = 0; v < g.vertex_count; ++v) {
      col[v] = static_cast<int>(t % q);
      t /= q;
    }
    bool ok = true;
    for (const auto& e : g.edges)
      if (col[e.tail] == col[e.head]) ok = false;
    count += ok;
  }
  return count;
}

// Nowhere-zero Z_q flows: every assignment in {1..q-1}^E, conservation checked
// at each vertex with the edge list orientation.
inline long long count_nowhere_zero_flows(const MultiGraph& g, int q) {
  const int m = g.edge_count();
  std::vector<int> val(m, 1);
  long long count = 0;
  while (true) {
    std::vector<int> net(g.vertex_count, 0);
    for (int e = 0; e < m; ++e) {
      net[g.edges[e].tail] += val[e];
      net[g.edges[e].head] -= val[e];
    }
    bool ok = true;
    for (int x : net)
      if (((x % q) + q) % q) ok = false;
    count += ok;
    int i = 0;
    while (i < m && val[i] == q - 1) val[i++] = 1;
    if (i == m) break;
    ++val[i];
  }
  return count;
}

enum class Kind { difference, sum, triple };

// Bias(Sigma | Delta) from every pair or triple of subsets.
inline BigRational conditional_bias(const MultiGraph& g, int q, Kind kind, const std::vector<int>& s) {
  const int m = g.edge_count();
  const std::uint64_t all = std::uint64_t{1} << m;
  std::vector<char> in_s(q, 0);
  for (int l : s) in_s[l] = 1;
  std::vector<char> eul(all);
  for (std::uint64_t a = 0; a < all; ++a) eul[a] = degrees_even(g, a);
  long long good = 0, total = 0;
  auto tally = [&](long long value) {
    ++total;
    good += in_s[((value % q) + q) % q];
  };
  for (std::uint64_t a = 0; a < all; ++a)
    for (std::uint64_t b = 0; b < all; ++b) {
      if (!eul[a ^ b]) continue;
      int na = std::popcount(a), nb = std::popcount(b);
      if (kind == Kind::difference) tally(na - nb);
      if (kind == Kind::sum) tally(na + nb);
      if (kind == Kind::triple)
        for (std::uint64_t c = 0; c < all; ++c)
          if (eul[b ^ c]) tally(na + nb + std::popcount(c));
    }
  return BigRational(2 * good - total, total);
}

// Unconditional bias from the subset-size distribution.
inline BigRational unconditional_bias(int m, int q, Kind kind, const std::vector<int>& s) {
  std::vector<char> in_s(q, 0);
  for (int l : s) in_s[l] = 1;
  const int arity = kind == Kind::triple ? 3 : 2;
  std::vector<BigInt> dist(1, 1);  // distribution of the signed size sum
  int offset = 0;
  for (int i = 0; i < arity; ++i) {
    int sign = (kind == Kind::difference && i == 1) ? -1 : 1;
    std::vector<BigInt> next(dist.size() + m, 0);
    int new_offset = offset + (sign < 0 ? m : 0);
    for (std::size_t v = 0; v < dist.size(); ++v)
      for (int k = 0; k <= m; ++k) {
        long long value = static_cast<long long>(v) - offset + sign * k;
        next[value + new_offset] += dist[v] * tutteparity::BigInt(
            [&] { BigInt b = 1; for (int j = 1; j <= k; ++j) b = b * (m - k + j) / j; return b; }());
      }
    dist = std::move(next);
    offset = new_offset;
  }
  BigInt good = 0, total = 0;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    long long value = static_cast<long long>(v) - offset;
    total += dist[v];
    if (in_s[((value % q) + q) % q]) good += dist[v];
  }
  return BigRational(2 * good - total, total);
}

}  // namespace oracle
