#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tutteparity/cyclotomic.hpp"
#include "tutteparity/graph.hpp"
#include "tutteparity/rational.hpp"

namespace tutteparity {

// Sparse polynomial in x, y with integer coefficients; zero terms are never stored.
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;

  BivariatePoly() = default;
  static BivariatePoly constant(const BigInt& c) {
    BivariatePoly p;
    p.add_term(0, 0, c);
    return p;
  }
  static BivariatePoly monomial(int i, int j, const BigInt& c = 1) {
    BivariatePoly p;
    p.add_term(i, j, c);
    return p;
  }

  void add_term(int i, int j, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigInt coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  const std::map<Key, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = 0;
    for (auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
  }

  BivariatePoly& operator+=(const BivariatePoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }

  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r;
    for (auto& [ka, ca] : a.terms_)
      for (auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }

  bool operator==(const BivariatePoly&) const = default;

  // Highest total degree first; ties broken by the larger x exponent.
  std::vector<std::pair<Key, BigInt>> graded_terms() const {
    std::vector<std::pair<Key, BigInt>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
      if (da != db) return da > db;
      return a.first.first > b.first.first;
    });
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : graded_terms()) {
      BigInt a = c < 0 ? BigInt(-c) : c;
      s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      std::string mono;
      auto var = [&](const char* v, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += "*";
        mono += v;
        if (e > 1) mono += "^" + std::to_string(e);
      };
      var("x", k.first);
      var("y", k.second);
      if (mono.empty())
        s += a.str();
      else
        s += (a == 1 ? "" : a.str() + "*") + mono;
    }
    return s;
  }

 private:
  std::map<Key, BigInt> terms_;
};

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline constexpr int kMaxSubsetExpansionEdges = 20;

// Sum over all edge subsets of (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A)).
inline BivariatePoly tutte_subset_expansion(const MultiGraph& g) {
  const int m = g.edge_count();
  require_size(m <= kMaxSubsetExpansionEdges,
               "subset expansion supports at most 20 edges, graph has " + std::to_string(m));
  const RankProfile prof = rank_profile(g);
  std::vector<std::vector<std::uint64_t>> counts(prof.r + 1, std::vector<std::uint64_t>(prof.n + 1, 0));
  std::vector<int> parent(g.vertex_count);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
    std::iota(parent.begin(), parent.end(), 0);
    int rank = 0, size = 0;
    for (int e = 0; e < m; ++e) {
      if (!((a >> e) & 1)) continue;
      ++size;
      int u = find(g.edges[e].tail), v = find(g.edges[e].head);
      if (u != v) {
        parent[u] = v;
        ++rank;
      }
    }
    ++counts[prof.r - rank][size - rank];
  }
  BivariatePoly t;
  for (int i = 0; i <= prof.r; ++i)
    for (int j = 0; j <= prof.n; ++j) {
      if (!counts[i][j]) continue;
      BigInt c = counts[i][j];
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          BigInt term = c * binomial(i, a) * binomial(j, b);
          if ((i - a + j - b) % 2) term = -term;
          t.add_term(a, b, term);
        }
    }
  return t;
}

namespace detail {

using MinorEdges = std::vector<std::pair<int, int>>;

// Sorted edge multiset after relabelling vertices by first occurrence. Equal
// keys mean equal graphs up to isolated vertices, which T ignores.
inline std::vector<int> canonical_key(const MinorEdges& edges) {
  std::map<int, int> label;
  auto relabel = [&](int v) { return label.try_emplace(v, static_cast<int>(label.size())).first->second; };
  std::vector<std::pair<int, int>> es;
  es.reserve(edges.size());
  for (auto [u, v] : edges) {
    int a = relabel(u), b = relabel(v);
    es.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(es.begin(), es.end());
  std::vector<int> key;
  key.reserve(2 * es.size());
  for (auto [a, b] : es) {
    key.push_back(a);
    key.push_back(b);
  }
  return key;
}

class DeletionContraction {
 public:
  BivariatePoly run(MinorEdges edges) { return solve(std::move(edges)); }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  static BivariatePoly y_chain(int from, int to) {  // y^from + ... + y^to
    BivariatePoly p;
    for (int j = from; j <= to; ++j) p.add_term(0, j, 1);
    return p;
  }

  BivariatePoly solve(MinorEdges edges) {
    int loops = 0;
    MinorEdges plain;
    for (auto e : edges) {
      if (e.first == e.second)
        ++loops;
      else
        plain.push_back(e);
    }
    BivariatePoly loop_factor = BivariatePoly::monomial(0, loops);
    if (plain.empty()) return loop_factor;

    // Split into connected components; T is multiplicative over them.
    std::map<int, int> index;
    for (auto [u, v] : plain) {
      index.try_emplace(u, static_cast<int>(index.size()));
      index.try_emplace(v, static_cast<int>(index.size()));
    }
    UnionFind uf(static_cast<int>(index.size()));
    for (auto [u, v] : plain) uf.unite(index[u], index[v]);
    if (uf.sets() > 1) {
      std::map<int, MinorEdges> parts;
      for (auto e : plain) parts[uf.find(index[e.first])].push_back(e);
      BivariatePoly prod = loop_factor;
      for (auto& [root, part] : parts) prod = prod * solve(std::move(part));
      return prod;
    }

    auto key = canonical_key(plain);
    if (auto it = memo_.find(key); it != memo_.end()) return loop_factor * it->second;

    const int u = std::min(plain[0].first, plain[0].second);
    const int v = std::max(plain[0].first, plain[0].second);
    MinorEdges rest;
    int bundle = 0;
    for (auto e : plain) {
      if (std::min(e.first, e.second) == u && std::max(e.first, e.second) == v)
        ++bundle;
      else
        rest.push_back(e);
    }
    UnionFind conn(static_cast<int>(index.size()));
    for (auto [a, b] : rest) conn.unite(index[a], index[b]);
    const bool bridge = conn.find(index[u]) != conn.find(index[v]);

    MinorEdges contracted = rest;
    for (auto& [a, b] : contracted) {
      if (a == v) a = u;
      if (b == v) b = u;
    }
    BivariatePoly tc = solve(std::move(contracted));
    BivariatePoly result;
    if (bridge) {
      result = (BivariatePoly::monomial(1, 0) + y_chain(1, bundle - 1)) * tc;
    } else {
      result = solve(std::move(rest)) + y_chain(0, bundle - 1) * tc;
    }
    memo_.emplace(std::move(key), result);
    return loop_factor * result;
  }

  std::map<std::vector<int>, BivariatePoly> memo_;
};

}  // namespace detail

inline BivariatePoly tutte_deletion_contraction(const MultiGraph& g) {
  detail::MinorEdges edges;
  for (const Edge& e : g.edges) edges.push_back({e.tail, e.head});
  return detail::DeletionContraction().run(std::move(edges));
}

// Subset expansion on small graphs, deletion-contraction otherwise.
inline BivariatePoly tutte_polynomial(const MultiGraph& g) {
  return g.edge_count() <= 16 ? tutte_subset_expansion(g) : tutte_deletion_contraction(g);
}

template <class R>
R evaluate_as(const BivariatePoly& t, const R& x, const R& y) {
  std::map<int, R> xp, yp;
  auto power = [](std::map<int, R>& cache, const R& base, int e) -> const R& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    R r(1);
    for (int i = 0; i < e; ++i) r = r * base;
    return cache.emplace(e, r).first->second;
  };
  R sum(0);
  for (auto& [k, c] : t.terms()) sum = sum + power(xp, x, k.first) * power(yp, y, k.second) * R(BigRational(c));
  return sum;
}

inline BigRational evaluate(const BivariatePoly& t, const BigRational& x, const BigRational& y) {
  return evaluate_as<BigRational>(t, x, y);
}

inline Cyc12 evaluate(const BivariatePoly& t, const Cyc12& x, const Cyc12& y) {
  return evaluate_as<Cyc12>(t, x, y);
}

inline BigRational require_integral(const BigRational& v, const std::string& what) {
  if (!is_integral(v)) throw std::logic_error(what + " is not an integer: " + to_string(v));
  return v;
}

inline BigRational chromatic_value(const MultiGraph& g, const BivariatePoly& t, long long q) {
  auto p = rank_profile(g);
  BigRational v = power(BigRational(-1), p.r) * power(BigRational(q), p.k) * evaluate(t, BigRational(1 - q), BigRational(0));
  return require_integral(v, "P(G;" + std::to_string(q) + ")");
}

inline BigRational chromatic_value(const MultiGraph& g, long long q) {
  return chromatic_value(g, tutte_polynomial(g), q);
}

inline BigRational flow_value(const MultiGraph& g, const BivariatePoly& t, long long q) {
  auto p = rank_profile(g);
  BigRational v = power(BigRational(-1), p.n) * evaluate(t, BigRational(0), BigRational(1 - q));
  return require_integral(v, "F(G;" + std::to_string(q) + ")");
}

inline BigRational flow_value(const MultiGraph& g, long long q) { return flow_value(g, tutte_polynomial(g), q); }

// Structural data the Tutte-Grothendieck closed forms depend on.
struct TutteData {
  MultiGraph graph;
  RankProfile profile;
  BivariatePoly poly;
  int loops = 0;
  int isthmuses = 0;

  explicit TutteData(const MultiGraph& g)
      : graph(g), profile(rank_profile(g)), poly(tutte_polynomial(g)),
        loops(loop_count(g)), isthmuses(isthmus_count(g)) {}
  TutteData(const MultiGraph& g, BivariatePoly t)
      : graph(g), profile(rank_profile(g)), poly(std::move(t)),
        loops(loop_count(g)), isthmuses(isthmus_count(g)) {}
};

// f(G) = c^k a^n b^r T(cx/b, y/a). When b = 0 or a = 0 the explicit forms
//   c^|V| a^(n-l) x^r y^l        (b = 0, l = number of loops)
//   c^(k+i) b^(r-i) x^i y^n      (a = 0, i = number of isthmuses)
// replace the division.
inline Cyc12 tutte_grothendieck(const TutteData& d, const Cyc12& a, const Cyc12& b, const Cyc12& c,
                                const Cyc12& x, const Cyc12& y) {
  const auto& p = d.profile;
  if (b.is_zero())
    return power(c, d.graph.vertex_count) * power(a, p.n - d.loops) * power(x, p.r) * power(y, d.loops);
  if (a.is_zero())
    return power(c, p.k + d.isthmuses) * power(b, p.r - d.isthmuses) * power(x, d.isthmuses) * power(y, p.n);
  return power(c, p.k) * power(a, p.n) * power(b, p.r) * evaluate(d.poly, c * x / b, y / a);
}

// Division-free expansion sum t_ij c^(k+i) x^i y^j a^(n-j) b^(r-i); the
// closed forms above must agree with it.
inline Cyc12 tutte_grothendieck_homogeneous(const TutteData& d, const Cyc12& a, const Cyc12& b,
                                            const Cyc12& c, const Cyc12& x, const Cyc12& y) {
  const auto& p = d.profile;
  Cyc12 sum;
  for (auto& [k, coef] : d.poly.terms())
    sum += power(c, p.k + k.first) * power(x, k.first) * power(y, k.second) * power(a, p.n - k.second) *
           power(b, p.r - k.first) * BigRational(coef);
  return sum;
}

}  // namespace tutteparity
