#include <gtest/gtest.h>

#include <bit>
#include <set>

#include "support/oracles.hpp"
#include "tutteparity/corpus.hpp"
#include "tutteparity/flows.hpp"

namespace tp = tutteparity;
using tp::BigRational;
using tp::Cyc12;
using tp::Ring;
using tp::Space;

namespace {

// Net outflow of x at every vertex, computed entry by entry.
bool conserves(const tp::MultiGraph& g, Ring ring, const std::vector<int>& x) {
  std::vector<int> net(g.vertex_count, 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    net[g.edges[e].tail] = tp::ring_add(ring, net[g.edges[e].tail], x[e]);
    net[g.edges[e].head] = tp::ring_add(ring, net[g.edges[e].head], tp::ring_neg(ring, x[e]));
  }
  return std::all_of(net.begin(), net.end(), [](int v) { return v == 0; });
}

// All of Q^E with the flow condition, by brute force.
std::vector<std::vector<int>> brute_flows(const tp::MultiGraph& g, Ring ring) {
  const int q = tp::ring_order(ring), m = g.edge_count();
  std::vector<std::vector<int>> out;
  std::vector<int> x(m, 0);
  while (true) {
    if (conserves(g, ring, x)) out.push_back(x);
    int e = 0;
    while (e < m && ++x[e] == q) x[e++] = 0;
    if (e == m) return out;
  }
}

// Differences of vertex potentials, deduplicated.
std::set<std::vector<int>> brute_tensions(const tp::MultiGraph& g, Ring ring) {
  const int q = tp::ring_order(ring);
  std::set<std::vector<int>> out;
  std::vector<int> p(g.vertex_count, 0);
  while (true) {
    std::vector<int> x(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
      x[e] = tp::ring_add(ring, p[g.edges[e].head], tp::ring_neg(ring, p[g.edges[e].tail]));
    out.insert(x);
    int v = 0;
    while (v < g.vertex_count && ++p[v] == q) p[v++] = 0;
    if (v == g.vertex_count) return out;
  }
}

long long brute_mobius(const std::vector<std::vector<int>>& flows, const std::vector<int>& y) {
  long long s = 0;
  for (auto& x : flows) {
    bool below = true;
    int w = 0;
    for (std::size_t e = 0; e < x.size(); ++e) {
      if (x[e] && x[e] != y[e]) below = false;
      w += x[e] != 0;
    }
    if (below) s += w % 2 ? -1 : 1;
  }
  return s;
}

tp::QAssignment qa(Ring r, std::vector<int> v) { return {r, std::move(v)}; }

void expect_pass(const std::vector<tp::CheckResult>& checks, const std::string& ctx) {
  for (auto& c : checks)
    EXPECT_TRUE(c.pass) << ctx << ": " << c.identity << " lhs=" << c.lhs << " rhs=" << c.rhs << " " << c.note;
}

const Ring kRings[] = {Ring::Z3, Ring::Z4, Ring::F4};

}  // namespace

TEST(Scalars, F4Arithmetic) {
  // w^2 = w + 1, w^3 = 1
  EXPECT_EQ(tp::ring_mul(Ring::F4, 2, 2), 3);
  EXPECT_EQ(tp::ring_mul(Ring::F4, 2, 3), 1);
  EXPECT_EQ(tp::ring_add(Ring::F4, 1, 2), 3);
  EXPECT_EQ(tp::ring_neg(Ring::F4, 2), 2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::uint64_t x = static_cast<std::uint64_t>(a) | static_cast<std::uint64_t>(b) << 2;
      auto y = tp::packed::times_w(x);
      EXPECT_EQ(tp::packed::get(y, 0), tp::ring_mul(Ring::F4, a, 2));
      EXPECT_EQ(tp::packed::get(y, 1), tp::ring_mul(Ring::F4, b, 2));
    }
}

TEST(Scalars, PackedAddMatchesScalar) {
  for (Ring r : kRings) {
    const int q = tp::ring_order(r);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        std::uint64_t x = a | (b << 2) | (a << 4), y = b | (a << 2) | (b << 4);
        auto s = tp::packed::add(x, y, r, 3);
        EXPECT_EQ(tp::packed::get(s, 0), tp::ring_add(r, a, b));
        EXPECT_EQ(tp::packed::get(s, 1), tp::ring_add(r, b, a));
        EXPECT_EQ(tp::packed::get(s, 2), tp::ring_add(r, a, b));
      }
  }
}

TEST(Bases, FlowsConserveAndTensionsAreOrthogonal) {
  for (const auto& ng : tp::corpus())
    for (Ring r : kRings) {
      auto flows = tp::flow_basis(ng.graph, r);
      auto tens = tp::tension_basis(ng.graph, r);
      auto p = tp::rank_profile(ng.graph);
      EXPECT_EQ(static_cast<int>(flows.size()), p.n) << ng.name;
      EXPECT_EQ(static_cast<int>(tens.size()), p.r) << ng.name;
      for (auto& f : flows) EXPECT_TRUE(conserves(ng.graph, r, f.values)) << ng.name << " " << f.to_string();
      if (r == Ring::F4) continue;  // the F4 pairing is the Hermitian one
      for (auto& f : flows)
        for (auto& t : tens) EXPECT_EQ(tp::dot(f, t), 0) << ng.name;
    }
}

TEST(Bases, ReverseForestGivesSameModule) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 16) continue;
    for (Ring r : kRings) {
      auto a = tp::module_elements(ng.graph, r, Space::flows);
      std::vector<std::uint64_t> b;
      tp::for_each_in_module(tp::flow_basis(ng.graph, r, tp::ForestOrder::reverse), r, ng.graph.edge_count(),
                             [&](std::uint64_t x) { b.push_back(x); });
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      EXPECT_EQ(a, b) << ng.name << " " << tp::to_string(r);
    }
  }
}

TEST(Modules, MatchBruteForce) {
  for (const auto& ng : tp::corpus()) {
    const auto& g = ng.graph;
    if (g.edge_count() > 9 || g.vertex_count > 7) continue;
    for (Ring r : kRings) {
      std::set<std::vector<int>> brute;
      for (auto& x : brute_flows(g, r)) brute.insert(x);
      std::set<std::vector<int>> ours;
      for (auto x : tp::module_elements(g, r, Space::flows)) ours.insert(tp::packed::unpack(x, r, g.edge_count()).values);
      EXPECT_EQ(ours, brute) << ng.name << " flows " << tp::to_string(r);

      std::set<std::vector<int>> tens;
      for (auto x : tp::module_elements(g, r, Space::tensions))
        tens.insert(tp::packed::unpack(x, r, g.edge_count()).values);
      EXPECT_EQ(tens, brute_tensions(g, r)) << ng.name << " tensions " << tp::to_string(r);
    }
  }
}

TEST(CountNowhereZero, Examples) {
  auto k3 = tp::corpus_graph("K3");
  EXPECT_EQ(tp::count_nowhere_zero(k3, Ring::F4, Space::flows), 3);
  EXPECT_EQ(tp::count_nowhere_zero(k3, Ring::Z4, Space::tensions), 6);
  EXPECT_EQ(tp::count_nowhere_zero(tp::corpus_graph("K5"), Ring::F4, Space::tensions), 0);
}

TEST(CountNowhereZero, MatchesOraclesAndTutte) {
  for (const auto& ng : tp::corpus()) {
    const auto& g = ng.graph;
    auto d = tp::TutteData(g);
    const int k = d.profile.k;
    for (Ring r : kRings) {
      const int q = tp::ring_order(r);
      long long f = tp::count_nowhere_zero(g, r, Space::flows);
      long long t = tp::count_nowhere_zero(g, r, Space::tensions);
      EXPECT_EQ(BigRational(f), tp::flow_value(g, d.poly, q)) << ng.name << " " << tp::to_string(r);
      EXPECT_EQ(BigRational(t) * tp::power(BigRational(q), k), tp::chromatic_value(g, d.poly, q)) << ng.name;
      if (g.edge_count() <= 12) {
        EXPECT_EQ(f, oracle::count_nowhere_zero_flows(g, q)) << ng.name;
        EXPECT_EQ(t * static_cast<long long>(std::pow(q, k)), oracle::count_proper_colourings(g, q)) << ng.name;
      }
    }
  }
}

TEST(Mobius, Examples) {
  auto k3 = tp::corpus_graph("K3");
  EXPECT_EQ(tp::mobius_flow_sum(k3, Ring::F4, qa(Ring::F4, {1, 1, 1})), 0);
  EXPECT_EQ(tp::mobius_flow_sum(k3, Ring::F4, qa(Ring::F4, {1, 2, 3})), 1);
  EXPECT_EQ(tp::mobius_flow_sum(k3, Ring::Z3, qa(Ring::Z3, {1, 1, 1})), 0);
  EXPECT_THROW(tp::mobius_flow_sum(k3, Ring::F4, qa(Ring::F4, {1, 1})), tp::DomainError);
}

TEST(Mobius, MatchesBruteForce) {
  for (const char* name : {"K3", "C4", "K23", "loop", "edge", "C4x2"}) {
    auto g = tp::corpus_graph(name);
    for (Ring r : kRings) {
      auto flows = brute_flows(g, r);
      auto ours = tp::module_elements(g, r, Space::flows);
      tp::for_each_nowhere_zero_vector(r, g.edge_count(), [&](std::uint64_t y) {
        auto v = tp::packed::unpack(y, r, g.edge_count());
        EXPECT_EQ(tp::mobius_flow_sum(ours, y), brute_mobius(flows, v.values)) << name << " " << v.to_string();
        return false;
      });
    }
  }
}

TEST(Onn, WitnessesAndOrder) {
  auto k3 = tp::corpus_graph("K3");
  auto w = tp::onn_criterion(k3, Ring::F4);
  ASSERT_TRUE(w);
  // Only the zero flow lies below (1,1,w); (1,1,1) also has the cycle below it.
  EXPECT_EQ(w->to_string(), "(1,1,w)");
  EXPECT_NE(tp::mobius_flow_sum(k3, Ring::F4, *w), 0);
  EXPECT_FALSE(tp::onn_criterion(tp::corpus_graph("K5"), Ring::F4));
  EXPECT_TRUE(tp::onn_criterion(k3, Ring::Z3));
  EXPECT_TRUE(tp::onn_criterion(tp::corpus_graph("edge"), Ring::Z3));
  EXPECT_FALSE(tp::onn_criterion(tp::corpus_graph("loop"), Ring::Z3));
}

TEST(Onn, AgreesWithNowhereZeroTensions) {
  for (const auto& ng : tp::corpus()) {
    for (Ring r : kRings) {
      const double q = tp::ring_order(r);
      if (std::pow(q - 1, ng.graph.edge_count()) * std::pow(q, tp::rank_profile(ng.graph).n) > 1e8) continue;
      bool has = tp::count_nowhere_zero(ng.graph, r, Space::tensions) > 0;
      EXPECT_EQ(tp::onn_criterion(ng.graph, r).has_value(), has) << ng.name << " " << tp::to_string(r);
    }
  }
}

TEST(Onn, BudgetGuard) {
  EXPECT_THROW(tp::onn_criterion(tp::corpus_graph("petersen"), Ring::F4), tp::SizeError);
}

TEST(MobiusAggregate, SingleEdgeAndCorpus) {
  auto c = tp::mobius_aggregate_check(tp::corpus_graph("edge"), Ring::Z3);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.lhs, "-2");
  EXPECT_EQ(tp::mobius_aggregate_check(tp::corpus_graph("K3"), Ring::F4).lhs, "-24");
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 10) continue;
    for (Ring r : kRings) expect_pass({tp::mobius_aggregate_check(ng.graph, r)}, ng.name);
  }
}

TEST(Tripartition, MatchesDirectDefinition) {
  for (const char* name : {"K3", "K4", "C4", "K23", "C4x2"}) {
    auto g = tp::corpus_graph(name);
    const int m = g.edge_count();
    auto flows = tp::module_elements(g, Ring::F4, Space::flows);
    std::vector<std::uint64_t> eul = oracle::eulerian_subsets(g);
    std::set<std::uint64_t> is_eul(eul.begin(), eul.end());
    tp::for_each_nowhere_zero_vector(Ring::F4, m, [&](std::uint64_t z) {
      auto parts = tp::tripartition_sets(z, m);
      std::uint64_t X = parts[0].mask(), Y = parts[1].mask(), Z = parts[2].mask();
      long long gamma = 0, sigma = 0;
      for (std::uint64_t a = X;; a = (a - 1) & X) {
        for (std::uint64_t b = Y;; b = (b - 1) & Y) {
          for (std::uint64_t c = Z;; c = (c - 1) & Z) {
            if (is_eul.count(a | c) && is_eul.count(b | c)) {
              ++gamma;
              sigma += std::popcount(a | b | c) % 2 ? -1 : 1;
            }
            if (!c) break;
          }
          if (!b) break;
        }
        if (!a) break;
      }
      auto r = tp::tripartition_bias(g, flows, z);
      EXPECT_EQ(r.gamma_count, gamma) << name;
      EXPECT_EQ(r.signed_sum, sigma) << name;
      EXPECT_EQ(r.joint, BigRational(sigma) * tp::pow2(-m));
      return false;
    });
    EXPECT_EQ(tp::tripartition_unconditional_bias(g), BigRational(0));
  }
}

TEST(Tripartition, ScanMatchesTensions) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 10) continue;
    auto s = tp::tripartition_scan(ng.graph);
    EXPECT_EQ(s.partitions, static_cast<long long>(std::pow(3, ng.graph.edge_count())));
    bool colourable = tp::count_nowhere_zero(ng.graph, Ring::F4, Space::tensions) > 0;
    EXPECT_EQ(s.nonzero > 0, colourable) << ng.name;
  }
}

TEST(Tripartition, RejectsNonPartition) {
  auto g = tp::corpus_graph("K3");
  auto x = tp::EdgeSubset::from_ids(3, {0, 1});
  auto y = tp::EdgeSubset::from_ids(3, {1});
  auto z = tp::EdgeSubset::from_ids(3, {2});
  EXPECT_THROW(tp::tripartition_bias(g, x, y, z), tp::DomainError);
}

TEST(Psi, IdentitiesOnCorpus) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 16) continue;
    auto r = tp::psi_sums(ng.graph);
    expect_pass(r.checks, ng.name);
    auto c = tp::psi_sums(ng.graph, true);
    expect_pass(c.checks, ng.name + " conjugate");
    EXPECT_EQ(r.flow_sum, c.flow_sum) << ng.name;
    EXPECT_TRUE(r.flow_sum.is_rational()) << ng.name;
  }
}

TEST(Psi, CubicCheckRunsOnCubicGraphs) {
  auto r = tp::psi_sums(tp::corpus_graph("petersen"));
  bool ran = false;
  for (auto& c : r.checks)
    if (c.identity == "third cubic") ran = !c.skipped;
  EXPECT_TRUE(ran);
  for (auto& c : tp::psi_sums(tp::corpus_graph("K5")).checks)
    if (c.identity == "third cubic") {
      EXPECT_TRUE(c.skipped);
    }
}
