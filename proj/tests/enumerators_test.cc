#include <gtest/gtest.h>

#include <bit>
#include <chrono>

#include "support/oracles.hpp"
#include "tutteparity/corpus.hpp"
#include "tutteparity/enumerators.hpp"

namespace tp = tutteparity;
using tp::BigRational;
using tp::Cyc12;

namespace {

tp::WeightPoly wp(std::vector<int> c) {
  tp::WeightPoly w;
  for (int x : c) w.coeffs.push_back(x);
  return w;
}

void expect_pass(const std::vector<tp::CheckResult>& checks, const std::string& ctx) {
  for (auto& c : checks) EXPECT_TRUE(c.pass) << ctx << ": " << c.identity << " lhs=" << c.lhs << " rhs=" << c.rhs;
}

}  // namespace

TEST(HweCoset, Examples) {
  auto k3 = tp::corpus_graph("K3");
  EXPECT_EQ(tp::hwe_coset(k3, tp::EdgeSubset(3)), wp({1, 0, 0, 1}));
  EXPECT_EQ(tp::hwe_coset(k3, tp::EdgeSubset::from_ids(3, {0})), wp({0, 1, 1, 0}));
  EXPECT_EQ(tp::hwe_coset(tp::corpus_graph("loop"), tp::EdgeSubset(1)), wp({1, 1}));
}

TEST(HweCoset, CosetsSumToBinomialRow) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 15) continue;
    const int m = ng.graph.edge_count();
    std::vector<tp::BigInt> total(m + 1, 0);
    for (auto& w : tp::coset_weight_polys(ng.graph))
      for (int d = 0; d <= m; ++d) total[d] += w.coeffs[d];
    for (int d = 0; d <= m; ++d) EXPECT_EQ(total[d], tp::binomial(m, d)) << ng.name;
  }
}

TEST(HweCoset, PalindromicForEulerianGraphs) {
  for (const auto& ng : tp::corpus()) {
    if (!tp::is_eulerian_graph(ng.graph)) continue;
    auto w = tp::hwe_flows(ng.graph, 2);
    auto rev = w.coeffs;
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(w.coeffs, rev) << ng.name;
  }
}

TEST(FlowHwe, Examples) {
  tp::TutteData k3(tp::corpus_graph("K3"));
  auto c = tp::verify_flow_hwe(k3, 2, BigRational(2));
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.lhs, "9");
  tp::TutteData loop(tp::corpus_graph("loop"));
  auto c2 = tp::verify_flow_hwe(loop, 2, BigRational(3));
  EXPECT_TRUE(c2.pass);
  EXPECT_EQ(c2.lhs, "4");
  auto c3 = tp::verify_flow_hwe(k3, 4, BigRational(-3));
  EXPECT_TRUE(c3.pass);
  EXPECT_EQ(c3.rhs, "-24");
  EXPECT_THROW(tp::verify_flow_hwe(k3, 2, BigRational(1)), tp::DomainError);
}

TEST(FlowHwe, F4FlowsMatchDefinition) {
  // Supports of F4 flows counted from pairs of eulerian subsets by brute force.
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 10) continue;
    auto eul = oracle::eulerian_subsets(ng.graph);
    std::vector<tp::BigInt> by_zeros(ng.graph.edge_count() + 1, 0);
    for (auto a : eul)
      for (auto b : eul) by_zeros[ng.graph.edge_count() - std::popcount(a | b)] += 1;
    EXPECT_EQ(tp::hwe_flows(ng.graph, 4).coeffs, by_zeros) << ng.name;
  }
}

TEST(FlowHwe, CorpusSweep) {
  for (const auto& ng : tp::corpus()) {
    tp::TutteData d(ng.graph);
    for (int q : {2, 4})
      for (auto t : {BigRational(2), BigRational(-3), BigRational(1, 2), BigRational(5)})
        EXPECT_TRUE(tp::verify_flow_hwe(d, q, t).pass) << ng.name;
  }
}

TEST(MacWilliams, Examples) {
  tp::TutteData k3(tp::corpus_graph("K3"));
  auto k3q2 = tp::verify_macwilliams(k3, 2, BigRational(3));
  expect_pass(k3q2, "K3");
  EXPECT_EQ(k3q2[1].lhs, "0");
  tp::TutteData c4(tp::corpus_graph("C4"));
  auto c4q2 = tp::verify_macwilliams(c4, 2, BigRational(3));
  expect_pass(c4q2, "C4");
  EXPECT_EQ(c4q2[1].lhs, "2");
  auto k3q4 = tp::verify_macwilliams(k3, 4, BigRational(2));
  expect_pass(k3q4, "K3");
  EXPECT_EQ(k3q4[1].lhs, "-24");
}

TEST(MacWilliams, CorpusSweep) {
  for (const auto& ng : tp::corpus()) {
    tp::TutteData d(ng.graph);
    for (int q : {2, 4}) expect_pass(tp::verify_macwilliams(d, q, BigRational(-2)), ng.name);
  }
}

TEST(CosetPowerSum, Examples) {
  auto k3 = tp::corpus_graph("K3");
  EXPECT_EQ(tp::coset_power_sum(k3, 2, 1, 2, true), Cyc12(0));
  EXPECT_EQ(tp::coset_power_sum(tp::corpus_graph("loop"), 2, 1, 3, false), Cyc12(0));
  tp::TutteData d(k3);
  auto z6 = tp::root_of_unity(6, 1), one = Cyc12(1);
  auto a = (z6 - one) * (z6 - one), y = (z6 + one) * (z6 + one);
  Cyc12 rhs = tp::power(z6 + one, 3) * tp::tutte_grothendieck(d, a, z6, one, z6 * z6 - z6 + one, y);
  EXPECT_EQ(tp::coset_power_sum(k3, 6, 1, 3, false), rhs);
}

// Convolution route against direct per-coset evaluation.
TEST(CosetPowerSum, MatchesDirectEvaluation) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 12) continue;
    auto polys = tp::coset_weight_polys(ng.graph);
    for (int q : {2, 3, 4, 6})
      for (int k = 1; k < q; ++k) {
        Cyc12 t = tp::root_of_unity(q, k), s1, s2, s3;
        for (auto& w : polys) {
          Cyc12 h = w.evaluate(t);
          s1 += h * h.conj();
          s2 += h * h;
          s3 += h * h * h;
        }
        EXPECT_EQ(tp::coset_power_sum(ng.graph, q, k, 2, true), s1) << ng.name;
        EXPECT_EQ(tp::coset_power_sum(ng.graph, q, k, 2, false), s2) << ng.name;
        EXPECT_EQ(tp::coset_power_sum(ng.graph, q, k, 3, false), s3) << ng.name;
      }
  }
}

TEST(SumCubes, Examples) {
  tp::TutteData k3(tp::corpus_graph("K3"));
  auto at2 = tp::verify_sum_cubes(k3, BigRational(2));
  expect_pass(at2, "K3 t=2");
  EXPECT_EQ(at2[1].lhs, "189");
  tp::TutteData edge(tp::corpus_graph("edge"));
  auto e3 = tp::verify_sum_cubes(edge, BigRational(3));
  expect_pass(e3, "edge t=3");
  EXPECT_EQ(e3[1].lhs, "10");
  auto i = tp::verify_sum_cubes(k3, tp::root_of_unity(4, 1));
  expect_pass(i, "K3 t=i");
  EXPECT_TRUE(i[0].skipped);
  // Corollary row (-1,-1): sum h^3 = (1+i)^|E| i^r (i-1)^2n T(-1,-1).
  EXPECT_EQ(i[2].rhs, (tp::power(tp::root_of_unity(4, 1) + Cyc12(1), 3) * tp::root_of_unity(4, 2) *
                       tp::power(tp::root_of_unity(4, 1) - Cyc12(1), 2) * Cyc12(-1))
                          .to_string());
  EXPECT_THROW(tp::verify_sum_cubes(k3, BigRational(1)), tp::DomainError);
  EXPECT_THROW(tp::verify_sum_cubes(k3, BigRational(0)), tp::DomainError);
}

TEST(SumCubes, CorpusSweep) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Cyc12> ts = {Cyc12(-2), Cyc12(2), Cyc12(3), Cyc12(BigRational(1, 2))};
  for (int q : {2, 3, 4, 6}) ts.push_back(tp::root_of_unity(q, 1));
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 14) continue;
    tp::TutteData d(ng.graph);
    for (auto& t : ts) expect_pass(tp::verify_sum_cubes(d, t), ng.name + " t=" + t.to_string());
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

TEST(RealSums, Examples) {
  tp::TutteData k3(tp::corpus_graph("K3"));
  auto q4 = tp::verify_real_sums(k3, 4, 1);
  expect_pass(q4, "K3 q=4");
  EXPECT_EQ(q4[0].lhs, "1");
  EXPECT_EQ(q4[0].rhs, "1");
  auto q2 = tp::verify_real_sums(k3, 2, 1);
  expect_pass(q2, "K3 q=2");
  EXPECT_EQ(q2[2].rhs, "0");
  tp::TutteData c4(tp::corpus_graph("C4"));
  auto q3 = tp::verify_real_sums(c4, 3, 1);
  expect_pass(q3, "C4 q=3");
}

TEST(RealSums, CorpusSweep) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 14) continue;
    tp::TutteData d(ng.graph);
    for (int q : {2, 3, 4, 6})
      for (int k = 1; k < q; ++k) expect_pass(tp::verify_real_sums(d, q, k), ng.name);
  }
}

// Evaluation points of the three identities at theta = pi, 2pi/3, pi/2, pi/3.
TEST(RealSums, EvaluationPointTable) {
  using P = std::pair<BigRational, BigRational>;
  auto half = BigRational(1, 2), third = BigRational(1, 3);
  auto p = tp::real_sum_points(-1);
  EXPECT_EQ(*p.abs_squares, P(-1, 0));
  EXPECT_EQ(p.squares, P(-1, 0));
  EXPECT_EQ(p.cubes, P(-3, 0));
  p = tp::real_sum_points(-half);
  EXPECT_EQ(*p.abs_squares, P(-2, third));
  EXPECT_EQ(p.squares, P(-half, -third));
  EXPECT_EQ(p.cubes, P(-2, -third));
  p = tp::real_sum_points(0);
  EXPECT_FALSE(p.abs_squares.has_value());
  EXPECT_EQ(p.squares, P(0, -1));
  EXPECT_EQ(p.cubes, P(-1, -1));
  p = tp::real_sum_points(half);
  EXPECT_EQ(*p.abs_squares, P(2, 3));
  EXPECT_EQ(p.squares, P(half, -3));
  EXPECT_EQ(p.cubes, P(0, -3));
}

TEST(FourthPower, Examples) {
  EXPECT_TRUE(tp::verify_fourth_power(tp::TutteData(tp::corpus_graph("K3")), BigRational(3)).pass);
  auto loop = tp::verify_fourth_power(tp::TutteData(tp::corpus_graph("loop")), BigRational(2));
  EXPECT_TRUE(loop.pass);
  EXPECT_EQ(loop.lhs, "81");
  EXPECT_TRUE(tp::verify_fourth_power(tp::TutteData(tp::corpus_graph("C4")), BigRational(2)).pass);
  EXPECT_THROW(tp::verify_fourth_power(tp::TutteData(tp::corpus_graph("K3")), BigRational(-1)), tp::DomainError);
}

TEST(FourthPower, CorpusSweep) {
  for (const auto& ng : tp::corpus()) {
    if (ng.graph.edge_count() > 10) continue;
    tp::TutteData d(ng.graph);
    for (auto t : {BigRational(2), BigRational(3)}) {
      auto c = tp::verify_fourth_power(d, t);
      EXPECT_TRUE(c.pass) << ng.name << " lhs=" << c.lhs << " rhs=" << c.rhs;
    }
  }
}

// Summing over eulerian triples instead of cutset triples breaks the identity.
TEST(FourthPower, EulerianTripleSumIsNotTheIdentity) {
  auto g = tp::corpus_graph("loop");
  BigRational t = 2, s = tp::power((t + 1) / (t - 1), 2), sum = 0;
  auto eul = oracle::eulerian_subsets(g);
  for (auto a : eul)
    for (auto b : eul)
      for (auto c : eul)
        sum += tp::power(s, 1 - std::popcount(a | b | c) - std::popcount(a & b & c));
  BigRational literal = tp::power(t * t - 1, 2) * sum;
  EXPECT_EQ(literal, BigRational(136));
  EXPECT_EQ(tp::verify_fourth_power(tp::TutteData(g), t).lhs, "81");
}

TEST(EulerianReciprocal, Examples) {
  EXPECT_TRUE(tp::verify_eulerian_reciprocal(tp::TutteData(tp::corpus_graph("K3")), BigRational(2)).pass);
  EXPECT_TRUE(tp::verify_eulerian_reciprocal(tp::TutteData(tp::corpus_graph("C4")), BigRational(3)).pass);
  EXPECT_THROW(tp::verify_eulerian_reciprocal(tp::TutteData(tp::parse_edge_list("3 2\n0 1\n1 2")), BigRational(2)),
               tp::DomainError);
  for (const auto& ng : tp::corpus())
    if (tp::is_eulerian_graph(ng.graph)) {
      EXPECT_TRUE(tp::verify_eulerian_reciprocal(tp::TutteData(ng.graph), BigRational(-5, 2)).pass) << ng.name;
    }
}
