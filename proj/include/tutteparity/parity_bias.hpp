#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tutteparity/check.hpp"
#include "tutteparity/cyclespace.hpp"
#include "tutteparity/cyclotomic.hpp"
#include "tutteparity/tutte.hpp"

namespace tutteparity {

enum class Combiner { difference, sum };
enum class EventKind { difference, sum, triple };

// Sigma: |A| - |B|, |A| + |B| or |A| + |B| + |C| lies in S mod q.
struct EventSpec {
  int arity = 2;
  Combiner combiner = Combiner::sum;
  int q = 2;
  ResidueSet residues;

  EventKind kind() const {
    if (arity == 3) return EventKind::triple;
    return combiner == Combiner::difference ? EventKind::difference : EventKind::sum;
  }

  void validate() const {
    require_domain(arity == 2 || arity == 3, "arity must be 2 or 3");
    require_domain(!(arity == 3 && combiner == Combiner::difference),
                   "the difference combiner needs arity 2");
    require_domain(valid_modulus(q), "modulus must be 2, 3, 4 or 6");
    check_residues(q, residues);
    require_domain(!residues.empty(), "residue set is empty");
    require_domain(static_cast<int>(residues.size()) < q, "residue set is all of Z_q");
  }

  EventSpec complement() const {
    EventSpec c = *this;
    c.residues.clear();
    for (int l = 0; l < q; ++l)
      if (!residues.count(l)) c.residues.insert(l);
    return c;
  }
};

inline EventSpec make_event(EventKind kind, int q, ResidueSet s) {
  EventSpec ev;
  ev.arity = kind == EventKind::triple ? 3 : 2;
  ev.combiner = kind == EventKind::difference ? Combiner::difference : Combiner::sum;
  ev.q = q;
  ev.residues = std::move(s);
  ev.validate();
  return ev;
}

inline std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::difference: return "difference";
    case EventKind::sum: return "sum";
    case EventKind::triple: return "triple";
  }
  return "";
}

inline std::string to_string(const ResidueSet& s) {
  std::string out = "{";
  for (int l : s) out += (out.size() > 1 ? "," : "") + std::to_string(l);
  return out + "}";
}

namespace detail {

// 2q^-1 <h, 1_S^> - 1 for a transform h with h(0) = 1.
inline BigRational bias_from_transform(const std::vector<Cyc12>& h, const EventSpec& ev) {
  Cyc12 s = inner(h, fourier_indicator(ev.q, ev.residues));
  return to_rational(s * BigRational(2, ev.q)) - 1;
}

inline BigRational cosine(int q, int k) { return to_rational(real_part(root_of_unity(q, k))); }

}  // namespace detail

// g^(k) = E[t^value] with t = z_q^-k; each subset contributes (1 + t)/2 per edge.
inline std::vector<Cyc12> unconditional_transform(int m, int q, EventKind kind) {
  std::vector<Cyc12> g(q);
  for (int k = 0; k < q; ++k) {
    Cyc12 t = root_of_unity(q, -k);
    Cyc12 half = (Cyc12(1) + t) * BigRational(1, 2);
    Cyc12 half_bar = (Cyc12(1) + t.conj()) * BigRational(1, 2);
    if (kind == EventKind::difference) g[k] = power(half * half_bar, m);
    if (kind == EventKind::sum) g[k] = power(half, 2 * m);
    if (kind == EventKind::triple) g[k] = power(half, 3 * m);
  }
  return g;
}

// Depends on the edge count only.
inline BigRational unconditional_bias(int m, const EventSpec& ev) {
  ev.validate();
  require_domain(m >= 0, "edge count must be non-negative");
  return detail::bias_from_transform(unconditional_transform(m, ev.q, ev.kind()), ev);
}

// Residue counts mod 12 of the value under Delta, for the three event kinds.
// Mod 12 refines every supported modulus, so one coset pass serves all q.
struct ParityCounts {
  int edge_count = 0;
  RankProfile profile;
  std::array<unsigned __int128, 12> difference{};
  std::array<unsigned __int128, 12> sum{};
  std::array<unsigned __int128, 12> triple{};

  const std::array<unsigned __int128, 12>& of(EventKind k) const {
    return k == EventKind::difference ? difference : k == EventKind::sum ? sum : triple;
  }
};

// Pairs (A, B) with A + B eulerian are pairs from one coset of C2, and
// triples likewise, so each coset contributes the convolution of its own
// size histogram with itself.
inline ParityCounts parity_counts(const MultiGraph& g) {
  auto cs = cycle_basis(g);
  auto p = pack(cs);
  ParityCounts out;
  out.edge_count = p.edge_count;
  out.profile = rank_profile(g);
  for_each_coset_histogram(p, [&](std::uint64_t, const std::vector<std::uint64_t>& hist) {
    std::array<std::uint64_t, 12> c{};
    for (std::size_t w = 0; w < hist.size(); ++w) c[w % 12] += hist[w];
    std::array<unsigned __int128, 12> pairs{};
    for (int i = 0; i < 12; ++i) {
      if (!c[i]) continue;
      for (int j = 0; j < 12; ++j) {
        unsigned __int128 prod = static_cast<unsigned __int128>(c[i]) * c[j];
        out.difference[(i - j + 12) % 12] += prod;
        pairs[(i + j) % 12] += prod;
      }
    }
    for (int s = 0; s < 12; ++s) {
      out.sum[s] += pairs[s];
      if (!pairs[s]) continue;
      for (int k = 0; k < 12; ++k) out.triple[(s + k) % 12] += pairs[s] * c[k];
    }
  });
  return out;
}

inline BigRational conditional_bias(const ParityCounts& pc, const EventSpec& ev) {
  ev.validate();
  const auto& counts = pc.of(ev.kind());
  unsigned __int128 good = 0, total = 0;
  for (int j = 0; j < 12; ++j) {
    total += counts[j];
    if (ev.residues.count(j % ev.q)) good += counts[j];
  }
  // P(Delta) is 2^-r for pairs and 2^-2r for triples.
  const int extra = ev.arity == 2 ? pc.profile.n : 2 * pc.profile.n;
  if (total != static_cast<unsigned __int128>(1) << (pc.edge_count + extra))
    throw std::logic_error("conditioned sample count differs from 2^(|E| + n)");
  return make_rational(2 * from_u128(good) - from_u128(total), from_u128(total));
}

inline BigRational conditional_bias(const MultiGraph& g, const EventSpec& ev) {
  ev.validate();
  return conditional_bias(parity_counts(g), ev);
}

// f^(k) = E[t^value | Delta], t = z_q^-k, c = cos(2 pi k / q), as
// Tutte-Grothendieck evaluations:
//   difference  2^-n TG(1 - c, c, 1, 1, 1 + c)
//   sum         2^-n t^|E| TG(c - 1, 1, 1, c, c + 1)
//   triple      2^(-|E|-n) (1 + t)^|E| t^|E| TG(c - 1, 1, 1, 2c - 1, c + 1)
inline std::vector<Cyc12> conditional_transform(const TutteData& d, int q, EventKind kind) {
  const int m = d.graph.edge_count(), n = d.profile.n;
  std::vector<Cyc12> f(q);
  f[0] = 1;
  for (int k = 1; k < q; ++k) {
    Cyc12 t = root_of_unity(q, -k);
    Cyc12 c = detail::cosine(q, k);
    if (kind == EventKind::difference)
      f[k] = tutte_grothendieck(d, Cyc12(1) - c, c, 1, 1, Cyc12(1) + c) * pow2(-n);
    if (kind == EventKind::sum)
      f[k] = power(t, m) * tutte_grothendieck(d, c - Cyc12(1), 1, 1, c, c + Cyc12(1)) * pow2(-n);
    if (kind == EventKind::triple)
      f[k] = power(Cyc12(1) + t, m) * power(t, m) *
             tutte_grothendieck(d, c - Cyc12(1), 1, 1, c * BigRational(2) - Cyc12(1), c + Cyc12(1)) *
             pow2(-m - n);
  }
  return f;
}

inline BigRational bias_from_tutte(const TutteData& d, const EventSpec& ev) {
  ev.validate();
  return detail::bias_from_transform(conditional_transform(d, ev.q, ev.kind()), ev);
}

inline BigRational bias_from_tutte(const MultiGraph& g, const EventSpec& ev) {
  return bias_from_tutte(TutteData(g), ev);
}

struct BiasReport {
  EventSpec event;
  BigRational bias_unconditional;
  BigRational bias_conditional;
  BigRational correlation;
  std::optional<BigRational> ratio;  // absent when the unconditional bias is 0
};

inline BiasReport bias_report(const MultiGraph& g, const EventSpec& ev) {
  BiasReport r;
  r.event = ev;
  r.bias_unconditional = unconditional_bias(g.edge_count(), ev);
  r.bias_conditional = conditional_bias(g, ev);
  r.correlation = (r.bias_conditional - r.bias_unconditional) / 2;
  if (r.bias_unconditional != 0) r.ratio = r.bias_conditional / r.bias_unconditional;
  return r;
}

inline nlohmann::json to_json(const BiasReport& r) {
  nlohmann::json j = {{"arity", r.event.arity},
                      {"combiner", r.event.combiner == Combiner::difference ? "diff" : "sum"},
                      {"q", r.event.q},
                      {"residues", std::vector<int>(r.event.residues.begin(), r.event.residues.end())},
                      {"bias_unconditional", to_string(r.bias_unconditional)},
                      {"bias_conditional", to_string(r.bias_conditional)},
                      {"correlation", to_string(r.correlation)}};
  j["ratio"] = r.ratio ? nlohmann::json(to_string(*r.ratio)) : nlohmann::json(nullptr);
  return j;
}

// Residues k allowed in supp(1_S^ - 1_S'^) for the ratio closed forms.
inline ResidueSet ratio_support(int q, EventKind kind) {
  ResidueSet allowed = {1, q - 1};
  if (kind == EventKind::triple && q % 2 == 0) allowed.insert(q / 2);
  return allowed;
}

// With c = cos(2 pi / q):
//   difference  2^r (1 + c)^-|E| c^r (1 - c)^n T(1/c, (1 + c)/(1 - c))
//   sum         2^r (1 + c)^-|E| (c - 1)^n T(c, (c + 1)/(c - 1))
//   triple      2^r (1 + c)^-|E| (c - 1)^n T(2c - 1, (c + 1)/(c - 1))
// The difference form at c = 0 goes through the b = 0 branch.
inline BigRational ratio_closed_form(const TutteData& d, int q, EventKind kind) {
  require_domain(q == 3 || q == 4 || q == 6, "ratio closed forms need q in {3, 4, 6}");
  const BigRational c = detail::cosine(q, 1);
  const auto& p = d.profile;
  BigRational scale = power(BigRational(2), p.r) * power(1 + c, -d.graph.edge_count());
  if (kind == EventKind::difference)
    return scale * to_rational(tutte_grothendieck(d, Cyc12(1 - c), Cyc12(c), 1, 1, Cyc12(1 + c)));
  BigRational x = kind == EventKind::sum ? c : 2 * c - 1;
  return scale * power(c - 1, p.n) * evaluate(d.poly, x, (c + 1) / (c - 1));
}

// (Bias(S | Delta) - Bias(S' | Delta)) / (Bias(S) - Bias(S')) from the exact
// enumeration.
inline BigRational theorem_ratio(const ParityCounts& pc, int q, EventKind kind, const ResidueSet& s,
                                 const ResidueSet& s2) {
  require_domain(q == 3 || q == 4 || q == 6, "ratio needs q in {3, 4, 6}");
  auto allowed = ratio_support(q, kind);
  for (int k : transform_support(q, s, s2))
    if (!allowed.count(k))
      throw DomainError("transform of 1_S - 1_S' is non-zero at k = " + std::to_string(k) +
                        ", outside " + to_string(allowed));
  auto ev = make_event(kind, q, s), ev2 = make_event(kind, q, s2);
  BigRational den = unconditional_bias(pc.edge_count, ev) - unconditional_bias(pc.edge_count, ev2);
  if (den == 0) throw DomainError("degenerate ratio: equal unconditional biases");
  return (conditional_bias(pc, ev) - conditional_bias(pc, ev2)) / den;
}

inline BigRational theorem_ratio(const MultiGraph& g, int q, EventKind kind, const ResidueSet& s,
                                 const ResidueSet& s2) {
  return theorem_ratio(parity_counts(g), q, kind, s, s2);
}

// True iff |A| - |B| is uniform mod q for uniformly random A, B of an m-set.
inline bool equidistribution_check(int m, int q) {
  require_domain(m >= 0 && q >= 2, "need m >= 0 and q >= 2");
  std::vector<BigInt> size(q, 0);
  for (int k = 0; k <= m; ++k) size[k % q] += binomial(m, k);
  std::vector<BigInt> diff(q, 0);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) diff[((i - j) % q + q) % q] += size[i] * size[j];
  for (int l = 1; l < q; ++l)
    if (diff[l] != diff[0]) return false;
  return true;
}

inline ResidueSet shift(const ResidueSet& s, int by, int q) {
  ResidueSet out;
  for (int l : s) out.insert(((l + by) % q + q) % q);
  return out;
}

// Every named evaluation, with the enumeration on the left and the stated
// closed form on the right.
inline std::vector<CheckResult> verify_named_theorems(const TutteData& d) {
  std::vector<CheckResult> out;
  const MultiGraph& g = d.graph;
  const int m = g.edge_count();
  const auto& p = d.profile;
  if (m == 0) {
    out.push_back(skipped_check("named theorems", "graph has no edges"));
    return out;
  }
  const ParityCounts pc = parity_counts(g);
  auto cond = [&](EventKind k, int q, ResidueSet s) { return conditional_bias(pc, make_event(k, q, s)); };
  auto uncond = [&](EventKind k, int q, ResidueSet s) { return unconditional_bias(m, make_event(k, q, s)); };
  auto T = [&](BigRational x, BigRational y) { return evaluate(d.poly, x, y); };
  auto add = [&](CheckResult c, int q, EventKind k, const ResidueSet& s) {
    c.param("q", std::to_string(q)).param("kind", to_string(k)).param("S", to_string(s));
    out.push_back(std::move(c));
  };
  using K = EventKind;

  // q = 2
  add(compare("squares q=2 tutte", cond(K::sum, 2, {0}), power(BigRational(-1), p.r) * T(-1, 0)), 2, K::sum, {0});
  add(compare("squares q=2 chromatic", cond(K::sum, 2, {0}), pow2(-p.k) * chromatic_value(g, d.poly, 2)), 2,
      K::sum, {0});
  add(compare("three uncorr even", cond(K::triple, 2, {0}), BigRational(0)), 2, K::triple, {0});

  // q = 3
  add(compare("A - B q=3 equal", cond(K::difference, 3, {1}), cond(K::difference, 3, {2})), 3, K::difference,
      {1, 2});
  add(compare("A - B q=3 ratio", theorem_ratio(pc, 3, K::difference, {0}, {1}),
              power(BigRational(-2), p.r) * power(BigRational(3), p.n) * T(-2, BigRational(1, 3))),
      3, K::difference, {0});
  const int e0 = m % 3, e1 = (m + 1) % 3, e2 = (m + 2) % 3;
  add(compare("cube root A B equal", cond(K::sum, 3, {e1}), cond(K::sum, 3, {e2})), 3, K::sum, {e1, e2});
  add(compare("cube root A B ratio", theorem_ratio(pc, 3, K::sum, {e0}, {e1}),
              power(BigRational(4), p.r) * power(BigRational(-3), p.n) * T(BigRational(-1, 2), BigRational(-1, 3))),
      3, K::sum, {e0});
  add(compare("cube root A B C equal", cond(K::triple, 3, {1}), cond(K::triple, 3, {2})), 3, K::triple, {1, 2});
  add(compare("cube root A B C ratio", theorem_ratio(pc, 3, K::triple, {0}, {1}),
              power(BigRational(4), p.r) * power(BigRational(-3), p.n) * T(-2, BigRational(-1, 3))),
      3, K::triple, {0});

  // q = 4
  add(compare("A - B q=4 unconditional", uncond(K::difference, 4, {0, 1}), pow2(-m)), 4, K::difference, {0, 1});
  add(compare("A - B q=4 ratio", cond(K::difference, 4, {0, 1}) / uncond(K::difference, 4, {0, 1}),
              power(BigRational(2), p.r)),
      4, K::difference, {0, 1});
  add(compare("squares q=4 unconditional", uncond(K::sum, 4, {0, 1}), power(BigRational(-1), m / 2) * pow2(-m)), 4,
      K::sum, {0, 1});
  add(compare("squares q=4 ratio", cond(K::sum, 4, {0, 1}) / uncond(K::sum, 4, {0, 1}),
              power(BigRational(2), p.r) * flow_value(g, d.poly, 2)),
      4, K::sum, {0, 1});
  {
    // 2^(-3|E|/2) Re[i^(3|E|/2) (1 - i)] by |E| mod 8.
    BigRational closed;
    switch (m % 8) {
      case 0: case 6: closed = pow2(-3 * m / 2); break;
      case 2: case 4: closed = -pow2(-3 * m / 2); break;
      case 3: closed = pow2((1 - 3 * m) / 2); break;
      case 7: closed = -pow2((1 - 3 * m) / 2); break;
      default: closed = 0;
    }
    add(compare("A + B + C q=4 unconditional", uncond(K::triple, 4, {0, 1}), closed), 4, K::triple, {0, 1});
    if (m % 4 == 1) {
      add(compare("A + B + C q=4 conditional zero", cond(K::triple, 4, {0, 1}), BigRational(0)), 4, K::triple,
          {0, 1});
    } else {
      BigRational rhs = power(BigRational(2), p.r) * power(BigRational(-1), p.n) * T(-1, -1);
      add(compare("A + B + C q=4 ratio", cond(K::triple, 4, {0, 1}) / uncond(K::triple, 4, {0, 1}), rhs), 4,
          K::triple, {0, 1});
      add(compare("A + B + C q=4 bicycle", rhs, power(BigRational(-2), p.r + bicycle_dimension(g))), 4, K::triple,
          {0, 1});
    }
  }

  // q = 6. -(3/4)^((3|E| - 2)/2) Re[i^-|E| w^-1], with sqrt(3)/2 = (z + z^-1)/2.
  // The sign comes from conj(1_S^(1)) = 2 exp(i pi/3) = -2 w^-1.
  {
    Cyc12 half_root3 = (Cyc12::zeta_pow(1) + Cyc12::zeta_pow(-1)) * BigRational(1, 2);
    Cyc12 closed = power(half_root3, 3 * m - 2) * real_part(Cyc12::zeta_pow(-3 * m) * Cyc12::zeta_pow(-4)) *
                   BigRational(-1);
    add(compare("sum cubes q=6 unconditional", uncond(K::triple, 6, {0, 1, 2}), to_rational(closed)), 6, K::triple,
        {0, 1, 2});
    add(compare("sum cubes q=6 ratio", cond(K::triple, 6, {0, 1, 2}) / uncond(K::triple, 6, {0, 1, 2}),
                power(BigRational(3), -m) * power(BigRational(4), p.r) * flow_value(g, d.poly, 4)),
        6, K::triple, {0, 1, 2});
  }

  // The general ratio, one S, S' pair per case and modulus.
  for (int q : {3, 4, 6})
    for (K k : {K::difference, K::sum, K::triple}) {
      ResidueSet s = {0}, s2 = {1};
      if (q == 4) s = {0, 1}, s2 = {2, 3};
      // 1_S - 1_S' = (1, 1, 0, -1, -1, 0) is a combination of the k = 1, 5 characters.
      if (q == 6) s = {0, 1}, s2 = {3, 4};
      // Sums carry the phase t^|E|; shifting S by |E| keeps the denominator non-zero.
      if (k == K::sum && q != 4) s = shift(s, m, q), s2 = shift(s2, m, q);
      CheckResult c;
      try {
        c = compare("general ratio", theorem_ratio(pc, q, k, s, s2), ratio_closed_form(d, q, k));
      } catch (const DomainError& e) {
        c = skipped_check("general ratio", e.what());
      }
      c.param("S'", to_string(s2));
      add(std::move(c), q, k, s);
    }

  // Enumeration and Tutte route agree on every event of every modulus.
  for (int q : {2, 3, 4, 6})
    for (K k : {K::difference, K::sum, K::triple})
      for (int l = 0; l < q; ++l) {
        auto ev = make_event(k, q, {l});
        add(compare("tutte route", conditional_bias(pc, ev), bias_from_tutte(d, ev)), q, k, {l});
      }
  return out;
}

inline std::vector<CheckResult> verify_named_theorems(const MultiGraph& g) {
  return verify_named_theorems(TutteData(g));
}

struct MonteCarloResult {
  std::optional<double> estimate;  // absent when no sample satisfied Delta
  double stderr_estimate = 0;
  std::uint64_t accepted = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t samples = 0;
};

inline constexpr int kMonteCarloStreams = 64;

// Stream s draws its share of the samples from mt19937_64 seeded with
// seed_seq{seed lo, seed hi, s}. Each subset is one 64-bit draw masked to
// |E| bits. Results are merged in stream order, so the output depends on
// (seed, samples) only, never on the thread count.
inline MonteCarloResult monte_carlo_bias(const MultiGraph& g, const EventSpec& ev, std::uint64_t samples,
                                         std::uint64_t seed, int threads = 1) {
  ev.validate();
  require_domain(samples > 0, "sample count must be positive");
  const int m = g.edge_count();
  require_size(m <= 64 && g.vertex_count <= 64, "Monte Carlo supports at most 64 edges and 64 vertices");
  const std::uint64_t edge_mask = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::vector<std::uint64_t> boundary(m);
  for (int e = 0; e < m; ++e)
    boundary[e] = (std::uint64_t{1} << g.edges[e].tail) ^ (std::uint64_t{1} << g.edges[e].head);
  auto eulerian = [&](std::uint64_t x) {
    std::uint64_t odd = 0;
    for (; x; x &= x - 1) odd ^= boundary[std::countr_zero(x)];
    return odd == 0;
  };

  struct Tally {
    std::uint64_t accepted = 0, satisfied = 0;
  };
  std::vector<Tally> tallies(kMonteCarloStreams);
  auto run_stream = [&](int s) {
    std::uint64_t share = samples / kMonteCarloStreams + (static_cast<std::uint64_t>(s) < samples % kMonteCarloStreams);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    Tally t;
    for (std::uint64_t i = 0; i < share; ++i) {
      std::uint64_t a = rng() & edge_mask, b = rng() & edge_mask, c = 0;
      if (ev.arity == 3) c = rng() & edge_mask;
      if (!eulerian(a ^ b) || (ev.arity == 3 && !eulerian(b ^ c))) continue;
      ++t.accepted;
      long long value = ev.kind() == EventKind::difference
                            ? std::popcount(a) - std::popcount(b)
                            : std::popcount(a) + std::popcount(b) + std::popcount(c);
      t.satisfied += ev.residues.count(static_cast<int>(((value % ev.q) + ev.q) % ev.q));
    }
    tallies[s] = t;
  };
  const int workers = std::max(1, std::min(threads, kMonteCarloStreams));
  if (workers == 1) {
    for (int s = 0; s < kMonteCarloStreams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int s = w; s < kMonteCarloStreams; s += workers) run_stream(s);
      });
    for (auto& th : pool) th.join();
  }

  MonteCarloResult r;
  r.samples = samples;
  for (const Tally& t : tallies) {
    r.accepted += t.accepted;
    r.satisfied += t.satisfied;
  }
  if (r.accepted == 0) return r;
  const double phat = static_cast<double>(r.satisfied) / static_cast<double>(r.accepted);
  r.estimate = 2 * phat - 1;
  r.stderr_estimate = 2 * std::sqrt(phat * (1 - phat) / static_cast<double>(r.accepted));
  return r;
}

inline nlohmann::json to_json(const MonteCarloResult& r) {
  return {{"estimate", r.estimate ? nlohmann::json(*r.estimate) : nlohmann::json(nullptr)},
          {"stderr", r.stderr_estimate},
          {"accepted", r.accepted},
          {"satisfied", r.satisfied},
          {"samples", r.samples}};
}

}  // namespace tutteparity
