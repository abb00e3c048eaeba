#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tutteparity/check.hpp"
#include "tutteparity/cyclespace.hpp"
#include "tutteparity/cyclotomic.hpp"
#include "tutteparity/tutte.hpp"

namespace tutteparity {

// coeffs[d] = number of enumerated vectors with exactly d zero entries.
struct WeightPoly {
  std::vector<BigInt> coeffs;

  BigInt cardinality() const {
    BigInt s = 0;
    for (auto& c : coeffs) s += c;
    return s;
  }

  template <class R>
  R evaluate(const R& t) const {
    R acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + R(BigRational(*it));
    return acc;
  }

  bool operator==(const WeightPoly&) const = default;
};

namespace detail {

inline WeightPoly weight_poly_from_sizes(const std::vector<std::uint64_t>& by_size, int m) {
  WeightPoly w;
  w.coeffs.assign(m + 1, 0);
  for (int s = 0; s <= m; ++s) w.coeffs[m - s] = by_size[s];
  return w;
}

// Supports of pairs (a, b) from span(gens)^2; that is the support of the
// F4 vector a + b*omega.
inline WeightPoly pair_weight_poly(const std::vector<std::uint64_t>& gens, int m) {
  require_size(2 * gens.size() <= 28, "pair enumeration over 2^" + std::to_string(2 * gens.size()) + " elements");
  std::vector<std::uint64_t> span;
  for_each_in_span(gens, 0, [&](std::uint64_t x) { span.push_back(x); });
  std::vector<std::uint64_t> by_size(m + 1, 0);
  for (auto a : span)
    for (auto b : span) ++by_size[std::popcount(a | b)];
  return weight_poly_from_sizes(by_size, m);
}

inline WeightPoly span_weight_poly(const std::vector<std::uint64_t>& gens, std::uint64_t offset, int m) {
  std::vector<std::uint64_t> by_size(m + 1, 0);
  for_each_in_span(gens, offset, [&](std::uint64_t x) { ++by_size[std::popcount(x)]; });
  return weight_poly_from_sizes(by_size, m);
}

inline void reject_t_one(const BigRational& t) {
  if (t == 1) throw DomainError("t = 1 is outside the domain of the identity");
}

}  // namespace detail

inline WeightPoly hwe_coset(const MultiGraph& g, const EdgeSubset& z) {
  auto p = pack(cycle_basis(g));
  return detail::span_weight_poly(p.cycles, z.mask(), g.edge_count());
}

// Hamming weight enumerator of the Q-flows, Q = Z2 (q = 2) or F4 = Z2^2 (q = 4).
inline WeightPoly hwe_flows(const MultiGraph& g, int q) {
  require_domain(q == 2 || q == 4, "flow enumerators are implemented for q = 2 and q = 4");
  auto p = pack(cycle_basis(g));
  if (q == 2) return detail::span_weight_poly(p.cycles, 0, g.edge_count());
  return detail::pair_weight_poly(p.cycles, g.edge_count());
}

inline WeightPoly hwe_tensions(const MultiGraph& g, int q) {
  require_domain(q == 2 || q == 4, "tension enumerators are implemented for q = 2 and q = 4");
  auto p = pack(cycle_basis(g));
  if (q == 2) return detail::span_weight_poly(p.cocycles, 0, g.edge_count());
  return detail::pair_weight_poly(p.cocycles, g.edge_count());
}

// hwe(Q-flows; t) = (t-1)^n T(t, (t+q-1)/(t-1))
inline CheckResult verify_flow_hwe(const TutteData& d, int q, const BigRational& t) {
  detail::reject_t_one(t);
  BigRational lhs = hwe_flows(d.graph, q).evaluate(t);
  BigRational rhs = power(t - 1, d.profile.n) * evaluate(d.poly, t, (t + q - 1) / (t - 1));
  return compare("flow hwe", lhs, rhs).param("q", std::to_string(q)).param("t", to_string(t));
}

// MacWilliams duality between flows and tensions, plus the signed eulerian
// sums that specialise it at t = -1 (q = 2) and t = -3 (q = 4).
inline std::vector<CheckResult> verify_macwilliams(const TutteData& d, int q, const BigRational& t) {
  detail::reject_t_one(t);
  const MultiGraph& g = d.graph;
  const int m = g.edge_count();
  auto flows = hwe_flows(g, q);
  auto tensions = hwe_tensions(g, q);
  BigRational lhs = flows.evaluate(t);
  BigRational rhs = power(t - 1, m) / BigRational(tensions.cardinality()) * tensions.evaluate((t + q - 1) / (t - 1));
  std::vector<CheckResult> out;
  out.push_back(compare("macwilliams", lhs, rhs).param("q", std::to_string(q)).param("t", to_string(t)));

  if (q == 2) {
    // sum over eulerian A of (-1)^|A|; hwe(C2; -1) = (-1)^|E| of that.
    BigRational signed_sum = power(BigRational(-1), m) * flows.evaluate(BigRational(-1));
    BigRational p2 = chromatic_value(g, d.poly, 2);
    out.push_back(compare("eulerian sign sum", signed_sum, pow2(m - g.vertex_count) * p2));
  } else {
    BigRational signed_sum = flows.evaluate(BigRational(-3));
    BigRational p4 = chromatic_value(g, d.poly, 4);
    out.push_back(compare("eulerian pair sign sum", signed_sum,
                          power(BigRational(-1), m) * power(BigRational(4), m - g.vertex_count) * p4));
  }
  return out;
}

// Sum over the transversal of hwe(C2+z; zeta_q^k)^r (or |.|^2), from the
// per-coset class counts p and their cyclic convolutions.
inline Cyc12 coset_power_sum(const MultiGraph& g, int q, int k, int r, bool absolute) {
  require_domain(valid_modulus(q), "modulus must be 2, 3, 4 or 6");
  require_domain(r == 2 || r == 3, "power must be 2 or 3");
  require_domain(!absolute || r == 2, "absolute power sums are defined for r = 2");
  auto p = pack(cycle_basis(g));
  const int m = g.edge_count();
  std::vector<unsigned __int128> total(q, 0);
  std::vector<std::uint64_t> cls(q);
  for_each_coset_histogram(p, [&](std::uint64_t, const std::vector<std::uint64_t>& hist) {
    std::fill(cls.begin(), cls.end(), 0);
    for (int s = 0; s <= m; ++s) cls[(m - s) % q] += hist[s];
    for (int a = 0; a < q; ++a) {
      if (!cls[a]) continue;
      for (int b = 0; b < q; ++b) {
        unsigned __int128 ab = static_cast<unsigned __int128>(cls[a]) * cls[b];
        if (r == 2) {
          total[absolute ? ((a - b) % q + q) % q : (a + b) % q] += ab;
        } else {
          for (int c = 0; c < q; ++c) total[(a + b + c) % q] += ab * cls[c];
        }
      }
    }
  });
  Cyc12 sum;
  for (int l = 0; l < q; ++l)
    if (total[l]) sum += root_of_unity(q, static_cast<long long>(k) * l) * BigRational(from_u128(total[l]));
  return sum;
}

// Per-coset weight polynomials; the direct route to the power sums.
inline std::vector<WeightPoly> coset_weight_polys(const MultiGraph& g) {
  auto p = pack(cycle_basis(g));
  std::vector<WeightPoly> out;
  for_each_coset_histogram(p, [&](std::uint64_t, const std::vector<std::uint64_t>& hist) {
    out.push_back(detail::weight_poly_from_sizes(hist, g.edge_count()));
  });
  return out;
}

// The three identities of the sum-of-powers lemma at one t in Q(zeta12):
//   sum |h|^2 = (t+t')^r |t-1|^2n T((|t|^2+1)/(t+t'), |(t+1)/(t-1)|^2)
//   sum h^2   = (2t)^r (t-1)^2n T((t^2+1)/(2t), ((t+1)/(t-1))^2)
//   sum h^3   = (t+1)^|E| t^r (t-1)^2n T((t^2-t+1)/t, ((t+1)/(t-1))^2)
// An identity whose Tutte argument has a zero denominator is skipped.
inline std::vector<CheckResult> verify_sum_cubes(const TutteData& d, const Cyc12& t) {
  if (t == Cyc12(1) || t.is_zero()) throw DomainError("t must differ from 0 and 1");
  const int m = d.graph.edge_count();
  Cyc12 s1, s2, s3;
  for (auto& w : coset_weight_polys(d.graph)) {
    Cyc12 h = w.evaluate(t);
    s1 += h * h.conj();
    Cyc12 h2 = h * h;
    s2 += h2;
    s3 += h2 * h;
  }
  const Cyc12 tc = t.conj(), one(1);
  std::vector<CheckResult> out;
  auto finish = [&](CheckResult c) {
    c.param("t", t.to_string());
    out.push_back(std::move(c));
  };
  if ((t + tc).is_zero()) {
    finish(skipped_check("sum abs squares", "t + conj(t) = 0: Tutte argument has a zero denominator"));
  } else {
    Cyc12 rhs = tutte_grothendieck(d, (t - one) * (tc - one), t + tc, one, t * tc + one, (t + one) * (tc + one));
    finish(compare("sum abs squares", s1, rhs));
  }
  Cyc12 a = (t - one) * (t - one), y = (t + one) * (t + one);
  finish(compare("sum squares", s2, tutte_grothendieck(d, a, Cyc12(2) * t, one, t * t + one, y)));
  finish(compare("sum cubes", s3, power(t + one, m) * tutte_grothendieck(d, a, t, one, t * t - t + one, y)));
  return out;
}

inline std::vector<CheckResult> verify_sum_cubes(const TutteData& d, const BigRational& t) {
  return verify_sum_cubes(d, Cyc12(t));
}

// Tutte evaluation points of the real-sum identities at cos(theta) = c.
struct RealSumPoints {
  std::optional<std::pair<BigRational, BigRational>> abs_squares;  // absent when c = 0
  std::pair<BigRational, BigRational> squares;
  std::pair<BigRational, BigRational> cubes;
};

inline RealSumPoints real_sum_points(const BigRational& c) {
  RealSumPoints p;
  if (c != 0) p.abs_squares = {{1 / c, (1 + c) / (1 - c)}};
  p.squares = {c, (c + 1) / (c - 1)};
  p.cubes = {2 * c - 1, (c + 1) / (c - 1)};
  return p;
}

// The real-sum corollary at t = exp(2 pi i k / q). For odd |E| the cube
// identity involves square roots outside Q(zeta12); both sides are squared.
inline std::vector<CheckResult> verify_real_sums(const TutteData& d, int q, int k) {
  require_domain(valid_modulus(q), "modulus must be 2, 3, 4 or 6");
  require_domain(k >= 1 && k < q, "k must satisfy 1 <= k < q");
  const int m = d.graph.edge_count();
  const int r = d.profile.r;
  const Cyc12 t = root_of_unity(q, k), one(1);
  const BigRational c = to_rational(real_part(t));
  Cyc12 s1, s2, s3;
  for (auto& w : coset_weight_polys(d.graph)) {
    Cyc12 h = w.evaluate(t);
    s1 += h * h.conj();
    s2 += h * h;
    s3 += h * h * h;
  }
  const Cyc12 cc(c);
  std::vector<CheckResult> out;
  auto tag = [&](CheckResult res) {
    res.param("q", std::to_string(q)).param("k", std::to_string(k)).param("cos", to_string(c));
    out.push_back(std::move(res));
  };

  // 2^-|E| sum |h|^2 = c^r (1-c)^n T(1/c, (1+c)/(1-c)); the c = 0 case is the
  // loop closed form, which equals 1.
  Cyc12 rhs1 = tutte_grothendieck(d, one - cc, cc, one, one, one + cc);
  tag(compare("abs sum squares theta", s1 * pow2(-m), rhs1));

  // (2t)^-|E| sum h^2 = (c-1)^n T(c, (c+1)/(c-1))
  Cyc12 rhs2 = tutte_grothendieck(d, cc - one, one, one, cc, cc + one);
  tag(compare("sum squares real", power(Cyc12(2) * t, -m) * s2, rhs2));

  // (2t)^(-3|E|/2) sum h^3 = 2^-r (1+c)^(|E|/2) (c-1)^n T(2c-1, (c+1)/(c-1))
  Cyc12 tg3 = tutte_grothendieck(d, cc - one, one, one, Cyc12(2) * cc - one, cc + one);
  if (m % 2 == 0) {
    Cyc12 lhs = power(Cyc12(2) * t, -3 * (m / 2)) * s3;
    Cyc12 rhs = tg3 * pow2(-r) * power(1 + c, m / 2);
    tag(compare("sum cubes real", lhs, rhs));
  } else {
    Cyc12 lhs = power(Cyc12(2) * t, -3 * m) * s3 * s3;
    Cyc12 rhs = tg3 * tg3 * pow2(-2 * r) * power(1 + c, m);
    CheckResult res = compare("sum cubes real", lhs, rhs);
    res.param("form", "squared (odd |E|)");
    tag(std::move(res));
  }
  return out;
}

// sum over cosets of hwe^4 = 2^(-3r) (t^2-1)^(2|E|) sum over cutset triples
// (A, B, C) of s^(|E| - |A u B u C| - |A n B n C|), s = ((t+1)/(t-1))^2.
inline CheckResult verify_fourth_power(const TutteData& d, const BigRational& t) {
  if (t == 1 || t == -1) throw DomainError("t must differ from 1 and -1");
  const MultiGraph& g = d.graph;
  const int m = g.edge_count();
  require_size(m <= 14, "fourth-power identity supports at most 14 edges");
  auto p = pack(cycle_basis(g));
  require_size(3 * p.cocycles.size() <= 30, "cutset triple enumeration too large");

  BigRational lhs = 0;
  for (auto& w : coset_weight_polys(g)) lhs += power(w.evaluate(t), 4);

  std::vector<std::uint64_t> cuts;
  for_each_in_span(p.cocycles, 0, [&](std::uint64_t x) { cuts.push_back(x); });
  std::vector<std::uint64_t> hist(2 * m + 1, 0);  // exponent + m
  for (auto a : cuts)
    for (auto b : cuts) {
      const std::uint64_t ab_or = a | b, ab_and = a & b;
      for (auto c : cuts) ++hist[m + m - std::popcount(ab_or | c) - std::popcount(ab_and & c)];
    }
  const BigRational s = power((t + 1) / (t - 1), 2);
  BigRational sum = 0;
  for (int e = 0; e <= 2 * m; ++e)
    if (hist[e]) sum += BigRational(hist[e]) * power(s, e - m);
  BigRational rhs = pow2(-3 * static_cast<long long>(p.cocycles.size())) * power(t * t - 1, 2 * m) * sum;
  return compare("fourth power", lhs, rhs).param("t", to_string(t));
}

// T(t, (t+1)/(t-1)) = (-1)^n t^r T(1/t, (1+t)/(1-t)) for eulerian G.
inline CheckResult verify_eulerian_reciprocal(const TutteData& d, const BigRational& t) {
  require_domain(is_eulerian_graph(d.graph), "reciprocal law requires every vertex degree to be even");
  require_domain(t != 0 && t != 1 && t != -1, "t must avoid 0 and +-1");
  BigRational lhs = evaluate(d.poly, t, (t + 1) / (t - 1));
  BigRational rhs = power(BigRational(-1), d.profile.n) * power(t, d.profile.r) * evaluate(d.poly, 1 / t, (1 + t) / (1 - t));
  return compare("eulerian reciprocal", lhs, rhs).param("t", to_string(t));
}

}  // namespace tutteparity
