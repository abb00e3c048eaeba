#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tutteparity/rational.hpp"

namespace tutteparity {

// Element of Q(z), z = exp(i pi / 6), in the basis 1, z, z^2, z^3 with
// z^4 = z^2 - 1.
class Cyc12 {
 public:
  Cyc12() = default;
  Cyc12(const BigRational& r) : c_{r, 0, 0, 0} {}  // NOLINT: rationals embed
  Cyc12(long long r) : c_{BigRational(r), 0, 0, 0} {}  // NOLINT
  Cyc12(BigRational c0, BigRational c1, BigRational c2, BigRational c3)
      : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  const BigRational& operator[](int i) const { return c_[i]; }

  // z^j for any integer j.
  static Cyc12 zeta_pow(long long j) {
    static const int table[12][4] = {
        {1, 0, 0, 0},  {0, 1, 0, 0},  {0, 0, 1, 0},  {0, 0, 0, 1},
        {-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0},
        {0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, -1}};
    int k = static_cast<int>(((j % 12) + 12) % 12);
    return {table[k][0], table[k][1], table[k][2], table[k][3]};
  }

  Cyc12& operator+=(const Cyc12& o) {
    for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyc12& operator-=(const Cyc12& o) {
    for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyc12 operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }
  friend Cyc12 operator+(Cyc12 a, const Cyc12& b) { return a += b; }
  friend Cyc12 operator-(Cyc12 a, const Cyc12& b) { return a -= b; }

  friend Cyc12 operator*(const Cyc12& a, const Cyc12& b) {
    std::array<BigRational, 7> p{};
    for (int i = 0; i < 4; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < 4; ++j)
        if (b.c_[j] != 0) p[i + j] += a.c_[i] * b.c_[j];
    }
    // z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
    Cyc12 r(p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5]);
    return r;
  }
  Cyc12& operator*=(const Cyc12& o) { return *this = *this * o; }

  friend Cyc12 operator*(const Cyc12& a, const BigRational& s) {
    return {a.c_[0] * s, a.c_[1] * s, a.c_[2] * s, a.c_[3] * s};
  }
  friend Cyc12 operator*(const BigRational& s, const Cyc12& a) { return a * s; }

  bool operator==(const Cyc12& o) const { return c_ == o.c_; }
  bool operator!=(const Cyc12& o) const { return !(*this == o); }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  // The automorphism z -> z^j, j a unit mod 12.
  Cyc12 galois(int j) const {
    Cyc12 r;
    for (int i = 0; i < 4; ++i)
      if (c_[i] != 0) r += zeta_pow(static_cast<long long>(i) * j) * c_[i];
    return r;
  }

  Cyc12 conj() const { return galois(11); }

  Cyc12 inverse() const;

  std::complex<double> approx() const {
    std::complex<double> z = std::polar(1.0, std::acos(-1.0) / 6), acc = 0, pw = 1;
    for (int i = 0; i < 4; ++i, pw *= z) acc += to_double(c_[i]) * pw;
    return acc;
  }

  std::string to_string() const;

 private:
  std::array<BigRational, 4> c_{};
};

inline BigRational to_rational(const Cyc12& x) {
  if (!x.is_rational()) throw NotRational("value " + x.to_string() + " is not rational");
  return x[0];
}

inline Cyc12 Cyc12::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  Cyc12 others = galois(5) * galois(7) * galois(11);
  BigRational norm = to_rational(*this * others);
  return others * (BigRational(1) / norm);
}

inline Cyc12 operator/(const Cyc12& a, const Cyc12& b) { return a * b.inverse(); }

inline Cyc12 power(const Cyc12& base, long long e) {
  if (e < 0) return power(base.inverse(), -e);
  Cyc12 result(1), b = base;
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline Cyc12 conj(const Cyc12& x) { return x.conj(); }

// (x + conj x) / 2
inline Cyc12 real_part(const Cyc12& x) { return (x + x.conj()) * BigRational(1, 2); }

inline std::string Cyc12::to_string() const {
  if (is_rational()) return tutteparity::to_string(c_[0]);
  static const char* names[4] = {"", "z", "z^2", "z^3"};
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (c_[i] == 0) continue;
    BigRational a = c_[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (i == 0)
      s += tutteparity::to_string(a);
    else if (a == 1)
      s += names[i];
    else
      s += tutteparity::to_string(a) + "*" + names[i];
  }
  return s;
}

inline bool divides_12(int q) { return q > 0 && 12 % q == 0; }

// exp(2 pi i k / q) as z^(12k/q).
inline Cyc12 root_of_unity(int q, long long k) {
  if (!divides_12(q)) throw DomainError("root_of_unity: q must divide 12, got " + std::to_string(q));
  return Cyc12::zeta_pow((12 / q) * (((k % q) + q) % q));
}

using ResidueSet = std::set<int>;

inline void check_residues(int q, const ResidueSet& s) {
  for (int l : s)
    if (l < 0 || l >= q) throw DomainError("residue " + std::to_string(l) + " outside 0.." + std::to_string(q - 1));
}

// Transform of an arbitrary rational function on Z_q: f^(k) = sum_l f(l) z_q^{-kl}.
inline std::vector<Cyc12> fourier(int q, const std::vector<BigRational>& f) {
  std::vector<Cyc12> out(q);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l)
      if (f[l] != 0) out[k] += root_of_unity(q, -static_cast<long long>(k) * l) * f[l];
  return out;
}

inline std::vector<Cyc12> fourier(int q, const std::vector<Cyc12>& f) {
  std::vector<Cyc12> out(q);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l) out[k] += root_of_unity(q, -static_cast<long long>(k) * l) * f[l];
  return out;
}

inline std::vector<BigRational> indicator(int q, const ResidueSet& s) {
  check_residues(q, s);
  std::vector<BigRational> f(q, 0);
  for (int l : s) f[l] = 1;
  return f;
}

inline std::vector<Cyc12> fourier_indicator(int q, const ResidueSet& s) {
  if (!divides_12(q)) throw DomainError("modulus must divide 12");
  return fourier(q, indicator(q, s));
}

// <f, g> = sum_k f(k) conj(g(k))
inline Cyc12 inner(const std::vector<Cyc12>& f, const std::vector<Cyc12>& g) {
  Cyc12 s;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * g[k].conj();
  return s;
}

inline ResidueSet transform_support(int q, const ResidueSet& s, const ResidueSet& s2) {
  for (int l : s)
    if (s2.count(l)) throw DomainError("residue sets must be disjoint");
  auto a = fourier_indicator(q, s), b = fourier_indicator(q, s2);
  ResidueSet out;
  for (int k = 0; k < q; ++k)
    if (!(a[k] - b[k]).is_zero()) out.insert(k);
  return out;
}

}  // namespace tutteparity
