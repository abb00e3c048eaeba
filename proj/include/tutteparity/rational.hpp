#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "tutteparity/errors.hpp"

namespace tutteparity {

// Expression templates off so that arithmetic results are plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt numer(const BigRational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denom(const BigRational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const BigRational& x) { return denom(x) == 1; }

inline BigRational make_rational(const BigInt& p, const BigInt& q) {
  if (q == 0) throw DomainError("zero denominator");
  return BigRational(p, q);
}

// Integer power; negative exponents invert.
inline BigRational power(const BigRational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return power(BigRational(1) / base, -e);
  }
  BigRational result = 1, b = base;
  auto k = static_cast<unsigned long long>(e);
  while (k) {
    if (k & 1) result *= b;
    b *= b;
    k >>= 1;
  }
  return result;
}

inline BigInt pow_int(const BigInt& base, unsigned long long e) {
  BigInt result = 1, b = base;
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline BigRational pow2(long long e) { return power(BigRational(2), e); }

inline BigInt from_u128(unsigned __int128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + BigInt(static_cast<std::uint64_t>(v));
}

inline BigInt from_i128(__int128 v) {
  if (v < 0) return -from_u128(static_cast<unsigned __int128>(-v));
  return from_u128(static_cast<unsigned __int128>(v));
}

// "p/q" or "p", reduced, with the sign on the numerator.
inline std::string to_string(const BigRational& x) {
  if (is_integral(x)) return numer(x).str();
  return numer(x).str() + "/" + denom(x).str();
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline BigRational parse_rational(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  auto parse_int = [&](std::string_view v) {
    v = trim(v);
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i == v.size()) throw ParseError(0, "bad rational '" + std::string(s) + "'");
    for (std::size_t j = i; j < v.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(v[j])))
        throw ParseError(0, "bad rational '" + std::string(s) + "'");
    return BigInt(std::string(v[0] == '+' ? v.substr(1) : v));
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_int(s));
  BigInt q = parse_int(s.substr(slash + 1));
  if (q == 0) throw ParseError(0, "zero denominator in '" + std::string(s) + "'");
  return BigRational(parse_int(s.substr(0, slash)), q);
}

inline double to_double(const BigRational& x) { return x.convert_to<double>(); }

}  // namespace tutteparity
