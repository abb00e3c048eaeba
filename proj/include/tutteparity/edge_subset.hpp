#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "tutteparity/errors.hpp"

namespace tutteparity {

// Bit vector over the edge ids of one graph.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(int size) : size_(size), words_((size + 63) / 64, 0) {}

  static EdgeSubset from_mask(int size, std::uint64_t mask) {
    EdgeSubset s(size);
    if (size > 0) s.words_[0] = size >= 64 ? mask : mask & ((std::uint64_t{1} << size) - 1);
    return s;
  }

  static EdgeSubset from_ids(int size, const std::vector<int>& ids) {
    EdgeSubset s(size);
    for (int e : ids) s.set(e);
    return s;
  }

  static EdgeSubset full(int size) {
    EdgeSubset s(size);
    for (int e = 0; e < size; ++e) s.set(e);
    return s;
  }

  int size() const { return size_; }

  bool test(int e) const { return (words_[e >> 6] >> (e & 63)) & 1; }
  void set(int e, bool v = true) {
    auto bit = std::uint64_t{1} << (e & 63);
    if (v)
      words_[e >> 6] |= bit;
    else
      words_[e >> 6] &= ~bit;
  }
  void flip(int e) { words_[e >> 6] ^= std::uint64_t{1} << (e & 63); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const { return count() == 0; }

  EdgeSubset& operator^=(const EdgeSubset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  EdgeSubset& operator&=(const EdgeSubset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  EdgeSubset& operator|=(const EdgeSubset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend EdgeSubset operator^(EdgeSubset a, const EdgeSubset& b) { return a ^= b; }
  friend EdgeSubset operator&(EdgeSubset a, const EdgeSubset& b) { return a &= b; }
  friend EdgeSubset operator|(EdgeSubset a, const EdgeSubset& b) { return a |= b; }
  bool operator==(const EdgeSubset&) const = default;

  std::vector<int> ids() const {
    std::vector<int> out;
    for (int e = 0; e < size_; ++e)
      if (test(e)) out.push_back(e);
    return out;
  }

  // Packed form for the enumeration kernels.
  std::uint64_t mask() const {
    if (size_ > 64) throw SizeError("edge subset wider than 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : ids()) {
      s += (first ? "" : ",") + std::to_string(e);
      first = false;
    }
    return s + "}";
  }

 private:
  void check_same(const EdgeSubset& o) const {
    if (o.size_ != size_) throw DomainError("edge subsets of different graphs");
  }

  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tutteparity
