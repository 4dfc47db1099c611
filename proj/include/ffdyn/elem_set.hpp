#pragma once

// Dense element sets: one bit per field element index plus a cached
// cardinality.  At the configured field cap (2^24 elements) a set costs
// 2 MiB, so every set-calculus operation can afford dense tables.

#include <cstdint>
#include <vector>

#include "ffdyn/errors.hpp"

namespace ffdyn {

class ElemSet {
 public:
  ElemSet() : universe_(0), card_(0) {}

  explicit ElemSet(std::uint64_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0), card_(0) {}

  static ElemSet of(std::uint64_t universe,
                    std::initializer_list<std::uint32_t> elems) {
    ElemSet s(universe);
    for (auto e : elems) s.add(e);
    return s;
  }

  std::uint64_t universe() const { return universe_; }
  std::uint64_t card() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool test(std::uint32_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void add(std::uint32_t i) {
    require(i < universe_, "element index outside the field");
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) {
      w |= bit;
      ++card_;
    }
  }

  void remove(std::uint32_t i) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) {
      w &= ~bit;
      --card_;
    }
  }

  /// Visits members in increasing index order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
        fn(static_cast<std::uint32_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(card_);
    for_each([&](std::uint32_t e) { out.push_back(e); });
    return out;
  }

  bool operator==(const ElemSet& o) const {
    return universe_ == o.universe_ && words_ == o.words_;
  }
  bool operator!=(const ElemSet& o) const { return !(*this == o); }

  bool subset_of(const ElemSet& o) const {
    require(universe_ == o.universe_, "sets from different fields");
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend ElemSet unite(const ElemSet& a, const ElemSet& b) {
    require(a.universe_ == b.universe_, "sets from different fields");
    ElemSet r(a.universe_);
    for (std::size_t i = 0; i < r.words_.size(); ++i)
      r.words_[i] = a.words_[i] | b.words_[i];
    r.recount();
    return r;
  }

  friend ElemSet intersection(const ElemSet& a, const ElemSet& b) {
    require(a.universe_ == b.universe_, "sets from different fields");
    ElemSet r(a.universe_);
    for (std::size_t i = 0; i < r.words_.size(); ++i)
      r.words_[i] = a.words_[i] & b.words_[i];
    r.recount();
    return r;
  }

  friend ElemSet without(const ElemSet& a, const ElemSet& b) {
    require(a.universe_ == b.universe_, "sets from different fields");
    ElemSet r(a.universe_);
    for (std::size_t i = 0; i < r.words_.size(); ++i)
      r.words_[i] = a.words_[i] & ~b.words_[i];
    r.recount();
    return r;
  }

 private:
  void recount() {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    card_ = c;
  }

  std::uint64_t universe_;
  std::vector<std::uint64_t> words_;
  std::uint64_t card_;
};

}  // namespace ffdyn
