#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ltax/error.hpp"

namespace ltax {

struct ObjectTag {};
struct AttributeTag {};

/// Fixed-universe set of indices {0, ..., universe-1}, stored as a bitset.
///
/// The tag keeps object sets and attribute sets apart at compile time; the
/// universe is the row (resp. column) count of the owning context. Binary
/// operations require equal universes.
///
/// Lectic order follows the index order: index 0 is the most significant
/// position, so A < B iff the smallest element of the symmetric difference
/// lies in B.
template <class Tag>
class IndexSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : universe_(universe), words_((universe + word_bits - 1) / word_bits, 0) {}

  IndexSet(std::size_t universe, std::initializer_list<std::size_t> indices)
      : IndexSet(universe) {
    for (auto i : indices) insert(i);
  }

  template <class Range>
  static IndexSet from_indices(std::size_t universe, const Range& indices) {
    IndexSet s(universe);
    for (auto i : indices) s.insert(static_cast<std::size_t>(i));
    return s;
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
  }

  /// Elements 0..63 from the bits of `mask` (bit i <-> index i).
  static IndexSet from_mask(std::size_t universe, std::uint64_t mask) {
    IndexSet s(universe);
    if (!s.words_.empty()) {
      s.words_[0] = mask;
      s.trim();
    }
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::span<const Word> words() const noexcept { return words_; }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool is_full() const noexcept { return size() == universe_; }

  bool contains(std::size_t i) const noexcept {
    return i < universe_ && ((words_[i / word_bits] >> (i % word_bits)) & 1u) != 0;
  }

  void insert(std::size_t i) {
    check_index(i);
    words_[i / word_bits] |= Word{1} << (i % word_bits);
  }

  void erase(std::size_t i) {
    check_index(i);
    words_[i / word_bits] &= ~(Word{1} << (i % word_bits));
  }

  /// Smallest element, or universe() when empty.
  std::size_t first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return universe_;
  }

  /// Smallest element >= from, or universe() when none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= universe_) return universe_;
    std::size_t w = from / word_bits;
    Word cur = words_[w] & (~Word{0} << (from % word_bits));
    while (true) {
      if (cur != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w == words_.size()) return universe_;
      cur = words_[w];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word cur = words_[w];
      while (cur != 0) {
        f(w * word_bits + static_cast<std::size_t>(std::countr_zero(cur)));
        cur &= cur - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool is_subset_of(const IndexSet& other) const {
    check_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
  }

  bool intersects(const IndexSet& other) const {
    check_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
  }

  std::size_t intersection_size(const IndexSet& other) const {
    check_universe(other);
    std::size_t n = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    }
    return n;
  }

  /// Elements strictly below `bound`.
  IndexSet prefix(std::size_t bound) const {
    IndexSet out = *this;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
      const std::size_t lo = w * word_bits;
      if (lo >= bound) {
        out.words_[w] = 0;
      } else if (bound - lo < word_bits) {
        out.words_[w] &= (Word{1} << (bound - lo)) - 1;
      }
    }
    return out;
  }

  IndexSet complement() const {
    IndexSet out = *this;
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  IndexSet& operator&=(const IndexSet& o) {
    check_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& o) {
    check_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  /// Set difference.
  IndexSet& operator-=(const IndexSet& o) {
    check_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }

  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  /// Strict lectic comparison.
  friend bool lectic_less(const IndexSet& a, const IndexSet& b) {
    a.check_universe(b);
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      const Word diff = a.words_[w] ^ b.words_[w];
      if (diff != 0) return (b.words_[w] & (diff & (~diff + 1))) != 0;
    }
    return false;
  }

  /// Same bits in the opposite role, used by transposition.
  template <class OtherTag>
  IndexSet<OtherTag> retag() const {
    IndexSet<OtherTag> out(universe_);
    for_each([&](std::size_t i) { out.insert(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (auto w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// Compact debugging form, e.g. "{0,3,4}".
  std::string to_string() const {
    std::string s = "{";
    bool first_item = true;
    for_each([&](std::size_t i) {
      if (!first_item) s += ',';
      s += std::to_string(i);
      first_item = false;
    });
    return s + "}";
  }

 private:
  void trim() {
    if (universe_ % word_bits != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << (universe_ % word_bits)) - 1;
    }
  }

  void check_index(std::size_t i) const {
    if (i >= universe_) {
      throw Error(ErrorCode::index_out_of_range,
                  "index " + std::to_string(i) + " outside universe of size " +
                      std::to_string(universe_));
    }
  }

  void check_universe(const IndexSet& o) const {
    if (o.universe_ != universe_) {
      throw Error(ErrorCode::universe_mismatch,
                  "sets over universes of size " + std::to_string(universe_) + " and " +
                      std::to_string(o.universe_));
    }
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

using ObjectSet = IndexSet<ObjectTag>;
using AttributeSet = IndexSet<AttributeTag>;

template <class Tag>
struct IndexSetHash {
  std::size_t operator()(const IndexSet<Tag>& s) const noexcept { return s.hash(); }
};

}  // namespace ltax
