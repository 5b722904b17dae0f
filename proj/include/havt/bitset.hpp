#ifndef HAVT_BITSET_HPP
#define HAVT_BITSET_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace havt {

/// Dense bit set over the index space [0, universe).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint64_t universe)
      : n_(universe), w_((universe + 63) / 64, 0) {}

  static IndexSet full(std::uint64_t universe) {
    IndexSet s(universe);
    for (auto& w : s.w_) w = ~0ull;
    s.trim();
    return s;
  }

  std::uint64_t universe() const { return n_; }

  void set(std::uint64_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::uint64_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  std::uint64_t intersection_count(const IndexSet& o) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }

  /// True when every member of `o` is also a member of this set.
  bool contains(const IndexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (o.w_[i] & ~w_[i]) return false;
    return true;
  }

  /// Smallest index in exactly one of the two sets, if any.
  std::optional<std::uint64_t> first_difference(const IndexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t d = w_[i] ^ o.w_[i];
      if (d) return i * 64 + std::countr_zero(d);
    }
    return std::nullopt;
  }

  std::optional<std::uint64_t> first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
    return std::nullopt;
  }

  /// Visits set bits in ascending order.
  template <class F>
  void for_each(F f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f(i * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

 private:
  void trim() {
    if (n_ % 64) w_.back() &= (1ull << (n_ % 64)) - 1;
  }

  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace havt

#endif
