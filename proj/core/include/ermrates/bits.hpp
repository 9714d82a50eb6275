#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ermrates {

// Fixed-length bitset with runtime size. Unused high bits of the last word stay zero.
class Bits {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bits() = default;
  explicit Bits(std::size_t n, bool value = false)
      : n_(n), w_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void reset(std::size_t i) { set(i, false); }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  // true iff (*this & ~o) is nonzero
  bool has_outside(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const Bits& o) const { return !has_outside(o); }
  std::size_t and_count(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }

  std::size_t find_first() const { return find_from(0); }
  std::size_t find_next(std::size_t i) const { return find_from(i + 1); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  Bits& and_not(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  Bits operator~() const {
    Bits r = *this;
    for (auto& w : r.w_) w = ~w;
    r.trim();
    return r;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  friend bool operator==(const Bits& a, const Bits& b) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    // Compare as bit strings starting at index 0.
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
      if (a.w_[i] == b.w_[i]) continue;
      const std::uint64_t d = a.w_[i] ^ b.w_[i];
      const int low = std::countr_zero(d);
      return ((a.w_[i] >> low) & 1u) ? std::strong_ordering::less
                                     : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
    for (auto w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t find_from(std::size_t i) const {
    if (i >= n_) return npos;
    std::size_t wi = i >> 6;
    std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (w) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= w_.size()) return npos;
      w = w_[wi];
    }
  }
  void trim() {
    if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace ermrates
