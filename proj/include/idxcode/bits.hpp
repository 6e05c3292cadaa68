#ifndef IDXCODE_BITS_HPP
#define IDXCODE_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "idxcode/errors.hpp"

namespace idxcode {

/// Dense bit vector over F2. Coordinate 0 is the least significant bit of the
/// first word; padding bits past `size()` are always zero.
class BitVector {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t width) : width_(width), words_((width + kWordBits - 1) / kWordBits, 0) {}

  /// Low `width` bits of `mask` (width <= 64).
  static BitVector from_mask(std::uint64_t mask, std::size_t width) {
    BitVector v(width);
    if (width > 0) v.words_[0] = width >= kWordBits ? mask : (mask & ((word_type{1} << width) - 1));
    return v;
  }

  /// Parses a '0'/'1' string; character i is coordinate i.
  static BitVector from_string(std::string_view s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i);
      } else if (s[i] != '0') {
        throw InputError("bit string contains '" + std::string(1, s[i]) + "'");
      }
    }
    return v;
  }

  std::size_t size() const noexcept { return width_; }
  bool empty() const noexcept { return width_ == 0; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return test(i); }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= word_type{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(word_type{1} << (i % kWordBits)); }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= word_type{1} << (i % kWordBits); }
  void assign(std::size_t i, bool value) noexcept { value ? set(i) : reset(i); }

  void set_all() noexcept {
    for (auto& w : words_) w = ~word_type{0};
    trim();
  }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const noexcept {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const noexcept { return !any(); }

  /// First set coordinate at or after `from`, or size() when there is none.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= width_) return width_;
    std::size_t wi = from / kWordBits;
    word_type w = words_[wi] & (~word_type{0} << (from % kWordBits));
    while (true) {
      if (w) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size()) return width_;
      w = words_[wi];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  /// Calls f(i) for every set coordinate in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      word_type w = words_[wi];
      while (w) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  BitVector& operator^=(const BitVector& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVector& operator&=(const BitVector& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Removes the coordinates set in `o`.
  BitVector& subtract(const BitVector& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) noexcept { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) noexcept { return a |= b; }

  /// Inner product over F2.
  bool dot(const BitVector& o) const noexcept {
    word_type acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
    return std::popcount(acc) & 1;
  }
  /// |this & o| without materializing the intersection.
  std::size_t intersection_count(const BitVector& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  bool is_subset_of(const BitVector& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// Low 64 coordinates as an integer mask.
  std::uint64_t to_mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const {
    std::string s(width_, '0');
    for_each([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

  const std::vector<word_type>& words() const noexcept { return words_; }

  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

 private:
  void trim() noexcept {
    if (width_ % kWordBits && !words_.empty()) words_.back() &= (word_type{1} << (width_ % kWordBits)) - 1;
  }

  std::size_t width_ = 0;
  std::vector<word_type> words_;
};

}  // namespace idxcode

#endif  // IDXCODE_BITS_HPP
