#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace klsf {

/// Fixed-length bit vector supporting cyclic rotation within its length.
/// Bits beyond `size()` in the last word are kept zero.
class BitRow {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;

  BitRow() = default;
  explicit BitRow(std::size_t nbits) : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return nbits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::vector<Word>& words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (Word w : words_)
      if (w) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  BitRow& operator|=(const BitRow& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  BitRow& operator&=(const BitRow& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitRow& operator^=(const BitRow& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  bool intersects(const BitRow& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const BitRow& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  void flip_all() noexcept {
    for (auto& w : words_) w = ~w;
    clear_tail();
  }
  void fill() noexcept {
    for (auto& w : words_) w = ~Word{0};
    clear_tail();
  }

  bool operator==(const BitRow&) const = default;

  /// Index of the lowest set bit, or size() if none.
  std::size_t first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return nbits_;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w) {
        f(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  /// Bit i of the result is bit (i - s mod size) of this row.
  BitRow rotated_left(std::size_t s) const {
    BitRow r(nbits_);
    if (nbits_ == 0) return r;
    s %= nbits_;
    if (s == 0) return *this;
    shift_left_into(r, s);
    BitRow hi(nbits_);
    shift_right_into(hi, nbits_ - s);
    r |= hi;
    return r;
  }

  /// OR of this row rotated by s into `out` (same length).
  void or_rotated_into(BitRow& out, std::size_t s) const {
    if (nbits_ == 0) return;
    s %= nbits_;
    if (s == 0) {
      out |= *this;
      return;
    }
    if (words_.size() == 1) {
      const Word w = words_[0];
      const Word mask = nbits_ == kWordBits ? ~Word{0} : ((Word{1} << nbits_) - 1);
      out.words_[0] |= ((w << s) | (w >> (nbits_ - s))) & mask;
      return;
    }
    out |= rotated_left(s);
  }

 private:
  void clear_tail() noexcept {
    const std::size_t rem = nbits_ % kWordBits;
    if (rem && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  void shift_left_into(BitRow& out, std::size_t s) const noexcept {
    const std::size_t ws = s / kWordBits, bs = s % kWordBits;
    const std::size_t n = words_.size();
    for (std::size_t i = n; i-- > ws;) {
      Word v = words_[i - ws] << bs;
      if (bs && i - ws >= 1) v |= words_[i - ws - 1] >> (kWordBits - bs);
      out.words_[i] = v;
    }
    out.clear_tail();
  }

  void shift_right_into(BitRow& out, std::size_t s) const noexcept {
    const std::size_t ws = s / kWordBits, bs = s % kWordBits;
    const std::size_t n = words_.size();
    for (std::size_t i = 0; i + ws < n; ++i) {
      Word v = words_[i + ws] >> bs;
      if (bs && i + ws + 1 < n) v |= words_[i + ws + 1] << (kWordBits - bs);
      out.words_[i] = v;
    }
  }

  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

}  // namespace klsf
