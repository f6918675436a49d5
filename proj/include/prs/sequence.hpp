#pragma once

// BinarySequence: a finite sequence over {-1,+1}, stored bit-packed with
// bit 1 for +1 and bit 0 for -1 (the usual e -> (1+e)/2 map).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "prs/error.hpp"

namespace prs {

inline constexpr std::size_t kMaxSequenceLength = std::size_t{1} << 28U;

class BinarySequence {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  // Build from +-1 values.
  static BinarySequence from_signs(std::span<const int> signs) {
    BinarySequence s(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] != 1 && signs[i] != -1)
        throw Error(ErrorCode::InvalidInput, "element " + std::to_string(i) + " is not +-1");
      if (signs[i] == 1) s.set_bit(i);
    }
    return s;
  }

  static BinarySequence from_signs(std::initializer_list<int> signs) {
    return from_signs(std::span<const int>(signs.begin(), signs.size()));
  }

  // Build from bits: 1 -> +1, 0 -> -1.
  static BinarySequence from_bits(std::span<const std::uint8_t> bits) {
    BinarySequence s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] > 1) throw Error(ErrorCode::InvalidInput, "symbol at " + std::to_string(i) + " is not 0/1");
      if (bits[i] == 1) s.set_bit(i);
    }
    return s;
  }

  // Build from packed words; bits beyond `length` are cleared.
  static BinarySequence from_words(std::vector<Word> words, std::size_t length) {
    BinarySequence s(length);
    if (words.size() < s.words_.size()) throw Error(ErrorCode::InvalidInput, "not enough words for length");
    words.resize(s.words_.size());
    s.words_ = std::move(words);
    s.clear_tail();
    return s;
  }

  // All +1 (or all -1) of the given length.
  static BinarySequence constant(std::size_t length, int sign) {
    BinarySequence s(length);
    if (sign == 1) {
      for (Word& w : s.words_) w = ~Word{0};
      s.clear_tail();
    }
    return s;
  }

  std::size_t size() const noexcept { return size_; }

  // 0-based storage access; formulas that index e_1..e_N subtract one.
  int operator[](std::size_t i) const noexcept { return bit(i) ? 1 : -1; }
  bool bit(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

  std::span<const Word> words() const noexcept { return words_; }

  std::vector<int> signs() const {
    std::vector<int> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
    return out;
  }

  std::vector<std::uint8_t> to_bits() const {
    std::vector<std::uint8_t> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = bit(i) ? 1 : 0;
    return out;
  }

  // Number of +1 entries.
  std::size_t count_plus() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Sum of all elements.
  long long sum() const noexcept { return 2 * static_cast<long long>(count_plus()) - static_cast<long long>(size_); }

  BinarySequence negated() const {
    BinarySequence s = *this;
    for (Word& w : s.words_) w = ~w;
    s.clear_tail();
    return s;
  }

  // Elements [first, first + count).
  BinarySequence slice(std::size_t first, std::size_t count) const {
    if (first + count > size_) throw Error(ErrorCode::InvalidInput, "slice out of range");
    BinarySequence s(count);
    for (std::size_t i = 0; i < count; ++i)
      if (bit(first + i)) s.set_bit(i);
    return s;
  }

  friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

 private:
  explicit BinarySequence(std::size_t n) : size_(n), words_((n + kWordBits - 1) / kWordBits, 0) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "sequence length must be at least 1");
    if (n > kMaxSequenceLength) throw Error(ErrorCode::TooLarge, "sequence length exceeds 2^28");
  }

  void set_bit(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }

  void clear_tail() noexcept {
    const std::size_t rem = size_ % kWordBits;
    if (rem != 0) words_.back() &= (Word{1} << rem) - 1;
  }

  friend class SequenceBuilder;

  std::size_t size_;
  std::vector<Word> words_;
};

// Appends elements one at a time; used by the generators.
class SequenceBuilder {
 public:
  explicit SequenceBuilder(std::size_t reserve = 0) { words_.reserve((reserve + 63) / 64); }

  void push(int sign) {
    if (size_ % 64 == 0) words_.push_back(0);
    if (sign == 1) words_.back() |= std::uint64_t{1} << (size_ % 64);
    ++size_;
  }

  std::size_t size() const noexcept { return size_; }

  BinarySequence build() && { return BinarySequence::from_words(std::move(words_), size_); }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

inline std::vector<std::uint8_t> to_bits(const BinarySequence& e) { return e.to_bits(); }

inline BinarySequence from_bits(std::span<const std::uint8_t> bits) { return BinarySequence::from_bits(bits); }

}  // namespace prs
