#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autorand {

enum class Letter : std::uint8_t { kZero = 0, kOne = 1, kPad = 2 };

// A column of a convolution block, encoded in base 3 with track 0 as the most
// significant digit. The all-PAD column has code 3^k - 1 and is never a valid
// symbol, so the alphabet of arity k is exactly [0, 3^k - 1).
using Symbol = std::uint32_t;
using Block = std::vector<Symbol>;
// Binary words are strings over '0' and '1'.
using Word = std::string;

class Alphabet {
 public:
  explicit Alphabet(int arity);

  int arity() const { return arity_; }
  int size() const { return size_; }

  Letter letter(Symbol s, int track) const {
    return static_cast<Letter>((s / place_[track]) % 3);
  }
  Symbol encode(std::span<const Letter> column) const;
  std::vector<Letter> decode(Symbol s) const;
  Symbol replace(Symbol s, int track, Letter l) const {
    return s + (static_cast<int>(l) - static_cast<int>(letter(s, track))) *
                   static_cast<int>(place_[track]);
  }
  bool all_pad_except(Symbol s, int track) const;

  // "0", "1" for one track; "a,b,..." with '#' for PAD otherwise.
  std::string format(Symbol s) const;
  // Inverse of format; throws InputError.
  Symbol parse(std::string_view text) const;

 private:
  int arity_;
  int size_;
  std::vector<Symbol> place_;
};

inline char letter_char(Letter l) {
  return l == Letter::kZero ? '0' : l == Letter::kOne ? '1' : '#';
}

// Conversions between one-track blocks and binary words.
Block word_to_block(std::string_view word);
Word block_to_word(std::span<const Symbol> block);

std::string format_block(const Alphabet& alphabet,
                         std::span<const Symbol> block);

bool is_binary_word(std::string_view word);

// All binary words of length <= max_length in shortlex order.
std::vector<Word> words_up_to(int max_length);
std::vector<Word> words_of_length(int length);

bool shortlex_less(std::string_view a, std::string_view b);

}  // namespace autorand
