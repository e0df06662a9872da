#include "autorand/alphabet.hpp"

#include <algorithm>

#include "autorand/errors.hpp"

namespace autorand {

Alphabet::Alphabet(int arity) : arity_(arity), place_(arity) {
  if (arity < 0 || arity > 6) {
    throw InputError("unsupported arity " + std::to_string(arity));
  }
  Symbol p = 1;
  for (int t = arity - 1; t >= 0; --t) {
    place_[t] = p;
    p *= 3;
  }
  size_ = static_cast<int>(p) - 1;
}

Symbol Alphabet::encode(std::span<const Letter> column) const {
  if (static_cast<int>(column.size()) != arity_) {
    throw InputError("column width does not match arity");
  }
  Symbol s = 0;
  for (int t = 0; t < arity_; ++t) {
    s += static_cast<Symbol>(column[t]) * place_[t];
  }
  if (static_cast<int>(s) == size_) {
    throw InputError("the all-padding column is not a symbol");
  }
  return s;
}

std::vector<Letter> Alphabet::decode(Symbol s) const {
  std::vector<Letter> column(arity_);
  for (int t = 0; t < arity_; ++t) column[t] = letter(s, t);
  return column;
}

bool Alphabet::all_pad_except(Symbol s, int track) const {
  for (int t = 0; t < arity_; ++t) {
    if (t != track && letter(s, t) != Letter::kPad) return false;
  }
  return true;
}

std::string Alphabet::format(Symbol s) const {
  std::string out;
  for (int t = 0; t < arity_; ++t) {
    if (t > 0) out.push_back(',');
    out.push_back(letter_char(letter(s, t)));
  }
  return out;
}

Symbol Alphabet::parse(std::string_view text) const {
  std::vector<Letter> column;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ',' && i % 2 == 1) continue;
    if (i % 2 == 1) throw InputError("bad symbol '" + std::string(text) + "'");
    if (c == '0') {
      column.push_back(Letter::kZero);
    } else if (c == '1') {
      column.push_back(Letter::kOne);
    } else if (c == '#') {
      column.push_back(Letter::kPad);
    } else {
      throw InputError("bad symbol '" + std::string(text) + "'");
    }
  }
  if (static_cast<int>(column.size()) != arity_) {
    throw InputError("symbol '" + std::string(text) + "' has wrong arity");
  }
  return encode(column);
}

Block word_to_block(std::string_view word) {
  Block block;
  block.reserve(word.size());
  for (char c : word) {
    if (c != '0' && c != '1') throw InputError("not a binary word");
    block.push_back(c == '1' ? 1 : 0);
  }
  return block;
}

Word block_to_word(std::span<const Symbol> block) {
  Word word;
  word.reserve(block.size());
  for (Symbol s : block) word.push_back(s == 0 ? '0' : '1');
  return word;
}

std::string format_block(const Alphabet& alphabet,
                         std::span<const Symbol> block) {
  if (alphabet.arity() == 1) return block_to_word(block);
  std::string out;
  for (Symbol s : block) {
    out += "(" + alphabet.format(s) + ")";
  }
  return out;
}

bool is_binary_word(std::string_view word) {
  return std::all_of(word.begin(), word.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

std::vector<Word> words_of_length(int length) {
  std::vector<Word> out;
  out.reserve(std::size_t{1} << length);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
    Word w(length, '0');
    for (int p = 0; p < length; ++p) {
      if ((bits >> (length - 1 - p)) & 1U) w[p] = '1';
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> words_up_to(int max_length) {
  std::vector<Word> out;
  for (int n = 0; n <= max_length; ++n) {
    auto layer = words_of_length(n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

bool shortlex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace autorand
