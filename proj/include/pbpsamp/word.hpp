#ifndef PBPSAMP_WORD_HPP
#define PBPSAMP_WORD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbpsamp/rng.hpp"

namespace pbpsamp {

/// A word over the alphabet [d] is stored as a string of decimal digit
/// characters, one per symbol ("0110"). This doubles as the on-disk format
/// for query sets and logs, which limits the project to d <= 10.
using Word = std::string;

constexpr std::uint32_t kMaxAlphabet = 10;

inline std::uint8_t symbol_at(const Word& w, std::size_t i) {
  return static_cast<std::uint8_t>(w[i] - '0');
}

inline void check_alphabet(std::uint32_t d) {
  if (d < 2 || d > kMaxAlphabet) {
    throw std::invalid_argument("alphabet size must be in [2, 10], got " +
                                std::to_string(d));
  }
}

inline void check_word(const Word& w, std::size_t n, std::uint32_t d) {
  if (w.size() != n) {
    throw std::invalid_argument("word \"" + w + "\" has length " +
                                std::to_string(w.size()) + ", expected " +
                                std::to_string(n));
  }
  for (char c : w) {
    if (c < '0' || static_cast<std::uint32_t>(c - '0') >= d) {
      throw std::invalid_argument("word \"" + w + "\" has a symbol outside [" +
                                  std::to_string(d) + "]");
    }
  }
}

inline Word uniform_word(std::size_t n, std::uint32_t d, Rng& rng) {
  Word w(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = static_cast<char>('0' + rng.below(d));
  }
  return w;
}

/// Number of words of length n over [d], or 0 on overflow past 2^63.
inline std::uint64_t word_space_size(std::size_t n, std::uint32_t d) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > (1ULL << 63) / d) return 0;
    total *= d;
  }
  return total;
}

/// All words of length n over [d] in lexicographic order. Guarded by caller
/// against large n.
inline std::vector<Word> all_words(std::size_t n, std::uint32_t d) {
  const std::uint64_t total = word_space_size(n, d);
  if (total == 0) throw std::invalid_argument("word space too large to enumerate");
  std::vector<Word> out;
  out.reserve(total);
  Word w(n, '0');
  for (std::uint64_t k = 0; k < total; ++k) {
    out.push_back(w);
    // Increment as a base-d odometer, last symbol fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (static_cast<std::uint32_t>(++w[i] - '0') < d) break;
      w[i] = '0';
    }
  }
  return out;
}

/// x_{1..i} || y_{1..n-i}: prefix of x glued to a prefix of y.
inline Word splice_prefixes(const Word& x, const Word& y, std::size_t i) {
  Word out = x.substr(0, i);
  out.append(y, 0, y.size() >= i ? y.size() - i : 0);
  return out;
}

}  // namespace pbpsamp

#endif  // PBPSAMP_WORD_HPP
