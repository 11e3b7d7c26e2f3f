#ifndef PBPSAMP_GF2_HPP
#define PBPSAMP_GF2_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pbpsamp/word.hpp"

namespace pbpsamp {

/// Linear system over the two-element field with bit-packed rows.
struct Gf2System {
  std::uint32_t cols = 0;
  std::vector<std::vector<std::uint64_t>> rows;

  /// One row per binary word, column j = the j-th symbol.
  static Gf2System from_words(const std::vector<Word>& words, std::uint32_t cols);

  bool bit(std::size_t row, std::uint32_t col) const {
    return (rows[row][col / 64] >> (col % 64)) & 1;
  }
};

/// A nonzero vector z with M z = 0, as a binary word of length cols, or
/// nullopt when the kernel is trivial. Gaussian elimination with
/// column-ascending pivots; among the kernel basis the solution activates the
/// smallest free column, so the result is deterministic.
std::optional<Word> gf2_nullspace_vector(Gf2System system);

}  // namespace pbpsamp

#endif  // PBPSAMP_GF2_HPP
