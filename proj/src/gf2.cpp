#include "pbpsamp/gf2.hpp"

#include <stdexcept>

namespace pbpsamp {

Gf2System Gf2System::from_words(const std::vector<Word>& words, std::uint32_t cols) {
  Gf2System m;
  m.cols = cols;
  const std::size_t blocks = (cols + 63) / 64;
  m.rows.reserve(words.size());
  for (const Word& w : words) {
    check_word(w, cols, 2);
    std::vector<std::uint64_t> row(blocks, 0);
    for (std::uint32_t j = 0; j < cols; ++j) {
      if (symbol_at(w, j)) row[j / 64] |= 1ULL << (j % 64);
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::optional<Word> gf2_nullspace_vector(Gf2System system) {
  const std::uint32_t cols = system.cols;
  if (cols == 0) return std::nullopt;
  auto& rows = system.rows;
  const std::size_t blocks = (cols + 63) / 64;

  std::vector<std::uint32_t> pivot_col;  // pivot column of each pivot row
  std::size_t rank = 0;
  for (std::uint32_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !system.bit(pivot, col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && system.bit(r, col)) {
        for (std::size_t b = 0; b < blocks; ++b) rows[r][b] ^= rows[rank][b];
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank >= cols) return std::nullopt;  // full column rank: trivial kernel

  // Smallest non-pivot column becomes the activated free variable. Pivot
  // columns are ascending, so the first index where pivot_col[k] != k is the
  // first gap; with no gap the free column is `rank` itself (rank < cols).
  std::uint32_t free_col = 0;
  {
    std::size_t k = 0;
    while (k < pivot_col.size() && pivot_col[k] == free_col) {
      ++free_col;
      ++k;
    }
  }

  Word z(cols, '0');
  z[free_col] = '1';
  // In reduced row echelon form, row k reads: x_{pivot_col[k]} + sum over
  // free columns = 0; with one free variable set, each pivot copies that
  // row's coefficient at the free column.
  for (std::size_t k = 0; k < pivot_col.size(); ++k) {
    if (system.bit(k, free_col)) z[pivot_col[k]] = '1';
  }
  return z;
}

}  // namespace pbpsamp
