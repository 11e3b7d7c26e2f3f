#ifndef PBPSAMP_TESTS_HELPERS_HPP
#define PBPSAMP_TESTS_HELPERS_HPP

// Shared test fixtures and independent oracles. The brute-force routines here
// re-derive expected values by direct enumeration, on purpose sharing no code
// with the library paths they check.

#include <cstdint>
#include <vector>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/graph.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/word.hpp"

namespace pbpsamp::testing {

/// Width-2 program flipping its state on every 1 bit; accepts odd or even
/// parity depending on the flag.
inline BranchingProgram parity_program(std::uint32_t n, bool accept_odd) {
  BranchingProgram b;
  b.n = n;
  b.d = 2;
  b.widths.assign(n + 1, 2);
  b.transitions.assign(n, {{0, 1}, {1, 0}});
  b.start = 0;
  b.accept = {accept_odd ? 1u : 0u};
  return b;
}

inline BranchingProgram identity_program(std::uint32_t n, std::uint32_t w,
                                         std::uint32_t d = 2) {
  BranchingProgram b;
  b.n = n;
  b.d = d;
  b.widths.assign(n + 1, w);
  b.transitions.assign(
      n, std::vector<std::vector<std::uint32_t>>(w, std::vector<std::uint32_t>(d)));
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t s = 0; s < w; ++s) {
      for (std::uint32_t sigma = 0; sigma < d; ++sigma) b.transitions[r][s][sigma] = s;
    }
  }
  b.start = 0;
  b.accept = {0};
  return b;
}

/// Directed cycle with label 0 stepping forward and label 1 stepping back.
inline LabelledDigraph cycle_graph(std::uint32_t vertices) {
  LabelledDigraph g;
  g.vertices = vertices;
  g.d = 2;
  g.perm.assign(2, std::vector<std::uint32_t>(vertices));
  for (std::uint32_t v = 0; v < vertices; ++v) {
    g.perm[0][v] = (v + 1) % vertices;
    g.perm[1][v] = (v + vertices - 1) % vertices;
  }
  return g;
}

/// Oracle: acceptance probability by direct enumeration of all d^n inputs.
inline Rational brute_force_prob(const BranchingProgram& b) {
  std::uint64_t hits = 0;
  const auto words = all_words(b.n, b.d);
  for (const Word& x : words) hits += accepts(b, x);
  return Rational(hits, words.size());
}

/// Oracle: walk probability by direct enumeration of all label strings.
inline Rational brute_force_walk_prob(const LabelledDigraph& g, std::uint32_t u,
                                      std::uint32_t v, std::uint32_t n) {
  std::uint64_t hits = 0;
  const auto words = all_words(n, g.d);
  for (const Word& x : words) {
    std::uint32_t at = u;
    for (std::size_t i = 0; i < x.size(); ++i) at = g.perm[symbol_at(x, i)][at];
    hits += (at == v);
  }
  return Rational(hits, words.size());
}

/// Applies a bijection per layer: new state maps[i][old] in layer i.
inline BranchingProgram relabel_states(const BranchingProgram& b,
                                       const std::vector<std::vector<std::uint32_t>>& maps) {
  BranchingProgram out = b;
  for (std::uint32_t r = 0; r < b.n; ++r) {
    for (std::uint32_t s = 0; s < b.widths[r]; ++s) {
      for (std::uint32_t sigma = 0; sigma < b.d; ++sigma) {
        out.transitions[r][maps[r][s]][sigma] = maps[r + 1][b.transitions[r][s][sigma]];
      }
    }
  }
  out.start = maps[0][b.start];
  out.accept.clear();
  for (std::uint32_t v : b.accept) out.accept.push_back(maps[b.n][v]);
  std::sort(out.accept.begin(), out.accept.end());
  return out;
}

}  // namespace pbpsamp::testing

#endif  // PBPSAMP_TESTS_HELPERS_HPP
