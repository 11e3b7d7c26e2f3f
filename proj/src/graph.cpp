#include "pbpsamp/graph.hpp"

#include <stdexcept>
#include <string>

namespace pbpsamp {

bool check_consistent(const LabelledDigraph& g) {
  if (g.vertices == 0 || g.perm.size() != g.d) return false;
  std::vector<bool> seen(g.vertices);
  for (const auto& col : g.perm) {
    if (col.size() != g.vertices) return false;
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t t : col) {
      if (t >= g.vertices || seen[t]) return false;
      seen[t] = true;
    }
  }
  return true;
}

LabelledDigraph graph_from_edges(std::uint32_t vertices, std::uint32_t d,
                                 const std::vector<std::vector<std::uint32_t>>& edges) {
  check_alphabet(d);
  if (vertices == 0) throw std::invalid_argument("graph needs at least one vertex");
  if (edges.size() != vertices) {
    throw std::invalid_argument("edge table must have one row per vertex");
  }
  LabelledDigraph g;
  g.vertices = vertices;
  g.d = d;
  g.perm.assign(d, std::vector<std::uint32_t>(vertices, 0));
  for (std::uint32_t v = 0; v < vertices; ++v) {
    if (edges[v].size() != d) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " must have exactly d out-edges");
    }
    for (std::uint32_t sigma = 0; sigma < d; ++sigma) {
      if (edges[v][sigma] >= vertices) {
        throw std::invalid_argument("edge target out of range");
      }
      g.perm[sigma][v] = edges[v][sigma];
    }
  }
  if (!check_consistent(g)) {
    throw std::invalid_argument("labelling is not consistent: some label is not a permutation");
  }
  return g;
}

BranchingProgram graph_to_bp(const LabelledDigraph& g, std::uint32_t u,
                             std::uint32_t v, std::uint32_t n) {
  if (!check_consistent(g)) {
    throw std::invalid_argument("graph labelling is not consistent");
  }
  if (u >= g.vertices || v >= g.vertices) {
    throw std::invalid_argument("walk endpoints out of range");
  }
  BranchingProgram b;
  b.n = n;
  b.d = g.d;
  b.widths.assign(n + 1, g.vertices);
  std::vector<std::vector<std::uint32_t>> layer(
      g.vertices, std::vector<std::uint32_t>(g.d, 0));
  for (std::uint32_t s = 0; s < g.vertices; ++s) {
    for (std::uint32_t sigma = 0; sigma < g.d; ++sigma) {
      layer[s][sigma] = g.perm[sigma][s];
    }
  }
  b.transitions.assign(n, layer);
  b.start = u;
  b.accept = {v};
  return b;
}

namespace {

using CountMatrix = std::vector<std::vector<BigInt>>;

CountMatrix multiply(const CountMatrix& a, const CountMatrix& b) {
  const std::size_t m = a.size();
  CountMatrix c(m, std::vector<BigInt>(m, BigInt(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

}  // namespace

DyadicProb walk_prob_matrix(const LabelledDigraph& g, std::uint32_t u,
                            std::uint32_t v, std::uint32_t n) {
  if (!check_consistent(g)) {
    throw std::invalid_argument("graph labelling is not consistent");
  }
  if (u >= g.vertices || v >= g.vertices) {
    throw std::invalid_argument("walk endpoints out of range");
  }
  const std::size_t m = g.vertices;
  CountMatrix base(m, std::vector<BigInt>(m, BigInt(0)));
  for (std::uint32_t sigma = 0; sigma < g.d; ++sigma) {
    for (std::size_t s = 0; s < m; ++s) base[s][g.perm[sigma][s]] += 1;
  }
  CountMatrix result(m, std::vector<BigInt>(m, BigInt(0)));
  for (std::size_t i = 0; i < m; ++i) result[i][i] = 1;
  std::uint32_t e = n;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return DyadicProb(result[u][v], n, g.d);
}

LabelledDigraph random_consistent_graph(std::uint32_t vertices, std::uint32_t d,
                                        Rng& rng) {
  check_alphabet(d);
  if (vertices == 0) throw std::invalid_argument("graph needs at least one vertex");
  LabelledDigraph g;
  g.vertices = vertices;
  g.d = d;
  g.perm.reserve(d);
  for (std::uint32_t sigma = 0; sigma < d; ++sigma) {
    g.perm.push_back(rng.permutation(vertices));
  }
  return g;
}

}  // namespace pbpsamp
