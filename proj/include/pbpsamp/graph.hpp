#ifndef PBPSAMP_GRAPH_HPP
#define PBPSAMP_GRAPH_HPP

#include <cstdint>
#include <vector>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/rng.hpp"

namespace pbpsamp {

/// d-regular digraph with edge labels in [d], stored as one permutation per
/// label: perm[sigma][v] is the sigma-labelled out-neighbour of v. Storing
/// labels as permutations makes consistent labelling structural; an importer
/// for arbitrary edge tables validates before constructing.
struct LabelledDigraph {
  std::uint32_t vertices = 1;
  std::uint32_t d = 2;
  std::vector<std::vector<std::uint32_t>> perm;  // [sigma][v]
};

/// True iff every label's edge map is a bijection on the vertex set.
bool check_consistent(const LabelledDigraph& g);

/// Builds a graph from an arbitrary edge table edges[v][sigma]; throws
/// std::invalid_argument when some label is not a permutation.
LabelledDigraph graph_from_edges(std::uint32_t vertices, std::uint32_t d,
                                 const std::vector<std::vector<std::uint32_t>>& edges);

/// Length-n walk simulator as a branching program: width |V|, the same
/// transition table at every layer, start u, accept {v}. Accepts x iff the
/// labelled walk from u along x ends at v. Always a permutation program.
BranchingProgram graph_to_bp(const LabelledDigraph& g, std::uint32_t u,
                             std::uint32_t v, std::uint32_t n);

/// Probability that a uniform random walk of length n from u ends at v,
/// computed independently of the branching-program route: exact integer
/// matrix power (binary exponentiation) of the label-count matrix over d^n.
DyadicProb walk_prob_matrix(const LabelledDigraph& g, std::uint32_t u,
                            std::uint32_t v, std::uint32_t n);

/// Uniform consistently-labelled graph: one independent random permutation
/// per label. Deterministic per rng state.
LabelledDigraph random_consistent_graph(std::uint32_t vertices, std::uint32_t d,
                                        Rng& rng);

}  // namespace pbpsamp

#endif  // PBPSAMP_GRAPH_HPP
