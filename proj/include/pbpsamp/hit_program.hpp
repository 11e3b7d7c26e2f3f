#ifndef PBPSAMP_HIT_PROGRAM_HPP
#define PBPSAMP_HIT_PROGRAM_HPP

#include <cstdint>
#include <vector>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/oracle.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/sampler.hpp"

namespace pbpsamp {

/// Provenance of one state of the explicit induced program.
struct HitStateTag {
  enum class Kind { Real, Padding, Sink };
  Kind kind = Kind::Real;
  std::uint32_t value = 0;       // Real: original state id; Padding/Sink: slot
  std::uint32_t sink_layer = 0;  // Sink only: the layer tag j
};

/// The restriction of a permutation program B to the states from which some
/// element of H reaches an accept state, padded to uniform width and
/// completed to a permutation program.
///
/// Kept states of layer i are the slots 0..K-1 (the members of K_i in
/// ascending original order, then padding); slot K + j*K + v is the sink
/// (j, v). Transitions out of a kept slot follow B while the target stays
/// kept, otherwise fall into the sink tagged with the current layer; sinks
/// persist unchanged once entered. Each layer's partial map is completed to a
/// bijection by pairing unmatched sources with unmatched targets in ascending
/// index order.
struct HitProgram {
  const BranchingProgram* base = nullptr;  // referenced, not copied
  QuerySet hitter;
  std::vector<std::vector<std::uint32_t>> hit_states;  // K_i, ascending
  std::uint32_t padded_size = 0;                       // K = max |K_i|
  BranchingProgram explicit_bp;                        // width (n+2)*K
  std::vector<std::vector<HitStateTag>> state_map;     // [layer][index]
};

/// Upper bound |H|*(n+2)*a on the width of the induced program; the width
/// parameter handed to the bounded-width sampler downstream.
std::uint64_t width_bound(std::uint64_t hitter_size, std::uint32_t n,
                          std::uint64_t accept_count);

/// The kept states: K_i = { v in layer i : some y in H has the walk from v
/// along y's first n-i symbols end in the accept set }. In particular K_n is
/// exactly the accept set (empty prefix).
std::vector<std::vector<std::uint32_t>> compute_hit_states(
    const BranchingProgram& b, const QuerySet& h);

/// Builds the induced program. Requires a permutation program, a nonempty
/// accept set, and a nonempty hitter of matching shape. Construction asserts
/// the per-layer bound |K_i| <= |H|*a, the total width bound, and the
/// permutation property of the result.
HitProgram build_hit_program(const BranchingProgram& b, const QuerySet& h);

/// Evaluates the induced program on x using only oracle access to B:
/// AND over i in {0..n} of OR over y in H of B(x_{1..i} || y_{1..n-i}).
/// Without a declared plan the evaluation may short-circuit; with one it
/// queries the full splice closure of x, so nonadaptive runs touch the same
/// query set regardless of answers.
int eval_hit_blackbox(OracleSession& session, const QuerySet& h, const Word& x);

/// |Pr[B_H accepts] - Pr[B accepts]| as an exact rational.
Rational hit_approx_error(const BranchingProgram& b, const QuerySet& h);

/// White-box adequacy check of a hitter against one program: every
/// (state v in layer i, accept state u) whose reach probability
/// Pr[walk of length n-i from v ends at u] exceeds `threshold` must be
/// realized by some element of H. This is the exact per-instance hypothesis
/// under which the induced program's acceptance probability stays within
/// n * accept_count * threshold of the original.
struct HitterCoverage {
  bool ok = true;
  // First violation, when !ok:
  std::uint32_t layer = 0;
  std::uint32_t state = 0;
  std::uint32_t accept_state = 0;
};

HitterCoverage hitter_covers_program(const BranchingProgram& b, const QuerySet& h,
                                     const Rational& threshold);

}  // namespace pbpsamp

#endif  // PBPSAMP_HIT_PROGRAM_HPP
