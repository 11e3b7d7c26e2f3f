#ifndef PBPSAMP_ADVERSARY_HPP
#define PBPSAMP_ADVERSARY_HPP

#include <cstdint>
#include <optional>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/sampler.hpp"

namespace pbpsamp {

/// Lower-bound witnesses: given a candidate hitting set that is too small,
/// construct a program that rejects all of it yet accepts a large input mass.
/// A nullopt result is a verdict ("no witness of this kind exists"), not an
/// error. All constructors require d = 2.

/// Parity witness: a nonzero z orthogonal (mod 2) to every element of H
/// yields the width-2 permutation program for [z.x = 1], which has acceptance
/// probability exactly 1/2 and rejects all of H. Whenever |H| <= n-1 such a z
/// exists. Accompanied by the chosen z for reporting.
struct ParityWitness {
  BranchingProgram program;
  Word z;
};
std::optional<ParityWitness> parity_adversary(const QuerySet& h);

/// Prefix-counter witness: route the first l bits to 2^l counter states and
/// accept `accept_count` states unreached by H's l-prefixes. l is the largest
/// value with 2^l <= accept_count/(2*eps), capped at n, so each accepted
/// state carries mass 2^-l >= 2*eps/accept_count and the total accepted mass
/// is at least 2*eps. Returns nullopt when H's prefixes leave fewer than
/// `accept_count` states free (or no valid l exists). Throws BudgetExceeded
/// when 2^l would exceed the desk-scale width limit.
std::optional<BranchingProgram> prefix_adversary(const QuerySet& h,
                                                 std::uint64_t accept_count,
                                                 const Rational& eps);

/// Prefix-match witness for general ordered programs: accept exactly the
/// inputs whose first l bits equal a fixed pattern missing from H's prefixes,
/// with l = ceil(log2(1/eps)) - 1. Width 2 but deliberately not a permutation
/// program. Acceptance mass is exactly 2^-l (>= 2*eps when 1/eps is a power
/// of two). Requires 0 < eps < 1/2.
std::optional<BranchingProgram> prefix_match_adversary(const QuerySet& h,
                                                       const Rational& eps);

/// Independent closure of the loop: re-checks by direct evaluation that the
/// witness rejects every element of H, and by exact dynamic programming that
/// its acceptance probability meets the claimed bound.
struct WitnessReport {
  bool ok = false;
  bool rejects_all = false;
  Rational prob;
  Rational bound;
  bool is_permutation = false;
  std::uint32_t width = 0;
};
WitnessReport witness_verify(const BranchingProgram& b, const QuerySet& h,
                             const Rational& bound);

}  // namespace pbpsamp

#endif  // PBPSAMP_ADVERSARY_HPP
