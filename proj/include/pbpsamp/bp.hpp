#ifndef PBPSAMP_BP_HPP
#define PBPSAMP_BP_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pbpsamp/rational.hpp"
#include "pbpsamp/rng.hpp"
#include "pbpsamp/word.hpp"

namespace pbpsamp {

/// Layered deterministic automaton over the alphabet [d].
///
/// The program has n+1 layers of states; layer i has widths[i] states indexed
/// from 0. Reading symbol sigma in layer r-1 moves to
/// transitions[r-1][state][sigma] in layer r. An input word of length n is
/// accepted when the walk from `start` (layer 0) lands in `accept` (layer n).
///
/// Instances are immutable by convention: every operation on them is a pure
/// function, so programs can be shared freely across threads.
struct BranchingProgram {
  std::uint32_t n = 0;  // input length (= number of transition layers)
  std::uint32_t d = 2;  // alphabet size, 2..10
  std::vector<std::uint32_t> widths;  // n+1 entries
  // transitions[r][s][sigma] = target state in layer r+1, for r in 0..n-1.
  std::vector<std::vector<std::vector<std::uint32_t>>> transitions;
  std::uint32_t start = 0;
  std::vector<std::uint32_t> accept;  // sorted, unique, states of layer n

  std::uint32_t width() const {
    std::uint32_t w = 0;
    for (std::uint32_t x : widths) w = std::max(w, x);
    return w;
  }
  std::size_t accept_count() const { return accept.size(); }
};

/// Result of the permutation check: true iff all layers share one width and
/// every per-symbol column map is a bijection on it.
struct PermutationFlag {
  bool is_permutation = false;
};

/// Throws std::invalid_argument if the program is structurally malformed
/// (wrong table shapes, out-of-range targets, bad start/accept indices,
/// unsorted or duplicated accept list).
void validate_program(const BranchingProgram& b);

/// Walks the program from `state` in layer `layer` along word x (|x| symbols,
/// layer + |x| <= n). Returns the reached state; the empty word returns
/// `state` unchanged. Throws std::out_of_range / std::invalid_argument on
/// invalid layer, state, or symbol.
std::uint32_t evaluate(const BranchingProgram& b, std::uint32_t layer,
                       std::uint32_t state, const Word& x);

/// 1 iff the full-length walk from the start state accepts. |x| must equal n.
int accepts(const BranchingProgram& b, const Word& x);

/// Exact acceptance probability over a uniform input, via forward propagation
/// of per-state path counts (denominator d^n). Never uses floating point.
DyadicProb accept_prob_exact(const BranchingProgram& b);

PermutationFlag check_permutation(const BranchingProgram& b);

// ---------------------------------------------------------------------------
// Program families and enumeration.
// ---------------------------------------------------------------------------

/// Start/accept policy for an enumerated family.
struct EndpointPolicy {
  enum class Kind {
    Fixed,                    // the given start and accept set
    AllStartsSingleAccept,    // every (start, single accept state) pair
    AllStartsNonemptyAccept,  // every start x every nonempty accept subset
  };
  Kind kind = Kind::Fixed;
  std::uint32_t start = 0;            // Fixed only
  std::vector<std::uint32_t> accept;  // Fixed only

  static EndpointPolicy fixed(std::uint32_t start, std::vector<std::uint32_t> accept) {
    std::sort(accept.begin(), accept.end());
    accept.erase(std::unique(accept.begin(), accept.end()), accept.end());
    return EndpointPolicy{Kind::Fixed, start, std::move(accept)};
  }
  static EndpointPolicy all_single_accept() {
    return EndpointPolicy{Kind::AllStartsSingleAccept, 0, {}};
  }
  static EndpointPolicy all_nonempty_accept() {
    return EndpointPolicy{Kind::AllStartsNonemptyAccept, 0, {}};
  }
};

/// A finite family of uniform-width programs: all transition structures of
/// the given shape crossed with the endpoint policy.
struct FamilySpec {
  std::uint32_t n = 1;
  std::uint32_t w = 2;
  std::uint32_t d = 2;
  bool permutation_only = true;
  EndpointPolicy endpoints = EndpointPolicy::all_nonempty_accept();
};

/// Exact number of programs in the family.
BigInt family_size(const FamilySpec& spec);

struct BudgetExceeded : std::runtime_error {
  BigInt size;
  explicit BudgetExceeded(BigInt s)
      : std::runtime_error("enumeration budget exceeded, family size " + s.str()),
        size(std::move(s)) {}
};

/// Default enumeration budget (2^20 programs), overridable via the
/// PBPSAMP_ENUM_BUDGET environment variable.
std::uint64_t enumeration_budget();

/// Single-consumer stream over every program of a family, each exactly once.
///
/// Order: deterministic odometer over the family's free choices. Transition
/// choices are most significant, ordered layer-major; within a layer, general
/// tables advance entry-by-entry (state-major then symbol-major, lexicographic
/// over targets) while permutation tables advance column-by-column
/// (symbol-major, each column stepping through the w! permutations in
/// lexicographic one-line order). Endpoint choices vary fastest, the accept
/// choice fastest of all (single accept by index, subsets by increasing
/// bitmask), then the start state.
class FamilyEnumerator {
 public:
  /// Throws BudgetExceeded when the family is larger than `budget`
  /// (default: enumeration_budget()).
  explicit FamilyEnumerator(FamilySpec spec,
                            std::optional<std::uint64_t> budget = std::nullopt);

  /// Next program, or nullopt when exhausted.
  std::optional<BranchingProgram> next();

  const FamilySpec& spec() const { return spec_; }

 private:
  bool advance_endpoints();
  bool advance_structure();
  BranchingProgram materialize() const;

  FamilySpec spec_;
  bool done_ = false;
  // Per (layer, symbol) column in permutation mode; flattened table otherwise.
  std::vector<std::vector<std::uint32_t>> columns_;
  std::vector<std::uint32_t> flat_;  // general mode: [layer][state][symbol]
  std::uint32_t cur_start_ = 0;
  std::uint64_t cur_accept_code_ = 0;  // index or bitmask, per policy
};

/// Uniform random member of the family, drawn digit-wise from `rng`.
BranchingProgram random_family_member(const FamilySpec& spec, Rng& rng);

}  // namespace pbpsamp

#endif  // PBPSAMP_BP_HPP
