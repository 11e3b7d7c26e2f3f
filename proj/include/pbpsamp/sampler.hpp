#ifndef PBPSAMP_SAMPLER_HPP
#define PBPSAMP_SAMPLER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/oracle.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/rng.hpp"
#include "pbpsamp/word.hpp"

namespace pbpsamp {

/// Finite set of length-n words over [d]. Doubles as an averaging-sampler
/// query plan and as a hitting set. Strings are kept sorted and unique.
struct QuerySet {
  std::uint32_t n = 0;
  std::uint32_t d = 2;
  std::vector<Word> strings;

  static QuerySet from_words(std::uint32_t n, std::uint32_t d,
                             std::vector<Word> words);
  static QuerySet full_cube(std::uint32_t n, std::uint32_t d);

  std::size_t size() const { return strings.size(); }
  bool empty() const { return strings.empty(); }
  bool contains(const Word& x) const;
};

/// Result of drawing `raw_draws` independent uniform words; the set holds the
/// distinct survivors. Both counts matter when studying how reliability grows
/// with draw size.
struct RandomQueryDraw {
  QuerySet set;
  std::uint64_t raw_draws = 0;
};

RandomQueryDraw random_query_set(std::uint32_t n, std::uint32_t d,
                                 std::uint64_t size, Rng& rng);

/// Exact mean of the target over Q: |{x in Q : f(x)=1}| / |Q|. Queries
/// exactly the elements of Q, in sorted order. Throws on empty Q.
Rational averaging_estimate(const QuerySet& q, OracleSession& session);

// ---------------------------------------------------------------------------
// Deterministic samplers.
// ---------------------------------------------------------------------------

/// A deterministic oracle algorithm estimating Pr[f(U_n)=1]. Implementations
/// with a fixed query plan are nonadaptive; query_plan() returns that plan.
class DeterministicSampler {
 public:
  virtual ~DeterministicSampler() = default;
  virtual Rational run(OracleSession& session) const = 0;
  virtual std::optional<QuerySet> query_plan() const = 0;
  virtual std::string describe() const = 0;
};

/// Nonadaptive sampler whose output is exactly the mean over its plan.
class AveragingSampler final : public DeterministicSampler {
 public:
  explicit AveragingSampler(QuerySet plan);
  Rational run(OracleSession& session) const override {
    return averaging_estimate(plan_, session);
  }
  std::optional<QuerySet> query_plan() const override { return plan_; }
  std::string describe() const override;
  const QuerySet& plan() const { return plan_; }

 private:
  QuerySet plan_;
};

/// Adaptive reference sampler, exact on the width-2 permutation family.
///
/// Every width-2 permutation program computes [z.x = b] for some z, b (or a
/// constant). The sampler learns z from probes at 0^n and the unit vectors,
/// then issues one confirmation query at z itself -- a query that depends on
/// earlier answers, which makes the query set genuinely adaptive. Output: the
/// probe value at 0^n when z = 0, else exactly 1/2.
class ParityProbeSampler final : public DeterministicSampler {
 public:
  ParityProbeSampler(std::uint32_t n) : n_(n) {}
  Rational run(OracleSession& session) const override;
  std::optional<QuerySet> query_plan() const override { return std::nullopt; }
  std::string describe() const override { return "parity-probe"; }

 private:
  std::uint32_t n_;
};

// ---------------------------------------------------------------------------
// Verification against enumerable families.
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::uint64_t budget = 0;        // 0 => enumeration_budget()
  std::uint64_t sample_seed = 0;   // sampled fallback stream
  std::uint64_t sample_count = 0;  // 0 => budget
};

/// Outcome of a family-quantified check. `exhaustive` distinguishes a full
/// enumeration from a seeded random sub-family; a sampled "ok" is only
/// evidence, never a certificate.
struct VerifyVerdict {
  bool ok = false;
  std::optional<BranchingProgram> counterexample;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  BigInt family_total = 0;

  explicit operator bool() const { return ok; }
};

/// Checks |sampler(B) - Pr[B(U_n)=1]| <= eps for every program of the family
/// (first counterexample in enumeration order wins). Falls back to a seeded
/// sub-family above the budget.
VerifyVerdict verify_sampler(const DeterministicSampler& sampler,
                             const FamilySpec& family, const Rational& eps,
                             const VerifyOptions& options = {});
VerifyVerdict verify_sampler(const QuerySet& q, const FamilySpec& family,
                             const Rational& eps, const VerifyOptions& options = {});

/// Checks that no family member has Pr[B(U_n)=1] > eps while rejecting every
/// element of H.
VerifyVerdict verify_hitter(const QuerySet& h, const FamilySpec& family,
                            const Rational& eps, const VerifyOptions& options = {});

/// The query set a sampler produces against the all-zeroes oracle. For an
/// averaging sampler this is its plan; for adaptive samplers it is the
/// realized all-zeroes trace.
QuerySet hitter_from_sampler(const DeterministicSampler& sampler,
                             std::uint32_t n, std::uint32_t d);

// ---------------------------------------------------------------------------
// Hitter search.
// ---------------------------------------------------------------------------

struct HitterSearchResult {
  QuerySet set;
  bool minimal_certified = false;  // exhaustive search over all smaller sets
};

/// Greedy set cover over the accepting sets of family members with
/// probability above eps, then (when the word space is at most 64 and the
/// subset count fits the budget) an exhaustive search certifying minimality.
HitterSearchResult minimal_hitter_search(const FamilySpec& family,
                                         const Rational& eps,
                                         std::uint64_t subset_budget = 1u << 20,
                                         std::uint64_t family_budget = 0);

// ---------------------------------------------------------------------------
// Sizing helpers for random plans.
// ---------------------------------------------------------------------------

/// Bit length of the canonical binary program encoding used by the sizing
/// rules: n*w*d*ceil(log2(max(w,2))) table bits plus a 64-bit header.
std::uint64_t description_bits(std::uint32_t n, std::uint32_t w, std::uint32_t d);

/// Draw count 3k/eps with k = description_bits. A rule of thumb, not a bound.
std::uint64_t plan_size_heuristic(std::uint32_t n, std::uint32_t w,
                                  std::uint32_t d, const Rational& eps);

/// Draw count making the union bound 2^(k+1) * exp(-s*eps^2/3) fall below 1
/// via the standard multiplicative Chernoff bound (worst-case mean bounded
/// by 1). Sufficient for existence; pessimistic in practice.
std::uint64_t chernoff_size_bound(std::uint32_t n, std::uint32_t w,
                                  std::uint32_t d, const Rational& eps);

}  // namespace pbpsamp

#endif  // PBPSAMP_SAMPLER_HPP
