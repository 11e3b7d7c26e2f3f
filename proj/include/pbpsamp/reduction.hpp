#ifndef PBPSAMP_REDUCTION_HPP
#define PBPSAMP_REDUCTION_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pbpsamp/hit_program.hpp"
#include "pbpsamp/oracle.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/sampler.hpp"

namespace pbpsamp {

/// Derived parameters of the width reduction, all exact rationals.
///
/// The error budget splits in half: the inner sampler may err by eps/2 on the
/// restricted program, and the restriction may shift the acceptance
/// probability by at most eps/2 provided the hitter is adequate at quality
/// (eps/2)/(n*a) for single-accept programs. w_hit is the width at which a
/// bounded-width hitter transfers to unbounded width; its constant c is
/// configurable because only the order of growth is pinned down.
struct ParameterSchedule {
  std::uint32_t n = 1;
  std::uint64_t a = 1;
  Rational epsilon;
  Rational c;
  Rational delta_hit;       // hitter quality handed to the bounded-width step
  Rational delta_budget;    // acceptance-probability shift allowed: eps/2
  Rational epsilon_inner;   // inner sampler error: eps/2
  std::uint64_t w_hit = 0;  // ceil(c * ceil(n^2 * (8*n*a) / eps))

  // Envelope for the query-growth sanity check:
  // distinct queries <= envelope_coeff * (n*a/eps)^envelope_exp.
  std::uint64_t envelope_coeff = 64;
  std::uint32_t envelope_exp = 6;

  /// Hitter adequacy threshold for single-accept reach probabilities.
  Rational hitter_gate_threshold() const {
    return delta_budget / (Rational(n) * Rational(a));
  }
  /// Width parameter for the inner sampler once the hitter is fixed.
  std::uint64_t inner_width(std::uint64_t hitter_size) const {
    return width_bound(hitter_size, n, a);
  }
  Rational envelope_bound() const;
};

/// Computes the schedule. Requires n >= 1, a >= 1, 0 < eps < 1, c > 0.
ParameterSchedule build_schedule(std::uint32_t n, std::uint64_t a,
                                 const Rational& eps, const Rational& c);

/// Query-count bound of the reduction: inner_count * (n+1) * |H|.
std::uint64_t query_accounting(std::uint64_t inner_count, std::uint32_t n,
                               std::uint64_t hitter_size);

/// Plan of the reduction's base queries: every x_{1..i} || y_{1..n-i} with x
/// from the inner plan and y from the hitter. Stored as per-split prefix
/// sets, so membership is a pair of binary searches per split instead of a
/// materialized product set.
class SpliceClosurePlan final : public QueryPlan {
 public:
  SpliceClosurePlan(const QuerySet& inner_plan, const QuerySet& hitter);
  bool contains(const Word& x) const override;
  std::optional<std::uint64_t> size() const override { return std::nullopt; }

 private:
  std::uint32_t n_;
  std::vector<std::vector<Word>> inner_prefixes_;   // by length 0..n
  std::vector<std::vector<Word>> hitter_prefixes_;  // by length 0..n
};

using InnerSamplerFactory = std::function<std::unique_ptr<DeterministicSampler>(
    std::uint32_t n, std::uint32_t d, std::uint64_t width, const Rational& eps_inner)>;
using HitterSource = std::function<QuerySet(const ParameterSchedule& schedule)>;

/// Everything observable about one reduction run. The estimate is exact; any
/// clamp into [0,1] is reported rather than silent.
struct SampleRun {
  Rational estimate;
  Rational raw_estimate;
  bool clamped = false;
  std::uint64_t hitter_size = 0;
  std::uint64_t inner_width = 0;
  std::uint64_t inner_distinct = 0;   // distinct queries to the restricted program
  std::uint64_t base_distinct = 0;    // distinct queries to B
  std::uint64_t accounting_bound = 0; // inner_distinct * (n+1) * |H|
  bool plan_preregistered = false;    // nonadaptive path: closure declared up front
  std::string inner_kind;
};

/// The width reduction, end to end: obtain a hitter, restrict B to the states
/// the hitter certifies, and estimate the restricted program with a
/// bounded-width sampler driven through the black-box evaluation formula.
///
/// When the inner sampler is nonadaptive, the full closure of its plan is
/// registered on the base session before the first query, so the set of base
/// queries cannot depend on the target. The estimate satisfies
/// |estimate - Pr[B accepts]| <= eps whenever the hitter source meets the
/// schedule's gate threshold for B and the inner sampler is an eps/2-sampler
/// at the realized width.
SampleRun unbounded_sampler(OracleSession& base, const ParameterSchedule& schedule,
                            const InnerSamplerFactory& factory,
                            const HitterSource& hitter_source);

// Shipped inner-sampler factories.

/// Exact ground truth: averages over the whole cube (exponential in n).
InnerSamplerFactory full_cube_factory();

/// Random averaging plan of the given size (or the heuristic size when 0),
/// drawn from a substream of `seed`. The same seed always yields the same
/// plan for the same request shape.
InnerSamplerFactory random_averaging_factory(std::uint64_t seed,
                                             std::uint64_t size = 0);

/// Fixed externally supplied plan.
InnerSamplerFactory fixed_plan_factory(QuerySet plan);

}  // namespace pbpsamp

#endif  // PBPSAMP_REDUCTION_HPP
