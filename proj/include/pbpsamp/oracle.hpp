#ifndef PBPSAMP_ORACLE_HPP
#define PBPSAMP_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/word.hpp"

namespace pbpsamp {

/// Raised when a query falls outside a pre-registered plan. This is the
/// runtime teeth of the nonadaptivity contract: a sampler that declares its
/// query set up front and then strays has an adaptivity bug.
struct PlanViolation : std::runtime_error {
  Word query;
  explicit PlanViolation(Word q)
      : std::runtime_error("query \"" + q + "\" is not in the declared plan"),
        query(std::move(q)) {}
};

/// Membership test for a declared query plan. Plans may be explicit sets or
/// structured (e.g. the prefix-splice closure used by the width reduction,
/// which would be wasteful to materialize).
class QueryPlan {
 public:
  virtual ~QueryPlan() = default;
  virtual bool contains(const Word& x) const = 0;
  /// Number of distinct words in the plan, when cheaply known.
  virtual std::optional<std::uint64_t> size() const = 0;
};

class ExplicitPlan final : public QueryPlan {
 public:
  explicit ExplicitPlan(std::set<Word> words) : words_(std::move(words)) {}
  bool contains(const Word& x) const override { return words_.count(x) != 0; }
  std::optional<std::uint64_t> size() const override { return words_.size(); }
  const std::set<Word>& words() const { return words_; }

 private:
  std::set<Word> words_;
};

/// Black-box access to a target function f : [d]^n -> {0,1} with query
/// logging and optional plan enforcement.
///
/// The log keeps each distinct query once, in first-seen order, together with
/// its answer; repeats only bump the call counter (the target is fixed, so
/// answers cannot change). Sessions are single-consumer and mutable; separate
/// targets may be driven concurrently by separate sessions.
class OracleSession {
 public:
  using Target = std::function<int(const Word&)>;

  OracleSession(std::uint32_t n, std::uint32_t d, Target target)
      : n_(n), d_(d), target_(std::move(target)) {
    check_alphabet(d_);
    if (!target_) throw std::invalid_argument("oracle target must be callable");
  }

  /// Session over a branching program's acceptance function.
  static OracleSession over_program(const BranchingProgram& b) {
    return OracleSession(b.n, b.d, [&b](const Word& x) { return accepts(b, x); });
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t d() const { return d_; }

  /// Must be called before any query; cannot be re-declared.
  void declare_plan(std::shared_ptr<const QueryPlan> plan);
  void declare_plan(std::set<Word> words) {
    declare_plan(std::make_shared<ExplicitPlan>(std::move(words)));
  }
  bool has_plan() const { return plan_ != nullptr; }
  const QueryPlan* plan() const { return plan_.get(); }

  /// Evaluates f(x), logging the query. Throws on wrong length or symbols,
  /// and PlanViolation when a plan is declared and x is outside it.
  int query(const Word& x);

  std::uint64_t distinct_query_count() const { return log_.size(); }
  std::uint64_t total_call_count() const { return calls_; }

  /// Distinct queries with answers, in first-seen order.
  const std::vector<std::pair<Word, int>>& log() const { return log_; }

  /// The set of distinct queried words.
  std::set<Word> query_set() const;

 private:
  std::uint32_t n_;
  std::uint32_t d_;
  Target target_;
  std::shared_ptr<const QueryPlan> plan_;
  std::vector<std::pair<Word, int>> log_;
  std::map<Word, int> seen_;
  std::uint64_t calls_ = 0;
};

}  // namespace pbpsamp

#endif  // PBPSAMP_ORACLE_HPP
