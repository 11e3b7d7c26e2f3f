#include "pbpsamp/oracle.hpp"

namespace pbpsamp {

void OracleSession::declare_plan(std::shared_ptr<const QueryPlan> plan) {
  if (!plan) throw std::invalid_argument("null query plan");
  if (plan_) throw std::logic_error("query plan already declared");
  if (calls_ > 0) throw std::logic_error("plan must be declared before any query");
  plan_ = std::move(plan);
}

int OracleSession::query(const Word& x) {
  check_word(x, n_, d_);
  if (plan_ && !plan_->contains(x)) throw PlanViolation(x);
  ++calls_;
  auto it = seen_.find(x);
  if (it != seen_.end()) return it->second;
  const int answer = target_(x);
  seen_.emplace(x, answer);
  log_.emplace_back(x, answer);
  return answer;
}

std::set<Word> OracleSession::query_set() const {
  std::set<Word> out;
  for (const auto& [word, answer] : seen_) out.insert(word);
  return out;
}

}  // namespace pbpsamp
