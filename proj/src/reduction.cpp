#include "pbpsamp/reduction.hpp"

#include <algorithm>
#include <set>

namespace pbpsamp {

Rational ParameterSchedule::envelope_bound() const {
  Rational base = Rational(n) * Rational(a) / epsilon;
  Rational result = envelope_coeff;
  for (std::uint32_t i = 0; i < envelope_exp; ++i) result *= base;
  return result;
}

ParameterSchedule build_schedule(std::uint32_t n, std::uint64_t a,
                                 const Rational& eps, const Rational& c) {
  if (n == 0) throw std::invalid_argument("schedule requires n >= 1");
  if (a == 0) throw std::invalid_argument("schedule requires a >= 1");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must be in (0,1)");
  if (c <= 0) throw std::invalid_argument("c must be positive");
  ParameterSchedule s;
  s.n = n;
  s.a = a;
  s.epsilon = eps;
  s.c = c;
  const Rational na = Rational(n) * Rational(a);
  s.delta_hit = eps / (4 * na);
  s.delta_budget = eps / 2;
  s.epsilon_inner = eps / 2;
  // inner ceil of n^2 * (8*n*a) / eps, then scale by c and ceil again
  const auto ceil_rational = [](const Rational& r) -> BigInt {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    return (num + den - 1) / den;
  };
  const Rational raw = Rational(BigInt(n) * n) * (8 * na) / eps;
  const BigInt scaled = ceil_rational(Rational(c * Rational(ceil_rational(raw))));
  s.w_hit = scaled.convert_to<std::uint64_t>();
  if (s.epsilon_inner + s.delta_budget > s.epsilon) {
    throw std::logic_error("error budget split exceeds eps");
  }
  return s;
}

std::uint64_t query_accounting(std::uint64_t inner_count, std::uint32_t n,
                               std::uint64_t hitter_size) {
  return inner_count * (static_cast<std::uint64_t>(n) + 1) * hitter_size;
}

SpliceClosurePlan::SpliceClosurePlan(const QuerySet& inner_plan,
                                     const QuerySet& hitter)
    : n_(inner_plan.n) {
  if (hitter.n != n_ || hitter.d != inner_plan.d) {
    throw std::invalid_argument("plan and hitter shapes differ");
  }
  inner_prefixes_.resize(n_ + 1);
  hitter_prefixes_.resize(n_ + 1);
  for (std::uint32_t len = 0; len <= n_; ++len) {
    std::set<Word> ip, hp;
    for (const Word& x : inner_plan.strings) ip.insert(x.substr(0, len));
    for (const Word& y : hitter.strings) hp.insert(y.substr(0, len));
    inner_prefixes_[len].assign(ip.begin(), ip.end());
    hitter_prefixes_[len].assign(hp.begin(), hp.end());
  }
}

bool SpliceClosurePlan::contains(const Word& x) const {
  if (x.size() != n_) return false;
  for (std::uint32_t i = 0; i <= n_; ++i) {
    const Word head = x.substr(0, i);
    const Word tail = x.substr(i);
    const auto& heads = inner_prefixes_[i];
    const auto& tails = hitter_prefixes_[n_ - i];
    if (std::binary_search(heads.begin(), heads.end(), head) &&
        std::binary_search(tails.begin(), tails.end(), tail)) {
      return true;
    }
  }
  return false;
}

SampleRun unbounded_sampler(OracleSession& base, const ParameterSchedule& schedule,
                            const InnerSamplerFactory& factory,
                            const HitterSource& hitter_source) {
  if (base.n() != schedule.n) {
    throw std::invalid_argument("oracle length does not match the schedule");
  }
  const QuerySet hitter = hitter_source(schedule);
  if (hitter.empty()) throw std::invalid_argument("hitter source yielded an empty set");
  if (hitter.n != base.n() || hitter.d != base.d()) {
    throw std::invalid_argument("hitter shape does not match the oracle");
  }

  SampleRun run;
  run.hitter_size = hitter.size();
  run.inner_width = schedule.inner_width(hitter.size());

  const auto inner =
      factory(schedule.n, base.d(), run.inner_width, schedule.epsilon_inner);
  run.inner_kind = inner->describe();

  OracleSession restricted(base.n(), base.d(), [&](const Word& x) {
    return eval_hit_blackbox(base, hitter, x);
  });
  if (const auto plan = inner->query_plan()) {
    // Nonadaptive path: the complete set of base queries is determined by
    // (plan, hitter) alone; registering it first makes any dependence on
    // answers a hard failure.
    base.declare_plan(std::make_shared<SpliceClosurePlan>(*plan, hitter));
    restricted.declare_plan(
        std::set<Word>(plan->strings.begin(), plan->strings.end()));
    run.plan_preregistered = true;
  }

  run.raw_estimate = inner->run(restricted);
  run.estimate = run.raw_estimate;
  if (run.estimate < 0) {
    run.estimate = 0;
    run.clamped = true;
  } else if (run.estimate > 1) {
    run.estimate = 1;
    run.clamped = true;
  }
  run.inner_distinct = restricted.distinct_query_count();
  run.base_distinct = base.distinct_query_count();
  run.accounting_bound =
      query_accounting(run.inner_distinct, schedule.n, hitter.size());
  if (run.base_distinct > run.accounting_bound) {
    throw std::logic_error("base query count exceeded the accounting bound");
  }
  return run;
}

InnerSamplerFactory full_cube_factory() {
  return [](std::uint32_t n, std::uint32_t d, std::uint64_t /*width*/,
            const Rational& /*eps*/) -> std::unique_ptr<DeterministicSampler> {
    return std::make_unique<AveragingSampler>(QuerySet::full_cube(n, d));
  };
}

InnerSamplerFactory random_averaging_factory(std::uint64_t seed, std::uint64_t size) {
  return [seed, size](std::uint32_t n, std::uint32_t d, std::uint64_t width,
                      const Rational& eps) -> std::unique_ptr<DeterministicSampler> {
    const std::uint64_t draws =
        size != 0 ? size
                  : plan_size_heuristic(n, static_cast<std::uint32_t>(
                                               std::min<std::uint64_t>(width, 1u << 20)),
                                        d, eps);
    Rng rng = Rng(seed).substream("inner-sampler");
    return std::make_unique<AveragingSampler>(random_query_set(n, d, draws, rng).set);
  };
}

InnerSamplerFactory fixed_plan_factory(QuerySet plan) {
  return [plan = std::move(plan)](std::uint32_t n, std::uint32_t d,
                                  std::uint64_t /*width*/, const Rational& /*eps*/)
             -> std::unique_ptr<DeterministicSampler> {
    if (plan.n != n || plan.d != d) {
      throw std::invalid_argument("fixed plan shape does not match the request");
    }
    return std::make_unique<AveragingSampler>(plan);
  };
}

}  // namespace pbpsamp
