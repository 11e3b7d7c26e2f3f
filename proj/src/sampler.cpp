#include "pbpsamp/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace pbpsamp {

QuerySet QuerySet::from_words(std::uint32_t n, std::uint32_t d,
                              std::vector<Word> words) {
  check_alphabet(d);
  for (const Word& w : words) check_word(w, n, d);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  QuerySet q;
  q.n = n;
  q.d = d;
  q.strings = std::move(words);
  return q;
}

QuerySet QuerySet::full_cube(std::uint32_t n, std::uint32_t d) {
  const std::uint64_t total = word_space_size(n, d);
  if (total == 0 || total > enumeration_budget()) {
    throw BudgetExceeded(boost::multiprecision::pow(BigInt(d), n));
  }
  QuerySet q;
  q.n = n;
  q.d = d;
  q.strings = all_words(n, d);
  return q;
}

bool QuerySet::contains(const Word& x) const {
  return std::binary_search(strings.begin(), strings.end(), x);
}

RandomQueryDraw random_query_set(std::uint32_t n, std::uint32_t d,
                                 std::uint64_t size, Rng& rng) {
  if (size == 0) throw std::invalid_argument("query set size must be >= 1");
  check_alphabet(d);
  // Deduplicate as we draw: the distinct set is capped by the word space,
  // so huge draw counts stay cheap.
  std::set<Word> distinct;
  for (std::uint64_t i = 0; i < size; ++i) {
    distinct.insert(uniform_word(n, d, rng));
  }
  QuerySet q;
  q.n = n;
  q.d = d;
  q.strings.assign(distinct.begin(), distinct.end());
  return RandomQueryDraw{std::move(q), size};
}

Rational averaging_estimate(const QuerySet& q, OracleSession& session) {
  if (q.empty()) throw std::invalid_argument("averaging over an empty query set");
  if (q.n != session.n() || q.d != session.d()) {
    throw std::invalid_argument("query set shape does not match the oracle");
  }
  std::uint64_t hits = 0;
  for (const Word& x : q.strings) {
    if (session.query(x)) ++hits;
  }
  return Rational(hits, q.size());
}

AveragingSampler::AveragingSampler(QuerySet plan) : plan_(std::move(plan)) {
  if (plan_.empty()) throw std::invalid_argument("averaging sampler needs a nonempty plan");
}

std::string AveragingSampler::describe() const {
  return "averaging(" + std::to_string(plan_.size()) + ")";
}

Rational ParityProbeSampler::run(OracleSession& session) const {
  if (session.n() != n_ || session.d() != 2) {
    throw std::invalid_argument("parity probe expects a binary oracle of matching length");
  }
  const Word zeros(n_, '0');
  const int at_zero = session.query(zeros);
  Word z(n_, '0');
  bool nonzero = false;
  for (std::uint32_t i = 0; i < n_; ++i) {
    Word unit = zeros;
    unit[i] = '1';
    if (session.query(unit) != at_zero) {
      z[i] = '1';
      nonzero = true;
    }
  }
  if (!nonzero) return Rational(at_zero);
  session.query(z);  // depends on the answers above: the adaptive step
  return Rational(1, 2);
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

namespace {

/// Drives `check` over the whole family, or over a seeded random sub-family
/// when enumeration exceeds the budget.
template <typename Check>
VerifyVerdict for_each_member(const FamilySpec& family, const VerifyOptions& options,
                              Check&& check) {
  VerifyVerdict verdict;
  verdict.family_total = family_size(family);
  const std::uint64_t budget =
      options.budget == 0 ? enumeration_budget() : options.budget;
  verdict.ok = true;
  if (verdict.family_total <= budget) {
    verdict.exhaustive = true;
    FamilyEnumerator en(family, budget);
    while (auto b = en.next()) {
      ++verdict.checked;
      if (!check(*b)) {
        verdict.ok = false;
        verdict.counterexample = std::move(*b);
        break;
      }
    }
  } else {
    verdict.exhaustive = false;
    Rng rng = Rng(options.sample_seed).substream("verify-subfamily");
    const std::uint64_t count =
        options.sample_count == 0 ? budget : options.sample_count;
    for (std::uint64_t i = 0; i < count; ++i) {
      BranchingProgram b = random_family_member(family, rng);
      ++verdict.checked;
      if (!check(b)) {
        verdict.ok = false;
        verdict.counterexample = std::move(b);
        break;
      }
    }
  }
  return verdict;
}

}  // namespace

VerifyVerdict verify_sampler(const DeterministicSampler& sampler,
                             const FamilySpec& family, const Rational& eps,
                             const VerifyOptions& options) {
  return for_each_member(family, options, [&](const BranchingProgram& b) {
    OracleSession session = OracleSession::over_program(b);
    if (auto plan = sampler.query_plan()) {
      session.declare_plan(
          std::set<Word>(plan->strings.begin(), plan->strings.end()));
    }
    const Rational estimate = sampler.run(session);
    const Rational truth = accept_prob_exact(b).to_rational();
    return rational_abs(estimate - truth) <= eps;
  });
}

VerifyVerdict verify_sampler(const QuerySet& q, const FamilySpec& family,
                             const Rational& eps, const VerifyOptions& options) {
  return verify_sampler(AveragingSampler(q), family, eps, options);
}

VerifyVerdict verify_hitter(const QuerySet& h, const FamilySpec& family,
                            const Rational& eps, const VerifyOptions& options) {
  return for_each_member(family, options, [&](const BranchingProgram& b) {
    for (const Word& x : h.strings) {
      if (accepts(b, x)) return true;
    }
    return accept_prob_exact(b).to_rational() <= eps;
  });
}

QuerySet hitter_from_sampler(const DeterministicSampler& sampler,
                             std::uint32_t n, std::uint32_t d) {
  OracleSession zero_session(n, d, [](const Word&) { return 0; });
  if (auto plan = sampler.query_plan()) {
    zero_session.declare_plan(
        std::set<Word>(plan->strings.begin(), plan->strings.end()));
  }
  sampler.run(zero_session);
  const auto words = zero_session.query_set();
  return QuerySet::from_words(n, d, {words.begin(), words.end()});
}

// ---------------------------------------------------------------------------
// Hitter search.
// ---------------------------------------------------------------------------

namespace {

struct MaskSet {
  std::vector<std::uint64_t> blocks;
  bool operator<(const MaskSet& o) const { return blocks < o.blocks; }
};

bool next_combination(std::vector<std::size_t>& idx, std::size_t total) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < total - (k - i)) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

HitterSearchResult minimal_hitter_search(const FamilySpec& family,
                                         const Rational& eps,
                                         std::uint64_t subset_budget,
                                         std::uint64_t family_budget) {
  const std::uint64_t words_total = word_space_size(family.n, family.d);
  const std::uint64_t budget =
      family_budget == 0 ? enumeration_budget() : family_budget;
  if (words_total == 0 || words_total > budget) {
    throw BudgetExceeded(BigInt(words_total));
  }
  const std::vector<Word> words = all_words(family.n, family.d);

  // Accepting set of every above-threshold program, as a bitmask over the
  // word space; duplicates collapse (many programs compute the same function).
  std::vector<MaskSet> targets;
  {
    std::set<MaskSet> dedup;
    FamilyEnumerator en(family, budget);
    const std::size_t nblocks = (words.size() + 63) / 64;
    while (auto b = en.next()) {
      if (accept_prob_exact(*b).to_rational() <= eps) continue;
      MaskSet mask;
      mask.blocks.assign(nblocks, 0);
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (accepts(*b, words[i])) mask.blocks[i / 64] |= 1ULL << (i % 64);
      }
      dedup.insert(std::move(mask));
    }
    targets.assign(dedup.begin(), dedup.end());
  }

  HitterSearchResult result;
  result.set.n = family.n;
  result.set.d = family.d;
  if (targets.empty()) {
    result.minimal_certified = true;  // nothing to hit
    return result;
  }

  // Greedy cover: repeatedly take the word hitting the most unhit functions,
  // smallest word index on ties.
  std::vector<bool> covered(targets.size(), false);
  std::vector<std::size_t> chosen;
  std::size_t remaining = targets.size();
  while (remaining > 0) {
    std::size_t best_word = words.size();
    std::size_t best_gain = 0;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      std::size_t gain = 0;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!covered[t] &&
            (targets[t].blocks[wi / 64] >> (wi % 64) & 1)) {
          ++gain;
        }
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_word = wi;
      }
    }
    if (best_gain == 0) {
      // Some function accepts nothing in the word space: impossible, since
      // its acceptance probability is positive. Guard anyway.
      throw std::logic_error("uncoverable function in hitter search");
    }
    chosen.push_back(best_word);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!covered[t] && (targets[t].blocks[best_word / 64] >> (best_word % 64) & 1)) {
        covered[t] = true;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());

  // Exhaustive minimality check for small word spaces: try every subset of
  // size < |greedy|; adopt the first smaller cover found.
  bool certified = false;
  if (words.size() <= 64) {
    const auto covers = [&](const std::vector<std::size_t>& subset) {
      for (const MaskSet& t : targets) {
        bool hit = false;
        for (std::size_t wi : subset) {
          if (t.blocks[0] >> wi & 1) {
            hit = true;
            break;
          }
        }
        if (!hit) return false;
      }
      return true;
    };
    std::uint64_t combos_tried = 0;
    bool within_budget = true;
    std::optional<std::vector<std::size_t>> smaller;
    for (std::size_t k = 1; k < chosen.size() && !smaller && within_budget; ++k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      do {
        if (++combos_tried > subset_budget) {
          within_budget = false;
          break;
        }
        if (covers(idx)) {
          smaller = idx;
          break;
        }
      } while (next_combination(idx, words.size()));
    }
    if (smaller) {
      chosen = *smaller;
      certified = within_budget;
    } else {
      certified = within_budget;
    }
  }

  std::vector<Word> picked;
  picked.reserve(chosen.size());
  for (std::size_t wi : chosen) picked.push_back(words[wi]);
  result.set = QuerySet::from_words(family.n, family.d, std::move(picked));
  result.minimal_certified = certified;
  return result;
}

// ---------------------------------------------------------------------------
// Sizing helpers.
// ---------------------------------------------------------------------------

std::uint64_t description_bits(std::uint32_t n, std::uint32_t w, std::uint32_t d) {
  std::uint32_t bits_per_entry = 1;
  while ((1ULL << bits_per_entry) < w) ++bits_per_entry;
  return static_cast<std::uint64_t>(n) * w * d * bits_per_entry + 64;
}

std::uint64_t plan_size_heuristic(std::uint32_t n, std::uint32_t w,
                                  std::uint32_t d, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must be in (0,1)");
  const Rational size = Rational(3 * description_bits(n, w, d)) / eps;
  const BigInt num = boost::multiprecision::numerator(size);
  const BigInt den = boost::multiprecision::denominator(size);
  const BigInt q = (num + den - 1) / den;
  return q.convert_to<std::uint64_t>();
}

std::uint64_t chernoff_size_bound(std::uint32_t n, std::uint32_t w,
                                  std::uint32_t d, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must be in (0,1)");
  const double k = static_cast<double>(description_bits(n, w, d));
  const double e = eps.convert_to<double>();
  return static_cast<std::uint64_t>(std::ceil(3.0 * (k + 1.0) * std::log(2.0) / (e * e)));
}

}  // namespace pbpsamp
