#include "pbpsamp/adversary.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pbpsamp/gf2.hpp"

namespace pbpsamp {

namespace {

constexpr std::uint32_t kMaxPrefixBits = 20;  // width cap 2^20

void require_binary(const QuerySet& h) {
  if (h.d != 2) throw std::invalid_argument("adversaries require a binary alphabet");
}

/// Largest l >= 0 with 2^l <= value, or nullopt when value < 1.
std::optional<std::uint32_t> floor_log2(const Rational& value) {
  if (value < 1) return std::nullopt;
  std::uint32_t l = 0;
  Rational power = 2;
  while (power <= value) {
    ++l;
    power *= 2;
    if (l > 64) throw std::invalid_argument("log range too large");
  }
  return l;
}

/// Smallest L with 2^L >= value (value > 1).
std::uint32_t ceil_log2(const Rational& value) {
  std::uint32_t l = 0;
  Rational power = 1;
  while (power < value) {
    ++l;
    power *= 2;
    if (l > 64) throw std::invalid_argument("log range too large");
  }
  return l;
}

}  // namespace

std::optional<ParityWitness> parity_adversary(const QuerySet& h) {
  require_binary(h);
  const std::uint32_t n = h.n;
  if (n == 0) return std::nullopt;
  const auto z = gf2_nullspace_vector(Gf2System::from_words(h.strings, n));
  if (!z) return std::nullopt;

  // Width-2 permutation program for [z.x = 1]: flip the state on x_r where
  // z_r = 1, accept the odd state.
  BranchingProgram b;
  b.n = n;
  b.d = 2;
  b.widths.assign(n + 1, 2);
  b.transitions.assign(n, {{0, 0}, {1, 1}});
  for (std::uint32_t r = 0; r < n; ++r) {
    if (symbol_at(*z, r)) {
      b.transitions[r] = {{0, 1}, {1, 0}};
    }
  }
  b.start = 0;
  b.accept = {1};
  return ParityWitness{std::move(b), *z};
}

std::optional<BranchingProgram> prefix_adversary(const QuerySet& h,
                                                 std::uint64_t accept_count,
                                                 const Rational& eps) {
  require_binary(h);
  if (accept_count == 0) throw std::invalid_argument("need at least one accept state");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must be in (0,1)");

  const auto l_raw = floor_log2(Rational(accept_count) / (2 * eps));
  if (!l_raw) return std::nullopt;
  const std::uint32_t l = std::min<std::uint32_t>(*l_raw, h.n);
  if (l == 0) return std::nullopt;
  if (l > kMaxPrefixBits) throw BudgetExceeded(BigInt(1) << l);
  const std::uint64_t states = 1ULL << l;
  if (accept_count > states) return std::nullopt;

  std::set<std::uint64_t> taken;
  for (const Word& x : h.strings) {
    std::uint64_t value = 0;
    for (std::uint32_t j = 0; j < l; ++j) {
      value |= static_cast<std::uint64_t>(symbol_at(x, j)) << j;
    }
    taken.insert(value);
  }
  if (states - taken.size() < accept_count) return std::nullopt;

  // Counter program: layer r < l adds x_r * 2^r mod 2^l (a cyclic shift of
  // the state set, hence a permutation); later layers are the identity. The
  // state after layer l is the l-bit prefix value, uniform on uniform input.
  BranchingProgram b;
  b.n = h.n;
  b.d = 2;
  b.widths.assign(h.n + 1, static_cast<std::uint32_t>(states));
  b.transitions.assign(h.n, std::vector<std::vector<std::uint32_t>>(
                                states, std::vector<std::uint32_t>(2, 0)));
  for (std::uint32_t r = 0; r < h.n; ++r) {
    for (std::uint64_t s = 0; s < states; ++s) {
      b.transitions[r][s][0] = static_cast<std::uint32_t>(s);
      b.transitions[r][s][1] = static_cast<std::uint32_t>(
          r < l ? (s + (1ULL << r)) % states : s);
    }
  }
  b.start = 0;
  for (std::uint64_t s = 0; s < states && b.accept.size() < accept_count; ++s) {
    if (taken.count(s) == 0) b.accept.push_back(static_cast<std::uint32_t>(s));
  }
  return b;
}

std::optional<BranchingProgram> prefix_match_adversary(const QuerySet& h,
                                                       const Rational& eps) {
  require_binary(h);
  if (eps <= 0 || eps >= Rational(1, 2)) {
    throw std::invalid_argument("eps must be in (0, 1/2)");
  }
  const std::uint32_t l = ceil_log2(Rational(1) / eps) - 1;
  if (l == 0 || l > h.n) return std::nullopt;
  if (l > kMaxPrefixBits) throw BudgetExceeded(BigInt(1) << l);

  std::set<Word> prefixes;
  for (const Word& x : h.strings) prefixes.insert(x.substr(0, l));
  std::optional<Word> pattern;
  for (const Word& candidate : all_words(l, 2)) {
    if (prefixes.count(candidate) == 0) {
      pattern = candidate;
      break;
    }
  }
  if (!pattern) return std::nullopt;

  // Match-or-die: state 0 while the prefix agrees with the pattern, state 1
  // forever after a mismatch. Two sources share a target, so this is
  // deliberately not a permutation program.
  BranchingProgram b;
  b.n = h.n;
  b.d = 2;
  b.widths.assign(h.n + 1, 2);
  b.transitions.assign(h.n, {{0, 0}, {1, 1}});
  for (std::uint32_t r = 0; r < h.n; ++r) {
    if (r < l) {
      const std::uint8_t want = symbol_at(*pattern, r);
      b.transitions[r][0][want] = 0;
      b.transitions[r][0][1 - want] = 1;
      b.transitions[r][1] = {1, 1};
    }
  }
  b.start = 0;
  b.accept = {0};
  return b;
}

WitnessReport witness_verify(const BranchingProgram& b, const QuerySet& h,
                             const Rational& bound) {
  WitnessReport report;
  report.bound = bound;
  report.rejects_all = true;
  for (const Word& x : h.strings) {
    if (accepts(b, x)) {
      report.rejects_all = false;
      break;
    }
  }
  report.prob = accept_prob_exact(b).to_rational();
  report.is_permutation = check_permutation(b).is_permutation;
  report.width = b.width();
  report.ok = report.rejects_all && report.prob >= bound;
  return report;
}

}  // namespace pbpsamp
