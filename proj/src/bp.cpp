#include "pbpsamp/bp.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

namespace pbpsamp {

void validate_program(const BranchingProgram& b) {
  check_alphabet(b.d);
  if (b.widths.size() != static_cast<std::size_t>(b.n) + 1) {
    throw std::invalid_argument("widths must have n+1 entries");
  }
  for (std::uint32_t w : b.widths) {
    if (w == 0) throw std::invalid_argument("layer width must be positive");
  }
  if (b.transitions.size() != b.n) {
    throw std::invalid_argument("transitions must have n layers");
  }
  for (std::uint32_t r = 0; r < b.n; ++r) {
    const auto& layer = b.transitions[r];
    if (layer.size() != b.widths[r]) {
      throw std::invalid_argument("layer " + std::to_string(r + 1) +
                                  " table has wrong source count");
    }
    for (const auto& row : layer) {
      if (row.size() != b.d) {
        throw std::invalid_argument("layer " + std::to_string(r + 1) +
                                    " table has wrong symbol count");
      }
      for (std::uint32_t target : row) {
        if (target >= b.widths[r + 1]) {
          throw std::invalid_argument("transition target out of range in layer " +
                                      std::to_string(r + 1));
        }
      }
    }
  }
  if (b.start >= b.widths[0]) throw std::invalid_argument("start state out of range");
  for (std::size_t i = 0; i < b.accept.size(); ++i) {
    if (b.accept[i] >= b.widths[b.n]) {
      throw std::invalid_argument("accept state out of range");
    }
    if (i > 0 && b.accept[i] <= b.accept[i - 1]) {
      throw std::invalid_argument("accept list must be sorted and duplicate-free");
    }
  }
}

std::uint32_t evaluate(const BranchingProgram& b, std::uint32_t layer,
                       std::uint32_t state, const Word& x) {
  if (layer > b.n) throw std::out_of_range("layer out of range");
  if (layer + x.size() > b.n) {
    throw std::out_of_range("word runs past the final layer");
  }
  if (state >= b.widths[layer]) throw std::out_of_range("state out of range");
  std::uint32_t v = state;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::uint8_t sigma = symbol_at(x, k);
    if (sigma >= b.d) throw std::invalid_argument("symbol out of alphabet");
    v = b.transitions[layer + k][v][sigma];
  }
  return v;
}

int accepts(const BranchingProgram& b, const Word& x) {
  if (x.size() != b.n) {
    throw std::invalid_argument("input length " + std::to_string(x.size()) +
                                " does not match program length " +
                                std::to_string(b.n));
  }
  const std::uint32_t v = evaluate(b, 0, b.start, x);
  return std::binary_search(b.accept.begin(), b.accept.end(), v) ? 1 : 0;
}

DyadicProb accept_prob_exact(const BranchingProgram& b) {
  // mass[v] = number of length-r words leading start -> v; denominator d^r.
  std::vector<BigInt> mass(b.widths[0], BigInt(0));
  mass[b.start] = 1;
  for (std::uint32_t r = 0; r < b.n; ++r) {
    std::vector<BigInt> next(b.widths[r + 1], BigInt(0));
    for (std::uint32_t s = 0; s < b.widths[r]; ++s) {
      if (mass[s] == 0) continue;
      for (std::uint32_t sigma = 0; sigma < b.d; ++sigma) {
        next[b.transitions[r][s][sigma]] += mass[s];
      }
    }
    mass = std::move(next);
  }
  BigInt accepted = 0;
  for (std::uint32_t v : b.accept) accepted += mass[v];
  return DyadicProb(accepted, b.n, b.d);
}

PermutationFlag check_permutation(const BranchingProgram& b) {
  const std::uint32_t w = b.widths[0];
  for (std::uint32_t x : b.widths) {
    if (x != w) return {false};
  }
  std::vector<bool> seen(w);
  for (std::uint32_t r = 0; r < b.n; ++r) {
    for (std::uint32_t sigma = 0; sigma < b.d; ++sigma) {
      std::fill(seen.begin(), seen.end(), false);
      for (std::uint32_t s = 0; s < w; ++s) {
        const std::uint32_t t = b.transitions[r][s][sigma];
        if (seen[t]) return {false};
        seen[t] = true;
      }
    }
  }
  return {true};
}

// ---------------------------------------------------------------------------
// Families.
// ---------------------------------------------------------------------------

namespace {

BigInt factorial(std::uint32_t w) {
  BigInt f = 1;
  for (std::uint32_t i = 2; i <= w; ++i) f *= i;
  return f;
}

BigInt endpoint_count(const FamilySpec& spec) {
  switch (spec.endpoints.kind) {
    case EndpointPolicy::Kind::Fixed:
      return 1;
    case EndpointPolicy::Kind::AllStartsSingleAccept:
      return BigInt(spec.w) * spec.w;
    case EndpointPolicy::Kind::AllStartsNonemptyAccept:
      return BigInt(spec.w) * ((BigInt(1) << spec.w) - 1);
  }
  return 0;
}

std::vector<std::uint32_t> accept_from_code(const FamilySpec& spec,
                                            std::uint64_t code) {
  switch (spec.endpoints.kind) {
    case EndpointPolicy::Kind::Fixed:
      return spec.endpoints.accept;
    case EndpointPolicy::Kind::AllStartsSingleAccept:
      return {static_cast<std::uint32_t>(code)};
    case EndpointPolicy::Kind::AllStartsNonemptyAccept: {
      std::vector<std::uint32_t> acc;
      for (std::uint32_t v = 0; v < spec.w; ++v) {
        if (code & (1ULL << v)) acc.push_back(v);
      }
      return acc;
    }
  }
  return {};
}

std::uint64_t first_accept_code(const FamilySpec& spec) {
  return spec.endpoints.kind == EndpointPolicy::Kind::AllStartsNonemptyAccept ? 1 : 0;
}

}  // namespace

BigInt family_size(const FamilySpec& spec) {
  check_alphabet(spec.d);
  if (spec.w == 0) throw std::invalid_argument("family width must be positive");
  BigInt structures;
  if (spec.permutation_only) {
    structures = boost::multiprecision::pow(factorial(spec.w),
                                            spec.d * spec.n);
  } else {
    structures = boost::multiprecision::pow(
        BigInt(spec.w), static_cast<unsigned>(spec.w) * spec.d * spec.n);
  }
  return structures * endpoint_count(spec);
}

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("PBPSAMP_ENUM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1ULL << 20;
}

FamilyEnumerator::FamilyEnumerator(FamilySpec spec,
                                   std::optional<std::uint64_t> budget)
    : spec_(std::move(spec)) {
  const BigInt size = family_size(spec_);
  const std::uint64_t limit = budget.value_or(enumeration_budget());
  if (size > limit) throw BudgetExceeded(size);
  if (spec_.endpoints.kind == EndpointPolicy::Kind::Fixed) {
    BranchingProgram probe;
    probe.n = spec_.n;
    probe.d = spec_.d;
    probe.widths.assign(spec_.n + 1, spec_.w);
    probe.start = spec_.endpoints.start;
    probe.accept = spec_.endpoints.accept;
    if (probe.start >= spec_.w) throw std::invalid_argument("fixed start out of range");
    for (std::uint32_t v : probe.accept) {
      if (v >= spec_.w) throw std::invalid_argument("fixed accept state out of range");
    }
  }
  if (spec_.permutation_only) {
    // Identity columns: lexicographically first permutation per (layer, symbol).
    std::vector<std::uint32_t> ident(spec_.w);
    std::iota(ident.begin(), ident.end(), 0);
    columns_.assign(static_cast<std::size_t>(spec_.n) * spec_.d, ident);
  } else {
    flat_.assign(static_cast<std::size_t>(spec_.n) * spec_.w * spec_.d, 0);
  }
  cur_start_ = spec_.endpoints.kind == EndpointPolicy::Kind::Fixed
                   ? spec_.endpoints.start
                   : 0;
  cur_accept_code_ = first_accept_code(spec_);
}

bool FamilyEnumerator::advance_endpoints() {
  switch (spec_.endpoints.kind) {
    case EndpointPolicy::Kind::Fixed:
      return false;
    case EndpointPolicy::Kind::AllStartsSingleAccept:
      if (++cur_accept_code_ < spec_.w) return true;
      cur_accept_code_ = 0;
      break;
    case EndpointPolicy::Kind::AllStartsNonemptyAccept:
      if (++cur_accept_code_ < (1ULL << spec_.w)) return true;
      cur_accept_code_ = 1;
      break;
  }
  if (++cur_start_ < spec_.w) return true;
  cur_start_ = 0;
  return false;
}

bool FamilyEnumerator::advance_structure() {
  if (spec_.permutation_only) {
    for (std::size_t i = columns_.size(); i-- > 0;) {
      if (std::next_permutation(columns_[i].begin(), columns_[i].end())) return true;
      // wrapped back to identity; carry into the previous column
    }
    return false;
  }
  for (std::size_t i = flat_.size(); i-- > 0;) {
    if (++flat_[i] < spec_.w) return true;
    flat_[i] = 0;
  }
  return false;
}

BranchingProgram FamilyEnumerator::materialize() const {
  BranchingProgram b;
  b.n = spec_.n;
  b.d = spec_.d;
  b.widths.assign(spec_.n + 1, spec_.w);
  b.transitions.assign(
      spec_.n, std::vector<std::vector<std::uint32_t>>(
                   spec_.w, std::vector<std::uint32_t>(spec_.d, 0)));
  if (spec_.permutation_only) {
    for (std::uint32_t r = 0; r < spec_.n; ++r) {
      for (std::uint32_t sigma = 0; sigma < spec_.d; ++sigma) {
        const auto& col = columns_[static_cast<std::size_t>(r) * spec_.d + sigma];
        for (std::uint32_t s = 0; s < spec_.w; ++s) {
          b.transitions[r][s][sigma] = col[s];
        }
      }
    }
  } else {
    std::size_t k = 0;
    for (std::uint32_t r = 0; r < spec_.n; ++r) {
      for (std::uint32_t s = 0; s < spec_.w; ++s) {
        for (std::uint32_t sigma = 0; sigma < spec_.d; ++sigma) {
          b.transitions[r][s][sigma] = flat_[k++];
        }
      }
    }
  }
  b.start = cur_start_;
  b.accept = accept_from_code(spec_, cur_accept_code_);
  return b;
}

std::optional<BranchingProgram> FamilyEnumerator::next() {
  if (done_) return std::nullopt;
  BranchingProgram out = materialize();
  if (!advance_endpoints() && !advance_structure()) done_ = true;
  return out;
}

BranchingProgram random_family_member(const FamilySpec& spec, Rng& rng) {
  check_alphabet(spec.d);
  BranchingProgram b;
  b.n = spec.n;
  b.d = spec.d;
  b.widths.assign(spec.n + 1, spec.w);
  b.transitions.assign(
      spec.n, std::vector<std::vector<std::uint32_t>>(
                  spec.w, std::vector<std::uint32_t>(spec.d, 0)));
  for (std::uint32_t r = 0; r < spec.n; ++r) {
    for (std::uint32_t sigma = 0; sigma < spec.d; ++sigma) {
      if (spec.permutation_only) {
        const auto col = rng.permutation(spec.w);
        for (std::uint32_t s = 0; s < spec.w; ++s) b.transitions[r][s][sigma] = col[s];
      } else {
        for (std::uint32_t s = 0; s < spec.w; ++s) {
          b.transitions[r][s][sigma] = static_cast<std::uint32_t>(rng.below(spec.w));
        }
      }
    }
  }
  switch (spec.endpoints.kind) {
    case EndpointPolicy::Kind::Fixed:
      b.start = spec.endpoints.start;
      b.accept = spec.endpoints.accept;
      break;
    case EndpointPolicy::Kind::AllStartsSingleAccept:
      b.start = static_cast<std::uint32_t>(rng.below(spec.w));
      b.accept = {static_cast<std::uint32_t>(rng.below(spec.w))};
      break;
    case EndpointPolicy::Kind::AllStartsNonemptyAccept: {
      b.start = static_cast<std::uint32_t>(rng.below(spec.w));
      const std::uint64_t mask = 1 + rng.below((1ULL << spec.w) - 1);
      for (std::uint32_t v = 0; v < spec.w; ++v) {
        if (mask & (1ULL << v)) b.accept.push_back(v);
      }
      break;
    }
  }
  return b;
}

}  // namespace pbpsamp
