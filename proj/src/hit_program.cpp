#include "pbpsamp/hit_program.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pbpsamp {

std::uint64_t width_bound(std::uint64_t hitter_size, std::uint32_t n,
                          std::uint64_t accept_count) {
  return hitter_size * (static_cast<std::uint64_t>(n) + 2) * accept_count;
}

namespace {

void check_hit_inputs(const BranchingProgram& b, const QuerySet& h) {
  if (h.empty()) throw std::invalid_argument("hitter must be nonempty");
  if (h.n != b.n || h.d != b.d) {
    throw std::invalid_argument("hitter shape does not match the program");
  }
  if (b.accept.empty()) {
    throw std::invalid_argument("program needs at least one accept state");
  }
  if (!check_permutation(b).is_permutation) {
    throw std::invalid_argument("induced hit program requires a permutation program");
  }
}

/// inv[r][t][sigma] = the unique s with transitions[r][s][sigma] = t.
std::vector<std::vector<std::vector<std::uint32_t>>> inverse_tables(
    const BranchingProgram& b) {
  const std::uint32_t w = b.widths[0];
  std::vector<std::vector<std::vector<std::uint32_t>>> inv(
      b.n, std::vector<std::vector<std::uint32_t>>(
               w, std::vector<std::uint32_t>(b.d, 0)));
  for (std::uint32_t r = 0; r < b.n; ++r) {
    for (std::uint32_t s = 0; s < w; ++s) {
      for (std::uint32_t sigma = 0; sigma < b.d; ++sigma) {
        inv[r][b.transitions[r][s][sigma]][sigma] = s;
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> compute_hit_states(
    const BranchingProgram& b, const QuerySet& h) {
  check_hit_inputs(b, h);
  const auto inv = inverse_tables(b);
  std::vector<std::set<std::uint32_t>> kept(b.n + 1);
  // The walk from layer i along y consumes y[r-i-1] at transition r; walking
  // backward from an accept state inverts those steps, and the permutation
  // property makes each backward step unique.
  for (const Word& y : h.strings) {
    for (std::uint32_t i = 0; i <= b.n; ++i) {
      for (std::uint32_t u : b.accept) {
        std::uint32_t v = u;
        for (std::uint32_t r = b.n; r > i; --r) {
          v = inv[r - 1][v][symbol_at(y, r - i - 1)];
        }
        kept[i].insert(v);
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> out(b.n + 1);
  const std::uint64_t per_layer_bound = h.size() * b.accept.size();
  for (std::uint32_t i = 0; i <= b.n; ++i) {
    if (kept[i].size() > per_layer_bound) {
      throw std::logic_error("per-layer hit-state bound violated");
    }
    out[i].assign(kept[i].begin(), kept[i].end());
  }
  return out;
}

HitProgram build_hit_program(const BranchingProgram& b, const QuerySet& h) {
  check_hit_inputs(b, h);
  HitProgram hp;
  hp.base = &b;
  hp.hitter = h;
  hp.hit_states = compute_hit_states(b, h);

  std::uint32_t padded = 0;
  for (const auto& layer : hp.hit_states) {
    padded = std::max(padded, static_cast<std::uint32_t>(layer.size()));
  }
  hp.padded_size = padded;
  const std::uint32_t k = padded;
  const std::uint32_t width = (b.n + 2) * k;
  if (width > width_bound(h.size(), b.n, b.accept.size())) {
    throw std::logic_error("total width bound violated");
  }

  BranchingProgram& out = hp.explicit_bp;
  out.n = b.n;
  out.d = b.d;
  out.widths.assign(b.n + 1, width);

  const auto sink_index = [k](std::uint32_t j, std::uint32_t v) {
    return k + j * k + v;
  };
  const auto kept_slot = [&](std::uint32_t layer,
                             std::uint32_t state) -> std::optional<std::uint32_t> {
    const auto& ks = hp.hit_states[layer];
    const auto it = std::lower_bound(ks.begin(), ks.end(), state);
    if (it == ks.end() || *it != state) return std::nullopt;
    return static_cast<std::uint32_t>(it - ks.begin());
  };

  out.transitions.assign(
      b.n, std::vector<std::vector<std::uint32_t>>(
               width, std::vector<std::uint32_t>(b.d, 0)));
  std::vector<bool> used(width);
  for (std::uint32_t r = 0; r < b.n; ++r) {
    auto& table = out.transitions[r];
    for (std::uint32_t sigma = 0; sigma < b.d; ++sigma) {
      std::fill(used.begin(), used.end(), false);
      // Kept block: follow B while the target stays kept; otherwise drop
      // into this layer's sink, tagged by source slot. Padding slots always
      // drop (their transitions must not lead into the next kept block).
      const auto& real_states = hp.hit_states[r];
      for (std::uint32_t slot = 0; slot < k; ++slot) {
        std::uint32_t target;
        if (slot < real_states.size()) {
          const std::uint32_t next = b.transitions[r][real_states[slot]][sigma];
          if (auto next_slot = kept_slot(r + 1, next)) {
            target = *next_slot;
          } else {
            target = sink_index(r, slot);
          }
        } else {
          target = sink_index(r, slot);
        }
        table[slot][sigma] = target;
        used[target] = true;
      }
      // Sinks of other layers persist unchanged.
      for (std::uint32_t j = 0; j <= b.n; ++j) {
        if (j == r) continue;
        for (std::uint32_t v = 0; v < k; ++v) {
          const std::uint32_t idx = sink_index(j, v);
          table[idx][sigma] = idx;
          used[idx] = true;
        }
      }
      // Complete this layer's sink sources greedily: ascending unmatched
      // sources to ascending unmatched targets.
      std::uint32_t cursor = 0;
      for (std::uint32_t v = 0; v < k; ++v) {
        while (used[cursor]) ++cursor;
        table[sink_index(r, v)][sigma] = cursor;
        used[cursor] = true;
      }
    }
  }

  if (auto slot = kept_slot(0, b.start)) {
    out.start = *slot;
  } else {
    // Start was cut: the induced program rejects everything. Park the start
    // on the sink block that is never rewired.
    out.start = sink_index(b.n, 0);
  }
  // K_n is exactly the accept set, in ascending order, at slots 0..a-1.
  out.accept.resize(b.accept.size());
  for (std::uint32_t i = 0; i < b.accept.size(); ++i) out.accept[i] = i;

  if (!check_permutation(out).is_permutation) {
    throw std::logic_error("induced program lost the permutation property");
  }

  hp.state_map.assign(b.n + 1, {});
  for (std::uint32_t layer = 0; layer <= b.n; ++layer) {
    auto& tags = hp.state_map[layer];
    tags.resize(width);
    const auto& real_states = hp.hit_states[layer];
    for (std::uint32_t slot = 0; slot < k; ++slot) {
      if (slot < real_states.size()) {
        tags[slot] = {HitStateTag::Kind::Real, real_states[slot], 0};
      } else {
        tags[slot] = {HitStateTag::Kind::Padding, slot, 0};
      }
    }
    for (std::uint32_t j = 0; j <= b.n; ++j) {
      for (std::uint32_t v = 0; v < k; ++v) {
        tags[sink_index(j, v)] = {HitStateTag::Kind::Sink, v, j};
      }
    }
  }
  return hp;
}

int eval_hit_blackbox(OracleSession& session, const QuerySet& h, const Word& x) {
  if (h.empty()) throw std::invalid_argument("hitter must be nonempty");
  if (h.n != session.n() || h.d != session.d()) {
    throw std::invalid_argument("hitter shape does not match the oracle");
  }
  check_word(x, session.n(), session.d());
  const std::uint32_t n = session.n();
  // With a declared plan the full splice closure is queried so that the
  // touched set never depends on the answers; otherwise short-circuit.
  const bool exhaustive = session.has_plan();
  int result = 1;
  for (std::uint32_t i = 0; i <= n; ++i) {
    int any = 0;
    for (const Word& y : h.strings) {
      any |= session.query(splice_prefixes(x, y, i));
      if (any && !exhaustive) break;
    }
    if (!any) {
      result = 0;
      if (!exhaustive) return 0;
    }
  }
  return result;
}

Rational hit_approx_error(const BranchingProgram& b, const QuerySet& h) {
  const HitProgram hp = build_hit_program(b, h);
  const Rational restricted = accept_prob_exact(hp.explicit_bp).to_rational();
  const Rational original = accept_prob_exact(b).to_rational();
  return rational_abs(restricted - original);
}

HitterCoverage hitter_covers_program(const BranchingProgram& b, const QuerySet& h,
                                     const Rational& threshold) {
  check_hit_inputs(b, h);
  const auto inv = inverse_tables(b);
  const std::uint32_t w = b.widths[0];
  const BigInt num = boost::multiprecision::numerator(threshold);
  const BigInt den = boost::multiprecision::denominator(threshold);

  for (std::uint32_t u : b.accept) {
    // Which (layer, state) pairs does some hitter element connect to u?
    std::vector<std::set<std::uint32_t>> reached(b.n + 1);
    for (const Word& y : h.strings) {
      for (std::uint32_t i = 0; i <= b.n; ++i) {
        std::uint32_t v = u;
        for (std::uint32_t r = b.n; r > i; --r) {
          v = inv[r - 1][v][symbol_at(y, r - i - 1)];
        }
        reached[i].insert(v);
      }
    }
    // Exact reach counts to u, walked backward one layer at a time:
    // count[v] over words of length n-i, denominator d^(n-i).
    std::vector<BigInt> count(w, BigInt(0));
    count[u] = 1;
    BigInt denom_power = 1;  // d^(n-i)
    for (std::uint32_t i = b.n + 1; i-- > 0;) {
      if (i < b.n) {
        std::vector<BigInt> prev(w, BigInt(0));
        for (std::uint32_t s = 0; s < w; ++s) {
          for (std::uint32_t sigma = 0; sigma < b.d; ++sigma) {
            prev[s] += count[b.transitions[i][s][sigma]];
          }
        }
        count = std::move(prev);
        denom_power *= b.d;
      }
      for (std::uint32_t v = 0; v < w; ++v) {
        // count[v]/denom_power > threshold, cross-multiplied.
        if (count[v] * den > num * denom_power && reached[i].count(v) == 0) {
          return {false, i, v, u};
        }
      }
    }
  }
  return {};
}

}  // namespace pbpsamp
