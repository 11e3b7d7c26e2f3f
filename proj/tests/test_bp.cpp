#include <doctest.h>

#include <set>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/json_io.hpp"
#include "pbpsamp/rational.hpp"

#include "helpers.hpp"

using namespace pbpsamp;
using namespace pbpsamp::testing;

TEST_CASE("evaluate walks the transition tables") {
  const BranchingProgram ident = identity_program(4, 3);
  CHECK(evaluate(ident, 0, 2, "0110") == 2);
  CHECK(evaluate(ident, 0, 2, "") == 2);
  CHECK(evaluate(ident, 2, 1, "01") == 1);

  // Hand trace of the parity program on 101: flip, stay, flip.
  const BranchingProgram parity = parity_program(3, true);
  CHECK(evaluate(parity, 0, 0, "101") == 0);
  CHECK(evaluate(parity, 0, 1, "101") == 1);

  CHECK_THROWS_AS(evaluate(parity, 0, 2, "101"), std::out_of_range);
  CHECK_THROWS_AS(evaluate(parity, 0, 0, "1011"), std::out_of_range);
  CHECK_THROWS_AS(evaluate(parity, 4, 0, ""), std::out_of_range);
  CHECK_THROWS_AS(evaluate(parity, 0, 0, "121"), std::invalid_argument);
}

TEST_CASE("accepts matches hand-traced values") {
  const BranchingProgram parity = parity_program(3, true);
  CHECK(accepts(parity, "110") == 0);
  CHECK(accepts(parity, "100") == 1);
  CHECK_THROWS_AS(accepts(parity, "10"), std::invalid_argument);

  BranchingProgram all_accept = identity_program(3, 2);
  all_accept.accept = {0, 1};
  for (const Word& x : all_words(3, 2)) CHECK(accepts(all_accept, x) == 1);
}

TEST_CASE("exact acceptance probability") {
  CHECK(accept_prob_exact(parity_program(5, true)).to_rational() == Rational(1, 2));

  BranchingProgram all_accept = identity_program(3, 2);
  all_accept.accept = {0, 1};
  CHECK(accept_prob_exact(all_accept).to_rational() == 1);

  // Random width-4 permutation program, n = 10: must agree with direct
  // enumeration of all 1024 inputs.
  Rng rng(2024);
  FamilySpec spec;
  spec.n = 10;
  spec.w = 4;
  spec.permutation_only = true;
  const BranchingProgram b = random_family_member(spec, rng);
  CHECK(accept_prob_exact(b).to_rational() == brute_force_prob(b));
}

TEST_CASE("exact probability handles non-uniform layer widths") {
  BranchingProgram b;
  b.n = 2;
  b.d = 2;
  b.widths = {1, 2, 2};
  b.transitions = {{{0, 1}}, {{0, 0}, {1, 1}}};
  b.start = 0;
  b.accept = {1};
  validate_program(b);
  CHECK(accept_prob_exact(b).to_rational() == Rational(1, 2));
  CHECK(accept_prob_exact(b).to_rational() == brute_force_prob(b));
  CHECK_FALSE(check_permutation(b).is_permutation);
}

TEST_CASE("exact probability equals enumeration across random programs") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    FamilySpec spec;
    spec.n = 1 + static_cast<std::uint32_t>(rng.below(9));
    spec.w = 1 + static_cast<std::uint32_t>(rng.below(5));
    spec.permutation_only = rng.coin();
    const BranchingProgram b = random_family_member(spec, rng);
    CHECK(accept_prob_exact(b).to_rational() == brute_force_prob(b));
  }
}

TEST_CASE("permutation check") {
  CHECK(check_permutation(parity_program(4, false)).is_permutation);

  BranchingProgram merging = identity_program(2, 2);
  merging.transitions[0][1][0] = 0;  // two states share a target on symbol 0
  CHECK_FALSE(check_permutation(merging).is_permutation);

  BranchingProgram uneven;
  uneven.n = 1;
  uneven.d = 2;
  uneven.widths = {2, 1};
  uneven.transitions = {{{0, 0}, {0, 0}}};
  uneven.start = 0;
  uneven.accept = {0};
  validate_program(uneven);
  CHECK_FALSE(check_permutation(uneven).is_permutation);
}

TEST_CASE("permutation check is stable under layer-wise relabeling") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    FamilySpec spec;
    spec.n = 1 + static_cast<std::uint32_t>(rng.below(5));
    spec.w = 2 + static_cast<std::uint32_t>(rng.below(4));
    spec.permutation_only = rng.coin();
    const BranchingProgram b = random_family_member(spec, rng);
    std::vector<std::vector<std::uint32_t>> maps;
    for (std::uint32_t i = 0; i <= b.n; ++i) maps.push_back(rng.permutation(spec.w));
    const BranchingProgram relabeled = relabel_states(b, maps);
    CHECK(check_permutation(relabeled).is_permutation ==
          check_permutation(b).is_permutation);
    CHECK(accept_prob_exact(relabeled).to_rational() ==
          accept_prob_exact(b).to_rational());
  }
}

TEST_CASE("evaluate composes over any split") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    FamilySpec spec;
    spec.n = 2 + static_cast<std::uint32_t>(rng.below(6));
    spec.w = 1 + static_cast<std::uint32_t>(rng.below(5));
    spec.permutation_only = rng.coin();
    const BranchingProgram b = random_family_member(spec, rng);
    const Word x = uniform_word(b.n, b.d, rng);
    const std::uint32_t direct = evaluate(b, 0, b.start, x);
    for (std::size_t split = 0; split <= x.size(); ++split) {
      const std::uint32_t mid = evaluate(b, 0, b.start, x.substr(0, split));
      CHECK(evaluate(b, split, mid, x.substr(split)) == direct);
    }
  }
}

TEST_CASE("multi-step walks of permutation programs never merge states") {
  // exhaustive over (layer, state pair, word) for each sampled program
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    FamilySpec spec;
    spec.n = 1 + static_cast<std::uint32_t>(rng.below(6));  // n <= 6
    spec.w = 1 + static_cast<std::uint32_t>(rng.below(5));  // w <= 5
    spec.permutation_only = true;
    const BranchingProgram b = random_family_member(spec, rng);
    REQUIRE(check_permutation(b).is_permutation);
    for (std::uint32_t i = 0; i < b.n; ++i) {
      for (std::uint32_t k = 1; i + k <= b.n; ++k) {
        for (const Word& sigma : all_words(k, 2)) {
          std::uint32_t seen = 0;
          for (std::uint32_t v = 0; v < spec.w; ++v) {
            const std::uint32_t t = evaluate(b, i, v, sigma);
            CHECK((seen & (1u << t)) == 0);
            seen |= 1u << t;
          }
        }
      }
    }
  }
}

TEST_CASE("family enumeration counts and uniqueness") {
  FamilySpec one_layer;
  one_layer.n = 1;
  one_layer.w = 2;
  one_layer.permutation_only = true;
  one_layer.endpoints = EndpointPolicy::fixed(0, {0});
  CHECK(family_size(one_layer) == 4);

  FamilySpec two_layer = one_layer;
  two_layer.n = 2;
  CHECK(family_size(two_layer) == 16);

  FamilySpec trivial;
  trivial.n = 1;
  trivial.w = 1;
  trivial.permutation_only = true;
  trivial.endpoints = EndpointPolicy::fixed(0, {0});
  CHECK(family_size(trivial) == 1);

  // Streams every member exactly once, and permutation families only ever
  // yield permutation programs.
  FamilySpec all;
  all.n = 2;
  all.w = 2;
  all.permutation_only = true;
  all.endpoints = EndpointPolicy::all_nonempty_accept();
  CHECK(family_size(all) == 16 * 2 * 3);
  FamilyEnumerator en(all);
  std::set<std::string> seen;
  while (auto b = en.next()) {
    CHECK(check_permutation(*b).is_permutation);
    seen.insert(program_to_json(*b).dump());
  }
  CHECK(seen.size() == 96);

  FamilySpec general;
  general.n = 1;
  general.w = 2;
  general.permutation_only = false;
  general.endpoints = EndpointPolicy::fixed(0, {0});
  CHECK(family_size(general) == 16);  // 2^(2*2*1)
  FamilyEnumerator gen(general);
  std::size_t count = 0;
  while (gen.next()) ++count;
  CHECK(count == 16);
}

TEST_CASE("family enumeration respects the budget") {
  FamilySpec spec;
  spec.n = 4;
  spec.w = 4;
  spec.permutation_only = true;
  const BigInt expected = family_size(spec);
  CHECK(expected > BigInt(enumeration_budget()));
  try {
    FamilyEnumerator en(spec);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.size == expected);
  }
}

TEST_CASE("enumeration budget env override") {
  setenv("PBPSAMP_ENUM_BUDGET", "123", 1);
  CHECK(enumeration_budget() == 123);
  setenv("PBPSAMP_ENUM_BUDGET", "not-a-number", 1);
  CHECK(enumeration_budget() == (1ULL << 20));
  unsetenv("PBPSAMP_ENUM_BUDGET");
  CHECK(enumeration_budget() == (1ULL << 20));
}

TEST_CASE("validate_program rejects malformed programs") {
  BranchingProgram b = parity_program(3, true);
  CHECK_NOTHROW(validate_program(b));

  BranchingProgram bad_target = b;
  bad_target.transitions[1][0][1] = 7;
  CHECK_THROWS_AS(validate_program(bad_target), std::invalid_argument);

  BranchingProgram bad_start = b;
  bad_start.start = 9;
  CHECK_THROWS_AS(validate_program(bad_start), std::invalid_argument);

  BranchingProgram bad_accept = b;
  bad_accept.accept = {1, 1};
  CHECK_THROWS_AS(validate_program(bad_accept), std::invalid_argument);

  BranchingProgram bad_alphabet = b;
  bad_alphabet.d = 1;
  CHECK_THROWS_AS(validate_program(bad_alphabet), std::invalid_argument);
}

TEST_CASE("dyadic probabilities normalize and convert exactly") {
  const DyadicProb half(2, 2, 2);  // 2/4
  CHECK(half == DyadicProb(1, 1, 2));
  CHECK(half.to_rational() == Rational(1, 2));
  CHECK(DyadicProb::zero(2).to_rational() == 0);
  CHECK(DyadicProb::one(2).to_rational() == 1);
  CHECK_THROWS_AS(DyadicProb(5, 2, 2), std::invalid_argument);  // 5/4 > 1

  CHECK(to_fraction_string(Rational(3, 6)) == "1/2");
  CHECK(to_fraction_string(Rational(4)) == "4");
  CHECK(parse_fraction("3/12") == Rational(1, 4));
  CHECK(parse_fraction("2") == Rational(2));
  CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction(""), std::invalid_argument);
  CHECK(to_decimal_string(Rational(1, 3)) == "0.333333");
  CHECK(to_decimal_string(Rational(1, 2)) == "0.500000");
}
