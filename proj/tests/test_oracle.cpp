#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "condtl/cea.hpp"
#include "condtl/oracle.hpp"
#include "support.hpp"

using namespace condtl;
using condtl::testing::ab;
using condtl::testing::half;

namespace {

constexpr Value3 F = Value3::False;
constexpr Value3 T = Value3::True;
constexpr Value3 U = Value3::Undef;

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

using Marginal = std::map<std::vector<Value3>, Rational>;

std::pair<Marginal, Marginal> marginals(const std::map<OutputPair, Rational>& joint) {
  Marginal l;
  Marginal r;
  for (const auto& [key, m] : joint) {
    l[key.first] += m;
    r[key.second] += m;
  }
  return {l, r};
}

bool factorizes(const std::map<OutputPair, Rational>& joint) {
  const auto [l, r] = marginals(joint);
  for (const auto& [x, px] : l) {
    for (const auto& [y, py] : r) {
      const auto it = joint.find({x, y});
      if ((it == joint.end() ? Rational(0) : it->second) != px * py) return false;
    }
  }
  return true;
}

/// Joint law of the two values at the last position only.
std::map<OutputPair, Rational> at_last(const std::map<OutputPair, Rational>& joint) {
  std::map<OutputPair, Rational> out;
  for (const auto& [key, m] : joint) out[{{key.first.back()}, {key.second.back()}}] += m;
  return out;
}

}  // namespace

TEST_CASE("word enumeration") {
  const ProbAssignment p = half(ab());
  std::size_t count = 0;
  Rational total = 0;
  for_each_word(p, 3, default_budget, [&](const Word& w, const Rational& m) {
    CHECK(w.size() == 3);
    CHECK(m == q(1, 64));
    ++count;
    total += m;
  });
  CHECK(count == 64);
  CHECK(total == 1);

  // Zero-mass letters are skipped and do not count against the budget.
  const ProbAssignment sparse(ab(), {0, q(1, 2), 0, q(1, 2)});
  count = 0;
  for_each_word(sparse, 10, 1024, [&](const Word& w, const Rational&) {
    for (Atom a : w) CHECK((a & 1) == 1);
    ++count;
  });
  CHECK(count == 1024);
  CHECK_THROWS_AS(for_each_word(sparse, 11, 1024, [](const Word&, const Rational&) {}), BudgetExceeded);
  CHECK_THROWS_AS(for_each_word(p, 0, 10, [](const Word&, const Rational&) {}), std::invalid_argument);

  const ProbAssignment p16 = half(EventAlgebra({"a", "b", "c", "d"}));
  CHECK_THROWS_AS(brute_pr_n(parse_cond("(a|b)", p16.algebra()), p16, 6), BudgetExceeded);
  CHECK_NOTHROW(brute_pr_n(parse_cond("(a|b)", p16.algebra()), p16, 5));
}

TEST_CASE("label masses by enumeration") {
  const ProbAssignment p = half(ab());
  CHECK(brute_pr_n(parse_cond("(a|b)", ab()), p, 1) == LabelMass{q(1, 4), q(1, 4), q(1, 2)});
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(brute_pr_n(parse_cond("(true|true)", ab()), p, n) == LabelMass{1, 0, 0});
    // first(a|b): undecided with mass (1/2)^n, then split evenly.
    const Rational wait = 1 / Rational(1 << n);
    CHECK(brute_pr_n(parse_cond("(O (a and b and not Y O b)|true)", ab()), p, n) ==
          LabelMass{(1 - wait) / 2, (1 + wait) / 2, 0});
  }
}

TEST_CASE("enumeration agrees with the chain") {
  std::mt19937 rng(43);
  const std::vector<ProbAssignment> dists{half(ab()), condtl::testing::random_dist(ab(), rng),
                                          condtl::testing::random_dist(ab(), rng, 0.4)};
  for (const auto& p : dists) {
    for (const auto& c : condtl::testing::corpus()) {
      const auto series = pr_series(chain_from_machine(minimize(compile(c, ab())), p), 6);
      CAPTURE(pretty(c, ab()));
      for (std::size_t n = 1; n <= 6; ++n) CHECK(brute_pr_n(c, p, n) == series[n - 1]);
    }
  }
}

TEST_CASE("reversal does not change label masses") {
  std::mt19937 rng(47);
  const ProbAssignment p = condtl::testing::random_dist(ab(), rng);
  for (const auto& c : condtl::testing::corpus()) {
    CAPTURE(pretty(c, ab()));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(brute_reverse_check(c, p, n));
  }
  const CondObject first = parse_cond("(O a and not Y O a|true)", ab());
  for (std::size_t n = 1; n <= 5; ++n) CHECK(brute_reverse_check(first, half(ab()), n));
}

TEST_CASE("joint output distributions") {
  const ProbAssignment p = half(ab());
  const CondObject a = parse_cond("(a|true)", ab());
  const auto diag = brute_joint(a, a, p, 1);
  CHECK(diag.size() == 2);
  CHECK(diag.at({{T}, {T}}) == q(1, 2));
  CHECK(diag.at({{F}, {F}}) == q(1, 2));

  const EventAlgebra alg4({"a", "b", "c", "d"});
  const ProbAssignment p4 = half(alg4);
  const CondObject left = parse_cond("(a|b)", alg4);
  const CondObject right = parse_cond("(O c|d)", alg4);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(factorizes(brute_joint(left, right, p4, n)));

  // Values at a fixed time are independent, whole prefixes are not.
  const CondObject ya = parse_cond("(Y a|Y true)", ab());
  for (std::size_t n = 1; n <= 4; ++n) CHECK(factorizes(at_last(brute_joint(a, ya, p, n))));
  const auto two = brute_joint(a, ya, p, 2);
  CHECK_FALSE(factorizes(two));
  CHECK(two.at({{T, F}, {U, T}}) == q(1, 4));
}

TEST_CASE("present-tense independence matches the enumerated joint law") {
  std::mt19937 rng(53);
  const EventAlgebra& alg = ab();
  int agree_true = 0;
  for (int i = 0; i < 60; ++i) {
    const CondObject c1 = parse_cond(condtl::testing::corpus_texts()[rng() % 36], alg);
    const CondObject c2 = parse_cond(condtl::testing::corpus_texts()[rng() % 36], alg);
    const ProbAssignment p = i % 2 ? half(alg) : condtl::testing::random_dist(alg, rng, 0.3);
    const std::size_t n = 1 + rng() % 4;
    CAPTURE(pretty(c1, alg));
    CAPTURE(pretty(c2, alg));
    CAPTURE(n);
    const bool truth = factorizes(at_last(brute_joint(c1, c2, p, n)));
    CHECK(present_indep(c1, c2, p, n).independent == truth);
    agree_true += truth;
  }
  CHECK(agree_true > 0);
  CHECK(agree_true < 60);
}

TEST_CASE("state sequence independence matches the pair-chain test") {
  std::mt19937 rng(59);
  const auto corpus = condtl::testing::corpus();
  std::vector<std::pair<CondObject, MooreMachine>> small;
  for (const auto& c : corpus) {
    MooreMachine m = minimize(compile(c, ab()));
    if (m.state_count() <= 3) small.emplace_back(c, std::move(m));
  }
  REQUIRE(small.size() >= 10);
  int independent = 0;
  int checked = 0;
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = i; j < small.size(); ++j) {
      const std::size_t states = small[i].second.state_count() * small[j].second.state_count();
      if (states > 6) continue;
      for (const auto& p : {half(ab()), condtl::testing::random_dist(ab(), rng, 0.3)}) {
        CAPTURE(pretty(small[i].first, ab()));
        CAPTURE(pretty(small[j].first, ab()));
        const bool expect = brute_sequence_indep(small[i].second, small[j].second, p, states + 1);
        CHECK(strong_indep(small[i].first, small[j].first, p).independent == expect);
        independent += expect;
        ++checked;
      }
    }
  }
  CHECK(independent > 0);
  CHECK(independent < checked);
}
