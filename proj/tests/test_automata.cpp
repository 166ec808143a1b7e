#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <functional>
#include <regex>
#include <set>

#include "condtl/automata.hpp"
#include "condtl/cea.hpp"
#include "figures.hpp"
#include "support.hpp"

using namespace condtl;
using condtl::testing::ab;
using condtl::testing::all_words;
using namespace condtl::testing::figures;

namespace {

/// Pairs of states that no word separates. The initial state of a machine
/// that never re-enters it is compared on nonempty words only.
std::set<std::pair<State, State>> equivalent_pairs(const MooreMachine& m) {
  std::set<std::pair<State, State>> out;
  for (State p = 0; p < m.state_count(); ++p) {
    for (State q = p + 1; q < m.state_count(); ++q) {
      const bool skip_own = !m.initial_reentered() && (p == m.initial() || q == m.initial());
      std::set<std::pair<State, State>> seen;
      std::vector<std::pair<State, State>> work;
      if (skip_own) {
        for (Atom a = 0; a < m.atom_count(); ++a) work.emplace_back(m.next(p, a), m.next(q, a));
      } else {
        work.emplace_back(p, q);
      }
      bool separated = false;
      while (!work.empty() && !separated) {
        auto [x, y] = work.back();
        work.pop_back();
        if (!seen.insert({x, y}).second) continue;
        if (m.label(x) != m.label(y)) separated = true;
        for (Atom a = 0; a < m.atom_count(); ++a) work.emplace_back(m.next(x, a), m.next(y, a));
      }
      if (!separated) out.insert({p, q});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("machine validation") {
  const EventAlgebra alg({"a"});
  CHECK_THROWS_AS(MooreMachine(alg, 0, {0}, {F}), std::invalid_argument);
  CHECK_THROWS_AS(MooreMachine(alg, 0, {0, 2}, {F}), std::invalid_argument);
  CHECK_THROWS_AS(MooreMachine(alg, 1, {0, 0}, {F}), std::invalid_argument);
  CHECK_THROWS_AS(MooreMachine(alg, 0, {}, {}), std::invalid_argument);
  const MooreMachine m(alg, 0, {0, 0}, {T});
  CHECK(m.run(Word{0, 1}) == std::vector<Value3>{T, T});
  CHECK_THROWS_AS(m.run(Word{2}), std::out_of_range);
}

TEST_CASE("compiled machines reproduce cond_output") {
  const auto words = all_words(ab(), 6);
  for (const auto& c : condtl::testing::corpus()) {
    const MooreMachine m = compile(c, ab());
    const MooreMachine mm = minimize(m);
    CAPTURE(pretty(c, ab()));
    for (const auto& w : words) {
      const auto expected = cond_output(w, c);
      REQUIRE(m.run(w) == expected);
      REQUIRE(mm.run(w) == expected);
    }
  }
}

TEST_CASE("minimized machines have no equivalent states") {
  for (const auto& c : condtl::testing::corpus()) {
    const MooreMachine m = minimize(compile(c, ab()));
    CAPTURE(pretty(c, ab()));
    CHECK(equivalent_pairs(m).empty());
    CHECK(minimize(m).state_count() == m.state_count());
    CHECK(isomorphic(minimize(m), m));
  }
}

TEST_CASE("state counts") {
  CHECK(minimize(compile(parse_cond("(a|b)", ab()), ab())).state_count() == 3);
  CHECK(minimize(compile(parse_cond("(true|true)", ab()), ab())).state_count() == 1);
  const MooreMachine tt = minimize(compile(parse_cond("(true|true)", ab()), ab()));
  CHECK(tt.label(0) == T);
  // Present tense: the successor depends on the letter only.
  const MooreMachine m = minimize(compile(parse_cond("(a|b)", ab()), ab()));
  for (Atom a = 0; a < 4; ++a) {
    for (State q = 1; q < m.state_count(); ++q) CHECK(m.next(q, a) == m.next(0, a));
  }
  std::set<Value3> labels(m.labels().begin(), m.labels().end());
  CHECK(labels.size() == 3);
}

TEST_CASE("figure machines") {
  const MooreMachine f4 = minimize(compile(parse_cond("(O (a and b and not Y O b)|true)", ab()), ab()));
  CHECK(f4.state_count() == 3);
  CHECK(isomorphic(f4, fig_first()));

  const EventAlgebra abcd({"a", "b", "c", "d"});
  const CeaExpr conj = parse_cea("(a|b) and (c|d)", abcd, CeaDialect::Flat);
  const MooreMachine f3 = minimize(compile(embed_ps(conj, Embedding::PSFirst), abcd));
  CHECK(f3.state_count() == 5);
  CHECK(isomorphic(f3, fig_first_conjunction()));
  CHECK(isomorphic(ps_machine(conj, abcd, Embedding::PSFirst), fig_first_conjunction()));

  const MooreMachine rev = minimize(compile(embed_ps(conj, Embedding::PSReverse), abcd));
  CHECK(rev.state_count() == 4);
  CHECK(isomorphic(rev, fig_reverse_conjunction()));

  const EventAlgebra a({"a"});
  const MooreMachine alt =
      minimize(compile(parse_cond("(a|H ((Y a -> !a) and (Y !a -> a) and (!Y true -> a)))", a), a));
  CHECK(alt.state_count() == 3);
  CHECK(isomorphic(alt, fig_alternating()));
}

TEST_CASE("equivalent conditionals minimize to isomorphic machines") {
  const std::pair<const char*, const char*> pairs[] = {
      {"(a|b)", "(a and b|b)"},
      {"(O a|true)", "(a or Y O a|true)"},
      {"(H a|true)", "(not O not a|true)"},
      {"(a S b|true)", "(b or a and Y (a S b)|true)"},
      {"(Y a|Y true)", "(Y a|Y (a or not a))"},
      {"(a|false)", "(b|a and not a)"},
  };
  for (const auto& [x, y] : pairs) {
    CAPTURE(x);
    CHECK(isomorphic(minimize(compile(parse_cond(x, ab()), ab())),
                     minimize(compile(parse_cond(y, ab()), ab()))));
  }
  CHECK_FALSE(isomorphic(minimize(compile(parse_cond("(a|b)", ab()), ab())),
                         minimize(compile(parse_cond("(b|a)", ab()), ab()))));
}

TEST_CASE("minimize merges redundant states") {
  const EventAlgebra alg({"a"});
  // Two copies of a 1-labelled sink and an unreachable state.
  const MooreMachine m(alg, 0, {1, 2, 2, 1, 1, 2, 3, 3}, {U, T, T, F});
  const MooreMachine mm = minimize(m);
  CHECK(mm.state_count() == 1);
  CHECK(mm.label(0) == T);
  // The initial label is never emitted, so it does not block the merge.
  CHECK(isomorphic(mm, MooreMachine(alg, 0, {0, 0}, {T})));
}

TEST_CASE("product") {
  const MooreMachine m = minimize(compile(parse_cond("(a|b)", ab()), ab()));
  const LabelCombiner id{1, [](std::span<const Value3> v) { return v[0]; }};
  const MooreMachine single[] = {m};
  CHECK(isomorphic(minimize(product(single, id)), m));

  const CondObject c1 = parse_cond("(O a|b)", ab());
  const CondObject c2 = parse_cond("(Y b|a S b)", ab());
  const MooreMachine parts[] = {compile(c1, ab()), compile(c2, ab())};
  const LabelCombiner gnw{2, [](std::span<const Value3> v) {
                            return apply_binary(ConnectiveId::OrGNW, v[0], v[1]);
                          }};
  const MooreMachine p = product(parts, gnw);
  for (const auto& w : all_words(ab(), 5)) {
    const auto x = cond_output(w, c1);
    const auto y = cond_output(w, c2);
    const auto out = p.run(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(out[i] == apply_binary(ConnectiveId::OrGNW, x[i], y[i]));
    }
  }

  const MooreMachine three[] = {m, m, m};
  const LabelCombiner first3{3, [](std::span<const Value3> v) { return v[0]; }};
  CHECK(product(three, first3).state_count() <= 27);

  CHECK_THROWS_AS(product(three, id), std::invalid_argument);
  const MooreMachine other[] = {m, two_cycle()};
  const LabelCombiner two{2, [](std::span<const Value3> v) { return v[0]; }};
  CHECK_THROWS_AS(product(other, two), std::invalid_argument);
}

TEST_CASE("counter-freeness") {
  for (const auto& c : condtl::testing::corpus()) {
    CAPTURE(pretty(c, ab()));
    CHECK(is_counter_free(compile(c, ab())));
    CHECK(is_counter_free(minimize(compile(c, ab()))));
  }
  CHECK_FALSE(is_counter_free(two_cycle()));
  CHECK(is_counter_free(MooreMachine(EventAlgebra({"a"}), 0, {0, 0}, {T})));
  CHECK(is_counter_free(fig_alternating()));
  // A three-cycle driven by a; still a counter after adding a reset letter.
  const EventAlgebra alg({"a"});
  CHECK_FALSE(is_counter_free(MooreMachine(alg, 0, {0, 1, 0, 2, 0, 0}, {F, F, T})));
  CHECK_THROWS_AS(is_counter_free(fig_first_conjunction(), 2), MonoidTooLarge);
}

TEST_CASE("DOT export") {
  const MooreMachine one = minimize(compile(parse_cond("(true|true)", ab()), ab()));
  CHECK(to_dot(one) ==
        "digraph moore {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  start [shape=point];\n"
        "  q0 [label=\"1\"];\n"
        "  start -> q0;\n"
        "  q0 -> q0 [label=\"true\"];\n"
        "}\n");

  const std::string f4 = to_dot(fig_first());
  CHECK(f4.find("q0 -> q0 [label=\"!b\"]") != std::string::npos);
  CHECK(f4.find("q0 -> q1 [label=\"!a & b\"]") != std::string::npos);
  CHECK(f4.find("q0 -> q2 [label=\"a & b\"]") != std::string::npos);

  // Every line is a statement of a small DOT subset.
  const std::regex stmt(
      R"(digraph \w+ \{|  rankdir=LR;|  node \[shape=circle\];|  start \[shape=point\];|)"
      R"(  q\d+ \[label="[01⊥]"\];|  start -> q\d+;|  q\d+ -> q\d+ \[label="[^"]+"\];|\})");
  for (const auto& m : {fig_first(), fig_first_conjunction(), fig_reverse_conjunction()}) {
    std::istringstream lines(to_dot(m));
    std::size_t nodes = 0;
    for (std::string line; std::getline(lines, line);) {
      CAPTURE(line);
      CHECK(std::regex_match(line, stmt));
      if (line.find("[label=\"") != std::string::npos && line.find("->") == std::string::npos) ++nodes;
    }
    CHECK(nodes == m.state_count());
  }
}

TEST_CASE("atom descriptions") {
  const EventAlgebra alg({"a", "b", "c"});
  std::vector<bool> s(8, false);
  CHECK(describe_atoms(s, alg) == "false");
  s[0b011] = s[0b111] = true;
  CHECK(describe_atoms(s, alg) == "a & b");
  s.assign(8, true);
  CHECK(describe_atoms(s, alg) == "true");
  s[0] = false;
  // Covering every atom with at least one event.
  const std::string text = describe_atoms(s, alg);
  CHECK(text == "a | b | c");
}
