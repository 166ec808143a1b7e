#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "condtl/eval.hpp"
#include "condtl/syntax.hpp"
#include "support.hpp"

using namespace condtl;
using condtl::testing::ab;

TEST_CASE("event algebra validation") {
  const EventAlgebra alg({"a", "b", "c"});
  CHECK(alg.size() == 3);
  CHECK(alg.atom_count() == 8);
  CHECK(alg.index_of("b") == 1);
  CHECK_FALSE(alg.index_of("z").has_value());
  CHECK(alg.atom_name(0) == "{}");
  CHECK(alg.atom_name(0b101) == "{a c}");
  CHECK_THROWS_AS(EventAlgebra({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(EventAlgebra({"S"}), std::invalid_argument);
  CHECK_THROWS_AS(EventAlgebra({"true"}), std::invalid_argument);
  CHECK_THROWS_AS(EventAlgebra({"1x"}), std::invalid_argument);
  CHECK_THROWS_AS(EventAlgebra({"a", "b", "c"}, 2), std::invalid_argument);
  CHECK(EventAlgebra().atom_count() == 1);
}

TEST_CASE("operator precedence") {
  const EventAlgebra& alg = ab();
  using namespace tl;
  const Formula a = atom(0);
  const Formula b = atom(1);
  CHECK(parse_tl("a or b and a", alg) == (a || (b && a)));
  CHECK(parse_tl("not a S b", alg) == since(!a, b));
  CHECK(parse_tl("a S b S a", alg) == since(since(a, b), a));
  CHECK(parse_tl("a -> b -> a", alg) == implies(a, implies(b, a)));
  CHECK(parse_tl("a <-> b <-> a", alg) == iff(iff(a, b), a));
  CHECK(parse_tl("a or b S a", alg) == since(a || b, a));
  CHECK(parse_tl("Y Y a", alg) == prev(prev(a)));
  CHECK(parse_tl("!a & b", alg) == (!a && b));
}

TEST_CASE("O and H are desugared at parse time") {
  const EventAlgebra& alg = ab();
  using namespace tl;
  CHECK(parse_tl("O a", alg) == since(top(), atom(0)));
  CHECK(parse_tl("H a", alg) == !since(top(), !atom(0)));
  CHECK(desugar(once(atom(0))) == since(top(), atom(0)));
  CHECK(desugar(historically(atom(1))) == !since(top(), !atom(1)));
}

TEST_CASE("desugaring preserves evaluation") {
  const EventAlgebra& alg = ab();
  using namespace tl;
  const std::vector<Formula> samples{
      once(atom(0)),
      historically(atom(1) || atom(0)),
      once(atom(0) && !prev(once(atom(1)))),
      historically(implies(prev(atom(0)), atom(1))),
      since(once(atom(0)), historically(atom(1))),
  };
  for (const auto& w : condtl::testing::all_words(alg, 6)) {
    for (const auto& f : samples) {
      CHECK(TraceEvaluator(f).evaluate(w) == TraceEvaluator(desugar(f)).evaluate(w));
    }
  }
}

TEST_CASE("pretty printing round-trips on the corpus") {
  const EventAlgebra& alg = ab();
  for (const auto& text : condtl::testing::corpus_texts()) {
    const CondObject c = parse_cond(text, alg);
    const std::string shown = pretty(c, alg);
    CAPTURE(text);
    CAPTURE(shown);
    CHECK(parse_cond(shown, alg) == c);
    CHECK(pretty(parse_cond(shown, alg), alg) == shown);
  }
  CHECK(pretty(parse_cond("(O a|H b)", alg), alg) == "(O a|H b)");
  CHECK(pretty(parse_cond("( not b S (a and b) | true )", alg), alg) == "(!b S a and b|true)");
  CHECK(pretty(parse_cond("a", alg), alg) == "(a|true)");
}

TEST_CASE("pretty printing round-trips on random formulas") {
  const EventAlgebra& alg = ab();
  std::mt19937 rng(7);
  auto gen = [&](auto&& self, int depth) -> Formula {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 12);
    using namespace tl;
    switch (pick(rng)) {
      case 0: return atom(0);
      case 1: return atom(1);
      case 2: return top();
      case 3: return bottom();
      case 4: return !self(self, depth - 1);
      case 5: return self(self, depth - 1) || self(self, depth - 1);
      case 6: return self(self, depth - 1) && self(self, depth - 1);
      case 7: return implies(self(self, depth - 1), self(self, depth - 1));
      case 8: return iff(self(self, depth - 1), self(self, depth - 1));
      case 9: return prev(self(self, depth - 1));
      case 10: return since(self(self, depth - 1), self(self, depth - 1));
      case 11: return since(top(), self(self, depth - 1));
      default: return !since(top(), !self(self, depth - 1));
    }
  };
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen(gen, 4);
    const std::string shown = pretty(f, alg);
    CAPTURE(shown);
    CHECK(parse_tl(shown, alg) == f);
  }
}

TEST_CASE("conditional event expressions") {
  const EventAlgebra alg({"a", "b", "c", "d"});
  const CeaExpr e = parse_cea("(a|b) and (c|d)", alg, CeaDialect::Flat);
  CHECK(e.op() == CeaOp::And);
  CHECK(e.lhs().op() == CeaOp::Simple);
  CHECK(simple_conditionals(e).size() == 2);
  CHECK(pretty(e, alg) == "(a|b) and (c|d)");
  CHECK(pretty(parse_cea("~(a|b) or (c|d) and (a|true)", alg, CeaDialect::Flat), alg) ==
        "~(a|b) or (c|d) and (a|true)");
  CHECK(pretty(parse_cea("~((a|b) or (c|d))", alg, CeaDialect::Flat), alg) == "~((a|b) or (c|d))");

  const CeaExpr re = parse_cea("((a|b) | (c|d))", alg, CeaDialect::Full);
  CHECK(re.op() == CeaOp::Cond);
  CHECK(re.has_cond());
  CHECK_THROWS_AS(parse_cea("((a|b) | (c|d))", alg, CeaDialect::Flat), SyntaxError);
  CHECK_THROWS_AS(parse_cea("(a|b) and c", alg, CeaDialect::Flat), SyntaxError);
  CHECK_THROWS_AS(parse_cea("(Y a|b)", alg, CeaDialect::Flat), SyntaxError);
  CHECK_THROWS_AS(parse_cea("(a|b)", alg, CeaDialect::PureConditional), std::invalid_argument);
}

TEST_CASE("variable expressions and dialects") {
  const CeaExpr pure = parse_cea_vars("((p|q)|r)", CeaDialect::PureConditional);
  CHECK(variables(pure) == std::vector<std::string>{"p", "q", "r"});
  CHECK(pure.node_count() == 5);
  CHECK_THROWS_AS(parse_cea_vars("(p|q) and r", CeaDialect::PureConditional), SyntaxError);
  CHECK_THROWS_AS(parse_cea_vars("(p|q)", CeaDialect::Flat), SyntaxError);
  CHECK_NOTHROW(parse_cea_vars("p and ~q", CeaDialect::Flat));
  CHECK_NOTHROW(check_dialect(pure, CeaDialect::Full));
  CHECK_THROWS_AS(check_dialect(pure, CeaDialect::Flat), std::invalid_argument);
  CHECK(pretty(parse_cea_vars("~(p|q) and r", CeaDialect::Full)) == "~(p|q) and r");
}

TEST_CASE("syntax errors carry positions") {
  const EventAlgebra& alg = ab();
  try {
    parse_tl("a and\n  (b or z)", alg);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 9);
    CHECK(std::string(e.what()).find("2:9") == 0);
  }
  CHECK_THROWS_AS(parse_tl("a and", alg), SyntaxError);
  CHECK_THROWS_AS(parse_tl("(a", alg), SyntaxError);
  CHECK_THROWS_AS(parse_tl("a | b", alg), SyntaxError);
  CHECK_THROWS_AS(parse_tl("(a|b)", alg), SyntaxError);
  CHECK_THROWS_AS(parse_tl("a $ b", alg), SyntaxError);
  CHECK_THROWS_AS(parse_tl("~a", alg), SyntaxError);
  CHECK_THROWS_AS(parse_cond("((a|b)|a)", alg), SyntaxError);
  CHECK_THROWS_AS(parse_tl("", alg), SyntaxError);
}

TEST_CASE("identifier extraction skips keywords") {
  CHECK(identifiers_in("(a and not Y b | O c or true)") == std::vector<std::string>{"a", "b", "c"});
}
