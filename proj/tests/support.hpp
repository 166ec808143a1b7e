#pragma once

#include <random>
#include <string>
#include <vector>

#include "condtl/eval.hpp"
#include "condtl/markov.hpp"
#include "condtl/syntax.hpp"

namespace condtl::testing {

inline EventAlgebra events(std::vector<std::string> names) { return EventAlgebra(std::move(names)); }

inline const EventAlgebra& ab() {
  static const EventAlgebra alg({"a", "b"});
  return alg;
}

/// Conditionals over {a, b}, including the machines drawn in the figures
/// (first(a|b), the first/reverse/sparse conjunction shapes, the
/// alternating-condition example).
inline const std::vector<std::string>& corpus_texts() {
  static const std::vector<std::string> texts{
      "(a|b)",
      "(a|true)",
      "(true|true)",
      "(a|false)",
      "(false|a)",
      "(a and b|a or b)",
      "(!a|b)",
      "(a|!b)",
      "(Y a|true)",
      "(Y a|Y true)",
      "(a|Y b)",
      "(a S b|true)",
      "(a|a S b)",
      "(O a|true)",
      "(H a|true)",
      "(O (a and b and not Y O b)|true)",
      "(O (a and b and not Y O b) and O (b and a and not Y O a)|true)",
      "(O (a and b and not Y O b) or O (!a and b and not Y O b)|true)",
      "(not b S (a and b)|true)",
      "(not b S (a and b)|b or not O b)",
      "((not b S (a and b)) and (not a S (a and b))|a or not O a or b or not O b)",
      "((not b S (a and b)) and (not a S (b and a))|true)",
      "(a|H ((Y a -> !a) and (Y !a -> a) and (!Y true -> a)))",
      "(a -> b|O a)",
      "(a <-> b|true)",
      "(Y Y a|Y Y true)",
      "(a|O b)",
      "(b and not Y b|true)",
      "(Y (a S b)|b)",
      "(H (a or b)|O a)",
      "(a S (b S a)|Y true)",
      "(O (a and Y b)|O b)",
      "(a|H b)",
      "(not (a S b)|not a)",
      "(a or Y b|a or b)",
      "(Y a|Y Y true)",
  };
  return texts;
}

inline std::vector<CondObject> corpus(const EventAlgebra& alg = ab()) {
  std::vector<CondObject> out;
  for (const auto& t : corpus_texts()) out.push_back(parse_cond(t, alg));
  return out;
}

/// Every word of length 1..max_len over the algebra's atoms.
inline std::vector<Word> all_words(const EventAlgebra& alg, std::size_t max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Atom a = 0; a < alg.atom_count(); ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline ProbAssignment half(const EventAlgebra& alg) {
  return ProbAssignment::independent(alg, std::vector<Rational>(alg.size(), Rational(1, 2)));
}

/// A random rational in [0, 1] with a small denominator.
inline Rational random_unit(std::mt19937& rng, unsigned max_den = 12) {
  std::uniform_int_distribution<unsigned> den(1, max_den);
  const unsigned q = den(rng);
  std::uniform_int_distribution<unsigned> num(0, q);
  Rational r(num(rng), q);
  r.canonicalize();
  return r;
}

/// A random distribution over all atoms. With `zero_chance` > 0 some atoms
/// get mass 0.
inline ProbAssignment random_dist(const EventAlgebra& alg, std::mt19937& rng,
                                  double zero_chance = 0.0) {
  std::bernoulli_distribution zero(zero_chance);
  std::uniform_int_distribution<unsigned> weight(1, 9);
  std::vector<Rational> w(alg.atom_count());
  Rational total = 0;
  for (auto& x : w) {
    x = zero(rng) ? 0 : weight(rng);
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return ProbAssignment(alg, std::move(w));
}

/// Random propositional formula over the algebra's events.
inline Formula random_event(std::mt19937& rng, const EventAlgebra& alg, int depth = 2) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 5 : 9);
  std::uniform_int_distribution<std::size_t> ev(0, alg.size() - 1);
  const int k = pick(rng);
  if (k <= 3) return tl::atom(ev(rng));
  if (k == 4) return !tl::atom(ev(rng));
  if (k == 5) return rng() % 4 == 0 ? tl::bottom() : tl::top();
  if (k == 6) return !random_event(rng, alg, depth - 1);
  if (k <= 8) return random_event(rng, alg, depth - 1) && random_event(rng, alg, depth - 1);
  return random_event(rng, alg, depth - 1) || random_event(rng, alg, depth - 1);
}

/// Random flat expression with between 1 and `max_leaves` simple
/// conditionals over propositional leaves.
inline CeaExpr random_flat(std::mt19937& rng, const EventAlgebra& alg, std::size_t max_leaves,
                           int leaf_depth = 1) {
  const std::size_t leaves = 1 + rng() % max_leaves;
  auto build = [&](auto&& self, std::size_t n) -> CeaExpr {
    if (n == 1) {
      CeaExpr leaf = CeaExpr::simple(random_event(rng, alg, leaf_depth), random_event(rng, alg, leaf_depth));
      return rng() % 4 == 0 ? CeaExpr::neg(std::move(leaf)) : leaf;
    }
    const std::size_t left = 1 + rng() % (n - 1);
    CeaExpr l = self(self, left);
    CeaExpr r = self(self, n - left);
    CeaExpr out = rng() % 2 ? CeaExpr::conj(std::move(l), std::move(r)) : CeaExpr::disj(std::move(l), std::move(r));
    return rng() % 5 == 0 ? CeaExpr::neg(std::move(out)) : out;
  };
  return build(build, leaves);
}

/// Random expression over named variables. With `with_cond` the
/// re-conditioning operator may appear.
inline CeaExpr random_vars_expr(std::mt19937& rng, const std::vector<std::string>& names, int depth,
                                bool with_cond = true) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : (with_cond ? 4 : 3));
  switch (pick(rng)) {
    case 0: return CeaExpr::var(names[rng() % names.size()]);
    case 1: return CeaExpr::neg(random_vars_expr(rng, names, depth - 1, with_cond));
    case 2:
      return CeaExpr::conj(random_vars_expr(rng, names, depth - 1, with_cond),
                           random_vars_expr(rng, names, depth - 1, with_cond));
    case 3:
      return CeaExpr::disj(random_vars_expr(rng, names, depth - 1, with_cond),
                           random_vars_expr(rng, names, depth - 1, with_cond));
    default:
      return CeaExpr::cond(random_vars_expr(rng, names, depth - 1, with_cond),
                           random_vars_expr(rng, names, depth - 1, with_cond));
  }
}

/// `p` conditioned on the complement of `kill`: those atoms get mass 0.
/// Returns `p` unchanged when nothing would remain.
inline ProbAssignment without_atoms(const ProbAssignment& p, const std::vector<bool>& kill) {
  std::vector<Rational> w = p.masses();
  Rational total = 0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (kill[a]) w[a] = 0;
    total += w[a];
  }
  if (total == 0) return p;
  for (auto& x : w) x /= total;
  return ProbAssignment(p.algebra(), std::move(w));
}

/// Atoms satisfying a propositional formula.
inline std::vector<bool> atoms_satisfying(const Formula& f, const EventAlgebra& alg) {
  const TraceEvaluator ev(f);
  std::vector<bool> out(alg.atom_count());
  for (Atom a = 0; a < out.size(); ++a) out[a] = ev.evaluate(Word{a})[0];
  return out;
}

}  // namespace condtl::testing
