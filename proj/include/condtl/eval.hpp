#pragma once

#include <vector>

#include "condtl/syntax.hpp"
#include "condtl/trivalue.hpp"

namespace condtl {

/// A nonempty sequence of atoms.
using Word = std::vector<Atom>;

/// Direct evaluator of a formula over every position of a word.
///
/// Each distinct subformula is evaluated once per position; temporal
/// operators follow their quantifier definitions literally (Since looks for
/// a witness position in the past), so this serves as an oracle that is
/// independent of the automaton construction. O and H are evaluated by
/// their own quantifier clauses rather than through desugaring.
class TraceEvaluator {
 public:
  explicit TraceEvaluator(const Formula& f);

  /// Truth value of the formula at each position of `w`.
  std::vector<bool> evaluate(const Word& w) const;

 private:
  struct Step {
    Op op;
    std::size_t event;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Step> steps_;  // post-order; children precede parents
};

/// M, pos ⊨ f. Throws std::out_of_range for a position outside `w`.
bool eval_tl(const Word& w, std::size_t pos, const Formula& f);

/// Value of (φ|ψ) at the last position of `w`.
Value3 eval_cond(const Word& w, const CondObject& c);

/// Values of (φ|ψ) on every nonempty prefix of `w`.
std::vector<Value3> cond_output(const Word& w, const CondObject& c);

Word reverse_word(Word w);

}  // namespace condtl
