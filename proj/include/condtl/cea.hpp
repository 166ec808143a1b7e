#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condtl/automata.hpp"
#include "condtl/markov.hpp"
#include "condtl/syntax.hpp"
#include "condtl/trivalue.hpp"

namespace condtl {

/// A present-tense conditional as two atom sets, yes ⊆ defined.
struct SimpleConditional {
  std::vector<bool> yes;
  std::vector<bool> defined;
  friend bool operator==(const SimpleConditional&, const SimpleConditional&) = default;
};

/// Evaluates `e` atom by atom with the connective tables of `which`.
/// Leaves must be propositional. Re-conditioning under Sch throws
/// std::domain_error.
SimpleConditional reduce_present(const CeaExpr& e, const EventAlgebra& alg, PresentCea which);

/// The two readings of the GNW conjunction's condition: aᶜd∨cᶜd∨abcd as
/// typeset in some sources, and aᶜb∨cᶜd∨abcd.
enum class GnwReading { Printed, Corrected };

/// Reduction by the closed-form set rules for ∧, ∨ and negation over
/// (a|b), (c|d). Flat expressions only.
SimpleConditional reduce_by_rules(const CeaExpr& e, const EventAlgebra& alg, PresentCea which,
                                  GnwReading reading = GnwReading::Corrected);

/// Minimal machine emitting the present value of `sc` on each letter.
MooreMachine present_machine(const SimpleConditional& sc, const EventAlgebra& alg);

/// Pr(yes)/Pr(defined), or nothing when Pr(defined) = 0.
std::optional<Rational> prob_present(const CeaExpr& e, const ProbAssignment& p, PresentCea which);

enum class Embedding { PSFirst, PSReverse, PSSparse };

std::string_view to_string(Embedding e);

/// O(a ∧ b ∧ ¬Y O b): a∧b holds at the first occurrence of b.
Formula first_numerator(const Formula& a, const Formula& b);

/// (φ|ψ) interpretation of a flat expression. Throws std::invalid_argument
/// on re-conditioning or variables.
CondObject embed_ps(const CeaExpr& e, Embedding which);

/// Minimal machine of the embedding. For PSFirst this is assembled as the
/// product of the per-conditional first-machines under classical label
/// combination, then minimized.
MooreMachine ps_machine(const CeaExpr& e, const EventAlgebra& alg, Embedding which);

/// Asymptotic probability of the embedding.
std::optional<Rational> prob_ps(const CeaExpr& e, const ProbAssignment& p, Embedding which);

/// ↑(φ|ψ) = (ψ|true).
CondObject lift(const CondObject& c);

struct IndepVerdict {
  bool independent;
  std::string witness;  // empty when independent
};

/// The four equalities with ∧_Sch at time n, or with asymptotic
/// probabilities when `n` is empty. Both sides undefined counts as equal.
IndepVerdict present_indep(const CondObject& c1, const CondObject& c2, const ProbAssignment& p,
                           std::optional<std::size_t> n);

/// Factorization of the joint chain of the two minimal machines: initial
/// pair distribution and every positively reachable pair's transitions.
IndepVerdict strong_indep(const CondObject& c1, const CondObject& c2, const ProbAssignment& p);

struct TautologyVerdict {
  bool tautology;
  Valuation witness;  // a valuation giving 0, when not a tautology
};

inline constexpr std::size_t default_max_vars = 8;

/// Exhaustive search over all 3^k valuations. `which` must be SAC or GNW.
/// Throws std::invalid_argument when `e` is outside `dialect` or has more
/// than `max_vars` variables.
TautologyVerdict weak_tautology(const CeaExpr& e, PresentCea which, CeaDialect dialect,
                                std::size_t max_vars = default_max_vars);

}  // namespace condtl
