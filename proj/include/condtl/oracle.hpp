#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "condtl/automata.hpp"
#include "condtl/eval.hpp"
#include "condtl/markov.hpp"

// Reference computations by enumeration of every word of a given length.
// They use only the direct evaluator and exact arithmetic, never the
// compiled machines or chains.

namespace condtl {

inline constexpr std::uint64_t default_budget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t words, std::uint64_t budget);
};

/// Calls `visit(word, mass)` for every word of length n whose letters all
/// have positive mass. Throws BudgetExceeded when there are more than
/// `budget` such words.
void for_each_word(const ProbAssignment& p, std::size_t n, std::uint64_t budget,
                   const std::function<void(const Word&, const Rational&)>& visit);

/// Label distribution of (φ|ψ) at time n by summation over Ωⁿ.
LabelMass brute_pr_n(const CondObject& c, const ProbAssignment& p, std::size_t n,
                     std::uint64_t budget = default_budget);

using OutputPair = std::pair<std::vector<Value3>, std::vector<Value3>>;

/// Joint distribution of the two output prefixes of length n.
std::map<OutputPair, Rational> brute_joint(const CondObject& c1, const CondObject& c2,
                                           const ProbAssignment& p, std::size_t n,
                                           std::uint64_t budget = default_budget);

/// True iff the label masses at time n agree between w and its reversal.
bool brute_reverse_check(const CondObject& c, const ProbAssignment& p, std::size_t n,
                         std::uint64_t budget = default_budget);

/// True iff the state sequences of the two machines, driven by a common
/// random word, are independent at every length t ≤ t_max.
bool brute_sequence_indep(const MooreMachine& m1, const MooreMachine& m2, const ProbAssignment& p,
                          std::size_t t_max, std::uint64_t budget = default_budget);

}  // namespace condtl
