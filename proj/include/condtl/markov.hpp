#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condtl/automata.hpp"
#include "condtl/syntax.hpp"

namespace condtl {

using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// "p/q", an integer, or a fraction with a zero denominator rejected.
/// Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Exact text: "1/4", "0", "3".
std::string to_string(const Rational& r);

/// Rounded to `digits` places after the point, e.g. "0.250000000000".
std::string to_decimal(const Rational& r, int digits = 12);

/// A probability distribution over the atoms of an event algebra.
class ProbAssignment {
 public:
  /// Throws std::invalid_argument unless there is one nonnegative mass per
  /// atom and the masses sum to exactly 1.
  ProbAssignment(EventAlgebra alg, std::vector<Rational> mass);

  /// Product distribution with Pr(event i) = marginals[i].
  static ProbAssignment independent(EventAlgebra alg, const std::vector<Rational>& marginals);

  const EventAlgebra& algebra() const { return alg_; }
  const Rational& mass(Atom a) const { return mass_.at(a); }
  const std::vector<Rational>& masses() const { return mass_; }

  /// Total mass of the atoms flagged in `atoms`.
  Rational measure(const std::vector<bool>& atoms) const;

  /// Total mass of the atoms satisfying a propositional formula.
  Rational measure(const Formula& propositional) const;

 private:
  EventAlgebra alg_;
  std::vector<Rational> mass_;
};

class DistributionError : public std::runtime_error {
 public:
  DistributionError(const std::string& msg, int line);
  int line() const { return line_; }

 private:
  int line_;
};

/// Line-oriented format:
///
///     events: a b c
///     atom {a c}: 3/8          (one line per atom, all atoms covered)
///     independent: a=1/2 b=1/3 (alternative to the atom lines)
///
/// `#` starts a comment. Throws DistributionError.
ProbAssignment parse_distribution(std::string_view text);
ProbAssignment load_distribution(const std::string& path);

/// Finite Markov chain whose states carry Value3 labels. Step k of the
/// chain is the machine state after k letters, so `initial` already
/// includes the first transition.
struct MarkovChain3 {
  std::vector<Rational> initial;
  std::vector<std::vector<std::pair<State, Rational>>> rows;  // positive entries only
  std::vector<Value3> labels;

  std::size_t size() const { return labels.size(); }
  Rational transition(State i, State j) const;
  RationalMatrix dense() const;
};

/// Throws std::invalid_argument when the alphabets differ.
MarkovChain3 chain_from_machine(const MooreMachine& m, const ProbAssignment& p);

struct LabelMass {
  Rational p1;
  Rational p0;
  Rational pbot;
  friend bool operator==(const LabelMass&, const LabelMass&) = default;
};

/// p1/(p1+p0), or nothing when p1+p0 = 0.
std::optional<Rational> ratio(const LabelMass& m);

/// Label distribution at step n ≥ 1. Throws std::invalid_argument for n = 0.
LabelMass pr_n(const MarkovChain3& ch, std::size_t n);

/// pr_n for n = 1..n_max.
std::vector<LabelMass> pr_series(const MarkovChain3& ch, std::size_t n_max);

std::optional<Rational> pr_n_ratio(const MarkovChain3& ch, std::size_t n);

class PeriodicClassError : public std::runtime_error {
 public:
  explicit PeriodicClassError(std::size_t period);
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError();
};

/// Limiting label distribution: absorption into each closed class times
/// that class's stationary label mass. Throws PeriodicClassError when a
/// reachable closed class is periodic.
LabelMass limit_label_mass(const MarkovChain3& ch);

/// lim pr_n_ratio, or nothing when the limiting p1+p0 is 0.
std::optional<Rational> asymptotic(const MarkovChain3& ch);

/// B = (Id − Q)⁻¹ R by exact Gauss-Jordan elimination. Throws
/// SingularSystemError when Id − Q is singular and std::invalid_argument on
/// shape mismatch.
RationalMatrix absorbing_solve(const RationalMatrix& Q, const RationalMatrix& R);

/// Solves A X = B. Throws SingularSystemError.
RationalMatrix solve_linear(RationalMatrix A, RationalMatrix B);

/// Stationary distribution of an irreducible stochastic matrix.
std::vector<Rational> stationary(const RationalMatrix& P);

}  // namespace condtl
