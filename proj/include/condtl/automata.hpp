#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "condtl/eval.hpp"
#include "condtl/syntax.hpp"
#include "condtl/trivalue.hpp"

namespace condtl {

using State = std::uint32_t;

/// Deterministic three-valued Moore machine over the atoms of an event
/// algebra. The machine emits label(δ̂(q₀, prefix)) for every nonempty
/// prefix; the initial state's own label is only emitted if it is re-entered.
class MooreMachine {
 public:
  /// `delta` is row-major: delta[q * atom_count + ω]. Throws
  /// std::invalid_argument when the table is not total or refers to
  /// nonexistent states.
  MooreMachine(EventAlgebra alg, State initial, std::vector<State> delta,
               std::vector<Value3> labels);

  const EventAlgebra& algebra() const { return alg_; }
  std::size_t state_count() const { return labels_.size(); }
  std::size_t atom_count() const { return atoms_; }
  State initial() const { return initial_; }
  State next(State q, Atom a) const { return delta_[q * atoms_ + a]; }
  Value3 label(State q) const { return labels_[q]; }
  const std::vector<Value3>& labels() const { return labels_; }
  const std::vector<State>& transitions() const { return delta_; }

  /// True iff some transition leads back into the initial state.
  bool initial_reentered() const;

  /// The emitted sequence f_A(w).
  std::vector<Value3> run(const Word& w) const;

 private:
  EventAlgebra alg_;
  std::size_t atoms_;
  State initial_;
  std::vector<State> delta_;
  std::vector<Value3> labels_;
};

/// Builds a machine whose states are truth-value vectors of the remembered
/// past-time subformulas of φ and ψ (the arguments of Y and every S node),
/// paired with the current (φ|ψ) value. Only reachable states are created.
MooreMachine compile(const CondObject& c, const EventAlgebra& alg);

/// Reachable part, with states renumbered breadth-first from the initial
/// state in atom order.
MooreMachine canonical(const MooreMachine& m);

/// Minimal machine computing the same f_A, in canonical numbering.
MooreMachine minimize(const MooreMachine& m);

/// Equality of canonical forms, ignoring the label of a never re-entered
/// initial state.
bool isomorphic(const MooreMachine& a, const MooreMachine& b);

struct LabelCombiner {
  std::size_t arity;
  std::function<Value3(std::span<const Value3>)> combine;
};

/// Synchronous product over a common alphabet; reachable tuples only.
/// Throws std::invalid_argument on arity or alphabet mismatch.
MooreMachine product(std::span<const MooreMachine> machines, const LabelCombiner& combiner);

class MonoidTooLarge : public std::runtime_error {
 public:
  explicit MonoidTooLarge(std::size_t cap);
};

inline constexpr std::size_t default_monoid_cap = 200000;

/// Aperiodicity of the transition monoid: every element t satisfies
/// t^k = t^{k+1} for some k. Throws MonoidTooLarge past `monoid_cap`.
bool is_counter_free(const MooreMachine& m, std::size_t monoid_cap = default_monoid_cap);

/// Graphviz rendering. Parallel transitions are merged under one label
/// listing the atoms as a sum of cubes.
std::string to_dot(const MooreMachine& m, std::string_view name = "moore");

/// Sum-of-cubes text for a set of atoms, e.g. "a & !b | c"; "true" for all
/// atoms, "false" for none.
std::string describe_atoms(const std::vector<bool>& atoms, const EventAlgebra& alg);

}  // namespace condtl
