#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condtl {

/// An atom of the event algebra: bit i set iff basic event i occurs.
using Atom = std::uint32_t;

/// The basic events ℰ. Atoms are all subsets of ℰ, encoded as bitmasks.
class EventAlgebra {
 public:
  static constexpr std::size_t default_max_events = 16;

  EventAlgebra() = default;
  /// Throws std::invalid_argument on duplicate, reserved or malformed names,
  /// or when more than `max_events` events are given.
  explicit EventAlgebra(std::vector<std::string> events,
                        std::size_t max_events = default_max_events);

  const std::vector<std::string>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  std::size_t atom_count() const { return std::size_t{1} << events_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::string& name(std::size_t event) const { return events_.at(event); }

  /// "{a c}" style rendering of an atom.
  std::string atom_name(Atom atom) const;

  friend bool operator==(const EventAlgebra&, const EventAlgebra&) = default;

 private:
  std::vector<std::string> events_;
};

/// True iff `name` is one of the grammar's reserved words.
bool is_reserved_word(std::string_view name);

enum class Op : std::uint8_t {
  Atom,
  True,
  False,
  Not,
  Or,
  And,
  Implies,
  Iff,
  Prev,
  Since,
  Once,
  Historically,
};

/// Immutable past-time temporal formula. Copies share structure.
class Formula {
 public:
  Formula();  // `true`

  Op op() const;
  /// Basic event index of an Atom node.
  std::size_t event() const;
  std::size_t arity() const;
  const Formula& arg(std::size_t i) const;
  const Formula& operand() const { return arg(0); }
  const Formula& lhs() const { return arg(0); }
  const Formula& rhs() const { return arg(1); }

  /// True iff no temporal operator occurs (an event expression).
  bool is_propositional() const;

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

  friend Formula make_formula(Op, std::size_t, std::vector<Formula>);
};

Formula make_formula(Op op, std::size_t event, std::vector<Formula> args);

namespace tl {
Formula atom(std::size_t event);
Formula top();
Formula bottom();
Formula negate(Formula f);
Formula both(Formula f, Formula g);
Formula either(Formula f, Formula g);
Formula implies(Formula f, Formula g);
Formula iff(Formula f, Formula g);
Formula prev(Formula f);
Formula since(Formula f, Formula g);
Formula once(Formula f);
Formula historically(Formula f);
}  // namespace tl

inline Formula operator!(Formula f) { return tl::negate(std::move(f)); }
inline Formula operator&&(Formula f, Formula g) { return tl::both(std::move(f), std::move(g)); }
inline Formula operator||(Formula f, Formula g) { return tl::either(std::move(f), std::move(g)); }

/// Expands O φ to true S φ and H φ to ¬O¬φ, recursively.
Formula desugar(const Formula& f);

/// A (φ|ψ) pair.
struct CondObject {
  Formula numerator;
  Formula denominator;

  friend bool operator==(const CondObject&, const CondObject&) = default;
};

enum class CeaOp : std::uint8_t { Simple, Var, And, Or, Neg, Cond };

/// Conditional event expression. Leaves are either simple conditionals
/// (a|b) over event expressions, or three-valued variables.
class CeaExpr {
 public:
  static CeaExpr simple(Formula a, Formula b);
  static CeaExpr var(std::string name);
  static CeaExpr conj(CeaExpr l, CeaExpr r);
  static CeaExpr disj(CeaExpr l, CeaExpr r);
  static CeaExpr neg(CeaExpr e);
  static CeaExpr cond(CeaExpr l, CeaExpr r);

  CeaOp op() const;
  const Formula& numerator() const;    // Simple only
  const Formula& denominator() const;  // Simple only
  const std::string& var_name() const; // Var only
  const CeaExpr& lhs() const;
  const CeaExpr& rhs() const;
  const CeaExpr& operand() const { return lhs(); }

  bool has_cond() const;
  std::size_t node_count() const;

  friend bool operator==(const CeaExpr& a, const CeaExpr& b);

 private:
  struct Node;
  explicit CeaExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Simple conditionals of `e` in left-to-right order, with repetitions.
std::vector<CondObject> simple_conditionals(const CeaExpr& e);

/// Sorted, deduplicated variable names of `e`.
std::vector<std::string> variables(const CeaExpr& e);

enum class CeaDialect : std::uint8_t {
  Flat,             // no re-conditioning
  PureConditional,  // variables and re-conditioning only
  Full,
};

/// Throws std::invalid_argument if `e` is not in `dialect`.
void check_dialect(const CeaExpr& e, CeaDialect dialect);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Formula parse_tl(std::string_view text, const EventAlgebra& alg);

/// "(φ | ψ)"; a bare formula φ is read as (φ | true).
CondObject parse_cond(std::string_view text, const EventAlgebra& alg);

/// Expression with simple-conditional leaves. Dialect Flat rejects
/// re-conditioning; PureConditional is not meaningful here and is rejected.
CeaExpr parse_cea(std::string_view text, const EventAlgebra& alg, CeaDialect dialect);

/// Expression with three-valued variable leaves, e.g. "(p|q) and ~r".
CeaExpr parse_cea_vars(std::string_view text, CeaDialect dialect);

/// Identifiers (non-reserved words) in order of first appearance.
std::vector<std::string> identifiers_in(std::string_view text);

std::string pretty(const Formula& f, const EventAlgebra& alg);
std::string pretty(const CondObject& c, const EventAlgebra& alg);
/// `alg` is only consulted for simple-conditional leaves.
std::string pretty(const CeaExpr& e, const EventAlgebra& alg = {});

}  // namespace condtl
