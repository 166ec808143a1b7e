#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace condtl {

/// Truth values of the three-valued logic: false, true and undefined.
enum class Value3 : std::uint8_t { False = 0, True = 1, Undef = 2 };

inline constexpr Value3 all_values3[] = {Value3::False, Value3::True, Value3::Undef};

constexpr Value3 to_value3(bool b) { return b ? Value3::True : Value3::False; }
constexpr bool is_defined(Value3 v) { return v != Value3::Undef; }

/// "0", "1" or "⊥".
std::string_view to_string(Value3 v);

enum class ConnectiveId : std::uint8_t {
  AndSAC,
  OrSAC,
  AndGNW,
  OrGNW,
  AndSch,
  OrSch,
  Not0,
  CondSAC,
  CondGNW,
  Sqcap,
};

constexpr bool is_unary(ConnectiveId c) { return c == ConnectiveId::Not0; }

std::string_view to_string(ConnectiveId c);

/// Unary table lookup. Throws std::invalid_argument for a binary id.
Value3 apply_unary(ConnectiveId conn, Value3 x);

/// Binary table lookup. Throws std::invalid_argument for a unary id.
Value3 apply_binary(ConnectiveId conn, Value3 x, Value3 y);

/// The three present-tense conditional event algebras.
enum class PresentCea : std::uint8_t { SAC, GNW, Sch };

std::string_view to_string(PresentCea which);

struct PresentConnectives {
  ConnectiveId conj;
  ConnectiveId disj;
  ConnectiveId neg;
  /// Re-conditioning; unset for Sch, which has no conditioning operator.
  bool has_cond;
  ConnectiveId cond;
};

PresentConnectives connectives_of(PresentCea which);

class CeaExpr;

using Valuation = std::map<std::string, Value3>;

/// Bottom-up evaluation of a variable-leaved expression under `which`'s
/// tables. Throws std::invalid_argument naming any unbound variable, and
/// std::domain_error for re-conditioning under Sch.
Value3 eval_cea_valuation(const CeaExpr& e, const Valuation& v, PresentCea which);

}  // namespace condtl
