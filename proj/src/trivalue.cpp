#include "condtl/trivalue.hpp"

#include <array>
#include <stdexcept>

#include "condtl/syntax.hpp"

namespace condtl {

namespace {

constexpr auto F = Value3::False;
constexpr auto T = Value3::True;
constexpr auto U = Value3::Undef;

using Table = std::array<std::array<Value3, 3>, 3>;  // [x][y], index 0, 1, ⊥

// ⊥ is a two-sided identity.
constexpr Table and_sac = {{{F, F, F}, {F, T, T}, {F, T, U}}};
constexpr Table or_sac = {{{F, T, F}, {T, T, T}, {F, T, U}}};
// min / max under 0 < ⊥ < 1.
constexpr Table and_gnw = {{{F, F, F}, {F, T, U}, {F, U, U}}};
constexpr Table or_gnw = {{{F, T, U}, {T, T, T}, {U, T, U}}};
// ⊥ is absorbing.
constexpr Table and_sch = {{{F, F, U}, {F, T, U}, {U, U, U}}};
constexpr Table or_sch = {{{F, T, U}, {T, T, U}, {U, U, U}}};
// (x | y): y = 0 gives ⊥, y = 1 gives x.
constexpr Table cond_sac = {{{U, F, F}, {U, T, T}, {U, U, U}}};
constexpr Table cond_gnw = {{{U, F, F}, {U, T, U}, {U, U, U}}};
// [x ∨ (y ∧ (x ∨ ~y))] ∧ [y ∨ (x ∧ (y ∨ ~x))] in SAC.
constexpr Table sqcap = {{{F, F, F}, {F, T, F}, {F, F, U}}};

constexpr std::size_t idx(Value3 v) { return static_cast<std::size_t>(v); }

const Table& table_of(ConnectiveId c) {
  switch (c) {
    case ConnectiveId::AndSAC: return and_sac;
    case ConnectiveId::OrSAC: return or_sac;
    case ConnectiveId::AndGNW: return and_gnw;
    case ConnectiveId::OrGNW: return or_gnw;
    case ConnectiveId::AndSch: return and_sch;
    case ConnectiveId::OrSch: return or_sch;
    case ConnectiveId::CondSAC: return cond_sac;
    case ConnectiveId::CondGNW: return cond_gnw;
    case ConnectiveId::Sqcap: return sqcap;
    case ConnectiveId::Not0: break;
  }
  throw std::invalid_argument("connective " + std::string(to_string(c)) + " is unary");
}

}  // namespace

std::string_view to_string(Value3 v) {
  switch (v) {
    case Value3::False: return "0";
    case Value3::True: return "1";
    case Value3::Undef: return "⊥";
  }
  return "?";
}

std::string_view to_string(ConnectiveId c) {
  switch (c) {
    case ConnectiveId::AndSAC: return "and_SAC";
    case ConnectiveId::OrSAC: return "or_SAC";
    case ConnectiveId::AndGNW: return "and_GNW";
    case ConnectiveId::OrGNW: return "or_GNW";
    case ConnectiveId::AndSch: return "and_Sch";
    case ConnectiveId::OrSch: return "or_Sch";
    case ConnectiveId::Not0: return "not_0";
    case ConnectiveId::CondSAC: return "cond_SAC";
    case ConnectiveId::CondGNW: return "cond_GNW";
    case ConnectiveId::Sqcap: return "sqcap";
  }
  return "?";
}

std::string_view to_string(PresentCea which) {
  switch (which) {
    case PresentCea::SAC: return "SAC";
    case PresentCea::GNW: return "GNW";
    case PresentCea::Sch: return "Sch";
  }
  return "?";
}

Value3 apply_unary(ConnectiveId conn, Value3 x) {
  if (!is_unary(conn)) {
    throw std::invalid_argument("connective " + std::string(to_string(conn)) + " is binary");
  }
  switch (x) {
    case Value3::False: return Value3::True;
    case Value3::True: return Value3::False;
    case Value3::Undef: return Value3::Undef;
  }
  return Value3::Undef;
}

Value3 apply_binary(ConnectiveId conn, Value3 x, Value3 y) {
  return table_of(conn)[idx(x)][idx(y)];
}

PresentConnectives connectives_of(PresentCea which) {
  switch (which) {
    case PresentCea::SAC:
      return {ConnectiveId::AndSAC, ConnectiveId::OrSAC, ConnectiveId::Not0, true,
              ConnectiveId::CondSAC};
    case PresentCea::GNW:
      return {ConnectiveId::AndGNW, ConnectiveId::OrGNW, ConnectiveId::Not0, true,
              ConnectiveId::CondGNW};
    case PresentCea::Sch:
      return {ConnectiveId::AndSch, ConnectiveId::OrSch, ConnectiveId::Not0, false,
              ConnectiveId::CondSAC};
  }
  throw std::invalid_argument("unknown algebra");
}

Value3 eval_cea_valuation(const CeaExpr& e, const Valuation& v, PresentCea which) {
  const auto conn = connectives_of(which);
  switch (e.op()) {
    case CeaOp::Var: {
      auto it = v.find(e.var_name());
      if (it == v.end()) throw std::invalid_argument("unbound variable '" + e.var_name() + "'");
      return it->second;
    }
    case CeaOp::Simple:
      throw std::invalid_argument("simple conditional leaf has no variable valuation");
    case CeaOp::Neg:
      return apply_unary(conn.neg, eval_cea_valuation(e.operand(), v, which));
    case CeaOp::And:
      return apply_binary(conn.conj, eval_cea_valuation(e.lhs(), v, which),
                          eval_cea_valuation(e.rhs(), v, which));
    case CeaOp::Or:
      return apply_binary(conn.disj, eval_cea_valuation(e.lhs(), v, which),
                          eval_cea_valuation(e.rhs(), v, which));
    case CeaOp::Cond:
      if (!conn.has_cond) throw std::domain_error("Sch has no re-conditioning operator");
      return apply_binary(conn.cond, eval_cea_valuation(e.lhs(), v, which),
                          eval_cea_valuation(e.rhs(), v, which));
  }
  throw std::logic_error("unreachable");
}

}  // namespace condtl
