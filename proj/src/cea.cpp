#include "condtl/cea.hpp"

#include <algorithm>
#include <map>

#include "condtl/eval.hpp"

namespace condtl {

namespace {

using AtomSet = std::vector<bool>;

AtomSet atoms_of(const Formula& f, const EventAlgebra& alg) {
  if (!f.is_propositional()) {
    throw std::invalid_argument("conditional leaves must be event expressions, got " + pretty(f, alg));
  }
  const TraceEvaluator ev(f);
  AtomSet out(alg.atom_count());
  for (Atom a = 0; a < out.size(); ++a) out[a] = ev.evaluate(Word{a})[0];
  return out;
}

AtomSet set_and(const AtomSet& x, const AtomSet& y) {
  AtomSet out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] && y[i];
  return out;
}

AtomSet set_or(const AtomSet& x, const AtomSet& y) {
  AtomSet out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] || y[i];
  return out;
}

AtomSet set_not(const AtomSet& x) {
  AtomSet out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = !x[i];
  return out;
}

std::vector<Value3> present_values(const CeaExpr& e, const EventAlgebra& alg,
                                   const PresentConnectives& conn) {
  const std::size_t n = alg.atom_count();
  std::vector<Value3> out(n);
  switch (e.op()) {
    case CeaOp::Simple: {
      const AtomSet num = atoms_of(e.numerator(), alg);
      const AtomSet den = atoms_of(e.denominator(), alg);
      for (std::size_t a = 0; a < n; ++a) out[a] = den[a] ? to_value3(num[a]) : Value3::Undef;
      return out;
    }
    case CeaOp::Var:
      throw std::invalid_argument("variable '" + e.var_name() + "' in an event-level expression");
    case CeaOp::Neg: {
      const auto x = present_values(e.operand(), alg, conn);
      for (std::size_t a = 0; a < n; ++a) out[a] = apply_unary(conn.neg, x[a]);
      return out;
    }
    case CeaOp::And:
    case CeaOp::Or:
    case CeaOp::Cond: {
      ConnectiveId id = e.op() == CeaOp::And ? conn.conj : conn.disj;
      if (e.op() == CeaOp::Cond) {
        if (!conn.has_cond) throw std::domain_error("Sch has no re-conditioning operator");
        id = conn.cond;
      }
      const auto x = present_values(e.lhs(), alg, conn);
      const auto y = present_values(e.rhs(), alg, conn);
      for (std::size_t a = 0; a < n; ++a) out[a] = apply_binary(id, x[a], y[a]);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SimpleConditional reduce_present(const CeaExpr& e, const EventAlgebra& alg, PresentCea which) {
  const auto values = present_values(e, alg, connectives_of(which));
  SimpleConditional out{AtomSet(values.size()), AtomSet(values.size())};
  for (std::size_t a = 0; a < values.size(); ++a) {
    out.yes[a] = values[a] == Value3::True;
    out.defined[a] = is_defined(values[a]);
  }
  return out;
}

SimpleConditional reduce_by_rules(const CeaExpr& e, const EventAlgebra& alg, PresentCea which,
                                  GnwReading reading) {
  switch (e.op()) {
    case CeaOp::Simple: {
      const AtomSet den = atoms_of(e.denominator(), alg);
      return {set_and(atoms_of(e.numerator(), alg), den), den};
    }
    case CeaOp::Neg: {
      const auto x = reduce_by_rules(e.operand(), alg, which, reading);
      return {set_and(set_not(x.yes), x.defined), x.defined};
    }
    case CeaOp::And:
    case CeaOp::Or: {
      const auto l = reduce_by_rules(e.lhs(), alg, which, reading);
      const auto r = reduce_by_rules(e.rhs(), alg, which, reading);
      const AtomSet &a = l.yes, &b = l.defined, &c = r.yes, &d = r.defined;
      const AtomSet ab = set_and(a, b);
      const AtomSet cd = set_and(c, d);
      const AtomSet abcd = set_and(ab, cd);
      AtomSet num;
      AtomSet den;
      if (e.op() == CeaOp::And) {
        switch (which) {
          case PresentCea::SAC:
            num = set_or(abcd, set_or(set_and(ab, set_not(d)), set_and(cd, set_not(b))));
            den = set_or(b, d);
            break;
          case PresentCea::GNW: {
            const AtomSet guard = reading == GnwReading::Corrected ? b : d;
            num = abcd;
            den = set_or(set_and(set_not(a), guard), set_or(set_and(set_not(c), d), abcd));
            break;
          }
          case PresentCea::Sch:
            num = abcd;
            den = set_and(b, d);
            break;
        }
      } else {
        num = set_or(ab, cd);
        switch (which) {
          case PresentCea::SAC: den = set_or(b, d); break;
          case PresentCea::GNW: den = set_or(num, set_and(b, d)); break;
          case PresentCea::Sch: den = set_and(b, d); break;
        }
      }
      return {set_and(num, den), den};
    }
    case CeaOp::Var:
    case CeaOp::Cond:
      throw std::invalid_argument("rule-based reduction covers flat event-level expressions only");
  }
  throw std::logic_error("unreachable");
}

MooreMachine present_machine(const SimpleConditional& sc, const EventAlgebra& alg) {
  const std::size_t atoms = alg.atom_count();
  if (sc.yes.size() != atoms || sc.defined.size() != atoms) {
    throw std::invalid_argument("atom sets do not match the event algebra");
  }
  // State 0 is initial; states 1..3 carry the labels 0, 1, ⊥.
  std::vector<State> delta(4 * atoms);
  for (State q = 0; q < 4; ++q) {
    for (Atom a = 0; a < atoms; ++a) {
      delta[q * atoms + a] = !sc.defined[a] ? 3 : (sc.yes[a] ? 2 : 1);
    }
  }
  return minimize(MooreMachine(alg, 0, std::move(delta),
                               {Value3::Undef, Value3::False, Value3::True, Value3::Undef}));
}

std::optional<Rational> prob_present(const CeaExpr& e, const ProbAssignment& p, PresentCea which) {
  const auto sc = reduce_present(e, p.algebra(), which);
  const Rational den = p.measure(sc.defined);
  if (sgn(den) == 0) return std::nullopt;
  return Rational(p.measure(sc.yes) / den);
}

// ---------------------------------------------------------------------------
// Product-space embeddings

std::string_view to_string(Embedding e) {
  switch (e) {
    case Embedding::PSFirst: return "first";
    case Embedding::PSReverse: return "reverse";
    case Embedding::PSSparse: return "sparse";
  }
  return "?";
}

Formula first_numerator(const Formula& a, const Formula& b) {
  return tl::once(a && b && !tl::prev(tl::once(b)));
}

namespace {

Formula reverse_leaf(const Formula& a, const Formula& b) { return tl::since(!b, a && b); }

template <typename Leaf>
Formula translate(const CeaExpr& e, const Leaf& leaf) {
  switch (e.op()) {
    case CeaOp::Simple:
      if (!e.numerator().is_propositional() || !e.denominator().is_propositional()) {
        throw std::invalid_argument("product-space leaves must be event expressions");
      }
      return leaf(e.numerator(), e.denominator());
    case CeaOp::And: return translate(e.lhs(), leaf) && translate(e.rhs(), leaf);
    case CeaOp::Or: return translate(e.lhs(), leaf) || translate(e.rhs(), leaf);
    case CeaOp::Neg: return !translate(e.operand(), leaf);
    case CeaOp::Var: throw std::invalid_argument("variables have no product-space meaning");
    case CeaOp::Cond: throw std::invalid_argument("product space has no re-conditioning");
  }
  throw std::logic_error("unreachable");
}

}  // namespace

CondObject embed_ps(const CeaExpr& e, Embedding which) {
  switch (which) {
    case Embedding::PSFirst: return {translate(e, first_numerator), tl::top()};
    case Embedding::PSReverse: return {translate(e, reverse_leaf), tl::top()};
    case Embedding::PSSparse: {
      std::vector<Formula> seen;
      Formula guard = tl::bottom();
      bool any = false;
      for (const auto& leaf : simple_conditionals(e)) {
        if (std::find(seen.begin(), seen.end(), leaf.denominator) != seen.end()) continue;
        seen.push_back(leaf.denominator);
        const Formula term = leaf.denominator || !tl::once(leaf.denominator);
        guard = any ? (guard || term) : term;
        any = true;
      }
      return {translate(e, reverse_leaf), guard};
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

bool classical(const CeaExpr& e, const std::vector<CondObject>& leaves,
               std::span<const Value3> values) {
  switch (e.op()) {
    case CeaOp::Simple: {
      const CondObject key{e.numerator(), e.denominator()};
      const auto pos = std::find(leaves.begin(), leaves.end(), key) - leaves.begin();
      return values[static_cast<std::size_t>(pos)] == Value3::True;
    }
    case CeaOp::And: return classical(e.lhs(), leaves, values) && classical(e.rhs(), leaves, values);
    case CeaOp::Or: return classical(e.lhs(), leaves, values) || classical(e.rhs(), leaves, values);
    case CeaOp::Neg: return !classical(e.operand(), leaves, values);
    default: throw std::logic_error("unreachable");
  }
}

}  // namespace

MooreMachine ps_machine(const CeaExpr& e, const EventAlgebra& alg, Embedding which) {
  if (which != Embedding::PSFirst) return minimize(compile(embed_ps(e, which), alg));

  embed_ps(e, which);  // validates the expression shape
  std::vector<CondObject> leaves;
  for (const auto& c : simple_conditionals(e)) {
    if (std::find(leaves.begin(), leaves.end(), c) == leaves.end()) leaves.push_back(c);
  }
  std::vector<MooreMachine> parts;
  parts.reserve(leaves.size());
  for (const auto& c : leaves) {
    parts.push_back(minimize(compile({first_numerator(c.numerator, c.denominator), tl::top()}, alg)));
  }
  const LabelCombiner combiner{leaves.size(), [&](std::span<const Value3> v) {
                                 if (std::find(v.begin(), v.end(), Value3::Undef) != v.end()) {
                                   return Value3::Undef;
                                 }
                                 return to_value3(classical(e, leaves, v));
                               }};
  return minimize(product(parts, combiner));
}

std::optional<Rational> prob_ps(const CeaExpr& e, const ProbAssignment& p, Embedding which) {
  return asymptotic(chain_from_machine(ps_machine(e, p.algebra(), which), p));
}

// ---------------------------------------------------------------------------
// Independence

CondObject lift(const CondObject& c) { return {c.denominator, tl::top()}; }

namespace {

std::optional<Rational> prob_at(const MooreMachine& m, const ProbAssignment& p,
                                std::optional<std::size_t> n) {
  const auto ch = chain_from_machine(m, p);
  return n ? pr_n_ratio(ch, *n) : asymptotic(ch);
}

std::string show(const std::optional<Rational>& r) { return r ? to_string(*r) : "undefined"; }

}  // namespace

IndepVerdict present_indep(const CondObject& c1, const CondObject& c2, const ProbAssignment& p,
                           std::optional<std::size_t> n) {
  const EventAlgebra& alg = p.algebra();
  const MooreMachine x = minimize(compile(c1, alg));
  const MooreMachine y = minimize(compile(c2, alg));
  const MooreMachine ux = minimize(compile(lift(c1), alg));
  const MooreMachine uy = minimize(compile(lift(c2), alg));
  const LabelCombiner sch{2, [](std::span<const Value3> v) {
                            return apply_binary(ConnectiveId::AndSch, v[0], v[1]);
                          }};
  const struct {
    const MooreMachine* l;
    const MooreMachine* r;
  } cases[] = {{&x, &y}, {&x, &uy}, {&ux, &y}, {&ux, &uy}};

  for (std::size_t i = 0; i < 4; ++i) {
    const MooreMachine pair[] = {*cases[i].l, *cases[i].r};
    const auto lhs = prob_at(product(pair, sch), p, n);
    const auto pl = prob_at(*cases[i].l, p, n);
    const auto pr = prob_at(*cases[i].r, p, n);
    std::optional<Rational> rhs;
    if (pl && pr) rhs = Rational(*pl * *pr);
    if (lhs != rhs) {
      return {false, "i" + std::to_string(i + 1) + ": joint " + show(lhs) + " vs product " + show(rhs)};
    }
  }
  return {true, {}};
}

IndepVerdict strong_indep(const CondObject& c1, const CondObject& c2, const ProbAssignment& p) {
  const EventAlgebra& alg = p.algebra();
  const MooreMachine m1 = minimize(compile(c1, alg));
  const MooreMachine m2 = minimize(compile(c2, alg));
  const MarkovChain3 ch1 = chain_from_machine(m1, p);
  const MarkovChain3 ch2 = chain_from_machine(m2, p);
  using Pair = std::pair<State, State>;

  auto joint_step = [&](State i, State j) {
    std::map<Pair, Rational> out;
    for (Atom a = 0; a < alg.atom_count(); ++a) {
      if (sgn(p.mass(a)) > 0) out[{m1.next(i, a), m2.next(j, a)}] += p.mass(a);
    }
    return out;
  };
  auto pair_name = [](Pair q) {
    return "(" + std::to_string(q.first) + "," + std::to_string(q.second) + ")";
  };
  auto factorizes = [&](const std::map<Pair, Rational>& joint, const std::vector<std::pair<State, Rational>>& r1,
                        const std::vector<std::pair<State, Rational>>& r2) -> std::optional<std::string> {
    for (const auto& [k, pk] : r1) {
      for (const auto& [l, pl] : r2) {
        const auto it = joint.find({k, l});
        const Rational j = it == joint.end() ? Rational(0) : it->second;
        if (j != pk * pl) {
          return pair_name({k, l}) + ": joint " + to_string(j) + " vs product " +
                 to_string(Rational(pk * pl));
        }
      }
    }
    return std::nullopt;
  };
  auto support = [](const std::vector<Rational>& dist) {
    std::vector<std::pair<State, Rational>> out;
    for (State s = 0; s < dist.size(); ++s) {
      if (sgn(dist[s]) > 0) out.emplace_back(s, dist[s]);
    }
    return out;
  };

  const auto init = joint_step(m1.initial(), m2.initial());
  if (auto bad = factorizes(init, support(ch1.initial), support(ch2.initial))) {
    return {false, "initial pair " + *bad};
  }
  std::map<Pair, bool> seen;
  std::vector<Pair> work;
  for (const auto& [q, mass] : init) {
    seen[q] = true;
    work.push_back(q);
  }
  while (!work.empty()) {
    const Pair q = work.back();
    work.pop_back();
    const auto step = joint_step(q.first, q.second);
    if (auto bad = factorizes(step, ch1.rows[q.first], ch2.rows[q.second])) {
      return {false, "transition " + pair_name(q) + " -> " + *bad};
    }
    for (const auto& [t, mass] : step) {
      if (!seen[t]) {
        seen[t] = true;
        work.push_back(t);
      }
    }
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Weak tautologies

TautologyVerdict weak_tautology(const CeaExpr& e, PresentCea which, CeaDialect dialect,
                                std::size_t max_vars) {
  if (which == PresentCea::Sch) throw std::invalid_argument("weak tautologies are checked for SAC and GNW");
  check_dialect(e, dialect);
  const auto names = variables(e);
  if (names.size() > max_vars) {
    throw std::invalid_argument(std::to_string(names.size()) + " variables exceed the cap of " +
                                std::to_string(max_vars));
  }
  std::vector<std::size_t> digits(names.size(), 0);
  Valuation v;
  for (;;) {
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = all_values3[digits[i]];
    if (eval_cea_valuation(e, v, which) == Value3::False) return {false, v};
    std::size_t i = names.size();
    while (i > 0 && digits[i - 1] == 2) digits[--i] = 0;
    if (i == 0) break;
    ++digits[i - 1];
  }
  return {true, {}};
}

}  // namespace condtl
