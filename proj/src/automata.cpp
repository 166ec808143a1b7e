#include "condtl/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace condtl {

MooreMachine::MooreMachine(EventAlgebra alg, State initial, std::vector<State> delta,
                           std::vector<Value3> labels)
    : alg_(std::move(alg)),
      atoms_(alg_.atom_count()),
      initial_(initial),
      delta_(std::move(delta)),
      labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("machine needs at least one state");
  if (delta_.size() != labels_.size() * atoms_) {
    throw std::invalid_argument("transition table is not total");
  }
  if (initial_ >= labels_.size()) throw std::invalid_argument("initial state out of range");
  for (State s : delta_) {
    if (s >= labels_.size()) throw std::invalid_argument("transition to a nonexistent state");
  }
}

bool MooreMachine::initial_reentered() const {
  return std::find(delta_.begin(), delta_.end(), initial_) != delta_.end();
}

std::vector<Value3> MooreMachine::run(const Word& w) const {
  std::vector<Value3> out;
  out.reserve(w.size());
  State q = initial_;
  for (Atom a : w) {
    if (a >= atoms_) throw std::out_of_range("atom outside the machine's alphabet");
    q = next(q, a);
    out.push_back(labels_[q]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

struct Program {
  struct Step {
    Op op;
    std::size_t event;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Step> steps;
  std::size_t num;
  std::size_t den;
  std::vector<std::size_t> remembered;  // step indices whose last value is kept
  std::vector<std::size_t> slot;        // step index -> position in `remembered`

  Program(const Formula& phi, const Formula& psi) {
    std::map<Formula, std::size_t> index;
    auto visit = [&](auto&& self, const Formula& g) -> std::size_t {
      if (auto it = index.find(g); it != index.end()) return it->second;
      Step s{g.op(), g.op() == Op::Atom ? g.event() : 0, 0, 0};
      if (g.arity() > 0) s.a = self(self, g.arg(0));
      if (g.arity() > 1) s.b = self(self, g.arg(1));
      if (s.op == Op::Once || s.op == Op::Historically) {
        throw std::logic_error("compile expects desugared formulas");
      }
      steps.push_back(s);
      index.emplace(g, steps.size() - 1);
      return steps.size() - 1;
    };
    num = visit(visit, phi);
    den = visit(visit, psi);
    std::set<std::size_t> keep;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      if (steps[k].op == Op::Prev) keep.insert(steps[k].a);
      if (steps[k].op == Op::Since) keep.insert(k);
    }
    remembered.assign(keep.begin(), keep.end());
    slot.assign(steps.size(), 0);
    for (std::size_t i = 0; i < remembered.size(); ++i) slot[remembered[i]] = i;
  }

  /// One letter of input. `prev` is null before the first letter.
  std::pair<std::vector<bool>, Value3> step(const std::vector<bool>* prev, Atom atom) const {
    std::vector<bool> cur(steps.size());
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const Step& s = steps[k];
      bool v = false;
      switch (s.op) {
        case Op::Atom: v = (atom >> s.event) & 1U; break;
        case Op::True: v = true; break;
        case Op::False: v = false; break;
        case Op::Not: v = !cur[s.a]; break;
        case Op::Or: v = cur[s.a] || cur[s.b]; break;
        case Op::And: v = cur[s.a] && cur[s.b]; break;
        case Op::Implies: v = !cur[s.a] || cur[s.b]; break;
        case Op::Iff: v = cur[s.a] == cur[s.b]; break;
        case Op::Prev: v = prev && (*prev)[slot[s.a]]; break;
        case Op::Since: v = cur[s.b] || (cur[s.a] && prev && (*prev)[slot[k]]); break;
        case Op::Once:
        case Op::Historically: break;
      }
      cur[k] = v;
    }
    std::vector<bool> memory(remembered.size());
    for (std::size_t i = 0; i < remembered.size(); ++i) memory[i] = cur[remembered[i]];
    const Value3 label = cur[den] ? to_value3(cur[num]) : Value3::Undef;
    return {std::move(memory), label};
  }
};

}  // namespace

MooreMachine compile(const CondObject& c, const EventAlgebra& alg) {
  const Program prog(desugar(c.numerator), desugar(c.denominator));
  const std::size_t atoms = alg.atom_count();

  using Key = std::pair<std::vector<bool>, Value3>;
  std::map<Key, State> ids;
  std::vector<const Key*> key_of{nullptr};  // state 0 is the initial state
  std::vector<Value3> labels{Value3::Undef};
  std::vector<State> delta(atoms);
  std::deque<State> work{0};

  while (!work.empty()) {
    const State q = work.front();
    work.pop_front();
    const std::vector<bool>* prev = q == 0 ? nullptr : &key_of[q]->first;
    for (Atom a = 0; a < atoms; ++a) {
      auto [memory, label] = prog.step(prev, a);
      auto [it, fresh] = ids.try_emplace(Key{std::move(memory), label},
                                         static_cast<State>(labels.size()));
      if (fresh) {
        key_of.push_back(&it->first);
        labels.push_back(label);
        delta.resize(delta.size() + atoms);
        work.push_back(it->second);
        // `prev` may point into a node of `ids`; std::map nodes are stable.
      }
      delta[q * atoms + a] = it->second;
    }
  }
  return MooreMachine(alg, 0, std::move(delta), std::move(labels));
}

// ---------------------------------------------------------------------------
// Canonical form and minimization

MooreMachine canonical(const MooreMachine& m) {
  const std::size_t atoms = m.atom_count();
  std::vector<State> order;
  std::vector<State> number(m.state_count(), static_cast<State>(-1));
  number[m.initial()] = 0;
  order.push_back(m.initial());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Atom a = 0; a < atoms; ++a) {
      const State t = m.next(order[i], a);
      if (number[t] == static_cast<State>(-1)) {
        number[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<State> delta(order.size() * atoms);
  std::vector<Value3> labels(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    labels[i] = m.label(order[i]);
    for (Atom a = 0; a < atoms; ++a) delta[i * atoms + a] = number[m.next(order[i], a)];
  }
  return MooreMachine(m.algebra(), 0, std::move(delta), std::move(labels));
}

MooreMachine minimize(const MooreMachine& input) {
  const MooreMachine m = canonical(input);
  const std::size_t n = m.state_count();
  const std::size_t atoms = m.atom_count();
  // A never re-entered initial state has an unemitted label: it is left out
  // of the label-respecting refinement and afterwards joined to any block
  // whose successors agree with its own.
  const bool free_initial = !m.initial_reentered();
  const State first = free_initial ? 1 : 0;

  std::vector<std::uint32_t> block(n, 0);
  std::size_t blocks = 0;
  {
    std::map<Value3, std::uint32_t> by_label;
    for (State q = first; q < n; ++q) {
      auto [it, fresh] = by_label.try_emplace(m.label(q), static_cast<std::uint32_t>(by_label.size()));
      block[q] = it->second;
    }
    blocks = by_label.size();
  }
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sigs;
    std::vector<std::uint32_t> refined(n, 0);
    std::vector<std::uint32_t> sig(atoms + 1);
    for (State q = first; q < n; ++q) {
      sig[0] = block[q];
      for (Atom a = 0; a < atoms; ++a) sig[a + 1] = block[m.next(q, a)];
      auto [it, fresh] = sigs.try_emplace(sig, static_cast<std::uint32_t>(sigs.size()));
      refined[q] = it->second;
    }
    block = std::move(refined);
    if (sigs.size() == blocks) break;
    blocks = sigs.size();
  }

  std::vector<State> rep(blocks, 0);
  std::vector<bool> seen(blocks, false);
  for (State q = first; q < n; ++q) {
    if (!seen[block[q]]) {
      seen[block[q]] = true;
      rep[block[q]] = q;
    }
  }

  std::vector<Value3> labels(blocks);
  for (std::size_t b = 0; b < blocks; ++b) labels[b] = m.label(rep[b]);

  State initial_block = static_cast<State>(blocks);
  if (free_initial) {
    // Candidates carry pairwise distinct labels, so preferring the smallest
    // label is a choice that depends only on the computed function.
    for (std::size_t b = 0; b < blocks; ++b) {
      bool same = true;
      for (Atom a = 0; a < atoms && same; ++a) {
        same = block[m.next(rep[b], a)] == block[m.next(m.initial(), a)];
      }
      if (same && (initial_block == blocks || labels[b] < labels[initial_block])) {
        initial_block = static_cast<State>(b);
      }
    }
  } else {
    initial_block = block[m.initial()];
  }

  const bool own_state = initial_block == blocks;
  const std::size_t total = blocks + (own_state ? 1 : 0);
  std::vector<State> delta(total * atoms);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (Atom a = 0; a < atoms; ++a) delta[b * atoms + a] = block[m.next(rep[b], a)];
  }
  if (own_state) {
    labels.push_back(m.label(m.initial()));
    for (Atom a = 0; a < atoms; ++a) delta[blocks * atoms + a] = block[m.next(m.initial(), a)];
  }
  return canonical(MooreMachine(m.algebra(), initial_block, std::move(delta), std::move(labels)));
}

bool isomorphic(const MooreMachine& a, const MooreMachine& b) {
  if (a.algebra() != b.algebra()) return false;
  const MooreMachine ca = canonical(a);
  const MooreMachine cb = canonical(b);
  if (ca.state_count() != cb.state_count() || ca.transitions() != cb.transitions()) return false;
  const State from = ca.initial_reentered() ? 0 : 1;
  for (State q = from; q < ca.state_count(); ++q) {
    if (ca.label(q) != cb.label(q)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Product

MooreMachine product(std::span<const MooreMachine> machines, const LabelCombiner& combiner) {
  if (machines.size() != combiner.arity) {
    throw std::invalid_argument("product of " + std::to_string(machines.size()) +
                                " machines with a combiner of arity " +
                                std::to_string(combiner.arity));
  }
  if (machines.empty()) throw std::invalid_argument("product of no machines");
  const EventAlgebra& alg = machines.front().algebra();
  for (const auto& m : machines) {
    if (m.algebra() != alg) throw std::invalid_argument("machines have different alphabets");
  }
  const std::size_t atoms = alg.atom_count();
  const std::size_t k = machines.size();

  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> tuples;
  std::vector<Value3> labels;
  std::vector<State> delta;
  std::vector<Value3> parts(k);

  auto intern = [&](std::vector<State> t) {
    auto [it, fresh] = ids.try_emplace(t, static_cast<State>(tuples.size()));
    if (fresh) {
      for (std::size_t i = 0; i < k; ++i) parts[i] = machines[i].label(t[i]);
      labels.push_back(combiner.combine(parts));
      tuples.push_back(std::move(t));
      delta.resize(delta.size() + atoms);
    }
    return it->second;
  };

  std::vector<State> init(k);
  for (std::size_t i = 0; i < k; ++i) init[i] = machines[i].initial();
  intern(std::move(init));
  for (std::size_t q = 0; q < tuples.size(); ++q) {
    for (Atom a = 0; a < atoms; ++a) {
      std::vector<State> t(k);
      for (std::size_t i = 0; i < k; ++i) t[i] = machines[i].next(tuples[q][i], a);
      const State target = intern(std::move(t));
      delta[q * atoms + a] = target;
    }
  }
  return MooreMachine(alg, 0, std::move(delta), std::move(labels));
}

// ---------------------------------------------------------------------------
// Counter-freeness

MonoidTooLarge::MonoidTooLarge(std::size_t cap)
    : std::runtime_error("transition monoid exceeds " + std::to_string(cap) + " elements") {}

namespace {

struct MapHash {
  std::size_t operator()(const std::vector<State>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (State s : v) h = (h ^ s) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

bool is_counter_free(const MooreMachine& m, std::size_t monoid_cap) {
  const std::size_t n = m.state_count();
  const std::size_t atoms = m.atom_count();

  std::unordered_set<std::vector<State>, MapHash> gens_set;
  for (Atom a = 0; a < atoms; ++a) {
    std::vector<State> g(n);
    for (State q = 0; q < n; ++q) g[q] = m.next(q, a);
    gens_set.insert(std::move(g));
  }
  const std::vector<std::vector<State>> gens(gens_set.begin(), gens_set.end());

  std::unordered_set<std::vector<State>, MapHash> monoid(gens.begin(), gens.end());
  if (monoid.size() > monoid_cap) throw MonoidTooLarge(monoid_cap);
  std::deque<const std::vector<State>*> work;
  for (const auto& t : monoid) work.push_back(&t);
  while (!work.empty()) {
    const std::vector<State>& t = *work.front();
    work.pop_front();
    for (const auto& g : gens) {
      std::vector<State> u(n);
      for (State q = 0; q < n; ++q) u[q] = g[t[q]];
      auto [it, fresh] = monoid.insert(std::move(u));
      if (fresh) {
        if (monoid.size() > monoid_cap) throw MonoidTooLarge(monoid_cap);
        work.push_back(&*it);
      }
    }
  }

  // t^n is idempotent-stable for aperiodic t; check t^n = t^{n+1}.
  std::vector<State> power(n);
  std::vector<State> tmp(n);
  for (const auto& t : monoid) {
    power = t;
    for (std::size_t i = 1; i < n; ++i) {
      for (State q = 0; q < n; ++q) tmp[q] = t[power[q]];
      power.swap(tmp);
    }
    for (State q = 0; q < n; ++q) {
      if (t[power[q]] != power[q]) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// DOT export

std::string describe_atoms(const std::vector<bool>& atoms, const EventAlgebra& alg) {
  const std::size_t k = alg.size();
  const Atom full = static_cast<Atom>(alg.atom_count() - 1);
  if (std::none_of(atoms.begin(), atoms.end(), [](bool b) { return b; })) return "false";
  if (std::all_of(atoms.begin(), atoms.end(), [](bool b) { return b; })) return "true";

  // Greedy cube cover: grow each uncovered minterm by dropping literals
  // while the cube stays inside the set.
  auto inside = [&](Atom care, Atom value) {
    const Atom free = full & ~care;
    for (Atom sub = free;; sub = (sub - 1) & free) {
      if (!atoms[value | sub]) return false;
      if (sub == 0) return true;
    }
  };
  std::vector<bool> covered(atoms.size(), false);
  std::vector<std::string> cubes;
  for (Atom a = 0; a <= full; ++a) {
    if (!atoms[a] || covered[a]) continue;
    Atom care = full;
    for (std::size_t i = 0; i < k; ++i) {
      const Atom trial = care & ~(Atom{1} << i);
      if (inside(trial, a & trial)) care = trial;
    }
    const Atom value = a & care;
    const Atom free = full & ~care;
    for (Atom sub = free;; sub = (sub - 1) & free) {
      covered[value | sub] = true;
      if (sub == 0) break;
    }
    std::string cube;
    for (std::size_t i = 0; i < k; ++i) {
      if (!((care >> i) & 1U)) continue;
      if (!cube.empty()) cube += " & ";
      if (!((value >> i) & 1U)) cube += '!';
      cube += alg.name(i);
    }
    cubes.push_back(cube.empty() ? "true" : cube);
  }
  std::string out;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (i) out += " | ";
    out += cubes[i];
  }
  return out;
}

std::string to_dot(const MooreMachine& m, std::string_view name) {
  const std::size_t atoms = m.atom_count();
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  os << "  start [shape=point];\n";
  for (State q = 0; q < m.state_count(); ++q) {
    os << "  q" << q << " [label=\"" << to_string(m.label(q)) << "\"];\n";
  }
  os << "  start -> q" << m.initial() << ";\n";
  for (State q = 0; q < m.state_count(); ++q) {
    std::map<State, std::vector<bool>> by_target;
    for (Atom a = 0; a < atoms; ++a) {
      auto& set = by_target.try_emplace(m.next(q, a), std::vector<bool>(atoms, false)).first->second;
      set[a] = true;
    }
    for (const auto& [t, set] : by_target) {
      os << "  q" << q << " -> q" << t << " [label=\"" << describe_atoms(set, m.algebra())
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace condtl
