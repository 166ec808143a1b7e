#include "condtl/oracle.hpp"

namespace condtl {

BudgetExceeded::BudgetExceeded(std::uint64_t words, std::uint64_t budget)
    : std::runtime_error("enumeration of " + std::to_string(words) + " words exceeds the budget of " +
                         std::to_string(budget)) {}

void for_each_word(const ProbAssignment& p, std::size_t n, std::uint64_t budget,
                   const std::function<void(const Word&, const Rational&)>& visit) {
  if (n == 0) throw std::invalid_argument("words are nonempty");
  std::vector<Atom> support;
  for (Atom a = 0; a < p.masses().size(); ++a) {
    if (sgn(p.mass(a)) > 0) support.push_back(a);
  }
  std::uint64_t words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    words *= support.size();
    if (words > budget) throw BudgetExceeded(words, budget);
  }

  Word w(n);
  std::vector<Rational> mass(n + 1);
  mass[0] = 1;
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      visit(w, mass[n]);
      return;
    }
    for (Atom a : support) {
      w[depth] = a;
      mass[depth + 1] = mass[depth] * p.mass(a);
      self(self, depth + 1);
    }
  };
  dfs(dfs, 0);
}

namespace {

void bucket(LabelMass& out, Value3 v, const Rational& m) {
  switch (v) {
    case Value3::True: out.p1 += m; break;
    case Value3::False: out.p0 += m; break;
    case Value3::Undef: out.pbot += m; break;
  }
}

Value3 last_value(const TraceEvaluator& num, const TraceEvaluator& den, const Word& w) {
  if (!den.evaluate(w).back()) return Value3::Undef;
  return to_value3(num.evaluate(w).back());
}

}  // namespace

LabelMass brute_pr_n(const CondObject& c, const ProbAssignment& p, std::size_t n,
                     std::uint64_t budget) {
  const TraceEvaluator num(c.numerator);
  const TraceEvaluator den(c.denominator);
  LabelMass out{0, 0, 0};
  for_each_word(p, n, budget, [&](const Word& w, const Rational& m) {
    bucket(out, last_value(num, den, w), m);
  });
  return out;
}

std::map<OutputPair, Rational> brute_joint(const CondObject& c1, const CondObject& c2,
                                           const ProbAssignment& p, std::size_t n,
                                           std::uint64_t budget) {
  std::map<OutputPair, Rational> out;
  for_each_word(p, n, budget, [&](const Word& w, const Rational& m) {
    out[{cond_output(w, c1), cond_output(w, c2)}] += m;
  });
  return out;
}

bool brute_reverse_check(const CondObject& c, const ProbAssignment& p, std::size_t n,
                         std::uint64_t budget) {
  const TraceEvaluator num(c.numerator);
  const TraceEvaluator den(c.denominator);
  LabelMass plain{0, 0, 0};
  LabelMass reversed{0, 0, 0};
  for_each_word(p, n, budget, [&](const Word& w, const Rational& m) {
    bucket(plain, last_value(num, den, w), m);
    bucket(reversed, last_value(num, den, reverse_word(w)), m);
  });
  return plain == reversed;
}

bool brute_sequence_indep(const MooreMachine& m1, const MooreMachine& m2, const ProbAssignment& p,
                          std::size_t t_max, std::uint64_t budget) {
  using Path = std::vector<State>;
  auto path = [](const MooreMachine& m, const Word& w) {
    Path out;
    State q = m.initial();
    for (Atom a : w) out.push_back(q = m.next(q, a));
    return out;
  };
  for (std::size_t t = 1; t <= t_max; ++t) {
    std::map<std::pair<Path, Path>, Rational> joint;
    std::map<Path, Rational> left;
    std::map<Path, Rational> right;
    for_each_word(p, t, budget, [&](const Word& w, const Rational& m) {
      Path x = path(m1, w);
      Path y = path(m2, w);
      left[x] += m;
      right[y] += m;
      joint[{std::move(x), std::move(y)}] += m;
    });
    for (const auto& [x, px] : left) {
      for (const auto& [y, py] : right) {
        const auto it = joint.find({x, y});
        const Rational j = it == joint.end() ? Rational(0) : it->second;
        if (j != px * py) return false;
      }
    }
  }
  return true;
}

}  // namespace condtl
