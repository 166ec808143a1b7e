#include "condtl/eval.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace condtl {

TraceEvaluator::TraceEvaluator(const Formula& f) {
  std::map<Formula, std::size_t> index;
  auto visit = [&](auto&& self, const Formula& g) -> std::size_t {
    if (auto it = index.find(g); it != index.end()) return it->second;
    Step s{g.op(), g.op() == Op::Atom ? g.event() : 0, 0, 0};
    if (g.arity() > 0) s.a = self(self, g.arg(0));
    if (g.arity() > 1) s.b = self(self, g.arg(1));
    steps_.push_back(s);
    index.emplace(g, steps_.size() - 1);
    return steps_.size() - 1;
  };
  visit(visit, f);
}

std::vector<bool> TraceEvaluator::evaluate(const Word& w) const {
  if (w.empty()) throw std::invalid_argument("words are nonempty");
  const std::size_t n = w.size();
  std::vector<std::vector<bool>> val(steps_.size(), std::vector<bool>(n));
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    const Step& s = steps_[k];
    auto& out = val[k];
    const auto& a = val[s.a];
    const auto& b = val[s.b];
    for (std::size_t p = 0; p < n; ++p) {
      bool v = false;
      switch (s.op) {
        case Op::Atom: v = (w[p] >> s.event) & 1U; break;
        case Op::True: v = true; break;
        case Op::False: v = false; break;
        case Op::Not: v = !a[p]; break;
        case Op::Or: v = a[p] || b[p]; break;
        case Op::And: v = a[p] && b[p]; break;
        case Op::Implies: v = !a[p] || b[p]; break;
        case Op::Iff: v = a[p] == b[p]; break;
        case Op::Prev: v = p > 0 && a[p - 1]; break;
        case Op::Since:
          // ∃t ≤ p: b holds at t and a holds at every u with t < u ≤ p.
          for (std::size_t t = 0; t <= p && !v; ++t) {
            if (!b[t]) continue;
            bool all = true;
            for (std::size_t u = t + 1; u <= p && all; ++u) all = a[u];
            v = all;
          }
          break;
        case Op::Once:
          for (std::size_t t = 0; t <= p && !v; ++t) v = a[t];
          break;
        case Op::Historically:
          v = true;
          for (std::size_t t = 0; t <= p && v; ++t) v = a[t];
          break;
      }
      out[p] = v;
    }
  }
  return val.back();
}

bool eval_tl(const Word& w, std::size_t pos, const Formula& f) {
  if (pos >= w.size()) throw std::out_of_range("position outside the word");
  return TraceEvaluator(f).evaluate(w)[pos];
}

namespace {

Value3 combine(bool num, bool den) {
  if (!den) return Value3::Undef;
  return to_value3(num);
}

}  // namespace

Value3 eval_cond(const Word& w, const CondObject& c) {
  if (w.empty()) throw std::invalid_argument("words are nonempty");
  return combine(eval_tl(w, w.size() - 1, c.numerator), eval_tl(w, w.size() - 1, c.denominator));
}

std::vector<Value3> cond_output(const Word& w, const CondObject& c) {
  // Past-time formulas at position p only look at positions ≤ p, so one
  // pass over the whole word gives every prefix's value.
  const auto num = TraceEvaluator(c.numerator).evaluate(w);
  const auto den = TraceEvaluator(c.denominator).evaluate(w);
  std::vector<Value3> out(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) out[p] = combine(num[p], den[p]);
  return out;
}

Word reverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace condtl
