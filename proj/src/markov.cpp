#include "condtl/markov.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "condtl/eval.hpp"

namespace condtl {

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(std::string_view text) {
  static const std::regex shape(R"(\s*(\d+)(?:\s*/\s*(\d+))?\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, shape)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  mpz_class num(m[1].str());
  mpz_class den(m[2].matched ? m[2].str() : "1");
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_decimal(const Rational& r, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = sgn(r) < 0;
  Rational scaled = abs(r) * scale + Rational(1, 2);
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string s = rounded.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) {
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  }
  std::string out = negative && rounded != 0 ? "-" : "";
  out += s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return out;
}

// ---------------------------------------------------------------------------
// Distributions

ProbAssignment::ProbAssignment(EventAlgebra alg, std::vector<Rational> mass)
    : alg_(std::move(alg)), mass_(std::move(mass)) {
  if (mass_.size() != alg_.atom_count()) {
    throw std::invalid_argument("expected " + std::to_string(alg_.atom_count()) +
                                " atom masses, got " + std::to_string(mass_.size()));
  }
  Rational total = 0;
  for (std::size_t a = 0; a < mass_.size(); ++a) {
    if (sgn(mass_[a]) < 0) {
      throw std::invalid_argument("negative mass for atom " + alg_.atom_name(static_cast<Atom>(a)));
    }
    total += mass_[a];
  }
  if (total != 1) throw std::invalid_argument("atom masses sum to " + to_string(total) + ", not 1");
}

ProbAssignment ProbAssignment::independent(EventAlgebra alg, const std::vector<Rational>& marginals) {
  if (marginals.size() != alg.size()) {
    throw std::invalid_argument("expected one marginal per event");
  }
  for (const auto& p : marginals) {
    if (sgn(p) < 0 || p > 1) throw std::invalid_argument("marginal outside [0,1]: " + to_string(p));
  }
  std::vector<Rational> mass(alg.atom_count());
  for (Atom a = 0; a < mass.size(); ++a) {
    Rational m = 1;
    for (std::size_t i = 0; i < marginals.size(); ++i) {
      m *= ((a >> i) & 1U) ? marginals[i] : Rational(1) - marginals[i];
    }
    mass[a] = m;
  }
  return ProbAssignment(std::move(alg), std::move(mass));
}

Rational ProbAssignment::measure(const std::vector<bool>& atoms) const {
  if (atoms.size() != mass_.size()) throw std::invalid_argument("atom set of the wrong size");
  Rational total = 0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (atoms[a]) total += mass_[a];
  }
  return total;
}

Rational ProbAssignment::measure(const Formula& propositional) const {
  if (!propositional.is_propositional()) {
    throw std::invalid_argument("measure needs a formula without temporal operators");
  }
  const TraceEvaluator ev(propositional);
  Rational total = 0;
  for (Atom a = 0; a < mass_.size(); ++a) {
    if (ev.evaluate(Word{a})[0]) total += mass_[a];
  }
  return total;
}

DistributionError::DistributionError(const std::string& msg, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

ProbAssignment parse_distribution(std::string_view text) {
  std::optional<EventAlgebra> alg;
  std::vector<std::optional<Rational>> mass;
  std::optional<std::vector<Rational>> marginals;
  int independent_line = 0;
  int atom_lines = 0;
  int line_no = 0;
  int last_line = 0;

  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    last_line = line_no;
    const auto colon = line.rfind(':');
    if (colon == std::string::npos) throw DistributionError("expected 'key: value'", line_no);
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));

    try {
      if (key == "events") {
        if (alg) throw DistributionError("duplicate 'events' header", line_no);
        alg.emplace(split_ws(value));
        mass.assign(alg->atom_count(), std::nullopt);
        continue;
      }
      if (!alg) throw DistributionError("'events:' header must come first", line_no);
      if (key == "independent") {
        if (marginals) throw DistributionError("duplicate 'independent' line", line_no);
        std::vector<std::optional<Rational>> given(alg->size());
        for (const auto& item : split_ws(value)) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) throw DistributionError("expected 'event=p', got '" + item + "'", line_no);
          const auto idx = alg->index_of(item.substr(0, eq));
          if (!idx) throw DistributionError("unknown event '" + item.substr(0, eq) + "'", line_no);
          if (given[*idx]) throw DistributionError("event '" + item.substr(0, eq) + "' given twice", line_no);
          given[*idx] = parse_rational(item.substr(eq + 1));
        }
        marginals.emplace();
        for (std::size_t i = 0; i < given.size(); ++i) {
          if (!given[i]) throw DistributionError("no probability for event '" + alg->name(i) + "'", line_no);
          marginals->push_back(*given[i]);
        }
        independent_line = line_no;
        continue;
      }
      if (key.rfind("atom", 0) == 0) {
        const std::string set = trim(std::string_view(key).substr(4));
        if (set.size() < 2 || set.front() != '{' || set.back() != '}') {
          throw DistributionError("expected 'atom {events}: p'", line_no);
        }
        Atom atom = 0;
        for (const auto& ev : split_ws(std::string_view(set).substr(1, set.size() - 2))) {
          const auto idx = alg->index_of(ev);
          if (!idx) throw DistributionError("unknown event '" + ev + "'", line_no);
          if ((atom >> *idx) & 1U) throw DistributionError("event '" + ev + "' repeated", line_no);
          atom |= Atom{1} << *idx;
        }
        if (mass[atom]) throw DistributionError("atom " + alg->atom_name(atom) + " given twice", line_no);
        mass[atom] = parse_rational(value);
        ++atom_lines;
        continue;
      }
      throw DistributionError("unknown key '" + key + "'", line_no);
    } catch (const std::invalid_argument& e) {
      throw DistributionError(e.what(), line_no);
    }
  }

  if (!alg) throw DistributionError("missing 'events:' header", line_no);
  if (marginals && atom_lines > 0) {
    throw DistributionError("'independent' cannot be combined with atom lines", independent_line);
  }
  try {
    if (marginals) return ProbAssignment::independent(*alg, *marginals);
    std::vector<Rational> full;
    for (Atom a = 0; a < mass.size(); ++a) {
      if (!mass[a]) throw DistributionError("no mass for atom " + alg->atom_name(a), last_line);
      full.push_back(*mass[a]);
    }
    return ProbAssignment(*alg, std::move(full));
  } catch (const std::invalid_argument& e) {
    throw DistributionError(e.what(), marginals ? independent_line : last_line);
  }
}

ProbAssignment load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distribution file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_distribution(ss.str());
  } catch (const DistributionError& e) {
    throw DistributionError(path + ": " + e.what(), e.line());
  }
}

// ---------------------------------------------------------------------------
// Chains

Rational MarkovChain3::transition(State i, State j) const {
  for (const auto& [k, p] : rows.at(i)) {
    if (k == j) return p;
  }
  return 0;
}

RationalMatrix MarkovChain3::dense() const {
  RationalMatrix m(size(), std::vector<Rational>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& [j, p] : rows[i]) m[i][j] = p;
  }
  return m;
}

MarkovChain3 chain_from_machine(const MooreMachine& m, const ProbAssignment& p) {
  if (m.algebra() != p.algebra()) {
    throw std::invalid_argument("machine and distribution use different events");
  }
  MarkovChain3 ch;
  const std::size_t n = m.state_count();
  ch.labels = m.labels();
  ch.initial.assign(n, 0);
  ch.rows.resize(n);
  for (Atom a = 0; a < m.atom_count(); ++a) {
    if (sgn(p.mass(a)) > 0) ch.initial[m.next(m.initial(), a)] += p.mass(a);
  }
  std::vector<Rational> row(n);
  for (State q = 0; q < n; ++q) {
    std::fill(row.begin(), row.end(), Rational(0));
    for (Atom a = 0; a < m.atom_count(); ++a) row[m.next(q, a)] += p.mass(a);
    for (State j = 0; j < n; ++j) {
      if (sgn(row[j]) > 0) ch.rows[q].emplace_back(j, row[j]);
    }
  }
  return ch;
}

namespace {

LabelMass aggregate(const std::vector<Rational>& dist, const std::vector<Value3>& labels) {
  LabelMass out{0, 0, 0};
  for (std::size_t i = 0; i < dist.size(); ++i) {
    switch (labels[i]) {
      case Value3::True: out.p1 += dist[i]; break;
      case Value3::False: out.p0 += dist[i]; break;
      case Value3::Undef: out.pbot += dist[i]; break;
    }
  }
  return out;
}

std::vector<Rational> advance(const MarkovChain3& ch, const std::vector<Rational>& dist) {
  std::vector<Rational> out(ch.size());
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (sgn(dist[i]) == 0) continue;
    for (const auto& [j, p] : ch.rows[i]) out[j] += dist[i] * p;
  }
  return out;
}

}  // namespace

std::optional<Rational> ratio(const LabelMass& m) {
  const Rational defined = m.p1 + m.p0;
  if (sgn(defined) == 0) return std::nullopt;
  return Rational(m.p1 / defined);
}

std::vector<LabelMass> pr_series(const MarkovChain3& ch, std::size_t n_max) {
  std::vector<LabelMass> out;
  out.reserve(n_max);
  std::vector<Rational> dist = ch.initial;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) dist = advance(ch, dist);
    out.push_back(aggregate(dist, ch.labels));
  }
  return out;
}

LabelMass pr_n(const MarkovChain3& ch, std::size_t n) {
  if (n == 0) throw std::invalid_argument("time starts at 1");
  return pr_series(ch, n).back();
}

std::optional<Rational> pr_n_ratio(const MarkovChain3& ch, std::size_t n) {
  return ratio(pr_n(ch, n));
}

// ---------------------------------------------------------------------------
// Linear algebra

SingularSystemError::SingularSystemError() : std::runtime_error("singular linear system") {}

PeriodicClassError::PeriodicClassError(std::size_t period)
    : std::runtime_error("limit may not exist: reachable closed class has period " +
                         std::to_string(period)) {}

RationalMatrix solve_linear(RationalMatrix A, RationalMatrix B) {
  const std::size_t n = A.size();
  if (B.size() != n) throw std::invalid_argument("right-hand side has the wrong number of rows");
  const std::size_t k = n == 0 ? 0 : B[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n || B[i].size() != k) throw std::invalid_argument("ragged matrix");
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(A[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw SingularSystemError();
    std::swap(A[pivot], A[col]);
    std::swap(B[pivot], B[col]);
    const Rational inv = 1 / A[col][col];
    for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
    for (std::size_t j = 0; j < k; ++j) B[col][j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(A[r][col]) == 0) continue;
      const Rational f = A[r][col];
      for (std::size_t j = col; j < n; ++j) A[r][j] -= f * A[col][j];
      for (std::size_t j = 0; j < k; ++j) B[r][j] -= f * B[col][j];
    }
  }
  return B;
}

RationalMatrix absorbing_solve(const RationalMatrix& Q, const RationalMatrix& R) {
  const std::size_t n = Q.size();
  if (R.size() != n) throw std::invalid_argument("Q and R have different row counts");
  RationalMatrix A(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (Q[i].size() != n) throw std::invalid_argument("Q is not square");
    for (std::size_t j = 0; j < n; ++j) A[i][j] = (i == j ? Rational(1) : Rational(0)) - Q[i][j];
  }
  return solve_linear(std::move(A), R);
}

std::vector<Rational> stationary(const RationalMatrix& P) {
  const std::size_t n = P.size();
  if (n == 0) throw std::invalid_argument("empty chain");
  // πP = π with Σπ = 1: transpose, replacing the last balance equation
  // by the normalization.
  RationalMatrix A(n, std::vector<Rational>(n));
  RationalMatrix b(n, std::vector<Rational>(1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A[i][j] = P[j][i] - (i == j ? 1 : 0);
  }
  for (std::size_t j = 0; j < n; ++j) A[n - 1][j] = 1;
  b[n - 1][0] = 1;
  const RationalMatrix x = solve_linear(std::move(A), std::move(b));
  std::vector<Rational> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = x[i][0];
  return pi;
}

// ---------------------------------------------------------------------------
// Limits

namespace {

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order (sinks first).
std::vector<std::vector<State>> strong_components(const MarkovChain3& ch,
                                                  const std::vector<bool>& alive) {
  const std::size_t n = ch.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> comps;
  std::size_t counter = 0;

  for (State root = 0; root < n; ++root) {
    if (!alive[root] || index[root] != unvisited) continue;
    std::vector<std::pair<State, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < ch.rows[v].size()) {
        const State w = ch.rows[v][edge++].first;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const State done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<State> comp;
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

std::size_t class_period(const MarkovChain3& ch, const std::vector<State>& comp,
                         const std::vector<std::size_t>& comp_of, std::size_t id) {
  std::vector<std::ptrdiff_t> level(ch.size(), -1);
  std::vector<State> queue{comp.front()};
  level[comp.front()] = 0;
  std::size_t g = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const State u = queue[i];
    for (const auto& [v, p] : ch.rows[u]) {
      if (comp_of[v] != id) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      } else {
        const auto d = level[u] + 1 - level[v];
        g = std::gcd(g, static_cast<std::size_t>(d < 0 ? -d : d));
      }
    }
  }
  return g;
}

}  // namespace

LabelMass limit_label_mass(const MarkovChain3& ch) {
  const std::size_t n = ch.size();
  std::vector<bool> alive(n, false);
  std::vector<State> work;
  for (State i = 0; i < n; ++i) {
    if (sgn(ch.initial[i]) > 0) {
      alive[i] = true;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    const State u = work.back();
    work.pop_back();
    for (const auto& [v, p] : ch.rows[u]) {
      if (!alive[v]) {
        alive[v] = true;
        work.push_back(v);
      }
    }
  }

  const auto comps = strong_components(ch, alive);
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp_of(n, none);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (State s : comps[c]) comp_of[s] = c;
  }

  // Closed classes and their stationary label mass.
  std::vector<std::size_t> class_index(comps.size(), none);
  std::vector<LabelMass> class_mass;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    bool closed = true;
    for (State s : comps[c]) {
      for (const auto& [t, p] : ch.rows[s]) closed = closed && comp_of[t] == c;
    }
    if (!closed) continue;
    if (const auto period = class_period(ch, comps[c], comp_of, c); period != 1) {
      throw PeriodicClassError(period);
    }
    const auto& members = comps[c];
    RationalMatrix block(members.size(), std::vector<Rational>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (const auto& [t, p] : ch.rows[members[i]]) {
        const auto pos = std::lower_bound(members.begin(), members.end(), t) - members.begin();
        block[i][static_cast<std::size_t>(pos)] = p;
      }
    }
    const auto pi = stationary(block);
    std::vector<Value3> labels;
    for (State s : members) labels.push_back(ch.labels[s]);
    class_index[c] = class_mass.size();
    class_mass.push_back(aggregate(pi, labels));
  }
  const std::size_t classes = class_mass.size();

  // Absorption probabilities of every reachable state, one transient
  // component at a time; sinks come first in Tarjan order.
  std::vector<std::vector<Rational>> absorb(n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& members = comps[c];
    if (class_index[c] != none) {
      for (State s : members) {
        absorb[s].assign(classes, 0);
        absorb[s][class_index[c]] = 1;
      }
      continue;
    }
    RationalMatrix Q(members.size(), std::vector<Rational>(members.size()));
    RationalMatrix R(members.size(), std::vector<Rational>(classes));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (const auto& [t, p] : ch.rows[members[i]]) {
        if (comp_of[t] == c) {
          const auto pos = std::lower_bound(members.begin(), members.end(), t) - members.begin();
          Q[i][static_cast<std::size_t>(pos)] = p;
        } else {
          for (std::size_t k = 0; k < classes; ++k) R[i][k] += p * absorb[t][k];
        }
      }
    }
    const auto B = absorbing_solve(Q, R);
    for (std::size_t i = 0; i < members.size(); ++i) absorb[members[i]] = B[i];
  }

  LabelMass out{0, 0, 0};
  for (State s = 0; s < n; ++s) {
    if (sgn(ch.initial[s]) == 0) continue;
    for (std::size_t k = 0; k < classes; ++k) {
      const Rational w = ch.initial[s] * absorb[s][k];
      out.p1 += w * class_mass[k].p1;
      out.p0 += w * class_mass[k].p0;
      out.pbot += w * class_mass[k].pbot;
    }
  }
  return out;
}

std::optional<Rational> asymptotic(const MarkovChain3& ch) { return ratio(limit_label_mass(ch)); }

}  // namespace condtl
