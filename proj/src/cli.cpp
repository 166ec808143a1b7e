#include "condtl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "condtl/automata.hpp"
#include "condtl/cea.hpp"
#include "condtl/markov.hpp"
#include "condtl/syntax.hpp"

namespace condtl {

namespace {

struct Config {
  std::string cea = "tl";
  std::string embedding = "first";
  std::string expr;
  std::string left;
  std::string right;
  std::string dist_path;
  std::string events;
  std::optional<std::size_t> n;
  std::string mode = "present";
  std::string dialect = "full";
  std::size_t max_vars = default_max_vars;
  bool minimize = false;
  bool check_counter_free = false;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

/// Events come from the distribution file, then --events, then the sorted
/// identifiers of the expressions.
EventAlgebra resolve_events(const Config& cfg, const std::optional<ProbAssignment>& dist,
                            const std::vector<std::string>& texts) {
  std::optional<EventAlgebra> given;
  if (!cfg.events.empty()) given.emplace(split_ws(cfg.events));
  if (dist) {
    if (given && *given != dist->algebra()) {
      throw InputError("--events disagrees with the events of the distribution file");
    }
    return dist->algebra();
  }
  if (given) return *given;
  std::set<std::string> names;
  for (const auto& t : texts) {
    for (auto& id : identifiers_in(t)) names.insert(std::move(id));
  }
  return EventAlgebra(std::vector<std::string>(names.begin(), names.end()));
}

std::optional<ProbAssignment> maybe_dist(const Config& cfg) {
  if (cfg.dist_path.empty()) return std::nullopt;
  return load_distribution(cfg.dist_path);
}

ProbAssignment dist_or_half(const std::optional<ProbAssignment>& dist, const EventAlgebra& alg) {
  if (dist) return *dist;
  return ProbAssignment::independent(alg, std::vector<Rational>(alg.size(), Rational(1, 2)));
}

Embedding embedding_of(const std::string& s) {
  if (s == "first") return Embedding::PSFirst;
  if (s == "reverse") return Embedding::PSReverse;
  return Embedding::PSSparse;
}

PresentCea present_of(const std::string& s) {
  if (s == "sac") return PresentCea::SAC;
  if (s == "gnw") return PresentCea::GNW;
  return PresentCea::Sch;
}

CeaDialect dialect_of(const std::string& s) {
  if (s == "flat") return CeaDialect::Flat;
  if (s == "pure") return CeaDialect::PureConditional;
  return CeaDialect::Full;
}

bool is_present(const std::string& cea) { return cea == "sac" || cea == "gnw" || cea == "sch"; }

CeaExpr parse_event_cea(const Config& cfg, const EventAlgebra& alg) {
  const CeaDialect d = cfg.cea == "sac" || cfg.cea == "gnw" ? CeaDialect::Full : CeaDialect::Flat;
  return parse_cea(cfg.expr, alg, d);
}

/// Machine for any selector; minimized on request.
MooreMachine machine_for(const Config& cfg, const EventAlgebra& alg, bool minimized) {
  if (cfg.cea == "tl") {
    const MooreMachine m = compile(parse_cond(cfg.expr, alg), alg);
    return minimized ? minimize(m) : m;
  }
  if (cfg.cea == "ps") {
    const CeaExpr e = parse_event_cea(cfg, alg);
    const Embedding which = embedding_of(cfg.embedding);
    if (minimized) return ps_machine(e, alg, which);
    return compile(embed_ps(e, which), alg);
  }
  return present_machine(reduce_present(parse_event_cea(cfg, alg), alg, present_of(cfg.cea)), alg);
}

void print_rational(std::ostream& out, const Rational& r) {
  out << to_string(r) << " (" << to_decimal(r) << ")\n";
}

int cmd_parse(const Config& cfg, std::ostream& out) {
  const EventAlgebra alg = resolve_events(cfg, std::nullopt, {cfg.expr});
  if (cfg.cea == "tl") {
    out << pretty(parse_cond(cfg.expr, alg), alg) << "\n";
    return exit_ok;
  }
  const CeaExpr e = parse_event_cea(cfg, alg);
  out << pretty(e, alg) << "\n";
  if (cfg.cea == "ps") {
    out << "embedding: " << pretty(embed_ps(e, embedding_of(cfg.embedding)), alg) << "\n";
  } else {
    const auto sc = reduce_present(e, alg, present_of(cfg.cea));
    out << "yes: " << describe_atoms(sc.yes, alg) << "\n";
    out << "defined: " << describe_atoms(sc.defined, alg) << "\n";
  }
  return exit_ok;
}

int cmd_prob(const Config& cfg, std::ostream& out) {
  const auto dist = maybe_dist(cfg);
  const EventAlgebra alg = resolve_events(cfg, dist, {cfg.expr});
  const ProbAssignment p = dist_or_half(dist, alg);
  std::optional<Rational> r;
  if (is_present(cfg.cea)) {
    r = prob_present(parse_event_cea(cfg, alg), p, present_of(cfg.cea));
  } else {
    const auto ch = chain_from_machine(machine_for(cfg, alg, true), p);
    r = cfg.n ? pr_n_ratio(ch, *cfg.n) : asymptotic(ch);
  }
  if (!r) {
    out << "undefined\n";
    return exit_undefined;
  }
  print_rational(out, *r);
  return exit_ok;
}

int cmd_series(const Config& cfg, std::ostream& out) {
  if (!cfg.n) throw InputError("series needs --n");
  const auto dist = maybe_dist(cfg);
  const EventAlgebra alg = resolve_events(cfg, dist, {cfg.expr});
  const ProbAssignment p = dist_or_half(dist, alg);
  const auto rows = pr_series(chain_from_machine(machine_for(cfg, alg, true), p), *cfg.n);
  out << "n,p1,p0,pbot,ratio\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = ratio(rows[i]);
    out << i + 1 << ',' << to_string(rows[i].p1) << ',' << to_string(rows[i].p0) << ','
        << to_string(rows[i].pbot) << ',' << (r ? to_string(*r) : "undef") << "\n";
  }
  return exit_ok;
}

int cmd_machine(const Config& cfg, std::ostream& out) {
  const EventAlgebra alg = resolve_events(cfg, std::nullopt, {cfg.expr});
  const MooreMachine m = machine_for(cfg, alg, cfg.minimize);
  if (cfg.check_counter_free) {
    out << "// counter-free: " << (is_counter_free(m) ? "yes" : "no") << "\n";
  }
  out << to_dot(m);
  return exit_ok;
}

int cmd_taut(const Config& cfg, std::ostream& out) {
  const CeaDialect d = dialect_of(cfg.dialect);
  const auto verdict =
      weak_tautology(parse_cea_vars(cfg.expr, d), present_of(cfg.cea), d, cfg.max_vars);
  out << "weak-tautology: " << (verdict.tautology ? "yes" : "no") << "\n";
  if (!verdict.tautology) {
    out << "witness:";
    for (const auto& [name, v] : verdict.witness) out << ' ' << name << '=' << to_string(v);
    out << "\n";
  }
  return exit_ok;
}

int cmd_indep(const Config& cfg, std::ostream& out) {
  const auto dist = maybe_dist(cfg);
  const EventAlgebra alg = resolve_events(cfg, dist, {cfg.left, cfg.right});
  const ProbAssignment p = dist_or_half(dist, alg);
  const CondObject l = parse_cond(cfg.left, alg);
  const CondObject r = parse_cond(cfg.right, alg);
  const IndepVerdict v = cfg.mode == "strong" ? strong_indep(l, r, p) : present_indep(l, r, p, cfg.n);
  out << "independent: " << (v.independent ? "yes" : "no") << "\n";
  if (!v.independent) out << "witness: " << v.witness << "\n";
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Conditional temporal logic toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> all_cea{"tl", "sac", "gnw", "sch", "ps"};
  auto add_expr = [&](CLI::App* sub) {
    sub->add_option("--cea", cfg.cea, "Interpretation: tl, sac, gnw, sch or ps")
        ->check(CLI::IsMember(all_cea));
    sub->add_option("--embedding", cfg.embedding, "Product-space embedding: first, reverse, sparse")
        ->check(CLI::IsMember({"first", "reverse", "sparse"}));
    sub->add_option("--expr", cfg.expr, "Expression")->required();
    sub->add_option("--events", cfg.events, "Space-separated basic events");
  };

  auto* parse = app.add_subcommand("parse", "Parse and pretty-print an expression");
  add_expr(parse);

  auto* prob = app.add_subcommand("prob", "Asymptotic probability, or Pr_n with --n");
  add_expr(prob);
  prob->add_option("--dist", cfg.dist_path, "Distribution file");
  prob->add_option("--n", cfg.n, "Time instant")->check(CLI::PositiveNumber);

  auto* series = app.add_subcommand("series", "CSV of Pr_n for n = 1..N");
  add_expr(series);
  series->add_option("--dist", cfg.dist_path, "Distribution file");
  series->add_option("--n", cfg.n, "Last time instant")->check(CLI::PositiveNumber)->required();

  auto* machine = app.add_subcommand("machine", "Moore machine as Graphviz DOT");
  add_expr(machine);
  machine->add_flag("--minimize", cfg.minimize, "Minimize before printing");
  machine->add_flag("--check-counter-free", cfg.check_counter_free, "Report counter-freeness");

  auto* taut = app.add_subcommand("taut", "Weak-tautology check over variables");
  taut->add_option("--cea", cfg.cea, "sac or gnw")->check(CLI::IsMember({"sac", "gnw"}))->required();
  taut->add_option("--expr", cfg.expr, "Expression over variables")->required();
  taut->add_option("--dialect", cfg.dialect, "flat, pure or full")
      ->check(CLI::IsMember({"flat", "pure", "full"}));
  taut->add_option("--max-vars", cfg.max_vars, "Variable cap");

  auto* indep = app.add_subcommand("indep", "Independence of two conditionals");
  indep->add_option("--mode", cfg.mode, "present or strong")->check(CLI::IsMember({"present", "strong"}));
  indep->add_option("--left", cfg.left, "First conditional")->required();
  indep->add_option("--right", cfg.right, "Second conditional")->required();
  indep->add_option("--n", cfg.n, "Time instant (default: asymptotic)")->check(CLI::PositiveNumber);
  indep->add_option("--dist", cfg.dist_path, "Distribution file (default: all events 1/2)");
  indep->add_option("--events", cfg.events, "Space-separated basic events");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    if (parse->parsed()) return cmd_parse(cfg, out);
    if (prob->parsed()) return cmd_prob(cfg, out);
    if (series->parsed()) return cmd_series(cfg, out);
    if (machine->parsed()) return cmd_machine(cfg, out);
    if (taut->parsed()) return cmd_taut(cfg, out);
    if (indep->parsed()) return cmd_indep(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  return exit_input_error;
}

}  // namespace condtl
