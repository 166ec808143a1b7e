#include "condtl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <utility>
#include <variant>

namespace condtl {

// ---------------------------------------------------------------------------
// EventAlgebra

namespace {

constexpr std::string_view reserved_words[] = {"true", "false", "not", "and", "or",
                                               "Y",    "S",     "O",   "H"};

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

bool is_reserved_word(std::string_view name) {
  return std::find(std::begin(reserved_words), std::end(reserved_words), name) !=
         std::end(reserved_words);
}

EventAlgebra::EventAlgebra(std::vector<std::string> events, std::size_t max_events)
    : events_(std::move(events)) {
  if (events_.size() > max_events) {
    throw std::invalid_argument("too many basic events: " + std::to_string(events_.size()) +
                                " > " + std::to_string(max_events));
  }
  if (events_.size() > 31) throw std::invalid_argument("at most 31 basic events are supported");
  std::set<std::string_view> seen;
  for (const auto& e : events_) {
    if (!is_identifier(e)) throw std::invalid_argument("malformed event name '" + e + "'");
    if (is_reserved_word(e)) throw std::invalid_argument("reserved word as event name '" + e + "'");
    if (!seen.insert(e).second) throw std::invalid_argument("duplicate event name '" + e + "'");
  }
}

std::optional<std::size_t> EventAlgebra::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i] == name) return i;
  }
  return std::nullopt;
}

std::string EventAlgebra::atom_name(Atom atom) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if ((atom >> i) & 1U) {
      if (!first) out += ' ';
      out += events_[i];
      first = false;
    }
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Op op;
  std::size_t event;
  std::vector<Formula> args;
};

Formula make_formula(Op op, std::size_t event, std::vector<Formula> args) {
  return Formula(std::make_shared<const Formula::Node>(Formula::Node{op, event, std::move(args)}));
}

Formula::Formula() : Formula(tl::top()) {}

Op Formula::op() const { return node_->op; }
std::size_t Formula::event() const { return node_->event; }
std::size_t Formula::arity() const { return node_->args.size(); }
const Formula& Formula::arg(std::size_t i) const { return node_->args.at(i); }

bool Formula::is_propositional() const {
  switch (op()) {
    case Op::Prev:
    case Op::Since:
    case Op::Once:
    case Op::Historically:
      return false;
    default:
      return std::all_of(node_->args.begin(), node_->args.end(),
                         [](const Formula& a) { return a.is_propositional(); });
  }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (auto c = a.event() <=> b.event(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace tl {
Formula atom(std::size_t event) { return make_formula(Op::Atom, event, {}); }
Formula top() {
  static const Formula t = make_formula(Op::True, 0, {});
  return t;
}
Formula bottom() { return make_formula(Op::False, 0, {}); }
Formula negate(Formula f) { return make_formula(Op::Not, 0, {std::move(f)}); }
Formula both(Formula f, Formula g) { return make_formula(Op::And, 0, {std::move(f), std::move(g)}); }
Formula either(Formula f, Formula g) { return make_formula(Op::Or, 0, {std::move(f), std::move(g)}); }
Formula implies(Formula f, Formula g) {
  return make_formula(Op::Implies, 0, {std::move(f), std::move(g)});
}
Formula iff(Formula f, Formula g) { return make_formula(Op::Iff, 0, {std::move(f), std::move(g)}); }
Formula prev(Formula f) { return make_formula(Op::Prev, 0, {std::move(f)}); }
Formula since(Formula f, Formula g) {
  return make_formula(Op::Since, 0, {std::move(f), std::move(g)});
}
Formula once(Formula f) { return make_formula(Op::Once, 0, {std::move(f)}); }
Formula historically(Formula f) { return make_formula(Op::Historically, 0, {std::move(f)}); }
}  // namespace tl

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::True:
    case Op::False:
      return f;
    case Op::Once:
      return tl::since(tl::top(), desugar(f.operand()));
    case Op::Historically:
      return !tl::since(tl::top(), !desugar(f.operand()));
    default: {
      std::vector<Formula> args;
      args.reserve(f.arity());
      for (std::size_t i = 0; i < f.arity(); ++i) args.push_back(desugar(f.arg(i)));
      return make_formula(f.op(), f.event(), std::move(args));
    }
  }
}

// ---------------------------------------------------------------------------
// CeaExpr

struct CeaExpr::Node {
  CeaOp op;
  Formula a;
  Formula b;
  std::string name;
  std::vector<CeaExpr> args;
};

CeaExpr CeaExpr::simple(Formula a, Formula b) {
  return CeaExpr(std::make_shared<const Node>(Node{CeaOp::Simple, std::move(a), std::move(b), {}, {}}));
}
CeaExpr CeaExpr::var(std::string name) {
  return CeaExpr(std::make_shared<const Node>(Node{CeaOp::Var, {}, {}, std::move(name), {}}));
}
CeaExpr CeaExpr::conj(CeaExpr l, CeaExpr r) {
  return CeaExpr(std::make_shared<const Node>(Node{CeaOp::And, {}, {}, {}, {std::move(l), std::move(r)}}));
}
CeaExpr CeaExpr::disj(CeaExpr l, CeaExpr r) {
  return CeaExpr(std::make_shared<const Node>(Node{CeaOp::Or, {}, {}, {}, {std::move(l), std::move(r)}}));
}
CeaExpr CeaExpr::neg(CeaExpr e) {
  return CeaExpr(std::make_shared<const Node>(Node{CeaOp::Neg, {}, {}, {}, {std::move(e)}}));
}
CeaExpr CeaExpr::cond(CeaExpr l, CeaExpr r) {
  return CeaExpr(std::make_shared<const Node>(Node{CeaOp::Cond, {}, {}, {}, {std::move(l), std::move(r)}}));
}

CeaOp CeaExpr::op() const { return node_->op; }

const Formula& CeaExpr::numerator() const {
  if (op() != CeaOp::Simple) throw std::logic_error("not a simple conditional");
  return node_->a;
}
const Formula& CeaExpr::denominator() const {
  if (op() != CeaOp::Simple) throw std::logic_error("not a simple conditional");
  return node_->b;
}
const std::string& CeaExpr::var_name() const {
  if (op() != CeaOp::Var) throw std::logic_error("not a variable");
  return node_->name;
}
const CeaExpr& CeaExpr::lhs() const { return node_->args.at(0); }
const CeaExpr& CeaExpr::rhs() const { return node_->args.at(1); }

bool CeaExpr::has_cond() const {
  if (op() == CeaOp::Cond) return true;
  return std::any_of(node_->args.begin(), node_->args.end(),
                     [](const CeaExpr& e) { return e.has_cond(); });
}

std::size_t CeaExpr::node_count() const {
  std::size_t n = 1;
  for (const auto& a : node_->args) n += a.node_count();
  return n;
}

bool operator==(const CeaExpr& x, const CeaExpr& y) {
  if (x.node_ == y.node_) return true;
  if (x.op() != y.op()) return false;
  switch (x.op()) {
    case CeaOp::Simple:
      return x.numerator() == y.numerator() && x.denominator() == y.denominator();
    case CeaOp::Var:
      return x.var_name() == y.var_name();
    case CeaOp::Neg:
      return x.operand() == y.operand();
    default:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
}

std::vector<CondObject> simple_conditionals(const CeaExpr& e) {
  std::vector<CondObject> out;
  std::function<void(const CeaExpr&)> walk = [&](const CeaExpr& x) {
    switch (x.op()) {
      case CeaOp::Simple: out.push_back({x.numerator(), x.denominator()}); break;
      case CeaOp::Var: break;
      case CeaOp::Neg: walk(x.operand()); break;
      default: walk(x.lhs()); walk(x.rhs()); break;
    }
  };
  walk(e);
  return out;
}

std::vector<std::string> variables(const CeaExpr& e) {
  std::set<std::string> names;
  std::function<void(const CeaExpr&)> walk = [&](const CeaExpr& x) {
    switch (x.op()) {
      case CeaOp::Simple: break;
      case CeaOp::Var: names.insert(x.var_name()); break;
      case CeaOp::Neg: walk(x.operand()); break;
      default: walk(x.lhs()); walk(x.rhs()); break;
    }
  };
  walk(e);
  return {names.begin(), names.end()};
}

void check_dialect(const CeaExpr& e, CeaDialect dialect) {
  switch (dialect) {
    case CeaDialect::Full:
      return;
    case CeaDialect::Flat:
      if (e.has_cond()) throw std::invalid_argument("re-conditioning not allowed");
      return;
    case CeaDialect::PureConditional: {
      std::function<void(const CeaExpr&)> walk = [&](const CeaExpr& x) {
        switch (x.op()) {
          case CeaOp::Var: return;
          case CeaOp::Cond: walk(x.lhs()); walk(x.rhs()); return;
          default: throw std::invalid_argument("only variables and re-conditioning allowed");
        }
      };
      walk(e);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Lexer and raw parser

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Ident, True, False, Not, Neg, And, Or, Implies, Iff, Y, S, O, H, LParen, RParen, Bar, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line;
    const int cl = col;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(text.substr(i, len)), l, cl});
      advance(len);
    };
    if (text.substr(i, 3) == "<->") { push(Tok::Iff, 3); continue; }
    if (text.substr(i, 2) == "->") { push(Tok::Implies, 2); continue; }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '|': push(Tok::Bar, 1); continue;
      case '!': push(Tok::Not, 1); continue;
      case '~': push(Tok::Neg, 1); continue;
      case '&': push(Tok::And, 1); continue;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string_view w = text.substr(i, j - i);
      Tok k = Tok::Ident;
      if (w == "true") k = Tok::True;
      else if (w == "false") k = Tok::False;
      else if (w == "not") k = Tok::Not;
      else if (w == "and") k = Tok::And;
      else if (w == "or") k = Tok::Or;
      else if (w == "Y") k = Tok::Y;
      else if (w == "S") k = Tok::S;
      else if (w == "O") k = Tok::O;
      else if (w == "H") k = Tok::H;
      push(k, j - i);
      continue;
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", l, cl);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

enum class RawKind { Ident, True, False, Not, Neg, And, Or, Implies, Iff, Prev, Since, Once, Hist, Bar };

struct Raw {
  RawKind kind;
  std::string name;
  std::vector<Raw> kids;
  int line;
  int column;
};

class RawParser {
 public:
  explicit RawParser(std::string_view text) : toks_(lex(text)) {}

  Raw parse_all() {
    Raw r = iff();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::Bar) fail("'|' is only allowed inside a parenthesized conditional");
      fail("unexpected '" + peek().text + "'");
    }
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(std::string("expected ") + what +
           (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"));
    }
    ++pos_;
  }

  static Raw binary(RawKind k, Raw l, Raw r, const Token& at) {
    return Raw{k, {}, {std::move(l), std::move(r)}, at.line, at.column};
  }

  Raw iff() {
    Raw l = implies();
    while (peek().kind == Tok::Iff) {
      Token t = take();
      l = binary(RawKind::Iff, std::move(l), implies(), t);
    }
    return l;
  }
  Raw implies() {
    Raw l = since();
    if (peek().kind == Tok::Implies) {
      Token t = take();
      return binary(RawKind::Implies, std::move(l), implies(), t);
    }
    return l;
  }
  Raw since() {
    Raw l = disj();
    while (peek().kind == Tok::S) {
      Token t = take();
      l = binary(RawKind::Since, std::move(l), disj(), t);
    }
    return l;
  }
  Raw disj() {
    Raw l = conj();
    while (peek().kind == Tok::Or) {
      Token t = take();
      l = binary(RawKind::Or, std::move(l), conj(), t);
    }
    return l;
  }
  Raw conj() {
    Raw l = unary();
    while (peek().kind == Tok::And) {
      Token t = take();
      l = binary(RawKind::And, std::move(l), unary(), t);
    }
    return l;
  }
  Raw unary() {
    RawKind k;
    switch (peek().kind) {
      case Tok::Not: k = RawKind::Not; break;
      case Tok::Neg: k = RawKind::Neg; break;
      case Tok::Y: k = RawKind::Prev; break;
      case Tok::O: k = RawKind::Once; break;
      case Tok::H: k = RawKind::Hist; break;
      default: return primary();
    }
    Token t = take();
    return Raw{k, {}, {unary()}, t.line, t.column};
  }
  Raw primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        Token id = take();
        return Raw{RawKind::Ident, id.text, {}, id.line, id.column};
      }
      case Tok::True: take(); return Raw{RawKind::True, {}, {}, t.line, t.column};
      case Tok::False: take(); return Raw{RawKind::False, {}, {}, t.line, t.column};
      case Tok::LParen: {
        Token open = take();
        Raw inner = iff();
        if (peek().kind == Tok::Bar) {
          take();
          Raw given = iff();
          expect(Tok::RParen, "')'");
          return Raw{RawKind::Bar, {}, {std::move(inner), std::move(given)}, open.line, open.column};
        }
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail_at(const Raw& r, const std::string& msg) {
  throw SyntaxError(msg, r.line, r.column);
}

Formula to_formula(const Raw& r, const EventAlgebra& alg, bool propositional_only) {
  auto kid = [&](std::size_t i) { return to_formula(r.kids[i], alg, propositional_only); };
  auto temporal = [&]() {
    if (propositional_only) fail_at(r, "temporal operator not allowed in an event expression");
  };
  switch (r.kind) {
    case RawKind::Ident: {
      auto idx = alg.index_of(r.name);
      if (!idx) fail_at(r, "unknown identifier '" + r.name + "'");
      return tl::atom(*idx);
    }
    case RawKind::True: return tl::top();
    case RawKind::False: return tl::bottom();
    case RawKind::Not: return !kid(0);
    case RawKind::And: return kid(0) && kid(1);
    case RawKind::Or: return kid(0) || kid(1);
    case RawKind::Implies: return tl::implies(kid(0), kid(1));
    case RawKind::Iff: return tl::iff(kid(0), kid(1));
    case RawKind::Prev: temporal(); return tl::prev(kid(0));
    case RawKind::Since: temporal(); return tl::since(kid(0), kid(1));
    case RawKind::Once: temporal(); return tl::since(tl::top(), kid(0));
    case RawKind::Hist: temporal(); return !tl::since(tl::top(), !kid(0));
    case RawKind::Neg: fail_at(r, "'~' negates conditional expressions; use 'not' or '!'");
    case RawKind::Bar: fail_at(r, "conditional '(…|…)' not allowed here");
  }
  fail_at(r, "unexpected node");
}

bool is_event_kind(const Raw& r) {
  switch (r.kind) {
    case RawKind::Bar:
    case RawKind::Neg:
      return false;
    case RawKind::And:
    case RawKind::Or:
      return is_event_kind(r.kids[0]) && is_event_kind(r.kids[1]);
    default:
      return true;
  }
}

CeaExpr to_cea(const Raw& r, const EventAlgebra& alg, CeaDialect dialect) {
  switch (r.kind) {
    case RawKind::Bar: {
      const bool ev0 = is_event_kind(r.kids[0]);
      const bool ev1 = is_event_kind(r.kids[1]);
      if (ev0 && ev1) {
        return CeaExpr::simple(to_formula(r.kids[0], alg, true), to_formula(r.kids[1], alg, true));
      }
      if (ev0 != ev1) fail_at(r, "cannot condition an event on a conditional expression (or vice versa)");
      if (dialect == CeaDialect::Flat) fail_at(r, "re-conditioning not allowed");
      return CeaExpr::cond(to_cea(r.kids[0], alg, dialect), to_cea(r.kids[1], alg, dialect));
    }
    case RawKind::Neg:
      if (is_event_kind(r.kids[0])) fail_at(r, "'~' applies to conditional expressions");
      return CeaExpr::neg(to_cea(r.kids[0], alg, dialect));
    case RawKind::And:
    case RawKind::Or: {
      const bool ev0 = is_event_kind(r.kids[0]);
      const bool ev1 = is_event_kind(r.kids[1]);
      if (ev0 || ev1) fail_at(r, "cannot combine an event with a conditional expression");
      auto l = to_cea(r.kids[0], alg, dialect);
      auto rr = to_cea(r.kids[1], alg, dialect);
      return r.kind == RawKind::And ? CeaExpr::conj(std::move(l), std::move(rr))
                                    : CeaExpr::disj(std::move(l), std::move(rr));
    }
    default:
      fail_at(r, "expected a conditional expression such as (a|b)");
  }
}

CeaExpr to_cea_vars(const Raw& r) {
  switch (r.kind) {
    case RawKind::Ident: return CeaExpr::var(r.name);
    case RawKind::Bar: return CeaExpr::cond(to_cea_vars(r.kids[0]), to_cea_vars(r.kids[1]));
    case RawKind::Neg: return CeaExpr::neg(to_cea_vars(r.kids[0]));
    case RawKind::And: return CeaExpr::conj(to_cea_vars(r.kids[0]), to_cea_vars(r.kids[1]));
    case RawKind::Or: return CeaExpr::disj(to_cea_vars(r.kids[0]), to_cea_vars(r.kids[1]));
    case RawKind::Not: fail_at(r, "negation of a three-valued variable is spelled '~'");
    default: fail_at(r, "unexpected operator in a variable expression");
  }
}

}  // namespace

Formula parse_tl(std::string_view text, const EventAlgebra& alg) {
  return to_formula(RawParser(text).parse_all(), alg, false);
}

CondObject parse_cond(std::string_view text, const EventAlgebra& alg) {
  Raw r = RawParser(text).parse_all();
  if (r.kind == RawKind::Bar) {
    return {to_formula(r.kids[0], alg, false), to_formula(r.kids[1], alg, false)};
  }
  return {to_formula(r, alg, false), tl::top()};
}

CeaExpr parse_cea(std::string_view text, const EventAlgebra& alg, CeaDialect dialect) {
  if (dialect == CeaDialect::PureConditional) {
    throw std::invalid_argument("pure-conditional dialect requires variable leaves");
  }
  return to_cea(RawParser(text).parse_all(), alg, dialect);
}

CeaExpr parse_cea_vars(std::string_view text, CeaDialect dialect) {
  Raw r = RawParser(text).parse_all();
  CeaExpr e = to_cea_vars(r);
  try {
    check_dialect(e, dialect);
  } catch (const std::invalid_argument& err) {
    throw SyntaxError(err.what(), r.line, r.column);
  }
  return e;
}

std::vector<std::string> identifiers_in(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : lex(text)) {
    if (t.kind == Tok::Ident && std::find(out.begin(), out.end(), t.text) == out.end()) {
      out.push_back(t.text);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pretty printing

namespace {

enum Prec : int { kIff = 1, kImplies, kSince, kOr, kAnd, kUnary, kPrimary };

bool is_once(const Formula& f) { return f.op() == Op::Since && f.lhs().op() == Op::True; }
bool is_hist(const Formula& f) {
  return f.op() == Op::Not && is_once(f.operand()) && f.operand().rhs().op() == Op::Not;
}

void emit(const Formula& f, const EventAlgebra& alg, int min_prec, std::string& out);

void emit_unary(std::string_view sym, const Formula& arg, const EventAlgebra& alg,
                int min_prec, std::string& out) {
  const bool paren = kUnary < min_prec;
  if (paren) out += '(';
  out += sym;
  emit(arg, alg, kUnary, out);
  if (paren) out += ')';
}

void emit_binary(std::string_view sym, int p, bool right_assoc, const Formula& f,
                 const EventAlgebra& alg, int min_prec, std::string& out) {
  const bool paren = p < min_prec;
  if (paren) out += '(';
  emit(f.lhs(), alg, right_assoc ? p + 1 : p, out);
  out += sym;
  emit(f.rhs(), alg, right_assoc ? p : p + 1, out);
  if (paren) out += ')';
}

void emit(const Formula& f, const EventAlgebra& alg, int min_prec, std::string& out) {
  if (is_hist(f)) return emit_unary("H ", f.operand().rhs().operand(), alg, min_prec, out);
  if (is_once(f)) return emit_unary("O ", f.rhs(), alg, min_prec, out);
  switch (f.op()) {
    case Op::Atom:
      out += f.event() < alg.size() ? alg.name(f.event()) : "e" + std::to_string(f.event());
      return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Not: return emit_unary("!", f.operand(), alg, min_prec, out);
    case Op::Prev: return emit_unary("Y ", f.operand(), alg, min_prec, out);
    case Op::Once: return emit_unary("O ", f.operand(), alg, min_prec, out);
    case Op::Historically: return emit_unary("H ", f.operand(), alg, min_prec, out);
    case Op::Or: return emit_binary(" or ", kOr, false, f, alg, min_prec, out);
    case Op::And: return emit_binary(" and ", kAnd, false, f, alg, min_prec, out);
    case Op::Since: return emit_binary(" S ", kSince, false, f, alg, min_prec, out);
    case Op::Implies: return emit_binary(" -> ", kImplies, true, f, alg, min_prec, out);
    case Op::Iff: return emit_binary(" <-> ", kIff, false, f, alg, min_prec, out);
  }
}

enum CeaPrec : int { cOr = 1, cAnd, cNeg, cLeaf };

void emit_cea(const CeaExpr& e, const EventAlgebra& alg, int min_prec, std::string& out) {
  switch (e.op()) {
    case CeaOp::Simple:
      out += '(';
      emit(e.numerator(), alg, 0, out);
      out += '|';
      emit(e.denominator(), alg, 0, out);
      out += ')';
      return;
    case CeaOp::Var:
      out += e.var_name();
      return;
    case CeaOp::Cond:
      out += '(';
      emit_cea(e.lhs(), alg, 0, out);
      out += '|';
      emit_cea(e.rhs(), alg, 0, out);
      out += ')';
      return;
    case CeaOp::Neg: {
      const bool paren = cNeg < min_prec;
      if (paren) out += '(';
      out += '~';
      emit_cea(e.operand(), alg, cNeg, out);
      if (paren) out += ')';
      return;
    }
    case CeaOp::And:
    case CeaOp::Or: {
      const int p = e.op() == CeaOp::And ? cAnd : cOr;
      const bool paren = p < min_prec;
      if (paren) out += '(';
      emit_cea(e.lhs(), alg, p, out);
      out += e.op() == CeaOp::And ? " and " : " or ";
      emit_cea(e.rhs(), alg, p + 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string pretty(const Formula& f, const EventAlgebra& alg) {
  std::string out;
  emit(f, alg, 0, out);
  return out;
}

std::string pretty(const CondObject& c, const EventAlgebra& alg) {
  return "(" + pretty(c.numerator, alg) + "|" + pretty(c.denominator, alg) + ")";
}

std::string pretty(const CeaExpr& e, const EventAlgebra& alg) {
  std::string out;
  emit_cea(e, alg, 0, out);
  return out;
}

}  // namespace condtl
