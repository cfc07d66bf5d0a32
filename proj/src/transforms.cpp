#include "hornlab/transforms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hornlab/error.hpp"
#include "hornlab/fresh.hpp"
#include "hornlab/lfp.hpp"
#include "hornlab/normal_form.hpp"
#include "hornlab/second_order.hpp"

namespace hornlab {

namespace {

// --- shared helpers ---------------------------------------------------------

std::set<std::string> vocabulary_names(const std::shared_ptr<const Vocabulary>& v) {
  std::set<std::string> out;
  if (!v) return out;
  for (const auto& r : v->relations()) out.insert(r.name);
  for (const auto& c : v->constants()) out.insert(c);
  return out;
}

std::set<std::string> rule_names(const Rule& r) {
  std::set<std::string> out{r.head};
  for (const auto& v : r.variables()) out.insert(v);
  for (const auto& t : r.head_args) out.insert(t.name);
  for (const auto& e : r.body) {
    if (!e.relation.empty()) out.insert(e.relation);
    for (const auto& t : e.args) out.insert(t.name);
    out.insert(e.bound.begin(), e.bound.end());
    if (e.condition) {
      auto n = all_names(*e.condition);
      out.insert(n.begin(), n.end());
    }
  }
  return out;
}

std::set<std::string> program_names(const StratifiedProgram& p) {
  auto out = vocabulary_names(p.vocab);
  for (const auto& s : p.strata)
    for (const auto& r : s) {
      auto n = rule_names(r);
      out.insert(n.begin(), n.end());
    }
  return out;
}

FreshNames fresh_for(const FormulaQuery& q) {
  FreshNames fresh(all_names(q.formula));
  fresh.reserve(vocabulary_names(q.vocab));
  for (const auto& v : q.query) fresh.reserve(v);
  return fresh;
}

FreshNames fresh_for(const StratifiedProgram& p) { return FreshNames(program_names(p)); }

std::vector<std::string> fresh_vars(FreshNames& fresh, std::size_t n, const std::string& hint) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fresh.next(hint));
  return out;
}

std::vector<Term> as_terms(const std::vector<std::string>& names) { return vars(names); }

std::vector<Term> concat(std::vector<Term> a, const std::vector<Term>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

void add_fresh(TransformReport& r, const std::string& name, int arity) { r.fresh.push_back({name, arity}); }

void add_step(TransformReport& r, std::string construction, std::string detail, std::size_t target = 0) {
  r.steps.push_back({std::move(construction), std::move(detail), target});
}

std::vector<std::string> query_names(std::size_t r, FreshNames& fresh) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= r; ++i) {
    std::string name = "t" + std::to_string(i);
    if (fresh.used(name)) name = fresh.next("t");
    fresh.reserve(name);
    out.push_back(name);
  }
  return out;
}

/// Literal formula as a body element; anything else becomes a side condition.
BodyElement element_of(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Atom:
      return BodyElement::atom(f.symbol(), f.terms());
    case NodeKind::Equal:
      return BodyElement::equal(f.terms()[0], f.terms()[1]);
    case NodeKind::Not:
      if (f.child().kind() == NodeKind::Atom) return BodyElement::negated(f.child().symbol(), f.child().terms());
      if (f.child().kind() == NodeKind::Equal)
        return BodyElement::not_equal(f.child().terms()[0], f.child().terms()[1]);
      break;
    default:
      break;
  }
  return BodyElement::formula(f);
}

Formula body_formula(const std::vector<BodyElement>& body) {
  std::vector<Formula> parts;
  for (const auto& e : body) parts.push_back(e.to_formula());
  return Formula::all_of(std::move(parts));
}

void require_first_order(const Formula& f, const std::string& what) {
  if (contains_so_quantifier(f) || contains_fixpoint(f)) fail(ErrorKind::Shape, what + " must be first-order");
}

Formula strip_so(const Formula& f) { return split_so_prefix(f).body; }

// --- quantifier swap -----------------------------------------------------------

/// f = ∀x ∃R̄ ψ. Returns ∃R̄′ ∀x ψ[R t̄ / R′(x, t̄)].
Formula swap_core(const Formula& f, FreshNames& fresh, TransformReport& rep) {
  if (f.kind() != NodeKind::Forall || f.child().kind() != NodeKind::SoExists)
    fail(ErrorKind::Shape, "expected a universal first-order quantifier followed by existential second-order ones");
  const std::string x = f.symbol();
  SoFormula block = split_so_prefix(f.child());
  std::size_t k = 0;
  while (k < block.prefix.size() && block.prefix[k].quantifier == Quantifier::Exists) ++k;
  std::vector<SoPrefixEntry> rest(block.prefix.begin() + static_cast<std::ptrdiff_t>(k), block.prefix.end());
  Formula psi = SoFormula{rest, block.body}.to_formula();
  bool x_used = false;
  for (const auto& v : free_variables(psi)) x_used = x_used || v == x;
  if (!x_used) rep.warnings.push_back("variable " + x + " does not occur free in the swapped scope");

  std::vector<SoPrefixEntry> widened;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& e = block.prefix[i];
    const std::string wide = fresh.next(e.relation);
    add_fresh(rep, wide, e.arity + 1);
    psi = replace_atoms(
        psi, e.relation, [&](const std::vector<Term>& args) { return Formula::atom(wide, concat({Term::var(x)}, args)); },
        {x});
    widened.push_back({Quantifier::Exists, wide, e.arity + 1});
    add_step(rep, "quantifier swap", e.relation + "/" + std::to_string(e.arity) + " widened by " + x + " to " + wide, i);
  }
  return SoFormula{widened, Formula::forall(x, psi)}.to_formula();
}

// --- first-order formula to a bounded program --------------------------------

struct CompiledFo {
  std::vector<Rule> rules;
  std::string goal;
};

CompiledFo compile_fo_r(const Formula& phi, const std::vector<std::string>& query, FreshNames& fresh,
                        TransformReport& rep, const std::string& label) {
  require_first_order(phi, label);
  std::set<std::string> qset(query.begin(), query.end());
  for (const auto& v : free_variables(phi))
    if (!qset.count(v)) fail(ErrorKind::Invalid, "free variable " + v + " is missing from the query tuple");
  PrenexDnf d = to_prenex_dnf(rename_bound_apart(phi, qset));
  std::map<std::string, Term> rename;
  for (auto& e : d.prefix) {
    if (qset.count(e.var)) {
      std::string n = fresh.next(e.var);
      rename[e.var] = Term::var(n);
      e.var = n;
    }
    fresh.reserve(e.var);
  }
  if (!rename.empty())
    for (auto& c : d.matrix)
      for (auto& lit : c) lit = substitute(lit, rename);

  std::vector<std::string> all = query;
  for (const auto& e : d.prefix) all.push_back(e.var);
  const std::vector<Term> v = as_terms(all);

  CompiledFo out;
  const std::string matrix = fresh.next("D");
  add_fresh(rep, matrix, static_cast<int>(v.size()));
  std::vector<Rule> collect;
  for (std::size_t j = 0; j < d.matrix.size(); ++j) {
    Rule r{fresh.next("C"), v, {}};
    add_fresh(rep, r.head, static_cast<int>(v.size()));
    bool dead = false;
    for (const auto& lit : d.matrix[j]) {
      if (lit.kind() == NodeKind::True) continue;
      if (lit.kind() == NodeKind::False) dead = true;
      r.body.push_back(element_of(lit));
    }
    if (dead) r.body = {BodyElement::atom(r.head, v)};
    add_step(rep, "conjunct rule", r.head + " for disjunct " + std::to_string(j + 1), j);
    collect.push_back({matrix, v, {BodyElement::atom(r.head, v)}});
    out.rules.push_back(std::move(r));
  }
  if (d.matrix.empty()) collect.push_back({matrix, v, {BodyElement::atom(matrix, v)}});
  out.rules.insert(out.rules.end(), collect.begin(), collect.end());
  add_step(rep, "disjunction rules", matrix + " collects " + std::to_string(d.matrix.size()) + " disjuncts");

  std::string inner = matrix;
  for (std::size_t j = d.prefix.size(); j-- > 0;) {
    std::vector<Term> head(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(query.size() + j));
    std::vector<Term> args(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(query.size() + j + 1));
    std::string sym = fresh.next(j == 0 ? "P" : "Q");
    add_fresh(rep, sym, static_cast<int>(head.size()));
    const auto& q = d.prefix[j];
    if (q.quantifier == Quantifier::Forall) {
      out.rules.push_back({sym, head, {BodyElement::universal({q.var}, inner, args)}});
      add_step(rep, "universal quantifier rule", sym + " <- all " + q.var + " " + inner, j);
    } else {
      out.rules.push_back({sym, head, {BodyElement::atom(inner, args)}});
      add_step(rep, "existential quantifier rule", sym + " <- " + inner + " projecting " + q.var, j);
    }
    inner = sym;
  }
  out.goal = inner;
  return out;
}

// --- Horn formula to program ----------------------------------------------------

struct HornInput {
  SoFormula so;
  ClausalCore core;
};

HornInput read_existential_horn(const Formula& phi) {
  SoFormula so = split_so_prefix(phi);
  if (!so.existential())
    fail(ErrorKind::Shape, "universal second-order quantifier present; eliminate it first");
  auto core = read_clausal(so.body, so.symbols());
  if (!core) {
    so = split_so_prefix(normalize_clauses(phi));
    core = read_clausal(so.body, so.symbols());
  }
  if (!core) fail(ErrorKind::Shape, "body is not a conjunction of Horn clauses over the quantified relations");
  return {so, *core};
}

/// Program whose goal holds at ā exactly where phi(ā) fails. Betas become body
/// literals or side conditions verbatim.
CompiledFo horn_to_rules(const Formula& phi, const std::vector<std::string>& query, FreshNames& fresh,
                         TransformReport& rep) {
  HornInput in = read_existential_horn(phi);
  const std::size_t r = query.size();
  const std::vector<std::string> v = fresh_vars(fresh, r, "v");
  const std::vector<Term> vt = as_terms(v);
  CompiledFo out;
  out.goal = fresh.next("P");
  add_fresh(rep, out.goal, static_cast<int>(r));

  std::map<std::string, std::string> wide;
  for (const auto& e : in.so.prefix) {
    wide[e.relation] = fresh.next(e.relation);
    add_fresh(rep, wide[e.relation], e.arity + static_cast<int>(r));
    add_step(rep, "relation widening", e.relation + " becomes " + wide[e.relation] + " with " + std::to_string(r) + " extra places");
  }

  bool bottom = false;
  for (std::size_t i = 0; i < in.core.clauses.size(); ++i) {
    const auto& c = in.core.clauses[i];
    Rule rule;
    for (std::size_t j = 0; j < r; ++j) rule.body.push_back(BodyElement::equal(Term::var(query[j]), vt[j]));
    for (const auto& e : c.body) {
      if (e.kind() == NodeKind::True) continue;
      if (e.kind() == NodeKind::Atom && wide.count(e.symbol())) {
        rule.body.push_back(BodyElement::atom(wide[e.symbol()], concat(e.terms(), vt)));
      } else if (auto u = as_universal_atom(e); u && wide.count(u->relation)) {
        rule.body.push_back(BodyElement::universal(u->bound, wide[u->relation], concat(u->args, vt)));
      } else {
        rule.body.push_back(element_of(e));
      }
    }
    if (c.head) {
      rule.head = wide[c.head->symbol()];
      rule.head_args = concat(c.head->terms(), vt);
      add_step(rep, "clause rule", "clause " + std::to_string(i + 1) + " derives " + rule.head, i);
    } else {
      bottom = true;
      rule.head = out.goal;
      rule.head_args = vt;
      add_step(rep, "goal rule", "clause " + std::to_string(i + 1) + " with head false derives " + out.goal, i);
    }
    out.rules.push_back(std::move(rule));
  }
  for (const auto& e : in.so.prefix) {
    const std::string& w = wide[e.relation];
    if (std::any_of(out.rules.begin(), out.rules.end(), [&](const Rule& x) { return x.head == w; })) continue;
    auto args = concat(as_terms(fresh_vars(fresh, static_cast<std::size_t>(e.arity), "x")), vt);
    out.rules.push_back({w, args, {BodyElement::atom(w, args)}});
    add_step(rep, "empty relation", "no clause derives " + e.relation + "; " + w + " stays empty");
  }
  if (!bottom) {
    out.rules.push_back({out.goal, vt, {BodyElement::atom(out.goal, vt)}});
    add_step(rep, "goal rule", "no clause has head false; " + out.goal + " is never derived");
  }
  return out;
}

// --- program to Horn formula ----------------------------------------------------

using LowerLiteral = std::function<std::optional<Formula>(const std::string&, const std::vector<Term>&, bool)>;

Formula element_formula(const BodyElement& e, const LowerLiteral& lower) {
  if (lower) {
    if (e.kind == BodyKind::Atom || e.kind == BodyKind::Negated) {
      if (auto f = lower(e.relation, e.args, e.kind == BodyKind::Negated)) return *f;
    } else if (e.kind == BodyKind::Universal) {
      if (auto f = lower(e.relation, e.args, false)) return Formula::forall(e.bound, *f);
    }
  }
  return e.to_formula();
}

/// ψ(x̄) with ψ(ā) true exactly where the goal fails at ā. x̄ = query.
Formula rules_to_horn(const Program& input, const std::string& goal, const std::vector<std::string>& query,
                      FreshNames& fresh, TransformReport& rep, const LowerLiteral& lower) {
  auto before = input.intentional();
  Program pi = normalize_zeroary(input);
  fresh.reserve(program_names(pi));
  std::set<std::string> had;
  for (const auto& s : before) had.insert(s.name);
  std::optional<RelationSymbol> goal_symbol;
  std::vector<SoPrefixEntry> prefix;
  for (const auto& s : pi.intentional()) {
    if (!had.count(s.name)) {
      add_fresh(rep, s.name, s.arity);
      add_step(rep, "zero-ary normalization", "body uses of a zero-ary symbol now read " + s.name);
    }
    if (s.name == goal) goal_symbol = s;
    if (s.arity > 0) prefix.push_back({Quantifier::Exists, s.name, s.arity});
  }
  if (!goal_symbol) fail(ErrorKind::Invalid, "goal " + goal + " is not an intentional symbol");
  if (static_cast<std::size_t>(goal_symbol->arity) != query.size())
    fail(ErrorKind::Invalid, "query tuple length differs from the goal's arity");

  std::vector<std::string> zs;
  std::set<std::string> seen;
  std::vector<Formula> clauses;
  for (std::size_t i = 0; i < pi.rules.size(); ++i) {
    const auto& rule = pi.rules[i];
    if (rule.head_args.empty() && rule.head != goal) continue;
    for (const auto& v : rule.variables())
      if (seen.insert(v).second) zs.push_back(v);
    std::vector<Formula> body;
    for (const auto& e : rule.body) body.push_back(element_formula(e, lower));
    Formula lhs = body.empty() ? Formula::truth() : Formula::all_of(std::move(body));
    if (rule.head == goal && rule.head_args.empty()) {
      clauses.push_back(Formula::implies(lhs, Formula::falsity()));
      add_step(rep, "goal clause", "rule " + std::to_string(i + 1) + " becomes a clause with head false", i);
    } else {
      clauses.push_back(Formula::implies(lhs, Formula::atom(rule.head, rule.head_args)));
      add_step(rep, "rule clause", "rule " + std::to_string(i + 1) + " becomes a clause with head " + rule.head, i);
    }
  }
  if (!query.empty()) {
    clauses.push_back(Formula::implies(Formula::atom(goal, as_terms(query)), Formula::falsity()));
    add_step(rep, "goal clause", goal + "(" + join(query) + ") -> false over the free query variables");
  }
  Formula body = clauses.empty() ? Formula::truth() : Formula::forall(zs, Formula::all_of(std::move(clauses)));
  return SoFormula{prefix, body}.to_formula();
}

// --- first-order formula to a stratified program --------------------------------

class StratifiedCompiler {
 public:
  StratifiedCompiler(FreshNames& fresh, TransformReport& rep) : fresh_(fresh), rep_(rep) {}

  struct Out {
    std::string symbol;
    std::vector<std::string> vars;
    std::size_t level;
  };

  Out compile(const Formula& f, const std::vector<std::string>& head_vars) {
    const std::vector<Term> hv = as_terms(head_vars);
    auto rule = [&](std::vector<BodyElement> body) { return Rule{"", hv, std::move(body)}; };
    switch (f.kind()) {
      case NodeKind::True:
        return emit(head_vars, 0, {rule({})}, "true");
      case NodeKind::False: {
        Out o = emit(head_vars, 0, {}, "false");
        add(0, {o.symbol, hv, {BodyElement::atom(o.symbol, hv)}});
        return o;
      }
      case NodeKind::Atom:
      case NodeKind::Equal:
        return emit(head_vars, 0, {rule({element_of(f)})}, "atomic formula");
      case NodeKind::Not: {
        const Formula& g = f.child();
        if (g.kind() == NodeKind::Atom || g.kind() == NodeKind::Equal)
          return emit(head_vars, 0, {rule({element_of(f)})}, "negated atomic formula");
        if (g.kind() == NodeKind::Not) return compile(g.child(), head_vars);
        Out c = compile(g, free_variables(g));
        return emit(head_vars, c.level + 1, {rule({BodyElement::negated(c.symbol, as_terms(c.vars))})},
                    "negation of " + c.symbol + " in a new stratum");
      }
      case NodeKind::And: {
        std::vector<BodyElement> body;
        std::size_t level = 0;
        for (const auto& c : f.children()) {
          Out o = compile(c, free_variables(c));
          level = std::max(level, o.level);
          body.push_back(BodyElement::atom(o.symbol, as_terms(o.vars)));
        }
        return emit(head_vars, level, {rule(std::move(body))}, "conjunction");
      }
      case NodeKind::Or: {
        std::vector<Rule> rules;
        std::size_t level = 0;
        for (const auto& c : f.children()) {
          Out o = compile(c, free_variables(c));
          level = std::max(level, o.level);
          rules.push_back(rule({BodyElement::atom(o.symbol, as_terms(o.vars))}));
        }
        return emit(head_vars, level, std::move(rules), "disjunction");
      }
      case NodeKind::Implies:
        return compile(Formula::disj({negate(f.child(0)), f.child(1)}), head_vars);
      case NodeKind::Exists: {
        std::string x = f.symbol();
        Formula body = f.child();
        if (std::find(head_vars.begin(), head_vars.end(), x) != head_vars.end()) {
          std::string y = fresh_.next(x);
          body = substitute(body, {{x, Term::var(y)}});
          x = y;
        }
        Out c = compile(body, free_variables(body));
        return emit(head_vars, c.level, {rule({BodyElement::atom(c.symbol, as_terms(c.vars))})},
                    "projection of " + x);
      }
      case NodeKind::Forall:
        return compile(Formula::negation(Formula::exists(f.symbol(), negate(f.child()))), head_vars);
      default:
        fail(ErrorKind::Shape, "formula must be first-order");
    }
  }

  std::vector<std::vector<Rule>> strata() const {
    std::vector<std::vector<Rule>> out;
    for (const auto& s : strata_)
      if (!s.empty()) out.push_back(s);
    return out;
  }

 private:
  Out emit(const std::vector<std::string>& head_vars, std::size_t level, std::vector<Rule> rules,
           const std::string& what) {
    Out o{fresh_.next("S"), head_vars, level};
    add_fresh(rep_, o.symbol, static_cast<int>(head_vars.size()));
    add_step(rep_, "structural rule", o.symbol + " for " + what, level);
    for (auto& r : rules) {
      r.head = o.symbol;
      add(level, std::move(r));
    }
    return o;
  }

  void add(std::size_t level, Rule r) {
    if (strata_.size() <= level) strata_.resize(level + 1);
    strata_[level].push_back(std::move(r));
  }

  FreshNames& fresh_;
  TransformReport& rep_;
  std::vector<std::vector<Rule>> strata_;
};

// --- stratified Horn formula to a stratified program ------------------------------

struct CompiledStrata {
  std::vector<std::vector<Rule>> strata;
  std::string goal;
};

void merge_strata(std::vector<std::vector<Rule>>& into, const std::vector<std::vector<Rule>>& from) {
  if (into.size() < from.size()) into.resize(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) into[i].insert(into[i].end(), from[i].begin(), from[i].end());
}

CompiledStrata horn_s_core(const Formula& phi, const std::vector<std::string>& query, FreshNames& fresh,
                           TransformReport& rep) {
  HornInput in = read_existential_horn(phi);
  std::vector<std::vector<Rule>> lower;
  std::vector<Formula> clauses;
  for (const auto& c : in.core.clauses) {
    HornClause nc;
    nc.head = c.head;
    for (const auto& e : c.body) {
      bool is_alpha = std::find(c.alphas.begin(), c.alphas.end(), e) != c.alphas.end();
      Formula inner = e;
      bool negated = false;
      if (!is_alpha && e.kind() == NodeKind::Not && e.child().is_so_quantifier()) {
        inner = e.child();
        negated = true;
      }
      if (is_alpha || !inner.is_so_quantifier()) {
        if (!is_alpha && contains_so_quantifier(e))
          fail(ErrorKind::Shape, "a nested Horn formula must be a whole beta or its negation");
        nc.body.push_back(e);
        continue;
      }
      const auto ys = free_variables(inner);
      CompiledStrata sub = horn_s_core(inner, ys, fresh, rep);
      merge_strata(lower, sub.strata);
      Formula goal_atom = Formula::atom(sub.goal, as_terms(ys));
      // The nested goal holds exactly where the nested formula fails.
      nc.body.push_back(negated ? goal_atom : Formula::negation(goal_atom));
      add_step(rep, "nested formula", "beta replaced by " + std::string(negated ? "" : "!") + sub.goal + " from a lower stratum");
    }
    clauses.push_back(nc.to_formula());
  }
  Formula rebuilt =
      SoFormula{in.so.prefix, Formula::forall(in.core.vars, Formula::all_of(std::move(clauses)))}.to_formula();
  CompiledFo top = horn_to_rules(rebuilt, query, fresh, rep);
  lower.push_back(top.rules);
  return {lower, top.goal};
}

// --- stratified program to stratified Horn formula --------------------------------

class HornBuilder {
 public:
  HornBuilder(const StratifiedProgram& sigma, FreshNames& fresh, TransformReport& rep)
      : sigma_(sigma), fresh_(fresh), rep_(rep) {
    for (std::size_t m = 0; m < sigma.strata.size(); ++m)
      for (const auto& r : sigma.strata[m]) level_.emplace(r.head, m);
  }

  struct Definition {
    Formula formula;
    std::vector<std::string> vars;
  };

  const Definition& definition(const std::string& symbol) {
    if (auto it = memo_.find(symbol); it != memo_.end()) return it->second;
    auto lit = level_.find(symbol);
    if (lit == level_.end()) fail(ErrorKind::Invalid, "goal " + symbol + " is not an intentional symbol");
    const std::size_t m = lit->second;
    Program pi = sigma_.stratum(m);
    int arity = 0;
    for (const auto& s : pi.intentional())
      if (s.name == symbol) arity = s.arity;
    auto xs = fresh_vars(fresh_, static_cast<std::size_t>(arity), "x");
    LowerLiteral lower = [this, m](const std::string& rel, const std::vector<Term>& args,
                                   bool negated) -> std::optional<Formula> {
      auto l = level_.find(rel);
      if (l == level_.end() || l->second >= m) return std::nullopt;
      const Definition& d = definition(rel);
      std::map<std::string, Term> subst;
      for (std::size_t i = 0; i < d.vars.size(); ++i) subst.emplace(d.vars[i], args[i]);
      Formula psi = substitute(d.formula, subst);
      // psi holds exactly where rel fails.
      return negated ? psi : Formula::negation(psi);
    };
    Formula f = rules_to_horn(pi, symbol, xs, fresh_, rep_, lower);
    add_step(rep_, "stratum formula", "stratum " + std::to_string(m) + " defines the complement of " + symbol, m);
    return memo_.emplace(symbol, Definition{f, xs}).first->second;
  }

 private:
  const StratifiedProgram& sigma_;
  FreshNames& fresh_;
  TransformReport& rep_;
  std::map<std::string, std::size_t> level_;
  std::map<std::string, Definition> memo_;
};

// --- programs to simultaneous fixed points ------------------------------------------

struct AtomReplacer {
  std::map<std::string, std::function<Formula(const std::vector<Term>&)>> defs;

  Formula apply(Formula f) const {
    for (const auto& [name, fn] : defs)
      if (free_relations(f).count(name)) f = replace_atoms(f, name, fn);
    return f;
  }
};

/// ∃ȳ(γ̄) with the head tuple matched against `vars`.
Formula rule_definition(const Rule& rule, const std::vector<std::string>& vars, const AtomReplacer& lower,
                        FreshNames& fresh) {
  Formula gamma = lower.apply(body_formula(rule.body));
  std::vector<std::string> rv = rule.variables();
  std::set<std::string> distinct;
  bool plain = true;
  for (const auto& t : rule.head_args) plain = plain && t.is_var() && distinct.insert(t.name).second;
  if (!plain) {
    std::map<std::string, Term> apart;
    std::vector<std::string> bound;
    for (const auto& v : rv) {
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) {
        std::string n = fresh.next(v);
        apart.emplace(v, Term::var(n));
        bound.push_back(n);
      } else {
        bound.push_back(v);
      }
    }
    std::vector<Term> head = rule.head_args;
    for (auto& t : head)
      if (t.is_var() && apart.count(t.name)) t = apart.at(t.name);
    return Formula::exists(bound,
                           Formula::conj({tuple_equal(as_terms(vars), head), substitute(gamma, apart)}));
  }
  std::map<std::string, Term> subst;
  std::vector<std::string> bound;
  for (const auto& v : rv) {
    if (distinct.count(v)) continue;
    if (std::find(vars.begin(), vars.end(), v) != vars.end()) {
      std::string n = fresh.next(v);
      subst.emplace(v, Term::var(n));
      bound.push_back(n);
    } else {
      bound.push_back(v);
    }
  }
  for (std::size_t i = 0; i < vars.size(); ++i) subst[rule.head_args[i].name] = Term::var(vars[i]);
  return Formula::exists(bound, substitute(gamma, subst));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string describe_fragment(const Formula& f) {
  if (!contains_so_quantifier(f)) return contains_fixpoint(f) ? "FO(LFP)" : "FO";
  std::vector<std::string> tags;
  auto all = classify_fragment(f);
  for (const auto& t : all)
    if (t.fragment != Fragment::GeneralSo || all.size() == 1) tags.push_back(to_string(t));
  return join(tags, ", ");
}

std::string describe_fragment(const StratifiedProgram& p) {
  return (p.strata.size() > 1 ? "S-" : "") + to_string(validate_program(p).variant);
}

Transformed<FormulaQuery> swap_forall_exists(const FormulaQuery& in) {
  Transformed<FormulaQuery> out{in, {"lemma1", {}, {}, {}, {}}};
  FreshNames fresh = fresh_for(in);
  SoFormula so = split_so_prefix(in.formula);
  so.body = swap_core(so.body, fresh, out.report);
  out.output.formula = so.to_formula();
  out.report.output_fragment = describe_fragment(out.output.formula);
  return out;
}

Transformed<FormulaQuery> to_existential_fragment(const FormulaQuery& in) {
  Transformed<FormulaQuery> out{in, {"prop1", {}, {}, {}, {}}};
  if (split_so_prefix(in.formula).existential()) {
    add_step(out.report, "no universal second-order quantifier", "input returned unchanged");
    out.report.output_fragment = describe_fragment(in.formula);
    return out;
  }
  FreshNames fresh = fresh_for(in);
  Formula phi = normalize_clauses(in.formula);
  for (;;) {
    SoFormula so = split_so_prefix(phi);
    std::size_t u = so.prefix.size();
    for (std::size_t i = 0; i < so.prefix.size(); ++i)
      if (so.prefix[i].quantifier == Quantifier::Forall) u = i;
    if (u == so.prefix.size()) break;
    auto core = read_clausal(so.body, so.symbols());
    if (!core) fail(ErrorKind::Shape, "body is not Horn over all quantified relations (a beta mentions one, or a clause has two positive quantified atoms)");

    const SoPrefixEntry p = so.prefix[u];
    const std::vector<SoPrefixEntry> after(so.prefix.begin() + static_cast<std::ptrdiff_t>(u) + 1, so.prefix.end());
    const auto ys = fresh_vars(fresh, static_cast<std::size_t>(p.arity), "y");
    const auto yt = as_terms(ys);
    std::map<std::string, std::string> widened, copied;
    std::vector<SoPrefixEntry> prefix(so.prefix.begin(), so.prefix.begin() + static_cast<std::ptrdiff_t>(u));
    for (const auto& r : after) {
      widened[r.relation] = fresh.next(r.relation);
      add_fresh(out.report, widened[r.relation], r.arity + p.arity);
      prefix.push_back({Quantifier::Exists, widened[r.relation], r.arity + p.arity});
    }
    for (const auto& r : after) {
      copied[r.relation] = fresh.next(r.relation);
      add_fresh(out.report, copied[r.relation], r.arity);
      prefix.push_back({Quantifier::Exists, copied[r.relation], r.arity});
    }

    std::vector<Formula> clauses;
    // P z̄ read as z̄ ≠ ȳ, remaining relations widened by ȳ.
    for (const auto& c : core->clauses) {
      HornClause nc;
      bool trivial = false;
      for (const auto& e : c.body) {
        auto ua = as_universal_atom(e);
        const bool atom = e.kind() == NodeKind::Atom;
        const std::string rel = atom ? e.symbol() : ua ? ua->relation : "";
        if (rel == p.relation) {
          if (p.arity == 0) {
            trivial = true;
            break;
          }
          Formula ne = tuple_not_equal(atom ? e.terms() : ua->args, yt);
          nc.body.push_back(atom ? ne : Formula::forall(ua->bound, ne));
        } else if (widened.count(rel)) {
          nc.body.push_back(atom ? Formula::atom(widened[rel], concat(e.terms(), yt))
                                 : universal_atom(ua->bound, widened[rel], concat(ua->args, yt)));
        } else {
          nc.body.push_back(e);
        }
      }
      if (trivial) continue;
      if (c.head && c.head->symbol() == p.relation) {
        for (std::size_t i = 0; i < yt.size(); ++i) nc.body.push_back(Formula::equal(c.head->terms()[i], yt[i]));
      } else if (c.head && widened.count(c.head->symbol())) {
        nc.head = Formula::atom(widened[c.head->symbol()], concat(c.head->terms(), yt));
      } else {
        nc.head = c.head;
      }
      clauses.push_back(nc.to_formula());
    }
    add_step(out.report, "universal relation as tuple inequality",
             p.relation + " read as inequality with (" + join(ys) + ")", u);
    // P z̄ read as true, remaining relations renamed.
    for (const auto& c : core->clauses) {
      if (c.head && c.head->symbol() == p.relation) continue;
      HornClause nc;
      for (const auto& e : c.body) {
        auto ua = as_universal_atom(e);
        const bool atom = e.kind() == NodeKind::Atom;
        const std::string rel = atom ? e.symbol() : ua ? ua->relation : "";
        if (rel == p.relation) continue;
        nc.body.push_back(copied.count(rel) ? rename_relation(e, rel, copied[rel]) : e);
      }
      nc.head = c.head;
      if (c.head && copied.count(c.head->symbol()))
        nc.head = rename_relation(*c.head, c.head->symbol(), copied[c.head->symbol()]);
      clauses.push_back(nc.to_formula());
    }
    add_step(out.report, "universal relation as full relation", p.relation + " read as true", u);
    std::vector<std::string> fo = ys;
    fo.insert(fo.end(), core->vars.begin(), core->vars.end());
    Formula body = clauses.empty() ? Formula::truth() : Formula::forall(fo, Formula::all_of(std::move(clauses)));
    phi = SoFormula{prefix, body}.to_formula();
  }
  out.output.formula = phi;
  out.report.output_fragment = describe_fragment(phi);
  if (has_tag(classify_fragment(in.formula), Fragment::SoHorn) && !has_tag(classify_fragment(phi), Fragment::SoHorn))
    out.report.warnings.push_back("tuple inequalities in beta positions widen the fragment beyond plain Horn");
  return out;
}

Transformed<DatalogFormula> fo_to_datalog_r(const FormulaQuery& in) {
  Transformed<DatalogFormula> out{{}, {"fo2dlr", {}, {}, {}, {}}};
  FreshNames fresh = fresh_for(in);
  CompiledFo c = compile_fo_r(in.formula, in.query, fresh, out.report, "formula");
  out.output.program = StratifiedProgram(in.vocab, {c.rules});
  out.output.goal = c.goal;
  out.report.output_fragment = describe_fragment(out.output.program);
  return out;
}

Transformed<DatalogFormula> datalog_star_to_r(const DatalogFormula& in) {
  Transformed<DatalogFormula> out{in, {"star2r", {}, {}, {}, {}}};
  validate_program(in.program);
  FreshNames fresh = fresh_for(in.program);
  for (std::size_t m = 0; m < out.output.program.strata.size(); ++m) {
    auto& stratum = out.output.program.strata[m];
    std::vector<Rule> added;
    for (std::size_t i = 0; i < stratum.size(); ++i) {
      for (auto& e : stratum[i].body) {
        if (e.kind != BodyKind::Condition || e.condition->is_literal() || e.condition->kind() == NodeKind::True)
          continue;
        const auto xs = free_variables(*e.condition);
        CompiledFo c = compile_fo_r(*e.condition, xs, fresh, out.report, "side condition");
        add_step(out.report, "condition replacement", "side condition replaced by " + c.goal + "(" + join(xs) + ")", i);
        e = BodyElement::atom(c.goal, as_terms(xs));
        added.insert(added.end(), c.rules.begin(), c.rules.end());
      }
    }
    stratum.insert(stratum.end(), added.begin(), added.end());
  }
  out.report.output_fragment = describe_fragment(out.output.program);
  return out;
}

Transformed<DatalogFormula> so_horn_to_datalog(const FormulaQuery& in) {
  Transformed<DatalogFormula> out{{}, {"horn2dl", {}, {}, {}, {}}};
  FreshNames fresh = fresh_for(in);
  Formula body = strip_so(in.formula);
  if (contains_so_quantifier(body)) fail(ErrorKind::Shape, "nested second-order formulas need the stratified translation");
  CompiledFo c = horn_to_rules(in.formula, in.query, fresh, out.report);
  out.output.program = StratifiedProgram(in.vocab, {c.rules});
  out.output.goal = c.goal;
  out.report.output_fragment = describe_fragment(out.output.program);
  return out;
}

Transformed<FormulaQuery> datalog_to_so_horn(const DatalogFormula& in) {
  Transformed<FormulaQuery> out{{Formula::truth(), in.program.vocab, {}}, {"dl2horn", {}, {}, {}, {}}};
  if (in.program.strata.size() != 1) fail(ErrorKind::Shape, "stratified programs need the stratified translation");
  FreshNames fresh = fresh_for(in.program);
  Program pi = in.program.stratum(0);
  int arity = -1;
  for (const auto& s : pi.intentional())
    if (s.name == in.goal) arity = s.arity;
  if (arity < 0) fail(ErrorKind::Invalid, "goal " + in.goal + " is not an intentional symbol");
  out.output.query = query_names(static_cast<std::size_t>(arity), fresh);
  out.output.formula = rules_to_horn(pi, in.goal, out.output.query, fresh, out.report, nullptr);
  out.report.output_fragment = describe_fragment(out.output.formula);
  return out;
}

Transformed<FormulaQuery> datalog_r_to_slfp(const DatalogFormula& in) {
  Transformed<FormulaQuery> out{{Formula::truth(), in.program.vocab, {}}, {"dlr2lfp", {}, {}, {}, {}}};
  auto info = validate_program(in.program);
  if (info.variant == Variant::Star || info.variant == Variant::StarR)
    fail(ErrorKind::Shape, "program has non-literal side conditions; replace them first");
  FreshNames fresh = fresh_for(in.program);
  AtomReplacer lower;
  std::optional<int> goal_arity;
  for (std::size_t m = 0; m < in.program.strata.size(); ++m) {
    Program pi = normalize_zeroary(in.program.stratum(m));
    fresh.reserve(program_names(pi));
    std::vector<FixpointComponent> system;
    std::map<std::string, std::size_t> index;
    std::vector<RelationSymbol> zeroary;
    for (const auto& s : pi.intentional()) {
      if (s.name == in.goal) goal_arity = s.arity;
      if (s.arity == 0) {
        zeroary.push_back(s);
        continue;
      }
      std::vector<std::string> xs;
      for (const auto& r : pi.rules) {
        if (r.head != s.name) continue;
        std::set<std::string> d;
        bool plain = true;
        for (const auto& t : r.head_args) plain = plain && t.is_var() && d.insert(t.name).second;
        if (plain)
          for (const auto& t : r.head_args) xs.push_back(t.name);
        break;
      }
      if (xs.empty()) xs = fresh_vars(fresh, static_cast<std::size_t>(s.arity), "x");
      index[s.name] = system.size();
      system.push_back({s.name, xs, Formula::falsity()});
    }
    for (auto& comp : system) {
      std::vector<Formula> disjuncts;
      for (std::size_t i = 0; i < pi.rules.size(); ++i)
        if (pi.rules[i].head == comp.relation) disjuncts.push_back(rule_definition(pi.rules[i], comp.vars, lower, fresh));
      comp.body = Formula::any_of(std::move(disjuncts));
      add_step(out.report, "defining formula", comp.relation + " as a disjunction over its rules", m);
    }
    for (const auto& [name, i] : index) {
      lower.defs[name] = [system, i](const std::vector<Term>& args) { return Formula::slfp(system, i, args); };
    }
    for (const auto& s : zeroary) {
      std::vector<Formula> disjuncts;
      for (const auto& r : pi.rules)
        if (r.head == s.name) disjuncts.push_back(rule_definition(r, {}, lower, fresh));
      Formula sentence = Formula::any_of(std::move(disjuncts));
      lower.defs[s.name] = [sentence](const std::vector<Term>&) { return sentence; };
      add_step(out.report, "zero-ary sentence", s.name + " compiled to a sentence", m);
    }
  }
  if (!goal_arity) fail(ErrorKind::Invalid, "goal " + in.goal + " is not an intentional symbol");
  out.output.query = query_names(static_cast<std::size_t>(*goal_arity), fresh);
  out.output.formula = lower.defs.at(in.goal)(as_terms(out.output.query));
  out.report.output_fragment = describe_fragment(out.output.formula);
  return out;
}

Transformed<DatalogFormula> lfp_normal_to_datalog_r(const FormulaQuery& in) {
  Transformed<DatalogFormula> out{{}, {"lfp2dlr", {}, {}, {}, {}}};
  FreshNames fresh = fresh_for(in);
  Formula f = in.formula;
  while (f.kind() == NodeKind::Exists) f = f.child();
  if (!(f.kind() == NodeKind::Lfp || (f.kind() == NodeKind::Slfp && f.components().size() == 1)))
    fail(ErrorKind::Shape, "expected existential quantifiers followed by a single fixed point");
  auto violations = check_positivity(in.formula);
  if (!violations.empty()) fail(ErrorKind::Invalid, "relation " + violations.front().relation + " occurs negatively");
  FixpointComponent comp = f.components()[0];
  require_first_order(comp.body, "fixed-point body");
  std::string z = comp.relation;
  if (in.vocab && in.vocab->contains(z)) {
    std::string nz = fresh.next(z);
    comp.body = rename_relation(comp.body, z, nz);
    z = nz;
    add_fresh(out.report, z, static_cast<int>(comp.vars.size()));
  }
  std::vector<std::string> params;
  for (const auto& v : free_variables(comp.body))
    if (std::find(comp.vars.begin(), comp.vars.end(), v) == comp.vars.end()) params.push_back(v);
  std::vector<std::string> query = params;
  query.insert(query.end(), comp.vars.begin(), comp.vars.end());
  CompiledFo c = compile_fo_r(comp.body, query, fresh, out.report, "fixed-point body");
  const auto pt = as_terms(params);
  for (auto& r : c.rules)
    for (auto& e : r.body)
      if ((e.kind == BodyKind::Atom || e.kind == BodyKind::Universal) && e.relation == z) e.args = concat(pt, e.args);
  add_step(out.report, "parameter widening", z + " widened by (" + join(params) + ")");
  for (auto& r : c.rules) {
    if (r.head == c.goal) r.head = z;
    for (auto& e : r.body)
      if (e.relation == c.goal) e.relation = z;
  }
  std::erase_if(out.report.fresh, [&](const auto& s) { return s.name == c.goal; });
  const std::string goal = fresh.next("Q");
  add_fresh(out.report, goal, static_cast<int>(in.query.size()));
  c.rules.push_back({goal, as_terms(in.query), {BodyElement::atom(z, concat(pt, f.terms()))}});
  add_step(out.report, "bridging rules", c.goal + " derived as " + z + " and " + goal + " <- " + z);
  out.output.program = StratifiedProgram(in.vocab, {c.rules});
  out.output.goal = goal;
  out.report.output_fragment = describe_fragment(out.output.program);
  return out;
}

Transformed<DatalogFormula> fo_to_s_datalog(const FormulaQuery& in) {
  Transformed<DatalogFormula> out{{}, {"fo2sdl", {}, {}, {}, {}}};
  require_first_order(in.formula, "formula");
  FreshNames fresh = fresh_for(in);
  StratifiedCompiler compiler(fresh, out.report);
  auto root = compiler.compile(in.formula, in.query);
  out.output.program = StratifiedProgram(in.vocab, compiler.strata());
  out.output.goal = root.symbol;
  out.report.output_fragment = describe_fragment(out.output.program);
  return out;
}

Transformed<DatalogFormula> horn_s_to_datalog(const FormulaQuery& in) {
  Transformed<DatalogFormula> out{{}, {"sdl-horn", {}, {}, {}, {}}};
  FreshNames fresh = fresh_for(in);
  CompiledStrata c = horn_s_core(in.formula, in.query, fresh, out.report);
  std::vector<std::vector<Rule>> strata;
  for (auto& s : c.strata)
    if (!s.empty()) strata.push_back(std::move(s));
  out.output.program = StratifiedProgram(in.vocab, strata);
  out.output.goal = c.goal;
  out.report.output_fragment = describe_fragment(out.output.program);
  return out;
}

Transformed<FormulaQuery> datalog_s_to_horn(const DatalogFormula& in) {
  Transformed<FormulaQuery> out{{Formula::truth(), in.program.vocab, {}}, {"sdl-horn", {}, {}, {}, {}}};
  validate_program(in.program);
  FreshNames fresh = fresh_for(in.program);
  HornBuilder builder(in.program, fresh, out.report);
  const auto& d = builder.definition(in.goal);
  out.output.query = query_names(d.vars.size(), fresh);
  std::map<std::string, Term> subst;
  for (std::size_t i = 0; i < d.vars.size(); ++i) subst.emplace(d.vars[i], Term::var(out.output.query[i]));
  out.output.formula = substitute(d.formula, subst);
  out.report.output_fragment = describe_fragment(out.output.formula);
  return out;
}

Transformed<FormulaQuery> sigma11_push_exists(const FormulaQuery& in) {
  Transformed<FormulaQuery> out{in, {"sig11", {}, {}, {}, {}}};
  if (!is_sigma11_normal(in.formula)) fail(ErrorKind::Shape, "formula is not in existential second-order normal form");
  SoFormula so = split_so_prefix(in.formula);
  std::vector<std::string> xs, ys;
  Formula matrix = so.body;
  while (matrix.kind() == NodeKind::Forall) {
    xs.push_back(matrix.symbol());
    matrix = matrix.child();
  }
  while (matrix.kind() == NodeKind::Exists) {
    ys.push_back(matrix.symbol());
    matrix = matrix.child();
  }
  if (ys.empty()) {
    add_step(out.report, "no existential block", "input returned unchanged");
    out.report.output_fragment = describe_fragment(in.formula);
    return out;
  }
  FreshNames fresh = fresh_for(in);
  const std::string p = fresh.next("P");
  const auto zs = fresh_vars(fresh, ys.size(), "z");
  const int r = static_cast<int>(ys.size());
  Formula inner = Formula::so_exists(
      p, r,
      Formula::forall(ys, Formula::conj({Formula::exists(zs, Formula::atom(p, as_terms(zs))),
                                         Formula::implies(Formula::atom(p, as_terms(ys)), matrix)})));
  add_step(out.report, "existential block as relation", p + "/" + std::to_string(r) + " witnesses (" + join(ys) + ")");
  TransformReport swaps;
  for (std::size_t k = xs.size(); k-- > 0;) inner = swap_core(Formula::forall(xs[k], inner), fresh, swaps);
  for (auto& s : swaps.steps) out.report.steps.push_back(std::move(s));
  out.report.warnings = swaps.warnings;
  add_fresh(out.report, inner.symbol(), inner.arity());
  so.body = inner;
  out.output.formula = so.to_formula();
  out.report.output_fragment = describe_fragment(out.output.formula);
  return out;
}

Transformed<FormulaQuery> pi11_to_ehorn_r(const FormulaQuery& in) {
  Transformed<FormulaQuery> out{in, {"pi11-ehorn", {}, {}, {}, {}}};
  if (!is_pi11_normal(in.formula)) fail(ErrorKind::Shape, "formula is not in universal second-order normal form");
  SoFormula so = split_so_prefix(in.formula);
  std::vector<std::string> xs, ys;
  Formula matrix = so.body;
  while (matrix.kind() == NodeKind::Exists) {
    xs.push_back(matrix.symbol());
    matrix = matrix.child();
  }
  while (matrix.kind() == NodeKind::Forall) {
    ys.push_back(matrix.symbol());
    matrix = matrix.child();
  }
  auto cnf = as_cnf(matrix);
  if (!cnf) fail(ErrorKind::Shape, "matrix is not in conjunctive normal form");
  FreshNames fresh = fresh_for(in);
  const std::string r = fresh.next("R");
  const int m = static_cast<int>(xs.size());
  add_fresh(out.report, r, m);
  const auto zs = fresh_vars(fresh, xs.size(), "z");
  std::vector<Formula> clauses;
  clauses.push_back(Formula::implies(universal_atom(zs, r, as_terms(zs)), Formula::falsity()));
  add_step(out.report, "nonempty complement clause", "some tuple lies outside " + r);
  for (std::size_t j = 0; j < cnf->size(); ++j) {
    std::vector<Formula> body;
    for (const auto& lit : (*cnf)[j]) body.push_back(negate(lit));
    Formula lhs = body.empty() ? Formula::truth() : Formula::all_of(std::move(body));
    clauses.push_back(Formula::implies(lhs, Formula::atom(r, as_terms(xs))));
    add_step(out.report, "contraposed clause", "clause " + std::to_string(j + 1) + " guarded by " + r, j);
  }
  std::vector<std::string> fo = xs;
  fo.insert(fo.end(), ys.begin(), ys.end());
  so.prefix.push_back({Quantifier::Exists, r, m});
  so.body = Formula::forall(fo, Formula::all_of(std::move(clauses)));
  out.output.formula = so.to_formula();
  out.report.output_fragment = describe_fragment(out.output.formula);
  return out;
}

}  // namespace hornlab
