#include "hornlab/datalog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hornlab/error.hpp"
#include "hornlab/eval.hpp"
#include "hornlab/fresh.hpp"

namespace hornlab {

BodyElement BodyElement::atom(std::string relation, std::vector<Term> args) {
  return {BodyKind::Atom, std::move(relation), std::move(args), {}, std::nullopt};
}

BodyElement BodyElement::universal(std::vector<std::string> bound, std::string relation, std::vector<Term> args) {
  return {BodyKind::Universal, std::move(relation), std::move(args), std::move(bound), std::nullopt};
}

BodyElement BodyElement::negated(std::string relation, std::vector<Term> args) {
  return {BodyKind::Negated, std::move(relation), std::move(args), {}, std::nullopt};
}

BodyElement BodyElement::equal(Term a, Term b) {
  return {BodyKind::Equal, {}, {std::move(a), std::move(b)}, {}, std::nullopt};
}

BodyElement BodyElement::not_equal(Term a, Term b) {
  return {BodyKind::NotEqual, {}, {std::move(a), std::move(b)}, {}, std::nullopt};
}

BodyElement BodyElement::formula(Formula f) { return {BodyKind::Condition, {}, {}, {}, std::move(f)}; }

Formula BodyElement::to_formula() const {
  switch (kind) {
    case BodyKind::Atom:
      return Formula::atom(relation, args);
    case BodyKind::Universal:
      return Formula::forall(bound, Formula::atom(relation, args));
    case BodyKind::Negated:
      return Formula::negation(Formula::atom(relation, args));
    case BodyKind::Equal:
      return Formula::equal(args[0], args[1]);
    case BodyKind::NotEqual:
      return Formula::negation(Formula::equal(args[0], args[1]));
    case BodyKind::Condition:
      return *condition;
  }
  return Formula::truth();
}

std::vector<std::string> Rule::variables() const {
  std::vector<std::string> out;
  auto note = [&](const Term& t, const std::vector<std::string>& bound) {
    if (!t.is_var()) return;
    if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) return;
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  };
  for (const auto& t : head_args) note(t, {});
  for (const auto& e : body) {
    if (e.kind == BodyKind::Condition) {
      for (const auto& v : free_variables(*e.condition)) note(Term::var(v), {});
    } else {
      for (const auto& t : e.args) note(t, e.bound);
    }
  }
  return out;
}

namespace {

std::vector<RelationSymbol> heads_of(const std::vector<Rule>& rules) {
  std::vector<RelationSymbol> out;
  for (const auto& r : rules) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.name == r.head; });
    if (it == out.end()) out.push_back({r.head, static_cast<int>(r.head_args.size())});
  }
  return out;
}

}  // namespace

std::vector<RelationSymbol> Program::intentional() const { return heads_of(rules); }

std::vector<RelationSymbol> StratifiedProgram::intentional() const {
  std::vector<RelationSymbol> out;
  for (const auto& s : strata) {
    auto part = heads_of(s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::shared_ptr<const Vocabulary> StratifiedProgram::stratum_vocabulary(std::size_t m) const {
  if (m == 0) return vocab;
  auto v = std::make_shared<Vocabulary>(*vocab);
  for (std::size_t i = 0; i < m && i < strata.size(); ++i)
    for (const auto& s : heads_of(strata[i]))
      if (!v->contains(s.name)) v->add_relation(s.name, s.arity);
  return v;
}

Program StratifiedProgram::stratum(std::size_t m) const { return {stratum_vocabulary(m), strata.at(m)}; }

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Plain:
      return "DATALOG";
    case Variant::Star:
      return "DATALOG*";
    case Variant::R:
      return "DATALOG^r";
    case Variant::StarR:
      return "DATALOG^{*r}";
  }
  return "DATALOG";
}

namespace {

Variant join(Variant a, Variant b) {
  bool star = a == Variant::Star || a == Variant::StarR || b == Variant::Star || b == Variant::StarR;
  bool r = a == Variant::R || a == Variant::StarR || b == Variant::R || b == Variant::StarR;
  if (star && r) return Variant::StarR;
  if (star) return Variant::Star;
  if (r) return Variant::R;
  return Variant::Plain;
}

[[noreturn]] void invalid(const Rule& rule, const std::string& what) {
  fail(ErrorKind::Invalid, "rule for '" + rule.head + "': " + what);
}

}  // namespace

ProgramInfo validate_program(const Program& pi) {
  if (!pi.vocab) fail(ErrorKind::Invalid, "program has no vocabulary");
  const Vocabulary& vocab = *pi.vocab;
  ProgramInfo info;
  info.extensional = vocab.relations();
  info.constants = vocab.constants();
  std::map<std::string, int> intentional;
  for (const auto& r : pi.rules) {
    if (vocab.contains(r.head)) invalid(r, "head symbol '" + r.head + "' is extensional");
    auto [it, inserted] = intentional.emplace(r.head, static_cast<int>(r.head_args.size()));
    if (!inserted && it->second != static_cast<int>(r.head_args.size()))
      invalid(r, "head symbol '" + r.head + "' used with two arities");
  }
  info.intentional = pi.intentional();

  auto check_terms = [&](const Rule& r, const std::vector<Term>& ts) {
    for (const auto& t : ts)
      if (!t.is_var() && !vocab.has_constant(t.name)) invalid(r, "unknown constant '" + t.name + "'");
  };
  auto arity_of = [&](const Rule& r, const std::string& name) -> std::pair<int, bool> {
    if (auto it = intentional.find(name); it != intentional.end()) return {it->second, true};
    if (auto idx = vocab.relation_index(name)) return {vocab.relations()[*idx].arity, false};
    invalid(r, "unknown relation symbol '" + name + "'");
  };

  bool star = false;
  bool universal = false;
  for (const auto& r : pi.rules) {
    check_terms(r, r.head_args);
    for (const auto& e : r.body) {
      switch (e.kind) {
        case BodyKind::Atom:
        case BodyKind::Negated:
        case BodyKind::Universal: {
          auto [arity, is_int] = arity_of(r, e.relation);
          if (arity != static_cast<int>(e.args.size()))
            invalid(r, "relation '" + e.relation + "' has arity " + std::to_string(arity) + " but is applied to " +
                           std::to_string(e.args.size()) + " arguments");
          check_terms(r, e.args);
          if (e.kind == BodyKind::Negated && is_int)
            invalid(r, "intentional symbol '" + e.relation + "' occurs negated");
          if (e.kind == BodyKind::Universal) {
            universal = true;
            std::set<std::string> seen;
            for (const auto& v : e.bound) {
              if (!seen.insert(v).second) invalid(r, "universal atom binds '" + v + "' twice");
              auto uses = std::count_if(e.args.begin(), e.args.end(),
                                        [&](const Term& t) { return t.is_var() && t.name == v; });
              if (uses != 1) invalid(r, "universal variable '" + v + "' must occur exactly once in its atom");
            }
          }
          if (is_int && arity == 0 && e.kind != BodyKind::Negated) info.zeroary_in_bodies = true;
          break;
        }
        case BodyKind::Equal:
        case BodyKind::NotEqual:
          if (e.args.size() != 2) invalid(r, "equality needs two terms");
          check_terms(r, e.args);
          break;
        case BodyKind::Condition: {
          const Formula& f = *e.condition;
          if (contains_so_quantifier(f) || contains_fixpoint(f)) invalid(r, "side condition is not first-order");
          for (const auto& [name, arity] : free_relations(f)) {
            if (intentional.count(name)) invalid(r, "side condition mentions intentional symbol '" + name + "'");
            auto idx = vocab.relation_index(name);
            if (!idx) invalid(r, "unknown relation symbol '" + name + "' in side condition");
            if (vocab.relations()[*idx].arity != arity)
              invalid(r, "relation '" + name + "' has the wrong arity in a side condition");
          }
          if (!f.is_literal() && f.kind() != NodeKind::True) star = true;
          break;
        }
      }
    }
  }
  info.variant = star && universal ? Variant::StarR : star ? Variant::Star : universal ? Variant::R : Variant::Plain;
  return info;
}

ProgramInfo validate_program(const StratifiedProgram& sigma) {
  ProgramInfo total;
  std::set<std::string> defined;
  for (std::size_t m = 0; m < sigma.strata.size(); ++m) {
    Program p = sigma.stratum(m);
    ProgramInfo info = validate_program(p);
    for (const auto& s : info.intentional)
      if (!defined.insert(s.name).second)
        fail(ErrorKind::Invalid, "symbol '" + s.name + "' is defined in two strata");
    total.variant = join(total.variant, info.variant);
    total.intentional.insert(total.intentional.end(), info.intentional.begin(), info.intentional.end());
    total.zeroary_in_bodies = total.zeroary_in_bodies || info.zeroary_in_bodies;
  }
  if (sigma.vocab) {
    total.extensional = sigma.vocab->relations();
    total.constants = sigma.vocab->constants();
  }
  return total;
}

Program normalize_zeroary(const Program& pi) {
  std::set<std::string> zeroary;
  for (const auto& s : pi.intentional())
    if (s.arity == 0) zeroary.insert(s.name);
  std::set<std::string> used_in_body;
  for (const auto& r : pi.rules)
    for (const auto& e : r.body)
      if ((e.kind == BodyKind::Atom || e.kind == BodyKind::Universal) && zeroary.count(e.relation))
        used_in_body.insert(e.relation);
  if (used_in_body.empty()) return pi;

  FreshNames fresh;
  for (const auto& s : pi.vocab->relations()) fresh.reserve(s.name);
  for (const auto& c : pi.vocab->constants()) fresh.reserve(c);
  for (const auto& r : pi.rules) {
    fresh.reserve(r.head);
    for (const auto& v : r.variables()) fresh.reserve(v);
    for (const auto& e : r.body) {
      fresh.reserve(e.relation);
      for (const auto& b : e.bound) fresh.reserve(b);
      if (e.condition) fresh.reserve(all_names(*e.condition));
    }
  }
  std::map<std::string, std::string> primed;
  for (const auto& q : used_in_body) primed[q] = fresh.next(q);
  const std::string x = fresh.next("x");

  Program out{pi.vocab, {}};
  for (const auto& r : pi.rules) {
    Rule nr = r;
    if (auto it = primed.find(r.head); it != primed.end()) {
      nr.head = it->second;
      nr.head_args = {Term::var(x)};
    }
    for (auto& e : nr.body) {
      if ((e.kind == BodyKind::Atom || e.kind == BodyKind::Universal) && primed.count(e.relation)) {
        e = BodyElement::atom(primed[e.relation], {Term::var(x)});
      }
    }
    out.rules.push_back(std::move(nr));
  }
  for (const auto& [q, qp] : primed) out.rules.push_back({q, {}, {BodyElement::atom(qp, {Term::var(x)})}});
  return out;
}

std::size_t StageTrace::stage_count() const {
  std::size_t k = 0;
  for (std::size_t s = 0; s < symbols.size(); ++s) k = std::max(k, convergence(s));
  return k;
}

std::size_t StageTrace::convergence(std::size_t symbol) const {
  const Relation& final = stages.back()[symbol];
  for (std::size_t k = 0; k < stages.size(); ++k)
    if (stages[k][symbol] == final) return k;
  return stages.size() - 1;
}

// ---------------------------------------------------------------------------
// Engine.

namespace {

enum class TermKind : std::uint8_t { Var, Const, Bound };

struct TRef {
  TermKind kind;
  int index;  // variable slot, element value, or bound-variable position
};

struct CElem {
  BodyKind kind;
  bool intentional = false;
  int rel = 0;
  std::vector<TRef> args;
  int bound_count = 0;
  Relation answers;
  std::vector<int> cond_slots;
  std::vector<int> slots;
};

struct CRule {
  int head = 0;
  std::vector<TRef> head_args;
  std::vector<CElem> body;
  int nvars = 0;
  std::vector<int> order;
  std::vector<std::vector<int>> checks_at;  // checks_at[d]: elements decidable once order[0..d) is assigned
};

class StratumEngine {
 public:
  StratumEngine(const std::vector<Rule>& rules, const Structure& a, std::vector<RelationSymbol> symbols)
      : a_(a), n_(a.domain_size()), symbols_(std::move(symbols)) {
    for (const auto& r : rules) rules_.push_back(compile(r));
  }

  std::size_t run(EvalStrategy strategy, StageTrace* trace) {
    std::vector<Relation> cur;
    for (const auto& s : symbols_) cur.emplace_back(s.arity, n_);
    if (trace) {
      trace->symbols = symbols_;
      trace->stages.push_back(cur);
    }
    std::vector<Relation> delta;
    std::size_t step = 0;
    for (;;) {
      std::vector<Relation> next = cur;
      stage_ = &cur;
      if (strategy == EvalStrategy::Naive || step == 0) {
        for (const auto& r : rules_) fire(r, next, -1, nullptr);
      } else {
        for (const auto& r : rules_)
          for (std::size_t j = 0; j < r.body.size(); ++j) {
            const CElem& e = r.body[j];
            if (!e.intentional || (e.kind != BodyKind::Atom && e.kind != BodyKind::Universal)) continue;
            fire(r, next, static_cast<int>(j), &delta[static_cast<std::size_t>(e.rel)]);
          }
      }
      bool changed = false;
      delta.clear();
      for (std::size_t i = 0; i < cur.size(); ++i) {
        Relation d = next[i];
        auto dw = d.words();
        auto cw = cur[i].words();
        for (std::size_t w = 0; w < dw.size(); ++w) dw[w] &= ~cw[w];
        if (!d.empty()) changed = true;
        delta.push_back(std::move(d));
      }
      if (!changed) {
        if (trace) trace->stages.push_back(cur);
        break;
      }
      cur = std::move(next);
      ++step;
      if (trace) trace->stages.push_back(cur);
    }
    result_ = std::move(cur);
    return step;
  }

  const std::vector<Relation>& result() const { return result_; }

 private:
  CRule compile(const Rule& rule) {
    CRule cr;
    auto vars = rule.variables();
    cr.nvars = static_cast<int>(vars.size());
    auto slot_of = [&](const std::string& v) {
      return static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin());
    };
    auto ref = [&](const Term& t, const std::vector<std::string>& bound) -> TRef {
      if (t.is_var()) {
        auto b = std::find(bound.begin(), bound.end(), t.name);
        if (b != bound.end()) return {TermKind::Bound, static_cast<int>(b - bound.begin())};
        return {TermKind::Var, slot_of(t.name)};
      }
      return {TermKind::Const, a_.constant(t.name)};
    };
    cr.head = symbol_index(rule.head);
    for (const auto& t : rule.head_args) cr.head_args.push_back(ref(t, {}));
    for (const auto& e : rule.body) {
      CElem ce;
      ce.kind = e.kind;
      if (e.kind == BodyKind::Condition) {
        auto fv = free_variables(*e.condition);
        std::vector<std::string> params;
        for (const auto& v : fv) {
          if (a_.vocabulary().has_constant(v)) continue;
          params.push_back(v);
          ce.cond_slots.push_back(slot_of(v));
        }
        CompiledFormula cf(*e.condition, a_.vocabulary_ptr(), params);
        ce.answers = cf.answers(a_);
        ce.slots = ce.cond_slots;
      } else {
        if (e.kind == BodyKind::Atom || e.kind == BodyKind::Universal || e.kind == BodyKind::Negated) {
          auto it = std::find_if(symbols_.begin(), symbols_.end(), [&](const auto& s) { return s.name == e.relation; });
          if (it != symbols_.end()) {
            ce.intentional = true;
            ce.rel = static_cast<int>(it - symbols_.begin());
          } else {
            auto idx = a_.vocabulary().relation_index(e.relation);
            if (!idx) fail(ErrorKind::Invalid, "structure does not interpret '" + e.relation + "'");
            ce.rel = static_cast<int>(*idx);
          }
        }
        ce.bound_count = static_cast<int>(e.bound.size());
        for (const auto& t : e.args) {
          TRef r = ref(t, e.bound);
          ce.args.push_back(r);
          if (r.kind == TermKind::Var) ce.slots.push_back(r.index);
        }
      }
      cr.body.push_back(std::move(ce));
    }
    // Variables of positive atoms first, in body order, then the rest.
    std::vector<char> placed(static_cast<std::size_t>(cr.nvars), 0);
    for (const auto& ce : cr.body)
      if (ce.kind == BodyKind::Atom)
        for (int s : ce.slots)
          if (!placed[static_cast<std::size_t>(s)]) {
            placed[static_cast<std::size_t>(s)] = 1;
            cr.order.push_back(s);
          }
    for (int s = 0; s < cr.nvars; ++s)
      if (!placed[static_cast<std::size_t>(s)]) cr.order.push_back(s);
    std::vector<int> position(static_cast<std::size_t>(cr.nvars));
    for (int d = 0; d < cr.nvars; ++d) position[static_cast<std::size_t>(cr.order[static_cast<std::size_t>(d)])] = d;
    cr.checks_at.assign(static_cast<std::size_t>(cr.nvars) + 1, {});
    for (std::size_t j = 0; j < cr.body.size(); ++j) {
      int depth = 0;
      for (int s : cr.body[j].slots) depth = std::max(depth, position[static_cast<std::size_t>(s)] + 1);
      cr.checks_at[static_cast<std::size_t>(depth)].push_back(static_cast<int>(j));
    }
    return cr;
  }

  int symbol_index(const std::string& name) const {
    auto it = std::find_if(symbols_.begin(), symbols_.end(), [&](const auto& s) { return s.name == name; });
    return static_cast<int>(it - symbols_.begin());
  }

  Element value(const TRef& t) const { return t.kind == TermKind::Var ? assign_[static_cast<std::size_t>(t.index)] : t.index; }

  const Relation& relation_of(const CElem& e) const {
    return e.intentional ? (*stage_)[static_cast<std::size_t>(e.rel)] : a_.relation(static_cast<std::size_t>(e.rel));
  }

  bool holds(const CElem& e) const {
    switch (e.kind) {
      case BodyKind::Atom:
      case BodyKind::Negated: {
        std::size_t index = 0;
        for (const auto& t : e.args) index = index * static_cast<std::size_t>(n_) + static_cast<std::size_t>(value(t));
        bool in = relation_of(e).test(index);
        return e.kind == BodyKind::Atom ? in : !in;
      }
      case BodyKind::Universal: {
        const Relation& r = relation_of(e);
        std::vector<Element> bound(static_cast<std::size_t>(e.bound_count), 0);
        for (;;) {
          std::size_t index = 0;
          for (const auto& t : e.args) {
            Element v = t.kind == TermKind::Bound ? bound[static_cast<std::size_t>(t.index)] : value(t);
            index = index * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
          }
          if (!r.test(index)) return false;
          int k = e.bound_count - 1;
          while (k >= 0 && ++bound[static_cast<std::size_t>(k)] == n_) bound[static_cast<std::size_t>(k--)] = 0;
          if (k < 0) return true;
        }
      }
      case BodyKind::Equal:
        return value(e.args[0]) == value(e.args[1]);
      case BodyKind::NotEqual:
        return value(e.args[0]) != value(e.args[1]);
      case BodyKind::Condition: {
        std::size_t index = 0;
        for (int s : e.cond_slots)
          index = index * static_cast<std::size_t>(n_) + static_cast<std::size_t>(assign_[static_cast<std::size_t>(s)]);
        return e.answers.test(index);
      }
    }
    return false;
  }

  void search(const CRule& r, int depth, std::vector<Relation>& out) {
    for (int j : r.checks_at[static_cast<std::size_t>(depth)])
      if (!holds(r.body[static_cast<std::size_t>(j)])) return;
    if (depth == r.nvars) {
      std::size_t index = 0;
      for (const auto& t : r.head_args) index = index * static_cast<std::size_t>(n_) + static_cast<std::size_t>(value(t));
      out[static_cast<std::size_t>(r.head)].set(index);
      return;
    }
    const auto slot = static_cast<std::size_t>(r.order[static_cast<std::size_t>(depth)]);
    if (fixed_[slot]) {
      search(r, depth + 1, out);
      return;
    }
    for (Element e = 0; e < n_; ++e) {
      assign_[slot] = e;
      search(r, depth + 1, out);
    }
  }

  // Derive heads of r into out. With a driver, element `driver` is restricted to
  // instances matching a tuple of `delta`.
  void fire(const CRule& r, std::vector<Relation>& out, int driver, const Relation* delta) {
    assign_.assign(static_cast<std::size_t>(r.nvars), 0);
    fixed_.assign(static_cast<std::size_t>(r.nvars), 0);
    if (driver < 0) {
      search(r, 0, out);
      return;
    }
    const CElem& e = r.body[static_cast<std::size_t>(driver)];
    for (std::size_t index = 0; index < delta->capacity(); ++index) {
      if (!delta->test(index)) continue;
      Tuple t = delta->tuple_at(index);
      std::fill(fixed_.begin(), fixed_.end(), 0);
      bool match = true;
      for (std::size_t p = 0; p < e.args.size() && match; ++p) {
        const TRef& arg = e.args[p];
        if (arg.kind == TermKind::Bound) continue;
        if (arg.kind == TermKind::Const) {
          match = arg.index == t[p];
          continue;
        }
        auto slot = static_cast<std::size_t>(arg.index);
        if (fixed_[slot]) {
          match = assign_[slot] == t[p];
        } else {
          fixed_[slot] = 1;
          assign_[slot] = t[p];
        }
      }
      if (match) search(r, 0, out);
    }
  }

  const Structure& a_;
  int n_;
  std::vector<RelationSymbol> symbols_;
  std::vector<CRule> rules_;
  const std::vector<Relation>* stage_ = nullptr;
  std::vector<Element> assign_;
  std::vector<char> fixed_;
  std::vector<Relation> result_;
};

void check_interprets(const Vocabulary& program_vocab, const Structure& a) {
  const Vocabulary& v = a.vocabulary();
  for (const auto& r : program_vocab.relations()) {
    auto idx = v.relation_index(r.name);
    if (!idx || v.relations()[*idx].arity != r.arity)
      fail(ErrorKind::Invalid, "structure does not interpret relation '" + r.name + "'");
  }
  for (const auto& c : program_vocab.constants())
    if (!v.has_constant(c)) fail(ErrorKind::Invalid, "structure does not interpret constant '" + c + "'");
}

}  // namespace

DatalogResult eval_datalog(const StratifiedProgram& sigma, const Structure& a, bool trace, EvalStrategy strategy) {
  if (sigma.vocab) check_interprets(*sigma.vocab, a);
  DatalogResult result{a, {}, {}};
  for (std::size_t m = 0; m < sigma.strata.size(); ++m) {
    auto symbols = heads_of(sigma.strata[m]);
    for (const auto& s : symbols)
      if (result.expanded.vocabulary().contains(s.name))
        fail(ErrorKind::Invalid, "intentional symbol '" + s.name + "' is already interpreted by the structure");
    StratumEngine engine(sigma.strata[m], result.expanded, symbols);
    StageTrace st;
    result.stage_counts.push_back(engine.run(strategy, trace ? &st : nullptr));
    if (trace) result.traces.push_back(std::move(st));
    result.expanded = result.expanded.expand(symbols, engine.result());
  }
  return result;
}

std::size_t stage_count(const StratifiedProgram& sigma, const Structure& a, const std::string& symbol) {
  DatalogResult r = eval_datalog(sigma, a, true);
  for (const auto& t : r.traces)
    for (std::size_t s = 0; s < t.symbols.size(); ++s)
      if (t.symbols[s].name == symbol) return t.convergence(s);
  fail(ErrorKind::Invalid, "'" + symbol + "' is not an intentional symbol");
}

Relation eval_query(const DatalogFormula& q, const Structure& a) {
  DatalogResult r = eval_datalog(q.program, a, false);
  if (!r.expanded.vocabulary().has_relation(q.goal) || a.vocabulary().has_relation(q.goal))
    fail(ErrorKind::Invalid, "goal '" + q.goal + "' is not an intentional symbol");
  return r.expanded.relation(q.goal);
}

}  // namespace hornlab
