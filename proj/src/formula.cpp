#include "hornlab/formula.hpp"

#include <algorithm>

#include "hornlab/error.hpp"
#include "hornlab/fresh.hpp"

namespace hornlab {

std::vector<Term> vars(std::initializer_list<const char*> names) {
  std::vector<Term> out;
  for (const char* n : names) out.push_back(Term::var(n));
  return out;
}

std::vector<Term> vars(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::var(n));
  return out;
}

namespace {

Formula make(FormulaNode node);

const std::vector<Term> kNoTerms;
const std::vector<Formula> kNoChildren;
const std::vector<FixpointComponent> kNoComponents;

}  // namespace

// Formula's constructor is private; this helper is the single entry point.
struct FormulaFactory {
  static Formula build(FormulaNode node) {
    return Formula(std::make_shared<const FormulaNode>(std::move(node)));
  }
};

namespace {
Formula make(FormulaNode node) { return FormulaFactory::build(std::move(node)); }
}  // namespace

Formula Formula::truth() { return make({NodeKind::True, {}, 0, {}, {}, {}, 0}); }
Formula Formula::falsity() { return make({NodeKind::False, {}, 0, {}, {}, {}, 0}); }

Formula Formula::atom(std::string relation, std::vector<Term> args) {
  return make({NodeKind::Atom, std::move(relation), 0, std::move(args), {}, {}, 0});
}

Formula Formula::equal(Term lhs, Term rhs) {
  return make({NodeKind::Equal, {}, 0, {std::move(lhs), std::move(rhs)}, {}, {}, 0});
}

Formula Formula::negation(Formula f) { return make({NodeKind::Not, {}, 0, {}, {std::move(f)}, {}, 0}); }

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return truth();
  if (fs.size() == 1) return fs.front();
  return make({NodeKind::And, {}, 0, {}, std::move(fs), {}, 0});
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return falsity();
  if (fs.size() == 1) return fs.front();
  return make({NodeKind::Or, {}, 0, {}, std::move(fs), {}, 0});
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make({NodeKind::Implies, {}, 0, {}, {std::move(lhs), std::move(rhs)}, {}, 0});
}

Formula Formula::forall(std::string var, Formula body) {
  return make({NodeKind::Forall, std::move(var), 0, {}, {std::move(body)}, {}, 0});
}

Formula Formula::exists(std::string var, Formula body) {
  return make({NodeKind::Exists, std::move(var), 0, {}, {std::move(body)}, {}, 0});
}

Formula Formula::forall(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula Formula::exists(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

Formula Formula::so_forall(std::string relation, int arity, Formula body) {
  return make({NodeKind::SoForall, std::move(relation), arity, {}, {std::move(body)}, {}, 0});
}

Formula Formula::so_exists(std::string relation, int arity, Formula body) {
  return make({NodeKind::SoExists, std::move(relation), arity, {}, {std::move(body)}, {}, 0});
}

Formula Formula::lfp(FixpointComponent component, std::vector<Term> args) {
  return make({NodeKind::Lfp, {}, 0, std::move(args), {}, {std::move(component)}, 0});
}

Formula Formula::slfp(std::vector<FixpointComponent> components, std::size_t designated, std::vector<Term> args) {
  if (designated >= components.size()) fail(ErrorKind::Invalid, "designated fixpoint component out of range");
  return make({NodeKind::Slfp, {}, 0, std::move(args), {}, std::move(components), designated});
}

Formula Formula::all_of(std::vector<Formula> fs) { return conj(std::move(fs)); }
Formula Formula::any_of(std::vector<Formula> fs) { return disj(std::move(fs)); }

NodeKind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
int Formula::arity() const { return node_->arity; }
const std::vector<Term>& Formula::terms() const { return node_ ? node_->terms : kNoTerms; }
const std::vector<Formula>& Formula::children() const { return node_ ? node_->children : kNoChildren; }
const std::vector<FixpointComponent>& Formula::components() const { return node_ ? node_->components : kNoComponents; }
std::size_t Formula::designated() const { return node_->designated; }

bool Formula::is_literal() const {
  switch (kind()) {
    case NodeKind::Atom:
    case NodeKind::Equal:
      return true;
    case NodeKind::Not:
      return child().kind() == NodeKind::Atom || child().kind() == NodeKind::Equal;
    default:
      return false;
  }
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const auto& a = *node_;
  const auto& b = *other.node_;
  return a.kind == b.kind && a.symbol == b.symbol && a.arity == b.arity && a.terms == b.terms &&
         a.designated == b.designated && a.children == b.children && a.components == b.components;
}

// ---------------------------------------------------------------------------

namespace {

void collect_free_vars(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const Term& t) {
    if (!t.is_var()) return;
    if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) return;
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  };
  switch (f.kind()) {
    case NodeKind::Atom:
    case NodeKind::Equal:
      for (const auto& t : f.terms()) note(t);
      return;
    case NodeKind::Forall:
    case NodeKind::Exists:
      bound.push_back(f.symbol());
      collect_free_vars(f.child(), bound, out);
      bound.pop_back();
      return;
    case NodeKind::Lfp:
    case NodeKind::Slfp:
      for (const auto& c : f.components()) {
        bound.insert(bound.end(), c.vars.begin(), c.vars.end());
        collect_free_vars(c.body, bound, out);
        bound.resize(bound.size() - c.vars.size());
      }
      for (const auto& t : f.terms()) note(t);
      return;
    default:
      for (const auto& c : f.children()) collect_free_vars(c, bound, out);
  }
}

void collect_free_relations(const Formula& f, std::vector<std::string>& bound, std::map<std::string, int>& out) {
  switch (f.kind()) {
    case NodeKind::Atom:
      if (std::find(bound.begin(), bound.end(), f.symbol()) == bound.end())
        out.emplace(f.symbol(), static_cast<int>(f.terms().size()));
      return;
    case NodeKind::SoForall:
    case NodeKind::SoExists:
      bound.push_back(f.symbol());
      collect_free_relations(f.child(), bound, out);
      bound.pop_back();
      return;
    case NodeKind::Lfp:
    case NodeKind::Slfp:
      for (const auto& c : f.components()) bound.push_back(c.relation);
      for (const auto& c : f.components()) collect_free_relations(c.body, bound, out);
      bound.resize(bound.size() - f.components().size());
      return;
    default:
      for (const auto& c : f.children()) collect_free_relations(c, bound, out);
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (!f.symbol().empty()) out.insert(f.symbol());
  for (const auto& t : f.terms()) out.insert(t.name);
  for (const auto& c : f.children()) collect_names(c, out);
  for (const auto& c : f.components()) {
    out.insert(c.relation);
    out.insert(c.vars.begin(), c.vars.end());
    collect_names(c.body, out);
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  collect_free_vars(f, bound, out);
  return out;
}

std::map<std::string, int> free_relations(const Formula& f) {
  std::vector<std::string> bound;
  std::map<std::string, int> out;
  collect_free_relations(f, bound, out);
  return out;
}

bool mentions_any(const Formula& f, const std::set<std::string>& symbols) {
  for (const auto& [name, arity] : free_relations(f))
    if (symbols.count(name)) return true;
  return false;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

int quantifier_rank(const Formula& f) {
  int best = 0;
  for (const auto& c : f.children()) best = std::max(best, quantifier_rank(c));
  for (const auto& c : f.components()) best = std::max(best, quantifier_rank(c.body));
  return best + (f.is_quantifier() ? 1 : 0);
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier() || f.is_so_quantifier() || f.is_fixpoint()) return false;
  return std::all_of(f.children().begin(), f.children().end(), is_quantifier_free);
}

bool contains_so_quantifier(const Formula& f) {
  if (f.is_so_quantifier()) return true;
  for (const auto& c : f.components())
    if (contains_so_quantifier(c.body)) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_so_quantifier);
}

bool contains_fixpoint(const Formula& f) {
  if (f.is_fixpoint()) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_fixpoint);
}

// ---------------------------------------------------------------------------

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case NodeKind::Not:
      return Formula::negation(std::move(children[0]));
    case NodeKind::And:
      return Formula::conj(std::move(children));
    case NodeKind::Or:
      return Formula::disj(std::move(children));
    case NodeKind::Implies:
      return Formula::implies(std::move(children[0]), std::move(children[1]));
    case NodeKind::Forall:
      return Formula::forall(f.symbol(), std::move(children[0]));
    case NodeKind::Exists:
      return Formula::exists(f.symbol(), std::move(children[0]));
    case NodeKind::SoForall:
      return Formula::so_forall(f.symbol(), f.arity(), std::move(children[0]));
    case NodeKind::SoExists:
      return Formula::so_exists(f.symbol(), f.arity(), std::move(children[0]));
    default:
      return f;
  }
}

Term subst_terms(const Term& t, const std::map<std::string, Term>& subst) {
  if (!t.is_var()) return t;
  auto it = subst.find(t.name);
  return it == subst.end() ? t : it->second;
}

std::vector<Term> subst_terms(const std::vector<Term>& ts, const std::map<std::string, Term>& subst) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(subst_terms(t, subst));
  return out;
}

class Substituter {
 public:
  Substituter(const Formula& root, const std::map<std::string, Term>& subst) {
    fresh_.reserve(all_names(root));
    for (const auto& [k, v] : subst) {
      fresh_.reserve(k);
      fresh_.reserve(v.name);
    }
  }

  Formula run(const Formula& f, std::map<std::string, Term> subst) {
    if (subst.empty()) return f;
    switch (f.kind()) {
      case NodeKind::True:
      case NodeKind::False:
        return f;
      case NodeKind::Atom:
        return Formula::atom(f.symbol(), subst_terms(f.terms(), subst));
      case NodeKind::Equal:
        return Formula::equal(subst_terms(f.terms()[0], subst), subst_terms(f.terms()[1], subst));
      case NodeKind::Forall:
      case NodeKind::Exists: {
        std::string v = f.symbol();
        subst.erase(v);
        Formula body = f.child();
        if (captures(body, subst, {v})) {
          std::string nv = fresh_.next(v);
          body = run(body, {{v, Term::var(nv)}});
          v = nv;
        }
        body = run(body, subst);
        return f.kind() == NodeKind::Forall ? Formula::forall(v, body) : Formula::exists(v, body);
      }
      case NodeKind::Lfp:
      case NodeKind::Slfp: {
        std::vector<FixpointComponent> comps;
        for (const auto& c : f.components()) {
          auto inner = subst;
          for (const auto& v : c.vars) inner.erase(v);
          FixpointComponent nc = c;
          std::set<std::string> binders(c.vars.begin(), c.vars.end());
          if (captures(c.body, inner, binders)) {
            std::map<std::string, Term> rn;
            for (auto& v : nc.vars) {
              std::string nv = fresh_.next(v);
              rn[v] = Term::var(nv);
              v = nv;
            }
            nc.body = run(c.body, rn);
          }
          nc.body = run(nc.body, inner);
          comps.push_back(std::move(nc));
        }
        auto args = subst_terms(f.terms(), subst);
        if (f.kind() == NodeKind::Lfp) return Formula::lfp(std::move(comps[0]), std::move(args));
        return Formula::slfp(std::move(comps), f.designated(), std::move(args));
      }
      default: {
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(run(c, subst));
        return rebuild(f, std::move(kids));
      }
    }
  }

 private:
  // Would substituting into `body` put a variable named in `binders` under its binder?
  static bool captures(const Formula& body, const std::map<std::string, Term>& subst,
                       const std::set<std::string>& binders) {
    auto fv = free_variables(body);
    for (const auto& v : fv) {
      auto it = subst.find(v);
      if (it != subst.end() && it->second.is_var() && binders.count(it->second.name)) return true;
    }
    return false;
  }

  FreshNames fresh_;
};

Formula rename_apart(const Formula& f, const std::set<std::string>& avoid, FreshNames& fresh) {
  switch (f.kind()) {
    case NodeKind::Forall:
    case NodeKind::Exists: {
      Formula body = rename_apart(f.child(), avoid, fresh);
      std::string v = f.symbol();
      if (avoid.count(v)) {
        std::string nv = fresh.next(v);
        body = substitute(body, {{v, Term::var(nv)}});
        v = nv;
      }
      return f.kind() == NodeKind::Forall ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    case NodeKind::Lfp:
    case NodeKind::Slfp: {
      std::vector<FixpointComponent> comps;
      for (const auto& c : f.components()) {
        FixpointComponent nc{c.relation, c.vars, rename_apart(c.body, avoid, fresh)};
        std::map<std::string, Term> rn;
        for (auto& v : nc.vars) {
          if (!avoid.count(v)) continue;
          std::string nv = fresh.next(v);
          rn[v] = Term::var(nv);
          v = nv;
        }
        if (!rn.empty()) nc.body = substitute(nc.body, rn);
        comps.push_back(std::move(nc));
      }
      if (f.kind() == NodeKind::Lfp) return Formula::lfp(std::move(comps[0]), f.terms());
      return Formula::slfp(std::move(comps), f.designated(), f.terms());
    }
    default: {
      if (f.children().empty()) return f;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rename_apart(c, avoid, fresh));
      return rebuild(f, std::move(kids));
    }
  }
}

Formula replace_atoms_rec(const Formula& f, const std::string& relation,
                          const std::function<Formula(const std::vector<Term>&)>& fn) {
  switch (f.kind()) {
    case NodeKind::Atom:
      return f.symbol() == relation ? fn(f.terms()) : f;
    case NodeKind::SoForall:
    case NodeKind::SoExists:
      if (f.symbol() == relation) return f;
      return rebuild(f, {replace_atoms_rec(f.child(), relation, fn)});
    case NodeKind::Lfp:
    case NodeKind::Slfp: {
      for (const auto& c : f.components())
        if (c.relation == relation) return f;
      std::vector<FixpointComponent> comps;
      for (const auto& c : f.components()) comps.push_back({c.relation, c.vars, replace_atoms_rec(c.body, relation, fn)});
      if (f.kind() == NodeKind::Lfp) return Formula::lfp(std::move(comps[0]), f.terms());
      return Formula::slfp(std::move(comps), f.designated(), f.terms());
    }
    default: {
      if (f.children().empty()) return f;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(replace_atoms_rec(c, relation, fn));
      return rebuild(f, std::move(kids));
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& subst) {
  Substituter s(f, subst);
  return s.run(f, subst);
}

Formula rename_bound_apart(const Formula& f, const std::set<std::string>& avoid) {
  FreshNames fresh(all_names(f));
  fresh.reserve(avoid);
  return rename_apart(f, avoid, fresh);
}

Formula replace_atoms(const Formula& f, const std::string& relation,
                      const std::function<Formula(const std::vector<Term>&)>& fn,
                      const std::set<std::string>& introduced) {
  Formula g = introduced.empty() ? f : rename_bound_apart(f, introduced);
  return replace_atoms_rec(g, relation, fn);
}

Formula rename_relation(const Formula& f, const std::string& from, const std::string& to) {
  return replace_atoms(f, from, [&](const std::vector<Term>& args) { return Formula::atom(to, args); });
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Not:
      return f.child();
    case NodeKind::True:
      return Formula::falsity();
    case NodeKind::False:
      return Formula::truth();
    default:
      return Formula::negation(f);
  }
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case NodeKind::True:
      return negated ? Formula::falsity() : f;
    case NodeKind::False:
      return negated ? Formula::truth() : f;
    case NodeKind::Atom:
    case NodeKind::Equal:
    case NodeKind::Lfp:
    case NodeKind::Slfp:
      return negated ? Formula::negation(f) : f;
    case NodeKind::Not:
      return nnf(f.child(), !negated);
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf(c, negated));
      bool conj = (f.kind() == NodeKind::And) != negated;
      return conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case NodeKind::Implies: {
      std::vector<Formula> kids{nnf(f.child(0), !negated), nnf(f.child(1), negated)};
      return negated ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case NodeKind::Forall:
    case NodeKind::Exists: {
      bool universal = (f.kind() == NodeKind::Forall) != negated;
      auto body = nnf(f.child(), negated);
      return universal ? Formula::forall(f.symbol(), body) : Formula::exists(f.symbol(), body);
    }
    case NodeKind::SoForall:
    case NodeKind::SoExists: {
      bool universal = (f.kind() == NodeKind::SoForall) != negated;
      auto body = nnf(f.child(), negated);
      return universal ? Formula::so_forall(f.symbol(), f.arity(), body)
                       : Formula::so_exists(f.symbol(), f.arity(), body);
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula tuple_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) fail(ErrorKind::Invalid, "tuple equality over tuples of different length");
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(Formula::equal(a[i], b[i]));
  return Formula::all_of(std::move(parts));
}

Formula tuple_not_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) fail(ErrorKind::Invalid, "tuple inequality over tuples of different length");
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(Formula::negation(Formula::equal(a[i], b[i])));
  return Formula::any_of(std::move(parts));
}

}  // namespace hornlab
