#include "hornlab/second_order.hpp"

#include <algorithm>

#include "hornlab/error.hpp"
#include "hornlab/fresh.hpp"

namespace hornlab {

Formula SoFormula::to_formula() const {
  Formula f = body;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    f = it->quantifier == Quantifier::Forall ? Formula::so_forall(it->relation, it->arity, f)
                                             : Formula::so_exists(it->relation, it->arity, f);
  return f;
}

std::set<std::string> SoFormula::symbols() const {
  std::set<std::string> out;
  for (const auto& p : prefix) out.insert(p.relation);
  return out;
}

std::set<std::string> SoFormula::existential_symbols() const {
  std::set<std::string> out;
  for (const auto& p : prefix)
    if (p.quantifier == Quantifier::Exists) out.insert(p.relation);
  return out;
}

bool SoFormula::existential() const {
  return std::all_of(prefix.begin(), prefix.end(), [](const auto& p) { return p.quantifier == Quantifier::Exists; });
}

SoFormula split_so_prefix(const Formula& f) {
  SoFormula out{{}, f};
  while (out.body.is_so_quantifier()) {
    out.prefix.push_back({out.body.kind() == NodeKind::SoForall ? Quantifier::Forall : Quantifier::Exists,
                          out.body.symbol(), out.body.arity()});
    out.body = out.body.child();
  }
  return out;
}

Formula HornClause::to_formula() const {
  return Formula::implies(body.empty() ? Formula::truth() : Formula::all_of(body), head ? *head : Formula::falsity());
}

Formula ClausalCore::to_formula() const {
  std::vector<Formula> parts;
  for (const auto& c : clauses) parts.push_back(c.to_formula());
  if (parts.empty()) return Formula::truth();
  return Formula::forall(vars, Formula::all_of(std::move(parts)));
}

std::optional<UniversalAtom> as_universal_atom(const Formula& f) {
  UniversalAtom out;
  Formula g = f;
  while (g.kind() == NodeKind::Forall) {
    out.bound.push_back(g.symbol());
    g = g.child();
  }
  if (out.bound.empty() || g.kind() != NodeKind::Atom) return std::nullopt;
  for (const auto& v : out.bound) {
    auto uses = std::count_if(g.terms().begin(), g.terms().end(),
                              [&](const Term& t) { return t.is_var() && t.name == v; });
    if (uses != 1) return std::nullopt;
  }
  out.relation = g.symbol();
  out.args = g.terms();
  return out;
}

Formula universal_atom(const std::vector<std::string>& bound, const std::string& relation, std::vector<Term> args) {
  return Formula::forall(bound, Formula::atom(relation, std::move(args)));
}

namespace {

bool is_basis_atom(const Formula& f, const std::set<std::string>& basis) {
  return f.kind() == NodeKind::Atom && basis.count(f.symbol());
}

bool is_alpha(const Formula& f, const std::set<std::string>& basis) {
  if (is_basis_atom(f, basis)) return true;
  auto u = as_universal_atom(f);
  return u && basis.count(u->relation);
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == NodeKind::And) {
    for (const auto& c : f.children()) flatten_and(c, out);
  } else {
    out.push_back(f);
  }
}

bool add_body_element(HornClause& clause, const Formula& e, const std::set<std::string>& basis) {
  if (e.kind() == NodeKind::True) return true;
  if (is_alpha(e, basis)) {
    clause.alphas.push_back(e);
  } else if (!mentions_any(e, basis)) {
    clause.betas.push_back(e);
  } else {
    return false;
  }
  clause.body.push_back(e);
  return true;
}

std::optional<HornClause> read_clause(const Formula& c, const std::set<std::string>& basis) {
  HornClause clause;
  if (c.kind() == NodeKind::False) return clause;
  if (is_basis_atom(c, basis)) {
    clause.head = c;
    return clause;
  }
  if (c.kind() != NodeKind::Implies) return std::nullopt;
  const Formula& rhs = c.child(1);
  if (is_basis_atom(rhs, basis)) {
    clause.head = rhs;
  } else if (rhs.kind() != NodeKind::False) {
    return std::nullopt;
  }
  std::vector<Formula> elements;
  flatten_and(c.child(0), elements);
  for (const auto& e : elements)
    if (!add_body_element(clause, e, basis)) return std::nullopt;
  return clause;
}

// --- normalization --------------------------------------------------------

enum class UnitKind : std::uint8_t { PosRel, NegRel, NegForallRel, Beta };

struct Unit {
  UnitKind kind;
  Formula f;       // the atom, the ∀-atom, or the beta subformula
  bool negated;    // for betas: the disjunct is ¬f
};

std::optional<UniversalAtom> as_exists_negated_atom(const Formula& f) {
  std::vector<std::string> bound;
  Formula g = f;
  while (g.kind() == NodeKind::Exists) {
    bound.push_back(g.symbol());
    g = g.child();
  }
  if (bound.empty() || g.kind() != NodeKind::Not || g.child().kind() != NodeKind::Atom) return std::nullopt;
  return as_universal_atom(Formula::forall(bound, g.child()));
}

// Appends the disjuncts of f (or of ¬f) to out. Returns false when the disjunction is trivially true.
bool decompose(const Formula& f, bool negated, const std::set<std::string>& basis, std::vector<Unit>& out) {
  switch (f.kind()) {
    case NodeKind::True:
      return negated;
    case NodeKind::False:
      return !negated;
    case NodeKind::Not:
      return decompose(f.child(), !negated, basis, out);
    case NodeKind::Or:
      if (!negated) {
        for (const auto& c : f.children())
          if (!decompose(c, false, basis, out)) return false;
        return true;
      }
      break;
    case NodeKind::And:
      if (negated) {
        for (const auto& c : f.children())
          if (!decompose(c, true, basis, out)) return false;
        return true;
      }
      break;
    case NodeKind::Implies:
      if (!negated) return decompose(f.child(0), true, basis, out) && decompose(f.child(1), false, basis, out);
      break;
    default:
      break;
  }
  if (is_basis_atom(f, basis)) {
    out.push_back({negated ? UnitKind::NegRel : UnitKind::PosRel, f, negated});
    return true;
  }
  if (negated) {
    if (auto u = as_universal_atom(f); u && basis.count(u->relation)) {
      out.push_back({UnitKind::NegForallRel, f, true});
      return true;
    }
  } else if (auto u = as_exists_negated_atom(f); u && basis.count(u->relation)) {
    out.push_back({UnitKind::NegForallRel, universal_atom(u->bound, u->relation, u->args), true});
    return true;
  }
  if (mentions_any(f, basis))
    fail(ErrorKind::Shape, "clause is not normalizable to Horn shape: a quantified relation occurs inside a "
                           "subformula that is neither an atom nor a universal atom");
  out.push_back({UnitKind::Beta, f, negated});
  return true;
}

std::optional<HornClause> normalize_conjunct(const Formula& c, const std::set<std::string>& basis) {
  std::vector<Unit> units;
  if (!decompose(c, false, basis, units)) return std::nullopt;
  HornClause clause;
  for (const auto& u : units) {
    switch (u.kind) {
      case UnitKind::PosRel:
        if (clause.head) fail(ErrorKind::Shape, "clause has two positive quantified-relation disjuncts");
        clause.head = u.f;
        break;
      case UnitKind::NegRel:
      case UnitKind::NegForallRel:
        clause.alphas.push_back(u.f);
        clause.body.push_back(u.f);
        break;
      case UnitKind::Beta: {
        Formula e = u.negated ? u.f : negate(u.f);
        clause.betas.push_back(e);
        clause.body.push_back(e);
        break;
      }
    }
  }
  if (clause.head && std::find(clause.alphas.begin(), clause.alphas.end(), *clause.head) != clause.alphas.end())
    return std::nullopt;
  return clause;
}

Formula normalize_with_basis(const SoFormula& so, const std::set<std::string>& basis) {
  FreshNames fresh(all_names(so.body));
  ClausalCore core;
  Formula body = so.body;
  while (body.kind() == NodeKind::Forall) {
    core.vars.push_back(body.symbol());
    body = body.child();
  }
  auto free = free_variables(so.body);
  std::set<std::string> taken(free.begin(), free.end());
  taken.insert(core.vars.begin(), core.vars.end());

  std::vector<Formula> work;
  flatten_and(body, work);
  std::reverse(work.begin(), work.end());
  while (!work.empty()) {
    Formula c = work.back();
    work.pop_back();
    if (c.kind() == NodeKind::Forall) {
      std::string v = c.symbol();
      Formula inner = c.child();
      if (taken.count(v)) {
        std::string nv = fresh.next(v);
        inner = substitute(inner, {{v, Term::var(nv)}});
        v = nv;
      }
      taken.insert(v);
      core.vars.push_back(v);
      std::vector<Formula> parts;
      flatten_and(inner, parts);
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) work.push_back(*it);
      continue;
    }
    if (auto clause = normalize_conjunct(c, basis)) core.clauses.push_back(std::move(*clause));
  }
  SoFormula out{so.prefix, core.clauses.empty() ? Formula::truth() : core.to_formula()};
  return out.to_formula();
}

bool betas_first_order(const ClausalCore& core) {
  for (const auto& c : core.clauses)
    for (const auto& b : c.betas)
      if (contains_so_quantifier(b) || contains_fixpoint(b)) return false;
  return true;
}

bool betas_literal(const ClausalCore& core) {
  for (const auto& c : core.clauses)
    for (const auto& b : c.betas)
      if (!b.is_literal()) return false;
  return true;
}

bool has_universal_alpha(const ClausalCore& core) {
  for (const auto& c : core.clauses)
    for (const auto& a : c.alphas)
      if (a.kind() != NodeKind::Atom) return true;
  return false;
}

Formula strip(const Formula& f, NodeKind kind) {
  Formula g = f;
  while (g.kind() == kind) g = g.child();
  return g;
}

bool qf_first_order(const Formula& f) {
  return is_quantifier_free(f);
}

}  // namespace

std::optional<ClausalCore> read_clausal(const Formula& body, const std::set<std::string>& basis) {
  ClausalCore core;
  Formula f = body;
  while (f.kind() == NodeKind::Forall) {
    core.vars.push_back(f.symbol());
    f = f.child();
  }
  if (f.kind() == NodeKind::True) return core;
  std::vector<Formula> conjuncts;
  flatten_and(f, conjuncts);
  for (const auto& c : conjuncts) {
    auto clause = read_clause(c, basis);
    if (!clause) return std::nullopt;
    core.clauses.push_back(std::move(*clause));
  }
  return core;
}

Formula normalize_clauses(const Formula& phi) {
  SoFormula so = split_so_prefix(phi);
  std::set<std::string> all = so.symbols();
  std::set<std::string> existential = so.existential_symbols();
  try {
    return normalize_with_basis(so, all);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Shape || existential == all) throw;
    try {
      return normalize_with_basis(so, existential);
    } catch (const Error&) {
      throw e;
    }
  }
}

std::string to_string(const FragmentTag& tag) {
  switch (tag.fragment) {
    case Fragment::SoHorn:
      return "SO-HORN";
    case Fragment::SoHornStar:
      return "SO-HORN*";
    case Fragment::SoHornR:
      return "SO-HORN^r";
    case Fragment::SoHornStarR:
      return "SO-HORN^{*r}";
    case Fragment::SoEHorn:
      return "SO-EHORN";
    case Fragment::SoEHornR:
      return "SO-EHORN^r";
    case Fragment::SoHornS:
      return "SO-HORN_" + std::to_string(tag.depth);
    case Fragment::Sigma11Normal:
      return "Sigma11-normal";
    case Fragment::Pi11Normal:
      return "Pi11-normal";
    case Fragment::GeneralSo:
      return "general-SO";
  }
  return "general-SO";
}

bool has_tag(const std::set<FragmentTag>& tags, Fragment f) {
  return std::any_of(tags.begin(), tags.end(), [&](const FragmentTag& t) { return t.fragment == f; });
}

int horn_depth(const Formula& phi) {
  SoFormula so = split_so_prefix(phi);
  auto core = read_clausal(so.body, so.symbols());
  if (!core || has_universal_alpha(*core)) return 0;
  int depth = 1;
  for (const auto& c : core->clauses) {
    for (const auto& b : c.betas) {
      if (b.is_literal()) continue;
      Formula g = b.kind() == NodeKind::Not ? b.child() : b;
      if (!contains_so_quantifier(g)) return 0;
      int inner = horn_depth(g);
      if (inner == 0) {
        try {
          inner = horn_depth(normalize_clauses(g));
        } catch (const Error&) {
          inner = 0;
        }
      }
      if (inner == 0) return 0;
      depth = std::max(depth, inner + 1);
    }
  }
  return depth;
}

bool is_sigma11_normal(const Formula& phi) {
  SoFormula so = split_so_prefix(phi);
  if (!so.existential()) return false;
  Formula f = strip(strip(so.body, NodeKind::Forall), NodeKind::Exists);
  return qf_first_order(f);
}

bool is_pi11_normal(const Formula& phi) {
  SoFormula so = split_so_prefix(phi);
  for (const auto& p : so.prefix)
    if (p.quantifier != Quantifier::Forall) return false;
  Formula f = strip(strip(so.body, NodeKind::Exists), NodeKind::Forall);
  return qf_first_order(f);
}

std::set<FragmentTag> classify_fragment(const Formula& phi) {
  std::set<FragmentTag> tags;
  SoFormula so = split_so_prefix(phi);
  if (!contains_fixpoint(so.body)) {
    if (auto core = read_clausal(so.body, so.symbols()); core && betas_first_order(*core)) {
      bool literal = betas_literal(*core);
      bool universal = has_universal_alpha(*core);
      if (literal && !universal) tags.insert({Fragment::SoHorn});
      if (!universal) tags.insert({Fragment::SoHornStar});
      if (literal) tags.insert({Fragment::SoHornR});
      tags.insert({Fragment::SoHornStarR});
    }
    if (auto core = read_clausal(so.body, so.existential_symbols()); core && betas_literal(*core)) {
      tags.insert({Fragment::SoEHornR});
      if (!has_universal_alpha(*core)) tags.insert({Fragment::SoEHorn});
    }
    if (int d = horn_depth(phi); d > 0) tags.insert({Fragment::SoHornS, d});
  }
  if (is_sigma11_normal(phi)) tags.insert({Fragment::Sigma11Normal});
  if (is_pi11_normal(phi)) tags.insert({Fragment::Pi11Normal});
  tags.insert({Fragment::GeneralSo});
  return tags;
}

}  // namespace hornlab
