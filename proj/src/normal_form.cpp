#include "hornlab/normal_form.hpp"

#include <algorithm>
#include <sstream>

#include "hornlab/error.hpp"
#include "hornlab/fresh.hpp"

namespace hornlab {

namespace {

Formula with_prefix(const std::vector<PrefixEntry>& prefix, Formula body) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = it->quantifier == Quantifier::Forall ? Formula::forall(it->var, body) : Formula::exists(it->var, body);
  return body;
}

Formula rename_binders(const Formula& f, std::set<std::string>& used, FreshNames& fresh) {
  switch (f.kind()) {
    case NodeKind::Forall:
    case NodeKind::Exists: {
      std::string v = f.symbol();
      Formula body = f.child();
      if (used.count(v)) {
        std::string nv = fresh.next(v);
        body = substitute(body, {{v, Term::var(nv)}});
        v = nv;
      }
      used.insert(v);
      body = rename_binders(body, used, fresh);
      return f.kind() == NodeKind::Forall ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    case NodeKind::Not:
      return Formula::negation(rename_binders(f.child(), used, fresh));
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rename_binders(c, used, fresh));
      if (f.kind() == NodeKind::And) return Formula::conj(std::move(kids));
      if (f.kind() == NodeKind::Or) return Formula::disj(std::move(kids));
      return Formula::implies(kids[0], kids[1]);
    }
    default:
      return f;
  }
}

Formula pull(const Formula& f, std::vector<PrefixEntry>& prefix) {
  switch (f.kind()) {
    case NodeKind::Forall:
      prefix.push_back({Quantifier::Forall, f.symbol()});
      return pull(f.child(), prefix);
    case NodeKind::Exists:
      prefix.push_back({Quantifier::Exists, f.symbol()});
      return pull(f.child(), prefix);
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(pull(c, prefix));
      return f.kind() == NodeKind::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    default:
      return f;
  }
}

std::size_t literal_count(const std::vector<Conjunct>& d) {
  std::size_t total = 0;
  for (const auto& c : d) total += c.size();
  return total;
}

void check_budget(std::size_t literals, std::size_t budget) {
  if (literals > budget) {
    std::ostringstream os;
    os << "DNF matrix exceeds the budget of " << budget << " literals";
    throw BudgetExceeded(os.str(), static_cast<long double>(literals));
  }
}

std::vector<Conjunct> dnf(const Formula& f, std::size_t budget) {
  switch (f.kind()) {
    case NodeKind::True:
      return {Conjunct{}};
    case NodeKind::False:
      return {};
    case NodeKind::Atom:
    case NodeKind::Equal:
    case NodeKind::Not:
      return {Conjunct{f}};
    case NodeKind::Or: {
      std::vector<Conjunct> out;
      for (const auto& c : f.children()) {
        auto part = dnf(c, budget);
        out.insert(out.end(), part.begin(), part.end());
        check_budget(literal_count(out), budget);
      }
      return out;
    }
    case NodeKind::And: {
      std::vector<Conjunct> acc{Conjunct{}};
      for (const auto& c : f.children()) {
        auto part = dnf(c, budget);
        std::vector<Conjunct> next;
        std::size_t literals = 0;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            Conjunct merged = a;
            for (const auto& lit : b)
              if (std::find(merged.begin(), merged.end(), lit) == merged.end()) merged.push_back(lit);
            literals += merged.size();
            check_budget(literals, budget);
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      fail(ErrorKind::Invalid, "DNF conversion expects a quantifier-free formula in negation normal form");
  }
}

bool is_clause(const Formula& f, std::vector<Formula>& out) {
  if (f.is_literal()) {
    out.push_back(f);
    return true;
  }
  if (f.kind() == NodeKind::False) return true;
  if (f.kind() != NodeKind::Or) return false;
  for (const auto& c : f.children())
    if (!is_clause(c, out)) return false;
  return true;
}

bool collect_cnf(const Formula& f, std::vector<std::vector<Formula>>& out) {
  if (f.kind() == NodeKind::True) return true;
  if (f.kind() == NodeKind::And) {
    for (const auto& c : f.children())
      if (!collect_cnf(c, out)) return false;
    return true;
  }
  std::vector<Formula> clause;
  if (!is_clause(f, clause)) return false;
  out.push_back(std::move(clause));
  return true;
}

}  // namespace

Formula Prenex::to_formula() const { return with_prefix(prefix, matrix); }

Formula PrenexDnf::to_formula() const {
  std::vector<Formula> disjuncts;
  for (const auto& c : matrix) disjuncts.push_back(Formula::all_of(c));
  return with_prefix(prefix, Formula::any_of(std::move(disjuncts)));
}

Prenex to_prenex(const Formula& phi) {
  if (contains_so_quantifier(phi) || contains_fixpoint(phi))
    fail(ErrorKind::Invalid, "prenex conversion expects a first-order formula");
  FreshNames fresh(all_names(phi));
  auto free = free_variables(phi);
  std::set<std::string> used(free.begin(), free.end());
  Formula renamed = rename_binders(phi, used, fresh);
  Prenex out{{}, Formula::truth()};
  out.matrix = pull(to_nnf(renamed), out.prefix);
  return out;
}

std::vector<Conjunct> to_dnf(const Formula& matrix, std::size_t literal_budget) {
  return dnf(to_nnf(matrix), literal_budget);
}

PrenexDnf to_prenex_dnf(const Formula& phi, std::size_t literal_budget) {
  Prenex p = to_prenex(phi);
  return {std::move(p.prefix), dnf(p.matrix, literal_budget)};
}

std::optional<std::vector<std::vector<Formula>>> as_cnf(const Formula& matrix) {
  std::vector<std::vector<Formula>> out;
  if (!collect_cnf(matrix, out)) return std::nullopt;
  return out;
}

}  // namespace hornlab
