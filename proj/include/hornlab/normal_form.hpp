#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hornlab/formula.hpp"

namespace hornlab {

enum class Quantifier : std::uint8_t { Forall, Exists };

struct PrefixEntry {
  Quantifier quantifier;
  std::string var;
  bool operator==(const PrefixEntry&) const = default;
};

/// Prenex form with a quantifier-free matrix in negation normal form.
struct Prenex {
  std::vector<PrefixEntry> prefix;
  Formula matrix;
  Formula to_formula() const;
};

/// A conjunction of literals (atoms, equalities, or their negations).
using Conjunct = std::vector<Formula>;

struct PrenexDnf {
  std::vector<PrefixEntry> prefix;
  std::vector<Conjunct> matrix;
  Formula to_formula() const;
};

inline constexpr std::size_t kDefaultDnfBudget = 10000;

/// Bound variables are renamed apart first, so no variable is quantified twice
/// and none shadows a free variable.
Prenex to_prenex(const Formula& phi);

/// Throws BudgetExceeded when the matrix would hold more than `literal_budget` literals.
PrenexDnf to_prenex_dnf(const Formula& phi, std::size_t literal_budget = kDefaultDnfBudget);

/// Disjunctive normal form of a quantifier-free formula.
std::vector<Conjunct> to_dnf(const Formula& matrix, std::size_t literal_budget = kDefaultDnfBudget);

/// Conjunctive normal form as a list of clauses, when the formula already is one
/// (a conjunction of disjunctions of literals); nullopt otherwise.
std::optional<std::vector<std::vector<Formula>>> as_cnf(const Formula& matrix);

}  // namespace hornlab
