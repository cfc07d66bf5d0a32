#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hornlab/formula.hpp"
#include "hornlab/structure.hpp"

namespace hornlab {

enum class BodyKind : std::uint8_t {
  Atom,       // R(t̄), R intentional or extensional
  Universal,  // ∀ȳ R(t̄) with ȳ among the arguments
  Negated,    // ¬R(t̄), R extensional
  Equal,      // t₁ = t₂
  NotEqual,   // t₁ ≠ t₂
  Condition,  // first-order formula over extensional symbols
};

struct BodyElement {
  BodyKind kind = BodyKind::Atom;
  std::string relation;
  std::vector<Term> args;           // two terms for Equal/NotEqual
  std::vector<std::string> bound;   // Universal
  std::optional<Formula> condition; // Condition

  static BodyElement atom(std::string relation, std::vector<Term> args);
  static BodyElement universal(std::vector<std::string> bound, std::string relation, std::vector<Term> args);
  static BodyElement negated(std::string relation, std::vector<Term> args);
  static BodyElement equal(Term a, Term b);
  static BodyElement not_equal(Term a, Term b);
  static BodyElement formula(Formula f);

  /// The element as a formula (conditions verbatim).
  Formula to_formula() const;
  bool operator==(const BodyElement&) const = default;
};

struct Rule {
  std::string head;
  std::vector<Term> head_args;
  std::vector<BodyElement> body;

  /// Rule variables: head, body arguments, and free condition variables, in
  /// first-occurrence order. Universal-atom bound variables are excluded.
  std::vector<std::string> variables() const;
  bool operator==(const Rule&) const = default;
};

/// Rules over an extensional vocabulary. Intentional symbols are exactly the head symbols.
struct Program {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<Rule> rules;

  std::vector<RelationSymbol> intentional() const;
};

/// Strata Π₀..Π_k; each stratum reads the base vocabulary plus all lower intentional symbols.
struct StratifiedProgram {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<std::vector<Rule>> strata;

  StratifiedProgram() = default;
  StratifiedProgram(std::shared_ptr<const Vocabulary> v, std::vector<std::vector<Rule>> s)
      : vocab(std::move(v)), strata(std::move(s)) {}
  StratifiedProgram(const Program& p) : vocab(p.vocab), strata{p.rules} {}  // NOLINT(google-explicit-constructor)

  std::vector<RelationSymbol> intentional() const;
  /// Vocabulary read by stratum m: base symbols plus intentional symbols of strata < m.
  std::shared_ptr<const Vocabulary> stratum_vocabulary(std::size_t m) const;
  Program stratum(std::size_t m) const;
};

/// (Π, P): the answers are P's fixed point.
struct DatalogFormula {
  StratifiedProgram program;
  std::string goal;
};

enum class Variant : std::uint8_t { Plain, Star, R, StarR };
std::string to_string(Variant v);

struct ProgramInfo {
  Variant variant = Variant::Plain;
  std::vector<RelationSymbol> intentional;
  std::vector<RelationSymbol> extensional;
  std::vector<std::string> constants;
  bool zeroary_in_bodies = false;
};

/// Throws Invalid on negated intentional atoms, intentional symbols in conditions,
/// arity mismatches, unknown symbols, or malformed universal atoms.
ProgramInfo validate_program(const Program& pi);

/// Per-stratum validation; the reported variant is the join over strata.
ProgramInfo validate_program(const StratifiedProgram& sigma);

/// Replaces each zero-ary intentional symbol Q that occurs in a body by Q'(x)
/// everywhere and adds Q ← Q'(x). Programs without such bodies come back unchanged.
Program normalize_zeroary(const Program& pi);

/// Stages S₀ ⊆ S₁ ⊆ … of one stratum; the last two entries are equal.
struct StageTrace {
  std::vector<RelationSymbol> symbols;
  std::vector<std::vector<Relation>> stages;

  /// Least k with S_k = S_∞ for all symbols.
  std::size_t stage_count() const;
  /// Least k with symbol_(k) = symbol_(∞).
  std::size_t convergence(std::size_t symbol) const;
};

enum class EvalStrategy : std::uint8_t { Naive, SemiNaive };

struct DatalogResult {
  /// The input structure expanded by every intentional relation.
  Structure expanded;
  /// Stage count per stratum, and the full traces when requested.
  std::vector<std::size_t> stage_counts;
  std::vector<StageTrace> traces;
};

DatalogResult eval_datalog(const StratifiedProgram& sigma, const Structure& a, bool trace = false,
                           EvalStrategy strategy = EvalStrategy::SemiNaive);

/// Least k with symbol_(k) = symbol_(∞) within the symbol's stratum.
std::size_t stage_count(const StratifiedProgram& sigma, const Structure& a, const std::string& symbol);

/// The goal's fixed point on a.
Relation eval_query(const DatalogFormula& q, const Structure& a);

}  // namespace hornlab
