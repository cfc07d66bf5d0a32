#pragma once

#include <string>
#include <vector>

#include "hornlab/datalog.hpp"
#include "hornlab/eval.hpp"
#include "hornlab/formula.hpp"

namespace hornlab {

struct FreshSymbol {
  std::string name;
  int arity;
  bool operator==(const FreshSymbol&) const = default;
};

struct TransformStep {
  std::string construction;
  std::string detail;
  /// Index of the affected clause, rule, or subformula in the step's input.
  std::size_t target = 0;
};

struct TransformReport {
  std::string rule;
  std::vector<FreshSymbol> fresh;
  std::vector<TransformStep> steps;
  std::vector<std::string> warnings;
  /// Fragment or program variant of the output.
  std::string output_fragment;
};

template <class T>
struct Transformed {
  T output;
  TransformReport report;
};

/// ∀x ∃R̄ ψ becomes ∃R̄′ ∀x ψ with each R t̄ replaced by R′(x, t̄). Any second-order
/// prefix in front of ∀x is kept.
Transformed<FormulaQuery> swap_forall_exists(const FormulaQuery& in);

/// Removes universal second-order quantifiers innermost first. Each ∀P becomes the
/// conjunction of the formula with P z̄ read as z̄ ≠ ȳ (relations widened by ȳ) and
/// with P z̄ read as true (relations renamed).
Transformed<FormulaQuery> to_existential_fragment(const FormulaQuery& in);

/// First-order formula to an equivalent bounded program with universal atoms.
Transformed<DatalogFormula> fo_to_datalog_r(const FormulaQuery& in);

/// Replaces non-literal side conditions by fresh atoms defined by first-order programs.
Transformed<DatalogFormula> datalog_star_to_r(const DatalogFormula& in);

/// Existential Horn formula to a program whose goal holds exactly where the formula fails.
Transformed<DatalogFormula> so_horn_to_datalog(const FormulaQuery& in);

/// Program to an existential Horn formula that holds exactly where the goal fails.
/// The formula's free variables are the goal's query tuple.
Transformed<FormulaQuery> datalog_to_so_horn(const DatalogFormula& in);

/// Program (variant at most r, possibly stratified) to a simultaneous fixed-point formula.
Transformed<FormulaQuery> datalog_r_to_slfp(const DatalogFormula& in);

/// ∃ū [LFP_{z̄,Z} ψ](ũ) with first-order ψ to an equivalent program with universal atoms.
Transformed<DatalogFormula> lfp_normal_to_datalog_r(const FormulaQuery& in);

/// First-order formula to an equivalent stratified program.
Transformed<DatalogFormula> fo_to_s_datalog(const FormulaQuery& in);

/// Stratified Horn formula to a stratified program whose goal holds exactly where the formula fails.
Transformed<DatalogFormula> horn_s_to_datalog(const FormulaQuery& in);

/// Stratified program to a stratified Horn formula that holds exactly where the goal fails.
Transformed<FormulaQuery> datalog_s_to_horn(const DatalogFormula& in);

/// ∃P̄ ∀x̄ ∃ȳ φ to ∃P̄ ∃P′ ∀x̄ ∀ȳ (∃z̄ P′x̄z̄ ∧ (P′x̄ȳ → φ)).
Transformed<FormulaQuery> sigma11_push_exists(const FormulaQuery& in);

/// ∀P̄ ∃x̄ ∀ȳ φ′ with CNF φ′ to an extended Horn formula with universal atoms.
Transformed<FormulaQuery> pi11_to_ehorn_r(const FormulaQuery& in);

/// Comma-separated fragment tags, most specific first.
std::string describe_fragment(const Formula& f);
/// Program variant, prefixed with "S-" when there is more than one stratum.
std::string describe_fragment(const StratifiedProgram& p);

}  // namespace hornlab
