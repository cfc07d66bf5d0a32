#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hornlab/datalog.hpp"
#include "hornlab/enumerate.hpp"
#include "hornlab/eval.hpp"

namespace hornlab {

/// A query with an answer relation on every structure: a formula (FO, SO, or
/// fixed point) or a Datalog formula, possibly complemented.
class Evaluable {
 public:
  static Evaluable formula(FormulaQuery q);
  static Evaluable datalog(DatalogFormula d);

  /// Same query with the answer relation complemented.
  Evaluable negated() const;

  std::size_t arity() const;
  /// Symbols the query reads; structures passed in may carry more.
  const std::shared_ptr<const Vocabulary>& vocabulary() const;
  std::string describe() const;

  /// Throws BudgetExceeded when second-order evaluation needs more than `budget` assignments.
  Relation answers(const Structure& a, long double budget = kDefaultSoBudget) const;
  bool holds(const Structure& a, const Tuple& tuple, long double budget = kDefaultSoBudget) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
  bool negated_ = false;
};

enum class CheckMode : std::uint8_t { Exhaustive, Sampled };

struct CheckOptions {
  int min_n = 1;
  int max_n = 3;
  CheckMode mode = CheckMode::Exhaustive;
  /// Structures per domain size in sampled mode.
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  long double so_budget = kDefaultSoBudget;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
};

enum class VerdictStatus : std::uint8_t { Equivalent, Counterexample };
std::string to_string(VerdictStatus s);

struct SizeStats {
  int n = 0;
  std::uint64_t checked = 0;
  /// Structures where evaluation ran out of budget.
  std::uint64_t skipped = 0;
};

struct Witness {
  Structure structure;
  Tuple tuple;
  bool a_value = false;
  bool b_value = false;
};

struct EquivVerdict {
  VerdictStatus status = VerdictStatus::Equivalent;
  std::optional<Witness> witness;
  std::vector<SizeStats> sizes;

  bool equivalent() const { return status == VerdictStatus::Equivalent; }
  std::uint64_t checked() const;
  std::uint64_t skipped() const;
};

/// Compares answer relations on every structure over `vocab` (exhaustive) or on
/// seeded samples with the same count per domain size. Stops at the first disagreement.
EquivVerdict check_equiv(const Evaluable& a, const Evaluable& b, std::shared_ptr<const Vocabulary> vocab,
                         const CheckOptions& options = {});

/// Checks that phi holds at ā exactly where the Datalog formula fails at ā.
EquivVerdict check_duality(const FormulaQuery& phi, const DatalogFormula& d, std::shared_ptr<const Vocabulary> vocab,
                           const CheckOptions& options = {});

enum class ClosureDirection : std::uint8_t { Substructure, Extension };

struct ClosureOptions {
  ClosureDirection direction = ClosureDirection::Substructure;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  /// Size range of the larger structure in each pair.
  int min_n = 1;
  int max_n = 3;
  long double so_budget = kDefaultSoBudget;
};

struct ClosureWitness {
  Structure larger;
  Structure smaller;
  /// smaller element i is larger element embedding[i]
  std::vector<Element> embedding;
  /// Tuple over the smaller structure.
  Tuple tuple;
  bool larger_value = false;
  bool smaller_value = false;
};

struct ClosureVerdict {
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::optional<ClosureWitness> violation;
  bool preserved() const { return !violation.has_value(); }
};

/// Samples pairs B ⊆ A. Substructure direction: A ⊨ x[ā] with ā in B must give B ⊨ x[ā].
/// Extension direction: B ⊨ x[ā] must give A ⊨ x[ā].
ClosureVerdict check_closure(const Evaluable& x, const ClosureOptions& options = {});

}  // namespace hornlab
