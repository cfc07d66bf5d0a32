#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hornlab/formula.hpp"
#include "hornlab/structure.hpp"

namespace hornlab {

using Assignment = std::map<std::string, Element>;

/// A formula read as a query: its answers are the tuples over `query` that satisfy it.
struct FormulaQuery {
  Formula formula;
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<std::string> query;
};

/// Default cap on the number of relation assignments a second-order
/// evaluation may enumerate per structure.
inline constexpr long double kDefaultSoBudget = 65536.0L;

struct CompiledProgram;

/// A formula compiled against a vocabulary with a fixed parameter order.
/// Evaluation is const and keeps all scratch state local, so one compiled
/// formula may be shared between threads.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::shared_ptr<const Vocabulary> vocab, std::vector<std::string> params);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  const std::vector<std::string>& params() const { return params_; }
  const Vocabulary& vocabulary() const { return *vocab_; }

  /// Product of 2^(n^arity) over all second-order quantifiers in the formula.
  long double so_assignments(int n) const;

  bool eval(const Structure& a, std::span<const Element> args, long double budget = kDefaultSoBudget) const;

  /// Set of parameter tuples satisfying the formula (arity = params().size()).
  Relation answers(const Structure& a, long double budget = kDefaultSoBudget) const;

 private:
  void check(const Structure& a, long double budget) const;

  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<std::string> params_;
  std::unique_ptr<CompiledProgram> program_;
};

/// Tarskian satisfaction for first-order formulas.
bool eval_fo(const Formula& phi, const Structure& a, const Assignment& env);

/// Satisfaction for formulas with second-order quantifiers (and fixed points),
/// enumerating relation interpretations outermost first.
bool eval_so_bruteforce(const Formula& phi, const Structure& a, const Assignment& env,
                        long double budget = kDefaultSoBudget);

}  // namespace hornlab
