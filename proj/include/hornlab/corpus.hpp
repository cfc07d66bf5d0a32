#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hornlab/datalog.hpp"
#include "hornlab/eval.hpp"
#include "hornlab/structure.hpp"
#include "hornlab/text.hpp"

namespace hornlab {

struct CorpusItem {
  std::string name;
  std::string description;
  ArtifactKind kind;
  /// Source text; parses back to the artifact.
  std::string text;
};

/// Built-in artifacts: the reachability programs, the universal-atom program, the
/// slow-converging ordered program, the stratified complement program, the
/// unsatisfiability formula, and a set of Horn sentences and fixed-point formulas.
const std::vector<CorpusItem>& corpus();

/// Throws Invalid for unknown names.
const CorpusItem& corpus_item(const std::string& name);
FormulaQuery corpus_formula(const std::string& name);
DatalogFormula corpus_datalog(const std::string& name);

/// Vocabulary {P/1, Lt/2, Succ/2, min} of the ordered program.
std::shared_ptr<const Vocabulary> ordered_vocabulary();

/// Copy of `s` with Lt, Succ, min, and max (whichever the vocabulary has) set to
/// the natural order on 0..n-1.
Structure with_natural_order(const Structure& s);

/// Renames relation symbols throughout a program (heads, bodies, and conditions).
StratifiedProgram rename_symbols(const StratifiedProgram& p, const std::map<std::string, std::string>& names);

}  // namespace hornlab
