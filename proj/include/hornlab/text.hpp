#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hornlab/datalog.hpp"
#include "hornlab/formula.hpp"
#include "hornlab/structure.hpp"

namespace hornlab {

/// A formula file: optional `vocab { ... }` and `query x,y;` headers, then one formula.
struct FormulaDocument {
  std::shared_ptr<const Vocabulary> vocab;
  bool explicit_vocab = false;
  std::optional<std::vector<std::string>> query;
  Formula formula;

  /// The declared query order, or the free variables in order of first occurrence.
  std::vector<std::string> query_vars() const;
};

/// A Datalog file: optional `vocab { ... }` and `goal P` headers, rules, and
/// `stratum` separators.
struct DatalogDocument {
  StratifiedProgram program;
  std::optional<std::string> goal;
  bool explicit_vocab = false;
};

enum class ArtifactKind : std::uint8_t { Formula, Datalog, Structure };

/// Structures contain a `domain` line; Datalog files contain `:-` or a rule-ending `.`.
ArtifactKind detect_kind(const std::string& text);

/// When `external` is given it supplies the vocabulary unless the text declares one.
/// Without either, the vocabulary is inferred from the free relation symbols.
FormulaDocument parse_formula_document(const std::string& text,
                                       std::shared_ptr<const Vocabulary> external = nullptr);
Formula parse_formula(const std::string& text, const Vocabulary* vocab = nullptr);

DatalogDocument parse_datalog(const std::string& text, std::shared_ptr<const Vocabulary> external = nullptr);

Structure parse_structure(const std::string& text);
std::shared_ptr<const Vocabulary> parse_vocabulary(const std::string& text);

std::string print_formula(const Formula& f);
std::string print_formula_document(const FormulaDocument& doc);
std::string print_term(const Term& t);
std::string print_body_element(const BodyElement& e);
std::string print_rule(const Rule& r);
std::string print_datalog(const StratifiedProgram& sigma, const std::optional<std::string>& goal = std::nullopt,
                          bool with_vocab = true);
std::string print_vocabulary(const Vocabulary& v);
/// `{ (0,1) (1,2) }`, or `true`/`false` for arity 0.
std::string print_relation(const Relation& r);
std::string print_structure(const Structure& s);

}  // namespace hornlab
