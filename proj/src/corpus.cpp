#include "hornlab/corpus.hpp"

#include <map>

#include "hornlab/error.hpp"
#include "hornlab/transforms.hpp"

namespace hornlab {

namespace {

const char* const kExample1 = R"(vocab { rel E/2; const s; const t; }
goal Q
R(x,y) :- E(x,y).
R(x,y) :- E(x,z), R(z,y).
Q :- R(s,t).
)";

const char* const kExample2 = R"(vocab { rel E/2; }
goal Q
R(x,y) :- E(x,y).
R(x,y) :- E(x,z), R(z,y).
Q(x) :- all y : R(x,y).
)";

const char* const kExample2Path2 = R"(vocab { rel E/2; }
goal Q
R(x,y) :- { exists z (E(x,z) & E(z,y)) }.
R(x,y) :- { exists w (E(x,w) & E(w,z)) }, R(z,y).
Q(x) :- all y : R(x,y).
)";

const char* const kStratified = R"(vocab { rel E/2; }
goal P
R(x,y) :- E(x,y).
R(x,y) :- E(x,z), R(z,y).
stratum
P(x,y) :- !R(x,y).
)";

const char* const kSymmetric = R"(vocab { rel E/2; }
goal S
S(x,y) :- E(x,y).
S(x,y) :- E(y,x).
)";

const char* const kPhi =
    "vocab { rel Cla/1; rel Var/1; rel P/2; rel N/2; }\n"
    "forall X/1 exists Y/1 forall x,y ((exists z !Y(z)) & (!Y(x) -> Cla(x)) & "
    "(Cla(x) & Var(y) & !Y(x) & P(x,y) -> !X(y)) & (Cla(x) & Var(y) & !Y(x) & N(x,y) -> X(y)))\n";

struct Source {
  const char* name;
  const char* description;
  ArtifactKind kind;
  std::string text;
};

std::string print_program_text(const DatalogFormula& d) { return print_datalog(d.program, d.goal); }

Formula linear_order_sentence() {
  return parse_formula(
      "(forall x !Lt(x,x)) & (forall x,y,z (Lt(x,y) & Lt(y,z) -> Lt(x,z))) & "
      "(forall x,y (x = y | Lt(x,y) | Lt(y,x))) & (forall x (x = min | Lt(min,x)))",
      ordered_vocabulary().get());
}

Formula successor_sentence() {
  return parse_formula(
      "forall x,y ((Succ(x,y) -> Lt(x,y) & !(exists z (Lt(x,z) & Lt(z,y)))) & "
      "(Lt(x,y) & !(exists z (Lt(x,z) & Lt(z,y))) -> Succ(x,y)))",
      ordered_vocabulary().get());
}

/// Bounded program for a sentence, with every intentional symbol prefixed and the goal named `goal`.
std::vector<Rule> sentence_program(const Formula& f, const std::string& goal) {
  auto t = fo_to_datalog_r({f, ordered_vocabulary(), {}});
  std::map<std::string, std::string> names;
  for (const auto& s : t.output.program.intentional())
    names[s.name] = s.name == t.output.goal ? goal : goal + s.name;
  return rename_symbols(t.output.program, names).strata.front();
}

std::string ordered_walk_text() {
  std::vector<Rule> rules;
  for (auto [f, goal] : {std::pair{linear_order_sentence(), "Lin"}, std::pair{negate(linear_order_sentence()), "NLin"},
                         std::pair{successor_sentence(), "Suc"}, std::pair{negate(successor_sentence()), "NSuc"}}) {
    auto part = sentence_program(f, goal);
    rules.insert(rules.end(), part.begin(), part.end());
  }
  auto tail = parse_datalog(
      "vocab { rel P/1; rel Lt/2; rel Succ/2; const min; rel Lin/0; rel Suc/0; rel NLin/0; rel NSuc/0; }\n"
      "Q(min) :- Lin, Suc.\n"
      "Q(y) :- Q(x), Succ(x,y), Lin, Suc.\n"
      "P'(x) :- Q(x), P(x), Lin, Suc.\n"
      "P'(x) :- P(x), Lin, NSuc.\n"
      "P'(x) :- P(x), NLin.\n");
  for (const auto& r : tail.program.strata.front()) rules.push_back(r);
  return print_program_text({StratifiedProgram(ordered_vocabulary(), {rules}), "P'"});
}

std::vector<Source> sources() {
  return {
      {"example1", "path from s to t; goal Q", ArtifactKind::Datalog, kExample1},
      {"example1-reach", "path from x to y; goal R", ArtifactKind::Datalog,
       std::string(kExample1).replace(std::string(kExample1).find("goal Q"), 6, "goal R")},
      {"example2", "vertices reaching every vertex, atomic edge relation", ArtifactKind::Datalog, kExample2},
      {"example2-path2", "vertices reaching every vertex along paths of even length", ArtifactKind::Datalog,
       kExample2Path2},
      {"ordered-walk", "ordered walk that is equivalent to P(x) but needs more than n stages", ArtifactKind::Datalog,
       ordered_walk_text()},
      {"stratified-unreach", "no path from x to y, two strata", ArtifactKind::Datalog, kStratified},
      {"symmetric", "symmetric closure of E", ArtifactKind::Datalog, kSymmetric},
      {"phi-unsat", "holds on a CNF encoding exactly when the CNF is unsatisfiable", ArtifactKind::Formula, kPhi},
      {"horn-no-reach", "no T-vertex is reachable from an S-vertex", ArtifactKind::Formula,
       "vocab { rel S/1; rel T/1; rel E/2; }\n"
       "exists R/1 forall x,y ((S(x) -> R(x)) & (R(x) & E(x,y) -> R(y)) & (R(x) & T(x) -> false))\n"},
      {"horn-acyclic", "E has no directed cycle", ArtifactKind::Formula,
       "vocab { rel E/2; }\n"
       "exists R/2 forall x,y,z ((E(x,y) -> R(x,y)) & (R(x,y) & E(y,z) -> R(x,z)) & (R(x,x) -> false))\n"},
      {"horn-unreach-x", "no T-vertex is reachable from x", ArtifactKind::Formula,
       "vocab { rel T/1; rel E/2; }\nquery x;\n"
       "exists R/1 forall y,z (R(x) & (R(y) & E(y,z) -> R(z)) & (R(y) & T(y) -> false))\n"},
      {"horn-no-sink-reach", "from every S-vertex, no vertex without successors is reachable",
       ArtifactKind::Formula,
       "vocab { rel S/1; rel E/2; }\n"
       "exists R/1 forall x,y ((S(x) -> R(x)) & (R(x) & E(x,y) -> R(y)) & (R(x) & (forall z !E(x,z)) -> false))\n"},
      {"lfp-reach", "reachability as a least fixed point", ArtifactKind::Formula,
       "vocab { rel E/2; }\nquery u,v;\nlfp[Z/2; x,y]{ E(x,y) | exists z (E(x,z) & Z(z,y)) }(u,v)\n"},
      {"fo-outdegree", "vertices with a successor", ArtifactKind::Formula,
       "vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n"},
      {"sigma11-total", "every vertex has a successor, second-order normal form", ArtifactKind::Formula,
       "vocab { rel E/2; }\nforall x exists y E(x,y)\n"},
      {"pi11-example", "universal second-order normal form over the empty vocabulary", ArtifactKind::Formula,
       "vocab { }\nforall P/1 exists x forall y (P(x) | !P(y))\n"},
  };
}

}  // namespace

StratifiedProgram rename_symbols(const StratifiedProgram& p, const std::map<std::string, std::string>& names) {
  auto rename = [&](const std::string& s) {
    auto it = names.find(s);
    return it == names.end() ? s : it->second;
  };
  StratifiedProgram out = p;
  for (auto& stratum : out.strata)
    for (auto& r : stratum) {
      r.head = rename(r.head);
      for (auto& e : r.body) {
        if (!e.relation.empty()) e.relation = rename(e.relation);
        if (e.condition)
          for (const auto& [from, to] : names) e.condition = rename_relation(*e.condition, from, to);
      }
    }
  return out;
}

std::shared_ptr<const Vocabulary> ordered_vocabulary() {
  static const auto v = std::make_shared<const Vocabulary>(
      std::vector<RelationSymbol>{{"P", 1}, {"Lt", 2}, {"Succ", 2}}, std::vector<std::string>{"min"});
  return v;
}

Structure with_natural_order(const Structure& s) {
  Structure out = s;
  const auto& v = s.vocabulary();
  const int n = s.domain_size();
  if (v.has_relation("Lt")) {
    Relation& lt = out.relation("Lt");
    lt.clear();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) lt.insert(std::vector<Element>{i, j});
  }
  if (v.has_relation("Succ")) {
    Relation& succ = out.relation("Succ");
    succ.clear();
    for (int i = 0; i + 1 < n; ++i) succ.insert(std::vector<Element>{i, i + 1});
  }
  if (v.has_constant("min")) out.set_constant("min", 0);
  if (v.has_constant("max")) out.set_constant("max", n - 1);
  return out;
}

const std::vector<CorpusItem>& corpus() {
  static const std::vector<CorpusItem> items = [] {
    std::vector<CorpusItem> out;
    for (auto& s : sources()) out.push_back({s.name, s.description, s.kind, std::move(s.text)});
    return out;
  }();
  return items;
}

const CorpusItem& corpus_item(const std::string& name) {
  for (const auto& item : corpus())
    if (item.name == name) return item;
  fail(ErrorKind::Invalid, "no corpus item named '" + name + "'");
}

FormulaQuery corpus_formula(const std::string& name) {
  const auto& item = corpus_item(name);
  if (item.kind != ArtifactKind::Formula) fail(ErrorKind::Invalid, "corpus item '" + name + "' is not a formula");
  auto doc = parse_formula_document(item.text);
  return {doc.formula, doc.vocab, doc.query_vars()};
}

DatalogFormula corpus_datalog(const std::string& name) {
  const auto& item = corpus_item(name);
  if (item.kind != ArtifactKind::Datalog) fail(ErrorKind::Invalid, "corpus item '" + name + "' is not a program");
  auto doc = parse_datalog(item.text);
  return {doc.program, doc.goal.value_or("")};
}

}  // namespace hornlab
