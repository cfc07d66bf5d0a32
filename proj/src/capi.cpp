#include "hornlab/hornlab.h"

#include <cstdlib>
#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "hornlab/cnf.hpp"
#include "hornlab/corpus.hpp"
#include "hornlab/error.hpp"
#include "hornlab/lab.hpp"
#include "hornlab/lfp.hpp"
#include "hornlab/second_order.hpp"
#include "hornlab/text.hpp"
#include "hornlab/transforms.hpp"

using namespace hornlab;

struct hornlab_formula {
  FormulaDocument doc;
  std::string text;
  std::string fragments;
};

struct hornlab_program {
  DatalogDocument doc;
  std::string text;
  std::string variant;
};

struct hornlab_structure {
  Structure structure;
  std::string text;
};

struct hornlab_result {
  std::string text;
  std::string report = "hornlab-report 1\n";
  std::optional<std::string> output;

  void line(const std::string& s) { text += s + "\n"; }
  void kv(const std::string& key, const std::string& value) { report += key + "=" + value + "\n"; }
};

namespace {

thread_local std::string last_error;

int status_of(ErrorKind kind) { return kind == ErrorKind::Budget ? HORNLAB_BUDGET_EXCEEDED : HORNLAB_INPUT_ERROR; }

int guarded(const std::function<int()>& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return HORNLAB_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::Invalid, what);
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

std::string bool_text(bool b) { return b ? "TRUE" : "FALSE"; }

std::string relation_text(const Relation& r) {
  return r.arity() == 0 ? bool_text(!r.empty()) : print_relation(r);
}

std::string formula_document_text(const FormulaQuery& q) {
  FormulaDocument doc{q.vocab, true, q.query, q.formula};
  return print_formula_document(doc);
}

std::string tag_list(const std::set<FragmentTag>& tags) {
  std::vector<std::string> out;
  for (const auto& t : tags) out.push_back(to_string(t));
  return join(out, ", ");
}

/// Tags of the clause-normalized formula, or nothing when normalization does not apply.
std::optional<std::set<FragmentTag>> normalized_tags(const Formula& f) {
  try {
    return classify_fragment(normalize_clauses(f));
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Tags met literally or after clause normalization.
std::string fragments_of(const Formula& f) {
  if (!contains_so_quantifier(f)) return describe_fragment(f);
  auto tags = classify_fragment(f);
  if (auto normalized = normalized_tags(f)) tags.insert(normalized->begin(), normalized->end());
  return tag_list(tags);
}

FormulaQuery as_query(const FormulaDocument& doc) { return {doc.formula, doc.vocab, doc.query_vars()}; }

DatalogFormula as_datalog(const DatalogDocument& doc) {
  if (!doc.goal) fail(ErrorKind::Invalid, "program has no goal header");
  return {doc.program, *doc.goal};
}

Evaluable evaluable_from(const std::string& text, std::shared_ptr<const Vocabulary> vocab) {
  if (detect_kind(text) == ArtifactKind::Datalog) return Evaluable::datalog(as_datalog(parse_datalog(text, vocab)));
  if (detect_kind(text) == ArtifactKind::Structure) fail(ErrorKind::Invalid, "expected a formula or a program, got a structure");
  auto doc = parse_formula_document(text, vocab);
  if (contains_fixpoint(doc.formula)) {
    auto v = check_positivity(doc.formula);
    if (!v.empty()) fail(ErrorKind::Invalid, "relation " + v.front().relation + " occurs negatively in its fixed point");
  }
  return Evaluable::formula(as_query(doc));
}

std::shared_ptr<const Vocabulary> merged(const std::shared_ptr<const Vocabulary>& a,
                                         const std::shared_ptr<const Vocabulary>& b) {
  auto out = std::make_shared<Vocabulary>(*a);
  for (const auto& r : b->relations())
    if (!out->has_relation(r.name)) out->add_relation(r.name, r.arity);
  for (const auto& c : b->constants())
    if (!out->has_constant(c)) out->add_constant(c);
  return out;
}

void report_transform(hornlab_result& r, const TransformReport& t) {
  r.line("rule: " + t.rule);
  r.line("output fragment: " + t.output_fragment);
  r.kv("rule", t.rule);
  r.kv("fragment", t.output_fragment);
  std::vector<std::string> fresh;
  for (const auto& f : t.fresh) fresh.push_back(f.name + "/" + std::to_string(f.arity));
  r.line("fresh symbols: " + (fresh.empty() ? std::string("none") : join(fresh, " ")));
  r.kv("fresh.count", std::to_string(fresh.size()));
  for (std::size_t i = 0; i < fresh.size(); ++i) r.kv("fresh." + std::to_string(i), fresh[i]);
  r.line("steps:");
  r.kv("steps.count", std::to_string(t.steps.size()));
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    r.line("  " + t.steps[i].construction + ": " + t.steps[i].detail);
    r.kv("step." + std::to_string(i), t.steps[i].construction + ": " + t.steps[i].detail);
  }
  for (std::size_t i = 0; i < t.warnings.size(); ++i) {
    r.line("warning: " + t.warnings[i]);
    r.kv("warning." + std::to_string(i), t.warnings[i]);
  }
}

void report_sizes(hornlab_result& r, const std::vector<SizeStats>& sizes) {
  for (const auto& s : sizes) {
    r.line("n=" + std::to_string(s.n) + ": " + std::to_string(s.checked) + " structures checked, " +
           std::to_string(s.skipped) + " skipped");
    r.kv("size." + std::to_string(s.n) + ".checked", std::to_string(s.checked));
    r.kv("size." + std::to_string(s.n) + ".skipped", std::to_string(s.skipped));
  }
}

int finish(hornlab_result* r, hornlab_result** out, int status) {
  r->kv("status", std::to_string(status));
  *out = r;
  return status;
}

int run_command(hornlab_result** out, const std::function<int(hornlab_result&)>& body) {
  if (!out) {
    last_error = "null result pointer";
    return HORNLAB_INTERNAL_ERROR;
  }
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<hornlab_result>();
    int status = body(*r);
    return finish(r.release(), out, status);
  });
}

}  // namespace

extern "C" {

const char* hornlab_version(void) { return "0.1.0"; }

const char* hornlab_last_error(void) { return last_error.c_str(); }

double hornlab_default_budget(void) {
  if (const char* env = std::getenv("HORNLAB_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return static_cast<double>(kDefaultSoBudget);
}

// --- artifacts ------------------------------------------------------------------

int hornlab_formula_parse(const char* text, hornlab_formula** out) {
  return guarded([&] {
    require(text && out, "null argument");
    auto doc = parse_formula_document(text);
    auto* f = new hornlab_formula{doc, formula_document_text(as_query(doc)), fragments_of(doc.formula)};
    *out = f;
    return HORNLAB_OK;
  });
}

void hornlab_formula_free(hornlab_formula* f) { delete f; }

int hornlab_formula_text(const hornlab_formula* f, const char** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = f->text.c_str();
    return HORNLAB_OK;
  });
}

int hornlab_formula_fragments(const hornlab_formula* f, const char** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = f->fragments.c_str();
    return HORNLAB_OK;
  });
}

int hornlab_formula_query_arity(const hornlab_formula* f, size_t* out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = f->doc.query_vars().size();
    return HORNLAB_OK;
  });
}

int hornlab_program_parse(const char* text, hornlab_program** out) {
  return guarded([&] {
    require(text && out, "null argument");
    auto doc = parse_datalog(text);
    std::string variant = describe_fragment(doc.program);
    *out = new hornlab_program{doc, print_datalog(doc.program, doc.goal), variant};
    return HORNLAB_OK;
  });
}

void hornlab_program_free(hornlab_program* p) { delete p; }

int hornlab_program_text(const hornlab_program* p, const char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->text.c_str();
    return HORNLAB_OK;
  });
}

int hornlab_program_variant(const hornlab_program* p, const char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->variant.c_str();
    return HORNLAB_OK;
  });
}

int hornlab_structure_parse(const char* text, hornlab_structure** out) {
  return guarded([&] {
    require(text && out, "null argument");
    Structure s = parse_structure(text);
    *out = new hornlab_structure{s, print_structure(s)};
    return HORNLAB_OK;
  });
}

void hornlab_structure_free(hornlab_structure* s) { delete s; }

int hornlab_structure_text(const hornlab_structure* s, const char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = s->text.c_str();
    return HORNLAB_OK;
  });
}

int hornlab_structure_size(const hornlab_structure* s, int* out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = s->structure.domain_size();
    return HORNLAB_OK;
  });
}

// --- evaluation -------------------------------------------------------------------

int hornlab_formula_holds(const hornlab_formula* f, const hornlab_structure* s, const int* args, size_t nargs,
                          double budget, int* out) {
  return guarded([&] {
    require(f && s && out && (args || nargs == 0), "null argument");
    auto params = f->doc.query_vars();
    require(params.size() == nargs, "argument count differs from the query arity");
    CompiledFormula cf(f->doc.formula, s->structure.vocabulary_ptr(), params);
    std::vector<Element> tuple(args, args + nargs);
    for (Element e : tuple) require(e >= 0 && e < s->structure.domain_size(), "argument outside the domain");
    *out = cf.eval(s->structure, tuple, budget) ? 1 : 0;
    return HORNLAB_OK;
  });
}

int hornlab_program_holds(const hornlab_program* p, const hornlab_structure* s, const int* args, size_t nargs,
                          int* out) {
  return guarded([&] {
    require(p && s && out && (args || nargs == 0), "null argument");
    Relation r = eval_query(as_datalog(p->doc), s->structure);
    require(static_cast<std::size_t>(r.arity()) == nargs, "argument count differs from the goal arity");
    std::vector<Element> tuple(args, args + nargs);
    for (Element e : tuple) require(e >= 0 && e < s->structure.domain_size(), "argument outside the domain");
    *out = r.contains(tuple) ? 1 : 0;
    return HORNLAB_OK;
  });
}

int hornlab_program_stage_count(const hornlab_program* p, const hornlab_structure* s, const char* symbol,
                                size_t* out) {
  return guarded([&] {
    require(p && s && symbol && out, "null argument");
    *out = stage_count(p->doc.program, s->structure, symbol);
    return HORNLAB_OK;
  });
}

// --- commands ------------------------------------------------------------------------

void hornlab_result_free(hornlab_result* r) { delete r; }
const char* hornlab_result_text(const hornlab_result* r) { return r ? r->text.c_str() : nullptr; }
const char* hornlab_result_report(const hornlab_result* r) { return r ? r->report.c_str() : nullptr; }
const char* hornlab_result_output(const hornlab_result* r) { return r && r->output ? r->output->c_str() : nullptr; }

int hornlab_cmd_parse(const char* text, const char* kind, hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(text != nullptr, "null argument");
    std::string k = kind ? kind : "";
    if (k.empty()) {
      auto detected = detect_kind(text);
      k = detected == ArtifactKind::Datalog ? "datalog" : detected == ArtifactKind::Structure ? "structure" : "so";
    }
    r.kv("command", "parse");
    r.kv("kind", k);
    if (k == "datalog") {
      auto doc = parse_datalog(text);
      auto info = validate_program(doc.program);
      std::string variant = describe_fragment(doc.program);
      r.line("kind: datalog");
      r.line("variant: " + variant);
      r.line("strata: " + std::to_string(doc.program.strata.size()));
      std::vector<std::string> ints;
      for (const auto& s : info.intentional) ints.push_back(s.name + "/" + std::to_string(s.arity));
      r.line("intentional: " + join(ints, " "));
      if (doc.goal) r.line("goal: " + *doc.goal);
      r.kv("variant", variant);
      r.kv("strata", std::to_string(doc.program.strata.size()));
      r.kv("intentional", join(ints, " "));
      if (doc.goal) r.kv("goal", *doc.goal);
      return HORNLAB_OK;
    }
    if (k == "structure") {
      Structure s = parse_structure(text);
      r.line("kind: structure");
      r.line("domain: " + std::to_string(s.domain_size()));
      r.kv("domain", std::to_string(s.domain_size()));
      return HORNLAB_OK;
    }
    if (k != "fo" && k != "so" && k != "lfp") fail(ErrorKind::Invalid, "unknown kind '" + k + "'");
    auto doc = parse_formula_document(text);
    if (k == "fo" && (contains_so_quantifier(doc.formula) || contains_fixpoint(doc.formula)))
      fail(ErrorKind::Invalid, "formula is not first-order");
    if (k == "lfp" && contains_so_quantifier(doc.formula))
      fail(ErrorKind::Invalid, "fixed-point formula contains second-order quantifiers");
    std::string fragments = fragments_of(doc.formula);
    r.line("kind: " + k);
    r.line("fragments: " + fragments);
    if (contains_so_quantifier(doc.formula)) {
      const std::string literal = tag_list(classify_fragment(doc.formula));
      auto normalized = normalized_tags(doc.formula);
      const std::string after = normalized ? tag_list(*normalized) : "not clausal";
      r.line("  as written: " + literal);
      r.line("  after clause normalization: " + after);
      r.kv("fragments.literal", literal);
      r.kv("fragments.normalized", after);
    }
    r.line("query: " + join(doc.query_vars()));
    r.line("quantifier rank: " + std::to_string(quantifier_rank(doc.formula)));
    r.kv("fragments", fragments);
    r.kv("query", join(doc.query_vars()));
    r.kv("quantifier_rank", std::to_string(quantifier_rank(doc.formula)));
    if (int d = contains_so_quantifier(doc.formula) ? horn_depth(doc.formula) : 0; d > 0) r.kv("horn_depth", std::to_string(d));
    auto violations = check_positivity(doc.formula);
    r.kv("positivity_violations", std::to_string(violations.size()));
    for (const auto& v : violations) r.line("positivity violation: " + print_formula(v.occurrence));
    return violations.empty() ? HORNLAB_OK : HORNLAB_VIOLATION;
  });
}

int hornlab_cmd_eval(const char* formula_text, const char* structure_text, const char* assign, double budget,
                     hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(formula_text && structure_text, "null argument");
    Structure s = parse_structure(structure_text);
    auto doc = parse_formula_document(formula_text, s.vocabulary_ptr());
    if (auto v = check_positivity(doc.formula); !v.empty())
      fail(ErrorKind::Invalid, "relation " + v.front().relation + " occurs negatively in its fixed point");
    const auto params = doc.query_vars();
    std::map<std::string, Element> fixed;
    if (assign && *assign) {
      std::stringstream in(assign);
      std::string item;
      while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Invalid, "assignment items look like x=0");
        std::string var = item.substr(0, eq);
        if (std::find(params.begin(), params.end(), var) == params.end())
          fail(ErrorKind::Invalid, "'" + var + "' is not a free variable of the formula");
        int value = 0;
        try {
          value = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
          fail(ErrorKind::Invalid, "assignment value for '" + var + "' is not a number");
        }
        if (value < 0 || value >= s.domain_size()) fail(ErrorKind::Invalid, "value for '" + var + "' is outside the domain");
        fixed[var] = value;
      }
    }
    CompiledFormula cf(doc.formula, s.vocabulary_ptr(), params);
    Relation answers = cf.answers(s, budget);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < params.size(); ++i)
      if (!fixed.count(params[i])) open.push_back(i);
    r.kv("command", "eval");
    if (open.empty()) {
      Tuple t;
      for (const auto& p : params) t.push_back(fixed[p]);
      bool value = answers.contains(t);
      r.line(value ? "true" : "false");
      r.kv("value", value ? "true" : "false");
      return HORNLAB_OK;
    }
    std::vector<std::string> names;
    for (auto i : open) names.push_back(params[i]);
    std::vector<std::string> rows;
    for (const auto& t : answers.tuples()) {
      bool match = true;
      for (std::size_t i = 0; i < params.size(); ++i)
        if (fixed.count(params[i]) && fixed[params[i]] != t[i]) match = false;
      if (!match) continue;
      Tuple projected;
      for (auto i : open) projected.push_back(t[i]);
      rows.push_back(tuple_text(projected));
    }
    r.line("answers (" + join(names) + "): { " + join(rows, " ") + (rows.empty() ? "}" : " }"));
    r.line(std::to_string(rows.size()) + " tuples");
    r.kv("answer_vars", join(names));
    r.kv("answer_count", std::to_string(rows.size()));
    r.kv("answers", join(rows, " "));
    return HORNLAB_OK;
  });
}

int hornlab_cmd_run_datalog(const char* program_text, const char* structure_text, int trace_stages,
                            hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(program_text && structure_text, "null argument");
    Structure s = parse_structure(structure_text);
    auto doc = parse_datalog(program_text, s.vocabulary_ptr());
    auto result = eval_datalog(doc.program, s, trace_stages != 0);
    r.kv("command", "run-datalog");
    for (const auto& sym : doc.program.intentional()) {
      const auto& rel = result.expanded.relation(sym.name);
      r.line(sym.name + (rel.arity() == 0 ? "=" : " = ") + relation_text(rel));
      r.kv("relation." + sym.name, relation_text(rel));
    }
    for (std::size_t m = 0; m < result.stage_counts.size(); ++m) {
      r.line("stratum " + std::to_string(m) + ": fixed point after " + std::to_string(result.stage_counts[m]) + " stages");
      r.kv("stratum." + std::to_string(m) + ".stages", std::to_string(result.stage_counts[m]));
    }
    if (doc.goal) {
      const auto& rel = result.expanded.relation(*doc.goal);
      r.line("goal " + *doc.goal + (rel.arity() == 0 ? "=" : " = ") + relation_text(rel));
      r.kv("goal", *doc.goal);
    }
    if (trace_stages) {
      for (std::size_t m = 0; m < result.traces.size(); ++m) {
        const auto& trace = result.traces[m];
        for (std::size_t k = 0; k < trace.stages.size(); ++k) {
          std::string row;
          for (std::size_t i = 0; i < trace.symbols.size(); ++i)
            row += (i ? "; " : "") + trace.symbols[i].name + " = " + relation_text(trace.stages[k][i]);
          r.line("stratum " + std::to_string(m) + " stage " + std::to_string(k) + ": " + row);
          r.kv("trace." + std::to_string(m) + "." + std::to_string(k), row);
        }
      }
    }
    return HORNLAB_OK;
  });
}

int hornlab_cmd_translate(const char* rule, const char* input_text, hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(rule && input_text, "null argument");
    const std::string name = rule;
    const bool datalog_input = detect_kind(input_text) == ArtifactKind::Datalog;
    auto formula_in = [&] {
      if (datalog_input) fail(ErrorKind::Invalid, "rule " + name + " expects a formula");
      return as_query(parse_formula_document(input_text));
    };
    auto datalog_in = [&] {
      if (!datalog_input) fail(ErrorKind::Invalid, "rule " + name + " expects a program");
      return as_datalog(parse_datalog(input_text));
    };
    auto emit_formula = [&](const Transformed<FormulaQuery>& t) {
      r.output = formula_document_text(t.output);
      report_transform(r, t.report);
    };
    auto emit_program = [&](const Transformed<DatalogFormula>& t) {
      r.output = print_datalog(t.output.program, t.output.goal);
      report_transform(r, t.report);
    };
    r.kv("command", "translate");
    if (name == "lemma1") emit_formula(swap_forall_exists(formula_in()));
    else if (name == "prop1") emit_formula(to_existential_fragment(formula_in()));
    else if (name == "fo2dlr") emit_program(fo_to_datalog_r(formula_in()));
    else if (name == "star2r") emit_program(datalog_star_to_r(datalog_in()));
    else if (name == "horn2dl") emit_program(so_horn_to_datalog(formula_in()));
    else if (name == "dl2horn") emit_formula(datalog_to_so_horn(datalog_in()));
    else if (name == "dlr2lfp") emit_formula(datalog_r_to_slfp(datalog_in()));
    else if (name == "lfp2dlr") emit_program(lfp_normal_to_datalog_r(formula_in()));
    else if (name == "fo2sdl") emit_program(fo_to_s_datalog(formula_in()));
    else if (name == "sdl-horn") datalog_input ? emit_formula(datalog_s_to_horn(datalog_in()))
                                              : emit_program(horn_s_to_datalog(formula_in()));
    else if (name == "sig11") emit_formula(sigma11_push_exists(formula_in()));
    else if (name == "pi11-ehorn") emit_formula(pi11_to_ehorn_r(formula_in()));
    else fail(ErrorKind::Invalid, "unknown rule '" + name + "'");
    return HORNLAB_OK;
  });
}

int hornlab_cmd_equiv(const char* a_text, const char* b_text, const char* vocab_text, int max_size, size_t samples,
                      unsigned long long seed, double budget, hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(a_text && b_text, "null argument");
    require(max_size >= 1, "maximum size must be positive");
    std::shared_ptr<const Vocabulary> vocab = vocab_text && *vocab_text ? parse_vocabulary(vocab_text) : nullptr;
    Evaluable a = evaluable_from(a_text, vocab);
    Evaluable b = evaluable_from(b_text, vocab);
    if (!vocab) vocab = merged(a.vocabulary(), b.vocabulary());
    CheckOptions options;
    options.max_n = max_size;
    options.mode = samples ? CheckMode::Sampled : CheckMode::Exhaustive;
    options.samples = samples;
    options.seed = seed;
    options.so_budget = budget;
    auto verdict = check_equiv(a, b, vocab, options);
    r.kv("command", "equiv");
    r.kv("verdict", to_string(verdict.status));
    r.kv("mode", samples ? "sampled" : "exhaustive");
    r.kv("checked", std::to_string(verdict.checked()));
    r.kv("skipped", std::to_string(verdict.skipped()));
    r.line(to_string(verdict.status));
    report_sizes(r, verdict.sizes);
    if (verdict.skipped()) r.line("warning: " + std::to_string(verdict.skipped()) + " structures exceeded the budget");
    if (verdict.witness) {
      r.line("witness tuple " + tuple_text(verdict.witness->tuple) + ": a=" + bool_text(verdict.witness->a_value) +
             " b=" + bool_text(verdict.witness->b_value));
      r.line(print_structure(verdict.witness->structure));
      r.kv("witness.tuple", tuple_text(verdict.witness->tuple));
      r.kv("witness.a", bool_text(verdict.witness->a_value));
      r.kv("witness.b", bool_text(verdict.witness->b_value));
      r.output = print_structure(verdict.witness->structure);
      return HORNLAB_VIOLATION;
    }
    return HORNLAB_OK;
  });
}

int hornlab_cmd_closure(const char* text, const char* direction, size_t trials, unsigned long long seed, int max_size,
                        double budget, hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(text && direction, "null argument");
    const std::string dir = direction;
    require(dir == "sub" || dir == "ext", "direction must be sub or ext");
    Evaluable x = evaluable_from(text, nullptr);
    ClosureOptions options;
    options.direction = dir == "sub" ? ClosureDirection::Substructure : ClosureDirection::Extension;
    options.trials = trials;
    options.seed = seed;
    options.max_n = max_size;
    options.so_budget = budget;
    auto verdict = check_closure(x, options);
    r.kv("command", "closure");
    r.kv("direction", dir);
    r.kv("trials", std::to_string(verdict.trials));
    r.kv("skipped", std::to_string(verdict.skipped));
    r.kv("verdict", verdict.preserved() ? "preserved" : "violation");
    r.line(verdict.preserved() ? "preserved" : "violation");
    r.line(std::to_string(verdict.trials) + " pairs checked, " + std::to_string(verdict.skipped) + " skipped");
    if (verdict.violation) {
      const auto& w = *verdict.violation;
      r.line("tuple " + tuple_text(w.tuple) + ": larger=" + bool_text(w.larger_value) +
             " smaller=" + bool_text(w.smaller_value));
      r.line("larger structure:");
      r.line(print_structure(w.larger));
      r.line("smaller structure:");
      r.line(print_structure(w.smaller));
      r.kv("witness.tuple", tuple_text(w.tuple));
      return HORNLAB_VIOLATION;
    }
    return HORNLAB_OK;
  });
}

int hornlab_cmd_cnf_encode(const char* dimacs_text, hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    require(dimacs_text != nullptr, "null argument");
    Cnf cnf = parse_dimacs(dimacs_text);
    Structure s = cnf_to_structure(cnf);
    r.output = print_structure(s);
    r.kv("command", "cnf-encode");
    r.kv("variables", std::to_string(cnf.variables));
    r.kv("clauses", std::to_string(cnf.clauses.size()));
    r.kv("domain", std::to_string(s.domain_size()));
    r.line(std::to_string(cnf.clauses.size()) + " clauses over " + std::to_string(cnf.variables) +
           " variables encoded on a domain of size " + std::to_string(s.domain_size()));
    return HORNLAB_OK;
  });
}

int hornlab_cmd_corpus(const char* name, hornlab_result** out) {
  return run_command(out, [&](hornlab_result& r) {
    r.kv("command", "corpus");
    if (!name) {
      for (const auto& item : corpus()) {
        std::string kind = item.kind == ArtifactKind::Datalog ? "datalog" : "formula";
        r.line(item.name + "  [" + kind + "]  " + item.description);
        r.kv("item." + item.name, kind);
      }
      return HORNLAB_OK;
    }
    const auto& item = corpus_item(name);
    if (item.kind == ArtifactKind::Datalog) {
      auto doc = parse_datalog(item.text);
      r.output = print_datalog(doc.program, doc.goal);
    } else {
      r.output = formula_document_text(as_query(parse_formula_document(item.text)));
    }
    r.line(item.name + ": " + item.description);
    r.kv("item", item.name);
    return HORNLAB_OK;
  });
}

}  // extern "C"
