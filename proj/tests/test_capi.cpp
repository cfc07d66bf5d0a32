#include <gtest/gtest.h>

#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "hornlab/hornlab.h"
#include "oracle.hpp"
#include "hornlab/text.hpp"

namespace {

struct Result {
  hornlab_result* r = nullptr;
  ~Result() { hornlab_result_free(r); }
  std::map<std::string, std::string> report() const {
    std::map<std::string, std::string> out;
    std::istringstream in(hornlab_result_report(r));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "hornlab-report 1");
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
  }
};

std::string corpus_text(const char* name) {
  Result res;
  EXPECT_EQ(hornlab_cmd_corpus(name, &res.r), HORNLAB_OK);
  return hornlab_result_output(res.r);
}

const char* kPath3 = "vocab { rel E/2; const s; const t; }\ndomain 3\nE = { (0,1) (1,2) }\ns = 0\nt = 2\n";

}  // namespace

TEST(CApi, FormulaHandles) {
  hornlab_formula* f = nullptr;
  ASSERT_EQ(hornlab_formula_parse("vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n", &f), HORNLAB_OK);
  size_t arity = 0;
  ASSERT_EQ(hornlab_formula_query_arity(f, &arity), HORNLAB_OK);
  EXPECT_EQ(arity, 1U);
  const char* text = nullptr;
  ASSERT_EQ(hornlab_formula_text(f, &text), HORNLAB_OK);
  hornlab_formula* again = nullptr;
  ASSERT_EQ(hornlab_formula_parse(text, &again), HORNLAB_OK);
  const char* text2 = nullptr;
  ASSERT_EQ(hornlab_formula_text(again, &text2), HORNLAB_OK);
  EXPECT_STREQ(text, text2);
  const char* tags = nullptr;
  ASSERT_EQ(hornlab_formula_fragments(f, &tags), HORNLAB_OK);
  EXPECT_NE(std::string(tags).find("FO"), std::string::npos);

  hornlab_structure* s = nullptr;
  ASSERT_EQ(hornlab_structure_parse("vocab { rel E/2; }\ndomain 2\nE = { (0,1) }\n", &s), HORNLAB_OK);
  int n = 0;
  ASSERT_EQ(hornlab_structure_size(s, &n), HORNLAB_OK);
  EXPECT_EQ(n, 2);
  int value = -1;
  int args0[] = {0};
  int args1[] = {1};
  ASSERT_EQ(hornlab_formula_holds(f, s, args0, 1, hornlab_default_budget(), &value), HORNLAB_OK);
  EXPECT_EQ(value, 1);
  ASSERT_EQ(hornlab_formula_holds(f, s, args1, 1, hornlab_default_budget(), &value), HORNLAB_OK);
  EXPECT_EQ(value, 0);
  EXPECT_EQ(hornlab_formula_holds(f, s, args0, 2, hornlab_default_budget(), &value), HORNLAB_INPUT_ERROR);
  int out_of_range[] = {5};
  EXPECT_EQ(hornlab_formula_holds(f, s, out_of_range, 1, hornlab_default_budget(), &value), HORNLAB_INPUT_ERROR);
  hornlab_structure_free(s);
  hornlab_formula_free(again);
  hornlab_formula_free(f);
}

TEST(CApi, ProgramHandles) {
  std::string text = corpus_text("example1");
  hornlab_program* p = nullptr;
  ASSERT_EQ(hornlab_program_parse(text.c_str(), &p), HORNLAB_OK);
  const char* variant = nullptr;
  ASSERT_EQ(hornlab_program_variant(p, &variant), HORNLAB_OK);
  EXPECT_STREQ(variant, "DATALOG");
  hornlab_structure* s = nullptr;
  ASSERT_EQ(hornlab_structure_parse(kPath3, &s), HORNLAB_OK);
  int value = -1;
  ASSERT_EQ(hornlab_program_holds(p, s, nullptr, 0, &value), HORNLAB_OK);
  EXPECT_EQ(value, 1);
  size_t stages = 0;
  ASSERT_EQ(hornlab_program_stage_count(p, s, "R", &stages), HORNLAB_OK);
  EXPECT_EQ(stages, 2U);
  EXPECT_EQ(hornlab_program_stage_count(p, s, "Nope", &stages), HORNLAB_INPUT_ERROR);
  hornlab_structure_free(s);
  hornlab_program_free(p);

  hornlab_program* strat = nullptr;
  ASSERT_EQ(hornlab_program_parse(corpus_text("stratified-unreach").c_str(), &strat), HORNLAB_OK);
  ASSERT_EQ(hornlab_program_variant(strat, &variant), HORNLAB_OK);
  EXPECT_EQ(std::string(variant).rfind("S-", 0), 0U) << variant;
  hornlab_program_free(strat);
}

TEST(CApi, ParseErrorsCarryPositions) {
  hornlab_formula* f = nullptr;
  EXPECT_EQ(hornlab_formula_parse("vocab { rel E/2; }\nexists y (E(x,y)\n", &f), HORNLAB_INPUT_ERROR);
  EXPECT_EQ(f, nullptr);
  std::string msg = hornlab_last_error();
  EXPECT_NE(msg.find("line 3, column 1"), std::string::npos) << msg;
  hornlab_program* p = nullptr;
  EXPECT_EQ(hornlab_program_parse("vocab { rel E/2; }\ngoal R\nR(x) :- !R(x).\n", &p), HORNLAB_INPUT_ERROR);
  EXPECT_EQ(p, nullptr);
  hornlab_structure* s = nullptr;
  EXPECT_EQ(hornlab_structure_parse("vocab { rel E/2; }\ndomain 2\nE = { (0,5) }\n", &s), HORNLAB_INPUT_ERROR);
  EXPECT_EQ(hornlab_formula_parse(nullptr, &f), HORNLAB_INPUT_ERROR);
}

TEST(CApi, LastErrorIsPerThread) {
  hornlab_formula* f = nullptr;
  EXPECT_EQ(hornlab_formula_parse("exists (", &f), HORNLAB_INPUT_ERROR);
  const std::string mine = hornlab_last_error();
  EXPECT_FALSE(mine.empty());
  std::string theirs = "unset";
  std::thread([&] { theirs = hornlab_last_error(); }).join();
  EXPECT_TRUE(theirs.empty()) << theirs;
  EXPECT_EQ(std::string(hornlab_last_error()), mine);
}

TEST(CApi, BudgetExceeded) {
  hornlab_formula* f = nullptr;
  ASSERT_EQ(hornlab_formula_parse(corpus_text("horn-acyclic").c_str(), &f), HORNLAB_OK);
  hornlab_structure* s = nullptr;
  ASSERT_EQ(hornlab_structure_parse("vocab { rel E/2; }\ndomain 3\nE = { }\n", &s), HORNLAB_OK);
  int value = -1;
  EXPECT_EQ(hornlab_formula_holds(f, s, nullptr, 0, 100, &value), HORNLAB_BUDGET_EXCEEDED);
  EXPECT_NE(std::string(hornlab_last_error()).find("512"), std::string::npos) << hornlab_last_error();
  ASSERT_EQ(hornlab_formula_holds(f, s, nullptr, 0, 1024, &value), HORNLAB_OK);
  EXPECT_EQ(value, 1);
  Result res;
  EXPECT_EQ(hornlab_cmd_eval(corpus_text("horn-acyclic").c_str(), "vocab { rel E/2; }\ndomain 3\nE = { }\n", nullptr, 100,
                             &res.r),
            HORNLAB_BUDGET_EXCEEDED);
  EXPECT_EQ(res.r, nullptr);
  hornlab_structure_free(s);
  hornlab_formula_free(f);
}

TEST(CApi, ParseCommandClassifiesUnsatisfiabilityFormula) {
  Result res;
  ASSERT_EQ(hornlab_cmd_parse(corpus_text("phi-unsat").c_str(), "so", &res.r), HORNLAB_OK);
  auto rep = res.report();
  EXPECT_NE(rep["fragments"].find("SO-EHORN^r"), std::string::npos) << rep["fragments"];
  EXPECT_EQ(rep["status"], "0");
  EXPECT_EQ(rep["command"], "parse");
}

TEST(CApi, ParseCommandFlagsNegativeFixedPoint) {
  Result res;
  ASSERT_EQ(hornlab_cmd_parse("vocab { rel E/2; }\nquery u;\nlfp[Z/1; x]{ !Z(x) }(u)\n", "lfp", &res.r), HORNLAB_VIOLATION);
  EXPECT_EQ(res.report()["positivity_violations"], "1");
  Result wrong;
  EXPECT_EQ(hornlab_cmd_parse("vocab { rel E/2; }\nexists R/1 forall x R(x)\n", "fo", &wrong.r), HORNLAB_INPUT_ERROR);
}

TEST(CApi, RunDatalogOnPath) {
  Result res;
  ASSERT_EQ(hornlab_cmd_run_datalog(corpus_text("example1").c_str(), kPath3, 1, &res.r), HORNLAB_OK);
  auto rep = res.report();
  EXPECT_EQ(rep["relation.R"], "{ (0,1) (0,2) (1,2) }");
  EXPECT_EQ(rep["relation.Q"], "TRUE");
  EXPECT_EQ(rep["goal"], "Q");
  EXPECT_NE(std::string(hornlab_result_text(res.r)).find("Q=TRUE"), std::string::npos);
}

TEST(CApi, TranslateThenEquiv) {
  const char* in = "vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n";
  Result tr;
  ASSERT_EQ(hornlab_cmd_translate("fo2dlr", in, &tr.r), HORNLAB_OK);
  auto rep = tr.report();
  EXPECT_EQ(rep["rule"], "fo2dlr");
  EXPECT_EQ(rep["fresh.count"], "3");
  ASSERT_NE(hornlab_result_output(tr.r), nullptr);
  std::string program = hornlab_result_output(tr.r);
  Result eq;
  ASSERT_EQ(hornlab_cmd_equiv(in, program.c_str(), "vocab { rel E/2; }", 3, 0, 1, hornlab_default_budget(), &eq.r),
            HORNLAB_OK);
  auto verdict = eq.report();
  EXPECT_EQ(verdict["verdict"], "equivalent-up-to-budget");
  EXPECT_EQ(verdict["checked"], std::to_string(2 + 16 + 512));
  EXPECT_EQ(verdict["size.3.checked"], "512");

  Result unknown;
  EXPECT_EQ(hornlab_cmd_translate("no-such-rule", in, &unknown.r), HORNLAB_INPUT_ERROR);
  Result shape;
  EXPECT_EQ(hornlab_cmd_translate("horn2dl", "vocab { }\nexists R/1 forall x (R(x) | R(x))\n", &shape.r),
            HORNLAB_INPUT_ERROR);
}

TEST(CApi, EquivCounterexampleReplays) {
  const char* a = "vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n";
  const char* b = "vocab { rel E/2; }\nquery x;\nforall y E(x,y)\n";
  Result res;
  ASSERT_EQ(hornlab_cmd_equiv(a, b, "vocab { rel E/2; }", 3, 0, 1, hornlab_default_budget(), &res.r), HORNLAB_VIOLATION);
  auto rep = res.report();
  EXPECT_EQ(rep["verdict"], "counterexample");
  ASSERT_NE(hornlab_result_output(res.r), nullptr);
  auto s = hornlab::parse_structure(hornlab_result_output(res.r));
  const std::string tuple = rep["witness.tuple"];
  ASSERT_EQ(tuple.size(), 3U) << tuple;
  hornlab::Element x = tuple[1] - '0';
  auto fa = hornlab::parse_formula_document(a);
  auto fb = hornlab::parse_formula_document(b);
  EXPECT_EQ(oracle::holds(fa.formula, s, {{"x", x}}) ? "TRUE" : "FALSE", rep["witness.a"]);
  EXPECT_EQ(oracle::holds(fb.formula, s, {{"x", x}}) ? "TRUE" : "FALSE", rep["witness.b"]);
  EXPECT_NE(rep["witness.a"], rep["witness.b"]);
}

TEST(CApi, Closure) {
  Result sub;
  ASSERT_EQ(hornlab_cmd_closure(corpus_text("horn-no-reach").c_str(), "sub", 100, 3, 3, hornlab_default_budget(), &sub.r),
            HORNLAB_OK);
  EXPECT_EQ(sub.report()["verdict"], "preserved");
  Result ext;
  ASSERT_EQ(hornlab_cmd_closure(corpus_text("example2").c_str(), "ext", 200, 1, 3, hornlab_default_budget(), &ext.r),
            HORNLAB_VIOLATION);
  EXPECT_EQ(ext.report()["verdict"], "violation");
  Result bad;
  EXPECT_EQ(hornlab_cmd_closure(corpus_text("example2").c_str(), "sideways", 10, 1, 3, 1, &bad.r), HORNLAB_INPUT_ERROR);
}

TEST(CApi, CnfEncode) {
  Result res;
  ASSERT_EQ(hornlab_cmd_cnf_encode("c two clauses\np cnf 3 2\n1 -2 0\n2 3 0\n", &res.r), HORNLAB_OK);
  auto rep = res.report();
  EXPECT_EQ(rep["variables"], "3");
  EXPECT_EQ(rep["clauses"], "2");
  ASSERT_NE(hornlab_result_output(res.r), nullptr);
  auto s = hornlab::parse_structure(hornlab_result_output(res.r));
  EXPECT_EQ(s.domain_size(), 3);
  EXPECT_TRUE(s.relation("P").contains(hornlab::Tuple{0, 0}));
  EXPECT_TRUE(s.relation("N").contains(hornlab::Tuple{0, 1}));
  EXPECT_TRUE(s.relation("P").contains(hornlab::Tuple{1, 2}));
  EXPECT_EQ(s.relation("P").size() + s.relation("N").size(), 4U);
  Result bad;
  EXPECT_EQ(hornlab_cmd_cnf_encode("p cnf 2 1\n1 7 0\n", &bad.r), HORNLAB_INPUT_ERROR);
}

TEST(CApi, CorpusListing) {
  Result res;
  ASSERT_EQ(hornlab_cmd_corpus(nullptr, &res.r), HORNLAB_OK);
  auto rep = res.report();
  EXPECT_EQ(rep["item.example1"], "datalog");
  EXPECT_EQ(rep["item.phi-unsat"], "formula");
  EXPECT_EQ(hornlab_result_output(res.r), nullptr);
  Result missing;
  EXPECT_EQ(hornlab_cmd_corpus("no-such-item", &missing.r), HORNLAB_INPUT_ERROR);
}

TEST(CApi, NullResultPointer) {
  EXPECT_EQ(hornlab_cmd_corpus(nullptr, nullptr), HORNLAB_INTERNAL_ERROR);
  EXPECT_NE(std::string(hornlab_version()), "");
}
