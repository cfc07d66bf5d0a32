#include <gtest/gtest.h>

#include <random>

#include "harness.hpp"
#include "hornlab/corpus.hpp"
#include "hornlab/enumerate.hpp"
#include "hornlab/error.hpp"
#include "hornlab/lfp.hpp"
#include "hornlab/second_order.hpp"
#include "oracle.hpp"
#include "transform_inputs.hpp"

using namespace hornlab;
using harness::Artifact;

namespace {

FormulaQuery query(const std::string& text) {
  auto doc = parse_formula_document(text);
  return {doc.formula, doc.vocab, doc.query_vars()};
}

DatalogFormula program(const std::string& text) {
  auto doc = parse_datalog(text);
  return {doc.program, doc.goal.value()};
}

std::shared_ptr<const Vocabulary> graph() { return parse_vocabulary("vocab { rel E/2; }"); }

/// Every structure over `v` with at most `max_n` elements.
std::vector<Structure> structures(std::shared_ptr<const Vocabulary> v, int max_n) {
  std::vector<Structure> out;
  for (int n = 1; n <= max_n; ++n)
    StructureSpace(v, n).for_each([&](const Structure& s) {
      out.push_back(s);
      return true;
    });
  return out;
}

/// Answers computed by the reference semantics alone.
oracle::TupleSet oracle_answers(const Artifact& a, const Structure& s) {
  if (a.formula) return oracle::answers(a.formula->formula, a.formula->query, s);
  return oracle::run(a.datalog->program, s).relations.at(a.datalog->goal);
}

oracle::TupleSet complement(const oracle::TupleSet& x, int n, std::size_t arity) {
  oracle::TupleSet out;
  for (const auto& t : oracle::all_tuples(n, static_cast<int>(arity)))
    if (!x.count(t)) out.insert(t);
  return out;
}

/// Cheap enough for the reference evaluator on structures of size n.
bool oracle_feasible(const Artifact& a, int n) {
  if (!a.formula) return true;
  CompiledFormula c(a.formula->formula, a.formula->vocab, a.formula->query);
  return c.so_assignments(n) <= 4096;
}

std::set<std::string> names_of(const Artifact& a) {
  std::set<std::string> out;
  const auto& v = *a.vocab();
  for (const auto& r : v.relations()) out.insert(r.name);
  for (const auto& c : v.constants()) out.insert(c);
  if (a.formula) {
    auto f = all_names(a.formula->formula);
    out.insert(f.begin(), f.end());
    out.insert(a.formula->query.begin(), a.formula->query.end());
    return out;
  }
  for (const auto& stratum : a.datalog->program.strata)
    for (const auto& r : stratum) {
      out.insert(r.head);
      for (const auto& t : r.head_args) out.insert(t.name);
      for (const auto& e : r.body) {
        out.insert(e.relation);
        for (const auto& t : e.args) out.insert(t.name);
        out.insert(e.bound.begin(), e.bound.end());
        if (e.condition) {
          auto f = all_names(*e.condition);
          out.insert(f.begin(), f.end());
        }
      }
    }
  return out;
}

std::set<Fragment> fragments(const Formula& f) {
  std::set<Fragment> out;
  for (const auto& t : classify_fragment(f)) out.insert(t.fragment);
  if (contains_so_quantifier(f)) try {
      for (const auto& t : classify_fragment(normalize_clauses(f))) out.insert(t.fragment);
    } catch (const Error&) {
    }
  return out;
}

/// Shape promised by each rule for its output.
void expect_output_shape(const std::string& rule, const Artifact& out) {
  auto variant = [&] { return validate_program(out.datalog->program).variant; };
  auto only_leading_so = [&] { return !contains_so_quantifier(split_so_prefix(out.formula->formula).body); };
  if (rule == "lemma1") {
    EXPECT_TRUE(only_leading_so());
  } else if (rule == "prop1" || rule == "sig11") {
    EXPECT_TRUE(only_leading_so());
    EXPECT_TRUE(split_so_prefix(out.formula->formula).existential());
  } else if (rule == "fo2dlr" || rule == "star2r" || rule == "lfp2dlr") {
    EXPECT_EQ(out.datalog->program.strata.size(), 1U);
    EXPECT_TRUE(variant() == Variant::Plain || variant() == Variant::R);
  } else if (rule == "horn2dl") {
    EXPECT_EQ(out.datalog->program.strata.size(), 1U);
    EXPECT_NO_THROW(variant());
  } else if (rule == "fo2sdl") {
    EXPECT_EQ(variant(), Variant::Plain);
  } else if (rule == "dl2horn") {
    auto tags = fragments(out.formula->formula);
    EXPECT_TRUE(tags.count(Fragment::SoHornR) || tags.count(Fragment::SoHornStarR));
  } else if (rule == "dlr2lfp") {
    EXPECT_FALSE(contains_so_quantifier(out.formula->formula));
    EXPECT_TRUE(check_positivity(out.formula->formula).empty());
  } else if (rule == "sdl-horn") {
    if (out.datalog)
      EXPECT_NO_THROW(validate_program(out.datalog->program));
    else
      EXPECT_NO_THROW(horn_s_to_datalog(*out.formula));
  } else if (rule == "pi11-ehorn") {
    EXPECT_TRUE(fragments(out.formula->formula).count(Fragment::SoEHornR));
  }
}

std::size_t arity_of(const Artifact& a) { return a.evaluable().arity(); }

}  // namespace

namespace inputs {
void PrintTo(const RuleInputs& r, std::ostream* os) { *os << r.rule; }
}  // namespace inputs

class TransformInputs : public ::testing::TestWithParam<inputs::RuleInputs> {};

TEST_P(TransformInputs, AgreeWithReferenceSemantics) {
  const auto& r = GetParam();
  std::size_t compared = 0;
  for (std::size_t i = 0; i < r.texts.size(); ++i) {
    SCOPED_TRACE(r.rule + " input " + std::to_string(i));
    Artifact in = harness::parse_artifact(r.texts[i]);
    auto applied = harness::apply_rule(r.rule, in);
    const Artifact& out = applied.output;
    ASSERT_EQ(arity_of(in), arity_of(out));
    for (const auto& s : structures(in.vocab(), 2)) {
      if (!oracle_feasible(in, s.domain_size()) || !oracle_feasible(out, s.domain_size())) continue;
      ++compared;
      auto expected = oracle_answers(in, s);
      auto got = oracle_answers(out, s);
      if (r.relation == inputs::Relation::Dual) got = complement(got, s.domain_size(), arity_of(out));
      ASSERT_EQ(got, expected) << in.text() << "\n=>\n" << out.text() << "\non\n" << print_structure(s);
    }
  }
  EXPECT_GT(compared, 0U);
}

TEST_P(TransformInputs, FreshSymbolsAvoidInputNames) {
  const auto& r = GetParam();
  for (std::size_t i = 0; i < r.texts.size(); ++i) {
    SCOPED_TRACE(r.rule + " input " + std::to_string(i));
    Artifact in = harness::parse_artifact(r.texts[i]);
    auto applied = harness::apply_rule(r.rule, in);
    auto used = names_of(in);
    std::set<std::string> seen;
    for (const auto& f : applied.report.fresh) {
      EXPECT_FALSE(used.count(f.name)) << f.name;
      EXPECT_TRUE(seen.insert(f.name).second) << f.name;
      EXPECT_EQ(f.name.front(), '_') << f.name;
    }
    EXPECT_EQ(applied.report.rule, r.rule);
    EXPECT_FALSE(applied.report.output_fragment.empty());
  }
}

TEST_P(TransformInputs, OutputHasPromisedShape) {
  const auto& r = GetParam();
  for (std::size_t i = 0; i < r.texts.size(); ++i) {
    SCOPED_TRACE(r.rule + " input " + std::to_string(i));
    Artifact in = harness::parse_artifact(r.texts[i]);
    auto applied = harness::apply_rule(r.rule, in);
    expect_output_shape(r.rule, applied.output);
  }
}

TEST_P(TransformInputs, OutputTextReparses) {
  const auto& r = GetParam();
  for (std::size_t i = 0; i < r.texts.size(); ++i) {
    SCOPED_TRACE(r.rule + " input " + std::to_string(i));
    Artifact in = harness::parse_artifact(r.texts[i]);
    Artifact out = harness::apply_rule(r.rule, in).output;
    Artifact again = harness::parse_artifact(out.text());
    EXPECT_EQ(again.text(), out.text());
    if (out.formula) EXPECT_EQ(again.formula->formula, out.formula->formula);
  }
}

INSTANTIATE_TEST_SUITE_P(AllRules, TransformInputs, ::testing::ValuesIn(inputs::all()),
                         [](const auto& info) {
                           std::string name = info.param.rule;
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(SwapForallExists, WidensRelation) {
  auto in = query("vocab { rel E/2; }\nforall x exists R/1 forall y (R(y) -> E(x,y))\n");
  auto t = swap_forall_exists(in);
  SoFormula so = split_so_prefix(t.output.formula);
  ASSERT_EQ(so.prefix.size(), 1U);
  EXPECT_EQ(so.prefix[0].quantifier, Quantifier::Exists);
  EXPECT_EQ(so.prefix[0].arity, 2);
  ASSERT_EQ(t.report.fresh.size(), 1U);
  EXPECT_EQ(t.report.fresh[0].arity, 2);
  EXPECT_TRUE(harness::compare({in, std::nullopt}, {t.output, std::nullopt}, false).equivalent());
}

TEST(ExistentialFragment, Examples) {
  auto existential = query("vocab { rel S/1; }\nexists R/1 forall x (S(x) -> R(x))\n");
  EXPECT_EQ(to_existential_fragment(existential).output.formula, existential.formula);
  auto in = query("vocab { }\nforall P/1 exists R/1 forall x ((P(x) -> R(x)) & (R(x) & !P(x) -> false))\n");
  auto t = to_existential_fragment(in);
  EXPECT_TRUE(split_so_prefix(t.output.formula).existential());
  EXPECT_TRUE(harness::compare({in, std::nullopt}, {t.output, std::nullopt}, false).equivalent());
}

TEST(ExistentialFragment, TupleInequalityIsAFirstOrderBeta) {
  auto in = query("vocab { rel S/1; }\nforall P/1 forall x (S(x) -> P(x))\n");
  auto out = to_existential_fragment(in).output.formula;
  auto tags = fragments(out);
  EXPECT_TRUE(tags.count(Fragment::SoHornStar));
}

TEST(FoToDatalog, OutdegreeExample) {
  auto in = query("vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n");
  auto t = fo_to_datalog_r(in);
  EXPECT_EQ(t.output.program.strata.at(0).size(), 3U);
  for (const auto& s : structures(graph(), 3)) {
    oracle::TupleSet expected;
    for (Element x = 0; x < s.domain_size(); ++x)
      for (Element y = 0; y < s.domain_size(); ++y)
        if (s.relation("E").contains(Tuple{x, y})) expected.insert({x});
    EXPECT_EQ(oracle::to_set(eval_query(t.output, s)), expected);
  }
}

TEST(FoToDatalog, QuantifierFreeConvergesInTwoStages) {
  auto t = fo_to_datalog_r(query("vocab { rel E/2; }\nquery x,y;\nE(x,y) & !E(y,x)\n"));
  for (const auto& s : structures(graph(), 3)) EXPECT_LE(stage_count(t.output.program, s, t.output.goal), 2U);
}

TEST(FoToDatalog, StageBoundOnNestedQuantifiers) {
  auto in = query("vocab { rel E/2; }\nquery x;\nforall y (E(x,y) -> exists z (E(y,z) & forall w E(z,w)))\n");
  auto t = fo_to_datalog_r(in);
  const std::size_t prefix = to_prenex_dnf(in.formula).prefix.size();
  for (const auto& s : structures(graph(), 3)) EXPECT_LE(stage_count(t.output.program, s, t.output.goal), prefix + 2);
}

TEST(StarToR, AtomicConditionsUnchanged) {
  auto d = corpus_datalog("example2");
  auto t = datalog_star_to_r(d);
  EXPECT_EQ(t.output.program.strata, d.program.strata);
}

TEST(StarToR, ReplacesConditions) {
  auto d = program("vocab { rel E/2; }\ngoal Q\nR(x,y) :- {exists z (E(x,z) & E(z,y))}.\n"
                   "R(x,y) :- {exists z (E(x,z) & E(z,w))}, R(w,y).\nQ(x) :- all y : R(x,y).\n");
  EXPECT_EQ(validate_program(d.program).variant, Variant::StarR);
  auto t = datalog_star_to_r(d);
  EXPECT_EQ(validate_program(t.output.program).variant, Variant::R);
  for (const auto& s : structures(graph(), 3)) EXPECT_EQ(eval_query(t.output, s), eval_query(d, s));
}

TEST(HornToDatalog, NoReachExample) {
  auto in = corpus_formula("horn-no-reach");
  auto t = so_horn_to_datalog(in);
  for (const auto& s : structures(in.vocab, 2)) {
    auto reach = oracle::reachable(s);
    bool t_reachable = false;
    for (Element x = 0; x < s.domain_size(); ++x)
      for (Element y = 0; y < s.domain_size(); ++y)
        if (s.relation("S").contains(Tuple{x}) && s.relation("T").contains(Tuple{y}) &&
            (x == y || reach.count({x, y})))
          t_reachable = true;
    EXPECT_EQ(eval_query(t.output, s).contains(Tuple{}), t_reachable) << print_structure(s);
  }
}

TEST(HornToDatalog, NoBottomClauseNeverDerivesGoal) {
  auto in = query("vocab { rel S/1; rel E/2; }\nexists R/1 forall x,y ((S(x) -> R(x)) & (R(x) & E(x,y) -> R(y)))\n");
  auto t = so_horn_to_datalog(in);
  for (const auto& s : structures(in.vocab, 2)) {
    EXPECT_TRUE(eval_query(t.output, s).empty());
    EXPECT_TRUE(eval_so_bruteforce(in.formula, s, {}));
  }
}

TEST(HornToDatalog, FreeVariableComplement) {
  auto in = corpus_formula("horn-unreach-x");
  ASSERT_EQ(in.query.size(), 1U);
  auto t = so_horn_to_datalog(in);
  for (const auto& s : structures(in.vocab, 2)) {
    Relation p = eval_query(t.output, s);
    for (Element x = 0; x < s.domain_size(); ++x)
      EXPECT_EQ(p.contains(Tuple{x}), !eval_so_bruteforce(in.formula, s, {{in.query[0], x}}));
  }
}

TEST(HornToDatalog, RejectsNonHorn) {
  EXPECT_THROW(so_horn_to_datalog(query("vocab { rel S/1; }\nforall P/1 forall x (S(x) -> P(x))\n")), Error);
  EXPECT_THROW(so_horn_to_datalog(query("vocab { rel S/1; }\nexists R/1 forall x (S(x) -> R(x) | R(x))\n")), Error);
}

TEST(DatalogToHorn, ExampleOneMeansNoPath) {
  auto d = corpus_datalog("example1");
  auto t = datalog_to_so_horn(d);
  EXPECT_TRUE(fragments(t.output.formula).count(Fragment::SoHorn));
  for (const auto& s : structures(d.program.vocab, 3)) {
    bool path = oracle::reachable(s).count({s.constant("s"), s.constant("t")}) > 0;
    EXPECT_EQ(eval_so_bruteforce(t.output.formula, s, {}), !path) << print_structure(s);
  }
}

TEST(DatalogToHorn, SelfLoopRule) {
  auto d = program("vocab { rel E/2; }\ngoal R\nR(x) :- E(x,x).\n");
  auto t = datalog_to_so_horn(d);
  ASSERT_EQ(t.output.query.size(), 1U);
  for (const auto& s : structures(graph(), 3))
    for (Element x = 0; x < s.domain_size(); ++x)
      EXPECT_EQ(eval_so_bruteforce(t.output.formula, s, {{t.output.query[0], x}}), !s.relation("E").contains(Tuple{x, x}));
}

TEST(DatalogToHorn, RoundTripThroughPrograms) {
  auto d = corpus_datalog("example1-reach");
  auto back = so_horn_to_datalog(datalog_to_so_horn(d).output).output;
  for (const auto& s : structures(d.program.vocab, 2)) EXPECT_EQ(eval_query(back, s), eval_query(d, s));
}

TEST(DatalogToHorn, RejectsStratified) {
  EXPECT_THROW(datalog_to_so_horn(corpus_datalog("stratified-unreach")), Error);
}

TEST(DatalogToLfp, TransitiveClosure) {
  auto d = corpus_datalog("example1-reach");
  auto t = datalog_r_to_slfp(d);
  for (const auto& s : structures(d.program.vocab, 3))
    EXPECT_EQ(oracle::answers(t.output.formula, t.output.query, s), oracle::reachable(s));
}

TEST(DatalogToLfp, UniversalAtomKeptVerbatim) {
  auto d = program("vocab { rel E/2; }\ngoal Q\nR(x,y) :- E(x,y).\nQ(x) :- all y : R(y,x).\n");
  auto t = datalog_r_to_slfp(d);
  EXPECT_NE(print_formula(t.output.formula).find("forall y R(y,"), std::string::npos) << print_formula(t.output.formula);
}

TEST(LfpToDatalog, ReachabilityNormalForm) {
  auto in = corpus_formula("lfp-reach");
  auto t = lfp_normal_to_datalog_r(in);
  for (const auto& s : structures(in.vocab, 3))
    EXPECT_EQ(oracle::to_set(eval_query(t.output, s)), oracle::answers(in.formula, in.query, s));
}

TEST(LfpToDatalog, WithoutRecursionConvergesQuickly) {
  auto in = query("vocab { rel E/2; }\nquery u;\nlfp[Z/1; x]{ exists y E(x,y) }(u)\n");
  auto t = lfp_normal_to_datalog_r(in);
  for (const auto& s : structures(graph(), 3)) {
    EXPECT_EQ(oracle::to_set(eval_query(t.output, s)), oracle::answers(in.formula, in.query, s));
    EXPECT_LE(stage_count(t.output.program, s, t.output.goal), 1U + 3U);
  }
}

TEST(LfpToDatalog, RejectsNegativeOccurrence) {
  EXPECT_THROW(lfp_normal_to_datalog_r(query("vocab { rel E/2; }\nquery u;\nlfp[Z/1; x]{ !Z(x) }(u)\n")), Error);
}

TEST(FoToStratified, Shapes) {
  auto atomic = fo_to_s_datalog(query("vocab { rel E/2; }\nquery x,y;\nE(x,y)\n"));
  EXPECT_EQ(atomic.output.program.strata.size(), 1U);
  EXPECT_EQ(atomic.output.program.strata[0].size(), 1U);
  auto positive = fo_to_s_datalog(query("vocab { rel E/2; }\nquery x;\nexists y (E(x,y) & exists z E(y,z))\n"));
  EXPECT_EQ(positive.output.program.strata.size(), 1U);
  auto in = query("vocab { rel E/2; }\nquery x;\nforall y E(x,y)\n");
  auto t = fo_to_s_datalog(in);
  EXPECT_EQ(t.output.program.strata.size(), 2U);
  for (const auto& s : structures(graph(), 3))
    EXPECT_EQ(oracle::to_set(eval_query(t.output, s)), oracle::answers(in.formula, in.query, s));
}

TEST(StratifiedHorn, DepthOneMatchesPlainTranslation) {
  auto in = corpus_formula("horn-no-reach");
  auto a = horn_s_to_datalog(in).output;
  auto b = so_horn_to_datalog(in).output;
  for (const auto& s : structures(in.vocab, 2)) EXPECT_EQ(eval_query(a, s), eval_query(b, s));
}

TEST(StratifiedHorn, DepthTwo) {
  auto in = query("vocab { rel E/2; }\nexists R/1 forall x,y ((E(x,y) -> R(x)) & (R(x) & !(exists S/1 forall z "
                  "((E(z,x) -> S(z)) & (S(z) & E(z,z) -> false))) -> false))\n");
  EXPECT_EQ(horn_depth(in.formula), 2);
  auto t = horn_s_to_datalog(in);
  EXPECT_GE(t.output.program.strata.size(), 2U);
  for (const auto& s : structures(graph(), 3))
    EXPECT_EQ(eval_query(t.output, s).contains(Tuple{}), !eval_so_bruteforce(in.formula, s, {}));
}

TEST(StratifiedHorn, RoundTripOnSamples) {
  auto d = corpus_datalog("stratified-unreach");
  auto back = horn_s_to_datalog(datalog_s_to_horn(d).output).output;
  auto samples = sample_structures(d.program.vocab, 3, 40, 5);
  for (const auto& s : samples) EXPECT_EQ(eval_query(back, s), eval_query(d, s));
}

TEST(Sigma11, PushesExistentialIntoRelation) {
  auto in = query("vocab { rel E/2; }\nforall x exists y E(x,y)\n");
  auto t = sigma11_push_exists(in);
  SoFormula so = split_so_prefix(t.output.formula);
  ASSERT_EQ(so.prefix.size(), 1U);
  EXPECT_EQ(so.prefix[0].arity, 2);
  EXPECT_TRUE(so.existential());
  EXPECT_TRUE(harness::compare({in, std::nullopt}, {t.output, std::nullopt}, false).equivalent());
  auto universal = query("vocab { rel E/2; }\nforall x E(x,x)\n");
  EXPECT_EQ(sigma11_push_exists(universal).output.formula, universal.formula);
  EXPECT_THROW(sigma11_push_exists(query("vocab { rel E/2; }\nforall P/1 forall x exists y (P(x) | E(x,y))\n")),
               Error);
}

TEST(Pi11, ExampleBecomesExtendedHorn) {
  auto in = corpus_formula("pi11-example");
  auto t = pi11_to_ehorn_r(in);
  EXPECT_TRUE(fragments(t.output.formula).count(Fragment::SoEHornR));
  EXPECT_TRUE(harness::compare({in, std::nullopt}, {t.output, std::nullopt}, false).equivalent());
}

TEST(Pi11, FirstOrderInputHasNoUniversalPrefix) {
  auto in = query("vocab { rel E/2; }\nexists x forall y E(x,y)\n");
  auto t = pi11_to_ehorn_r(in);
  SoFormula so = split_so_prefix(t.output.formula);
  EXPECT_FALSE(so.prefix.empty());
  EXPECT_TRUE(so.existential());
  EXPECT_TRUE(harness::compare({in, std::nullopt}, {t.output, std::nullopt}, false).equivalent());
}
