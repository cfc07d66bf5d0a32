#include <gtest/gtest.h>

#include <random>

#include "hornlab/corpus.hpp"
#include "hornlab/datalog.hpp"
#include "hornlab/enumerate.hpp"
#include "hornlab/error.hpp"
#include "hornlab/lfp.hpp"
#include "hornlab/text.hpp"
#include "oracle.hpp"

using namespace hornlab;

namespace {

Formula parse(const std::string& text) { return parse_formula(text); }

const char* kReach = "lfp[Z/2; x,y]{ E(x,y) | exists z (E(x,z) & Z(z,y)) }(u,v)";

std::shared_ptr<const Vocabulary> graph() { return parse_vocabulary("vocab { rel S/1; rel E/2; }"); }

}  // namespace

TEST(Positivity, Examples) {
  EXPECT_TRUE(check_positivity(parse(kReach)).empty());
  auto negated = check_positivity(parse("lfp[Z/1; x]{ !Z(x) }(u)"));
  ASSERT_EQ(negated.size(), 1U);
  EXPECT_EQ(negated[0].relation, "Z");
  EXPECT_EQ(negated[0].occurrence, parse("Z(x)"));
  EXPECT_EQ(check_positivity(parse("lfp[Z/1; x]{ Z(x) -> S(x) }(u)")).size(), 1U);
  EXPECT_TRUE(check_positivity(parse("lfp[Z/1; x]{ !!Z(x) }(u)")).empty());
  EXPECT_TRUE(check_positivity(parse("lfp[Z/1; x]{ (Z(x) -> S(x)) -> S(x) }(u)")).empty());
  EXPECT_EQ(check_positivity(parse("slfp[A/1; x : S(x) | B(x) ; B/1; x : !A(x) @ A](u)")).size(), 1U);
}

TEST(Positivity, NestedFixpointsAreCheckedSeparately) {
  Formula f = parse("lfp[Z/1; x]{ S(x) | exists y (E(x,y) & !lfp[W/1; w]{ E(w,w) | W(w) }(y) & Z(y)) }(u)");
  EXPECT_TRUE(check_positivity(f).empty());
  Formula g = parse("lfp[Z/1; x]{ S(x) | exists y (E(x,y) & lfp[W/1; w]{ !Z(w) | W(w) }(y)) }(u)");
  EXPECT_EQ(check_positivity(g).size(), 1U);
}

TEST(EvalLfp, Examples) {
  Structure a = parse_structure("vocab { rel E/2; }\ndomain 3\nE = { (0,1) (1,2) }\n");
  EXPECT_TRUE(eval_lfp(parse(kReach), a, {{"u", 0}, {"v", 2}}));
  EXPECT_FALSE(eval_lfp(parse(kReach), a, {{"u", 2}, {"v", 0}}));
  for (Element u = 0; u < 3; ++u) EXPECT_FALSE(eval_lfp(parse("lfp[Z/1; x]{ Z(x) }(u)"), a, {{"u", u}}));
  EXPECT_THROW(eval_lfp(parse("lfp[Z/1; x]{ !Z(x) }(u)"), a, {{"u", 0}}), Error);
}

TEST(EvalLfp, SimultaneousExampleOne) {
  auto d = corpus_datalog("example1-reach");
  Formula f = parse("slfp[R/2; x,y : E(x,y) | exists z (E(x,z) & R(z,y)) @ R](u,v)");
  auto v = d.program.vocab;
  for (int n = 1; n <= 3; ++n)
    StructureSpace(v, n).for_each([&](const Structure& a) {
      Relation expected = eval_query(d, a);
      for (Element u = 0; u < n; ++u)
        for (Element w = 0; w < n; ++w)
          EXPECT_EQ(eval_lfp(f, a, {{"u", u}, {"v", w}}), expected.contains(Tuple{u, w}));
      return !::testing::Test::HasFailure();
    });
}

TEST(EvalLfp, MatchesOracle) {
  const std::vector<std::string> texts = {
      kReach,
      "lfp[Z/1; x]{ S(x) | exists y (E(y,x) & Z(y)) }(u)",
      "lfp[Z/1; x]{ forall y (E(x,y) -> Z(y)) }(u)",
      "slfp[A/1; x : S(x) | exists y (E(y,x) & B(y)) ; B/1; x : exists y (E(y,x) & A(y)) @ B](u)",
      "exists w lfp[Z/2; x,y]{ x = y & S(x) | exists z (Z(x,z) & E(z,y)) }(u,w)",
      "!lfp[Z/1; x]{ S(x) & forall y (E(x,y) -> Z(y)) }(u)",
      "lfp[Z/1; x]{ S(x) | exists y (E(x,y) & !lfp[W/1; w]{ E(w,w) | exists t (E(w,t) & W(t)) }(y) & Z(y)) }(u)",
  };
  auto v = graph();
  for (const auto& t : texts) {
    Formula f = parse(t);
    auto params = free_variables(f);
    for (int n = 1; n <= 3; ++n)
      StructureSpace(v, n).for_each([&](const Structure& a) {
        for (const auto& tuple : oracle::all_tuples(n, static_cast<int>(params.size()))) {
          Assignment env;
          oracle::Env oenv;
          for (std::size_t i = 0; i < params.size(); ++i) env[params[i]] = oenv[params[i]] = tuple[i];
          EXPECT_EQ(eval_lfp(f, a, env), oracle::holds(f, a, oenv)) << t << "\n" << print_structure(a);
        }
        return !::testing::Test::HasFailure();
      });
  }
}

TEST(EvalLfp, CorpusFormulaIsReachability) {
  auto q = corpus_formula("lfp-reach");
  for (int n = 1; n <= 3; ++n)
    StructureSpace(q.vocab, n).for_each([&](const Structure& a) {
      auto expected = oracle::reachable(a);
      for (Element u = 0; u < n; ++u)
        for (Element w = 0; w < n; ++w)
          EXPECT_EQ(eval_lfp(q.formula, a, {{q.query[0], u}, {q.query[1], w}}), expected.count({u, w}) > 0);
      return !::testing::Test::HasFailure();
    });
}
