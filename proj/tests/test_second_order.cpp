#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "hornlab/cnf.hpp"
#include "hornlab/corpus.hpp"
#include "hornlab/enumerate.hpp"
#include "hornlab/error.hpp"
#include "hornlab/eval.hpp"
#include "hornlab/second_order.hpp"
#include "hornlab/text.hpp"
#include "oracle.hpp"

using namespace hornlab;

namespace {

Formula parse(const std::string& text) { return parse_formula(text); }

std::set<Fragment> fragments(const Formula& f) {
  std::set<Fragment> out;
  for (const auto& t : classify_fragment(f)) out.insert(t.fragment);
  return out;
}

/// The single clause of a normalized one-clause formula.
HornClause only_clause(const Formula& normalized) {
  SoFormula so = split_so_prefix(normalized);
  auto core = read_clausal(so.body, so.symbols());
  EXPECT_TRUE(core.has_value()) << print_formula(normalized);
  EXPECT_EQ(core->clauses.size(), 1U);
  return core->clauses.at(0);
}

void expect_same_truth(const Formula& a, const Formula& b, std::shared_ptr<const Vocabulary> v, int max_n = 3) {
  auto params = free_variables(a);
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Structure> structures;
    if (StructureSpace(v, n).size() <= 5000)
      StructureSpace(v, n).for_each([&](const Structure& s) {
        structures.push_back(s);
        return true;
      });
    else
      structures = sample_structures(v, n, 300, static_cast<std::uint64_t>(n));
    for (const auto& s : structures) {
      for (const auto& t : oracle::all_tuples(n, static_cast<int>(params.size()))) {
        Assignment env;
        for (std::size_t i = 0; i < params.size(); ++i) env[params[i]] = t[i];
        EXPECT_EQ(eval_so_bruteforce(a, s, env), eval_so_bruteforce(b, s, env))
            << print_formula(a) << "\nvs " << print_formula(b) << "\non " << print_structure(s);
      }
      if (::testing::Test::HasFailure()) return;
    }
  }
}

}  // namespace

TEST(SoPrefix, SplitsLeadingBlock) {
  SoFormula so = split_so_prefix(parse("exists R/1 forall T/2 forall x (R(x) | T(x,x))"));
  ASSERT_EQ(so.prefix.size(), 2U);
  EXPECT_EQ(so.prefix[0], (SoPrefixEntry{Quantifier::Exists, "R", 1}));
  EXPECT_EQ(so.prefix[1], (SoPrefixEntry{Quantifier::Forall, "T", 2}));
  EXPECT_FALSE(so.existential());
  EXPECT_EQ(so.existential_symbols(), (std::set<std::string>{"R"}));
  EXPECT_EQ(so.body.kind(), NodeKind::Forall);
}

TEST(Clausal, ReadsAlphasBetasAndHeads) {
  SoFormula so = split_so_prefix(parse("exists R/1 forall x,y ((S(x) -> R(x)) & (R(x) & E(x,y) -> R(y)) & (R(x) -> false))"));
  auto core = read_clausal(so.body, so.symbols());
  ASSERT_TRUE(core.has_value());
  EXPECT_EQ(core->vars, (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(core->clauses.size(), 3U);
  EXPECT_EQ(core->clauses[0].alphas.size(), 0U);
  EXPECT_EQ(core->clauses[0].betas.size(), 1U);
  EXPECT_EQ(core->clauses[1].alphas.size(), 1U);
  EXPECT_EQ(core->clauses[1].betas.size(), 1U);
  EXPECT_FALSE(core->clauses[2].head.has_value());
}

TEST(Clausal, RejectsTwoHeads) {
  SoFormula so = split_so_prefix(parse("exists R/1 forall x (S(x) -> R(x) | R(x))"));
  EXPECT_FALSE(read_clausal(so.body, so.symbols()).has_value());
}

TEST(NormalizeClauses, ContrapositionMovesFirstOrderLiteralIntoBody) {
  HornClause c = only_clause(normalize_clauses(parse("exists Y/1 forall x (!Y(x) -> Cla(x))")));
  ASSERT_TRUE(c.head.has_value());
  EXPECT_EQ(*c.head, parse("Y(x)"));
  EXPECT_TRUE(c.alphas.empty());
  ASSERT_EQ(c.betas.size(), 1U);
  EXPECT_EQ(c.betas[0], parse("!Cla(x)"));
}

TEST(NormalizeClauses, NegatedExistentialBecomesUniversalAlpha) {
  HornClause c = only_clause(normalize_clauses(parse("exists Y/1 forall x (exists z !Y(z))")));
  EXPECT_FALSE(c.head.has_value());
  ASSERT_EQ(c.alphas.size(), 1U);
  auto u = as_universal_atom(c.alphas[0]);
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->relation, "Y");
  EXPECT_EQ(u->bound.size(), 1U);
}

TEST(NormalizeClauses, NormalClauseUnchanged) {
  Formula f = parse("exists R/1 forall x,y ((S(x) -> R(x)) & (R(x) & E(x,y) -> R(y)))");
  Formula g = normalize_clauses(f);
  EXPECT_EQ(normalize_clauses(g), g);
  auto a = split_so_prefix(f), b = split_so_prefix(g);
  EXPECT_EQ(read_clausal(a.body, a.symbols())->clauses.size(), read_clausal(b.body, b.symbols())->clauses.size());
}

TEST(NormalizeClauses, RejectsTwoPositiveRelationDisjuncts) {
  EXPECT_THROW(normalize_clauses(parse("exists R/1 forall x (R(x) | R(x) & S(x) | !S(x))")), Error);
  EXPECT_THROW(normalize_clauses(parse("exists R/1 forall x (S(x) -> R(x) | R(x))")), Error);
}

TEST(NormalizeClauses, PreservesTruthOnCorpus) {
  for (const auto& item : corpus()) {
    if (item.kind != ArtifactKind::Formula) continue;
    auto q = corpus_formula(item.name);
    if (!contains_so_quantifier(q.formula)) continue;
    Formula g = normalize_clauses(q.formula);
    SCOPED_TRACE(item.name);
    expect_same_truth(q.formula, g, q.vocab);
  }
}

TEST(NormalizeClauses, PreservesTruthOnRandomHornSentences) {
  auto v = parse_vocabulary("vocab { rel S/1; rel E/2; }");
  std::mt19937_64 rng(12);
  for (int i = 0; i < 25; ++i) {
    Formula f = gen::random_horn_sentence(rng, *v);
    expect_same_truth(f, normalize_clauses(f), v, 2);
  }
}

TEST(Classify, SoHornExample) {
  auto tags = fragments(parse("exists R/1 forall x,y ((S(x) -> R(x)) & (R(x) & E(x,y) -> R(y)))"));
  for (auto f : {Fragment::SoHorn, Fragment::SoHornStar, Fragment::SoHornR, Fragment::SoHornStarR, Fragment::SoEHorn,
                 Fragment::SoEHornR})
    EXPECT_TRUE(tags.count(f)) << to_string(FragmentTag{f, 0});
}

TEST(Classify, UniversalAlphaNeedsR) {
  auto tags = fragments(parse("exists R/2 forall z ((forall y R(y,z)) -> false)"));
  EXPECT_TRUE(tags.count(Fragment::SoHornR));
  EXPECT_FALSE(tags.count(Fragment::SoHorn));
  EXPECT_TRUE(tags.count(Fragment::SoHornStarR));
  EXPECT_FALSE(tags.count(Fragment::SoHornStar));
}

TEST(Classify, FirstOrderBetaNeedsStar) {
  auto tags = fragments(parse("exists R/1 forall x ((exists y E(x,y)) -> R(x))"));
  EXPECT_TRUE(tags.count(Fragment::SoHornStar));
  EXPECT_FALSE(tags.count(Fragment::SoHorn));
}

TEST(Classify, UniversalRelationsMayBeNegatedInExtendedHorn) {
  auto tags = fragments(parse("forall P/1 exists R/1 forall x ((!P(x) -> R(x)) & (R(x) & S(x) -> false))"));
  EXPECT_TRUE(tags.count(Fragment::SoEHorn));
  EXPECT_FALSE(tags.count(Fragment::SoHorn));
  auto plain = fragments(parse("forall P/1 exists R/1 forall x ((P(x) -> R(x)) & (R(x) & S(x) -> false))"));
  EXPECT_TRUE(plain.count(Fragment::SoHorn));
  EXPECT_TRUE(plain.count(Fragment::SoEHorn));
}

TEST(Classify, PhiIsEHornRAfterNormalization) {
  auto phi = corpus_formula("phi-unsat").formula;
  auto tags = fragments(normalize_clauses(phi));
  EXPECT_TRUE(tags.count(Fragment::SoEHornR));
  EXPECT_FALSE(tags.count(Fragment::SoHorn));
  EXPECT_TRUE(fragments(phi).count(Fragment::GeneralSo));
}

TEST(Classify, NormalForms) {
  EXPECT_TRUE(is_sigma11_normal(parse("exists P/1 forall x exists y (P(x) -> E(x,y))")));
  EXPECT_FALSE(is_sigma11_normal(parse("forall P/1 forall x exists y (P(x) -> E(x,y))")));
  EXPECT_TRUE(is_pi11_normal(parse("forall P/1 exists x forall y (P(x) | !P(y))")));
  EXPECT_FALSE(is_pi11_normal(parse("forall P/1 forall y exists x (P(x) | !P(y))")));
}

TEST(Classify, MonotoneAlongInclusions) {
  std::vector<Formula> formulas;
  for (const auto& item : corpus())
    if (item.kind == ArtifactKind::Formula) {
      auto f = corpus_formula(item.name).formula;
      formulas.push_back(f);
      if (contains_so_quantifier(f)) formulas.push_back(normalize_clauses(f));
    }
  auto v = parse_vocabulary("vocab { rel S/1; rel E/2; }");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) formulas.push_back(gen::random_horn_sentence(rng, *v));
  for (const auto& f : formulas) {
    auto tags = fragments(f);
    SCOPED_TRACE(print_formula(f));
    if (tags.count(Fragment::SoHorn)) {
      EXPECT_TRUE(tags.count(Fragment::SoHornStar));
      EXPECT_TRUE(tags.count(Fragment::SoHornR));
    }
    if (tags.count(Fragment::SoHornR) || tags.count(Fragment::SoHornStar))
      EXPECT_TRUE(tags.count(Fragment::SoHornStarR));
    if (tags.count(Fragment::SoEHorn)) EXPECT_TRUE(tags.count(Fragment::SoEHornR));
  }
}

TEST(HornDepth, Strata) {
  EXPECT_EQ(horn_depth(parse("exists R/1 forall x (S(x) -> R(x))")), 1);
  EXPECT_EQ(horn_depth(parse("exists R/1 forall x,y ((E(x,y) -> R(x)) & (R(x) & !(exists S/1 forall z ((E(z,x) "
                             "-> S(z)) & (S(z) & E(z,z) -> false))) -> false))")),
            2);
  EXPECT_EQ(horn_depth(parse("exists R/1 forall x ((exists y E(x,y)) -> R(x))")), 0);
  EXPECT_EQ(horn_depth(parse("exists R/1 forall x (R(x) | R(x))")), 0);
}

TEST(EvalSo, Examples) {
  Structure a = parse_structure("vocab { rel E/2; }\ndomain 3\nE = { (0,1) }\n");
  EXPECT_TRUE(eval_so_bruteforce(parse("exists R/1 forall x R(x)"), a, {}));
  EXPECT_FALSE(eval_so_bruteforce(parse("forall P/1 exists x P(x)"), a, {}));
  Structure cnf = cnf_to_structure(Cnf{3, {{1, 3}, {2, -3}, {1, 2}}});
  EXPECT_FALSE(eval_so_bruteforce(corpus_formula("phi-unsat").formula, cnf, {}));
  Structure unsat = cnf_to_structure(Cnf{1, {{1}, {-1}}});
  EXPECT_TRUE(eval_so_bruteforce(corpus_formula("phi-unsat").formula, unsat, {}));
}

TEST(EvalSo, EmptyPrefixMatchesFirstOrder) {
  auto v = parse_vocabulary("vocab { rel S/1; rel E/2; }");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    Formula f = gen::random_fo(rng, *v, {"f0"}, 3, gen::pick(rng, 2, 8));
    Structure s = random_structure(v, gen::pick(rng, 1, 4), rng);
    for (Element e = 0; e < s.domain_size(); ++e)
      ASSERT_EQ(eval_so_bruteforce(f, s, {{"f0", e}}), eval_fo(f, s, {{"f0", e}})) << print_formula(f);
  }
}

TEST(EvalSo, MatchesOracle) {
  auto v = parse_vocabulary("vocab { rel S/1; rel E/2; }");
  std::mt19937_64 rng(9);
  std::vector<Formula> formulas;
  for (int i = 0; i < 40; ++i) formulas.push_back(gen::random_horn_sentence(rng, *v));
  formulas.push_back(parse("forall P/1 exists x forall y (P(x) | !P(y))"));
  formulas.push_back(parse("exists R/1 forall T/1 forall x ((T(x) -> R(x)) | S(x))"));
  formulas.push_back(parse("forall P/0 exists Q/1 (P | forall x (E(x,x) -> Q(x)) & exists y !Q(y))"));
  for (const auto& f : formulas)
    for (int n = 1; n <= 3; ++n) {
      auto structures = sample_structures(v, n, 12, static_cast<std::uint64_t>(n));
      for (const auto& s : structures) ASSERT_EQ(eval_so_bruteforce(f, s, {}), oracle::holds(f, s)) << print_formula(f);
    }
}

TEST(EvalSo, BudgetExceededReportsRequirement) {
  Structure a = parse_structure("vocab { rel E/2; }\ndomain 3\nE = { }\n");
  Formula f = parse("exists R/2 exists T/2 forall x (R(x,x) | T(x,x))");
  try {
    eval_so_bruteforce(f, a, {}, 1000);
    FAIL() << "expected a budget failure";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), 262144.0L);
  }
  EXPECT_NO_THROW(eval_so_bruteforce(f, a, {}, 262144));
}
