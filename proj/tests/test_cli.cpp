#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "harness.hpp"
#include "hornlab/corpus.hpp"
#include "hornlab/text.hpp"
#include "transform_inputs.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stdout captured and stderr folded in.
Run cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + HORNLAB_CLI + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hornlab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

const char* kPath3 = "vocab { rel E/2; const s; const t; }\ndomain 3\nE = { (0,1) (1,2) }\ns = 0\nt = 2\n";

std::set<std::string> tuples_of(const std::string& set_text) {
  std::set<std::string> out;
  std::size_t pos = 0;
  while ((pos = set_text.find('(', pos)) != std::string::npos) {
    auto end = set_text.find(')', pos);
    out.insert(set_text.substr(pos, end - pos + 1));
    pos = end;
  }
  return out;
}

}  // namespace

TEST_F(Cli, RunDatalogExampleOne) {
  auto program = file("e1.dl", hornlab::corpus_item("example1").text);
  auto s = file("p3.st", kPath3);
  auto r = cli("run-datalog --program " + program + " --structure " + s);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("R = { (0,1) (0,2) (1,2) }"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Q=TRUE"), std::string::npos) << r.out;
}

TEST_F(Cli, TraceStagesAreMonotone) {
  auto program = file("e2.dl", hornlab::corpus_item("example2").text);
  auto s = file("g.st", "vocab { rel E/2; }\ndomain 4\nE = { (0,1) (1,2) (2,3) (3,0) (1,1) }\n");
  auto r = cli("--machine run-datalog --trace-stages --program " + program + " --structure " + s);
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  std::map<std::string, std::set<std::string>> previous;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("trace.", 0) != 0) continue;
    ++rows;
    std::string row = line.substr(line.find('=') + 1);
    std::istringstream parts(row);
    std::string part;
    while (std::getline(parts, part, ';')) {
      auto eq = part.find('=');
      std::string name = part.substr(0, eq);
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      auto now = tuples_of(part.substr(eq + 1));
      for (const auto& t : previous[name]) EXPECT_TRUE(now.count(t)) << name << " lost " << t;
      previous[name] = now;
    }
  }
  EXPECT_GT(rows, 2U);
  EXPECT_EQ(previous["Q"], (std::set<std::string>{"(0)", "(1)", "(2)", "(3)"}));
}

TEST_F(Cli, TranslateThenEquiv) {
  auto in = file("phi.fo", "vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n");
  auto vocab = file("v.txt", "vocab { rel E/2; }\n");
  auto t = cli("translate --rule fo2dlr --in " + in + " --out " + path("out.dl"));
  ASSERT_EQ(t.code, 0) << t.out;
  auto r = cli("equiv --a " + in + " --b " + path("out.dl") + " --vocab " + vocab + " --max-size 3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("equivalent-up-to-budget"), std::string::npos) << r.out;
}

TEST_F(Cli, ParseClassifiesUnsatisfiabilityFormula) {
  auto phi = file("phi.so", hornlab::corpus_item("phi-unsat").text);
  auto r = cli("parse --kind so " + phi);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("SO-EHORN^r"), std::string::npos) << r.out;
}

TEST_F(Cli, ExitCodes) {
  auto bad = file("bad.fo", "vocab { rel E/2; }\nexists y (E(x,y)\n");
  auto r = cli("parse --kind fo " + bad);
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("line 3, column 1"), std::string::npos) << r.out;

  EXPECT_EQ(cli("no-such-command").code, 2);
  EXPECT_EQ(cli("parse --kind fo " + path("missing.fo")).code, 2);

  auto a = file("a.fo", "vocab { rel E/2; }\nquery x;\nexists y E(x,y)\n");
  auto b = file("b.fo", "vocab { rel E/2; }\nquery x;\nforall y E(x,y)\n");
  auto cex = cli("equiv --a " + a + " --b " + b + " --max-size 3");
  EXPECT_EQ(cex.code, 1) << cex.out;
  EXPECT_NE(cex.out.find("counterexample"), std::string::npos) << cex.out;

  auto acyclic = file("acyclic.so", hornlab::corpus_item("horn-acyclic").text);
  auto s = file("empty3.st", "vocab { rel E/2; }\ndomain 3\nE = { }\n");
  EXPECT_EQ(cli("eval --formula " + acyclic + " --structure " + s + " --budget 100").code, 3);
  EXPECT_EQ(cli("eval --formula " + acyclic + " --structure " + s, "HORNLAB_BUDGET=100").code, 3);
  auto ok = cli("eval --formula " + acyclic + " --structure " + s);
  EXPECT_EQ(ok.code, 0) << ok.out;

  auto example2 = file("e2.dl", hornlab::corpus_item("example2").text);
  EXPECT_EQ(cli("closure --in " + example2 + " --direction ext --trials 200 --seed 1").code, 1);
  auto horn = file("h.so", hornlab::corpus_item("horn-no-reach").text);
  EXPECT_EQ(cli("closure --in " + horn + " --direction sub --trials 50 --seed 1").code, 0);
}

TEST_F(Cli, EvalWithAssignment) {
  auto f = file("f.fo", "vocab { rel E/2; }\nquery x,y;\nE(x,y) & !E(y,x)\n");
  auto s = file("s.st", "vocab { rel E/2; }\ndomain 2\nE = { (0,1) }\n");
  auto yes = cli("--machine eval --formula " + f + " --structure " + s + " --assign x=0,y=1");
  EXPECT_EQ(yes.code, 0) << yes.out;
  EXPECT_NE(yes.out.find("value=true"), std::string::npos) << yes.out;
  auto no = cli("--machine eval --formula " + f + " --structure " + s + " --assign x=1,y=0");
  EXPECT_NE(no.out.find("value=false"), std::string::npos) << no.out;
  auto all = cli("--machine eval --formula " + f + " --structure " + s);
  EXPECT_NE(all.out.find("answers=(0,1)"), std::string::npos) << all.out;
  EXPECT_EQ(cli("eval --formula " + f + " --structure " + s + " --assign z=0").code, 2);
}

TEST_F(Cli, CorpusEmitsEveryItemAndEachReparses) {
  auto list = cli("corpus --list");
  ASSERT_EQ(list.code, 0);
  for (const auto& item : hornlab::corpus()) {
    SCOPED_TRACE(item.name);
    EXPECT_NE(list.out.find(item.name), std::string::npos);
    auto out = path(item.name + ".txt");
    ASSERT_EQ(cli("corpus --emit " + item.name + " --out " + out).code, 0);
    std::string text = read(out);
    auto emitted = harness::parse_artifact(text);
    auto source = harness::parse_artifact(item.text);
    EXPECT_EQ(emitted.text(), text);
    ASSERT_EQ(static_cast<bool>(emitted.formula), static_cast<bool>(source.formula));
    if (source.formula) {
      EXPECT_EQ(emitted.formula->formula, source.formula->formula);
      EXPECT_EQ(emitted.formula->query, source.formula->query);
    } else {
      EXPECT_EQ(emitted.datalog->program.strata, source.datalog->program.strata);
      EXPECT_EQ(emitted.datalog->goal, source.datalog->goal);
    }
    EXPECT_EQ(cli("parse " + out).code, 0);
  }
  EXPECT_EQ(cli("corpus --emit no-such-item").code, 2);
}

TEST_F(Cli, TranslatedFilesReparse) {
  for (const auto& r : inputs::all()) {
    for (std::size_t i = 0; i < 2 && i < r.texts.size(); ++i) {
      SCOPED_TRACE(r.rule + " input " + std::to_string(i));
      auto in = file("in.txt", r.texts[i]);
      auto out = path("out.txt");
      auto run = cli("translate --rule " + r.rule + " --in " + in + " --out " + out);
      ASSERT_EQ(run.code, 0) << run.out;
      std::string text = read(out);
      auto expected = harness::apply_rule(r.rule, harness::parse_artifact(r.texts[i])).output;
      EXPECT_EQ(text, expected.text());
      auto again = harness::parse_artifact(text);
      EXPECT_EQ(again.text(), text);
      if (expected.formula) EXPECT_EQ(again.formula->formula, expected.formula->formula);
    }
  }
}

TEST_F(Cli, CnfEncodeOutputReparses) {
  auto dimacs = file("c.cnf", "c example\np cnf 3 2\n1 -2 0\n2 3 0\n");
  auto out = path("c.st");
  auto r = cli("cnf-encode --dimacs " + dimacs + " --out " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  std::string text = read(out);
  auto s = hornlab::parse_structure(text);
  EXPECT_EQ(hornlab::print_structure(s), text);
  auto phi = file("phi.so", hornlab::corpus_item("phi-unsat").text);
  auto sat = cli("--machine eval --formula " + phi + " --structure " + out);
  EXPECT_NE(sat.out.find("value=false"), std::string::npos) << sat.out;
  auto unsat = file("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  ASSERT_EQ(cli("cnf-encode --dimacs " + unsat + " --out " + path("u.st")).code, 0);
  auto holds = cli("--machine eval --formula " + phi + " --structure " + path("u.st"));
  EXPECT_NE(holds.out.find("value=true"), std::string::npos) << holds.out;
  EXPECT_EQ(cli("cnf-encode --dimacs " + file("bad.cnf", "p cnf 1 1\n2 0\n")).code, 2);
}

TEST_F(Cli, MachineReportHeader) {
  auto r = cli("--machine corpus --list");
  EXPECT_EQ(r.out.rfind("hornlab-report 1\n", 0), 0U) << r.out;
  EXPECT_NE(r.out.find("status=0"), std::string::npos);
}
