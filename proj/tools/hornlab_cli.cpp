// hornlab command-line tool. Exit codes: 0 ok, 1 violation or counterexample,
// 2 usage or parse error, 3 budget exceeded.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hornlab/hornlab.h"

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

struct Output {
  bool machine = false;
  std::string out_path;
};

/// Prints a command result. An artifact goes to --out when given, else to stdout
/// with the report moved to stderr so the artifact can be piped.
int emit(int status, hornlab_result* r, const Output& o, bool has_artifact) {
  if (!r) {
    std::cerr << "error: " << hornlab_last_error() << "\n";
    return status;
  }
  const char* artifact = has_artifact ? hornlab_result_output(r) : nullptr;
  const std::string report = o.machine ? hornlab_result_report(r) : hornlab_result_text(r);
  if (artifact && o.out_path.empty()) {
    std::cout << artifact;
    std::cerr << report;
  } else {
    if (artifact) spill(o.out_path, artifact);
    std::cout << report;
  }
  hornlab_result_free(r);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hornlab: Horn fragments of second-order logic, Datalog, and fixed points on finite structures"};
  app.require_subcommand(1);
  Output o;
  app.add_flag("--machine", o.machine, "print the key=value report instead of the human-readable one");
  double budget = hornlab_default_budget();
  std::function<int()> action;

  auto* parse = app.add_subcommand("parse", "validate an artifact and print its classification");
  std::string kind, file;
  parse->add_option("--kind", kind, "fo, so, lfp, datalog, or structure")
      ->check(CLI::IsMember({"fo", "so", "lfp", "datalog", "structure"}));
  parse->add_option("file", file, "input file, - for stdin")->required();
  parse->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_parse(slurp(file).c_str(), kind.empty() ? nullptr : kind.c_str(), &r);
      return emit(s, r, o, false);
    };
  });

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a structure");
  std::string formula_file, structure_file, assign;
  eval->add_option("--formula", formula_file)->required();
  eval->add_option("--structure", structure_file)->required();
  eval->add_option("--assign", assign, "values for free variables, e.g. x=0,y=2");
  eval->add_option("--budget", budget, "second-order assignment budget");
  eval->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_eval(slurp(formula_file).c_str(), slurp(structure_file).c_str(), assign.c_str(), budget, &r);
      return emit(s, r, o, false);
    };
  });

  auto* run = app.add_subcommand("run-datalog", "compute the fixed point of a program on a structure");
  std::string program_file;
  bool trace = false;
  run->add_option("--program", program_file)->required();
  run->add_option("--structure", structure_file)->required();
  run->add_flag("--trace-stages", trace, "print every stage");
  run->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_run_datalog(slurp(program_file).c_str(), slurp(structure_file).c_str(), trace ? 1 : 0, &r);
      return emit(s, r, o, false);
    };
  });

  auto* translate = app.add_subcommand("translate", "apply a translation rule");
  std::string rule, in_file;
  translate->add_option("--rule", rule)
      ->required()
      ->check(CLI::IsMember({"lemma1", "prop1", "fo2dlr", "star2r", "horn2dl", "dl2horn", "dlr2lfp", "lfp2dlr",
                             "fo2sdl", "sdl-horn", "sig11", "pi11-ehorn"}));
  translate->add_option("--in", in_file)->required();
  translate->add_option("--out", o.out_path);
  translate->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_translate(rule.c_str(), slurp(in_file).c_str(), &r);
      return emit(s, r, o, true);
    };
  });

  auto* equiv = app.add_subcommand("equiv", "compare two formulas or programs on all small structures");
  std::string a_file, b_file, vocab_file;
  int max_size = 3;
  std::size_t samples = 0;
  unsigned long long seed = 1;
  equiv->add_option("--a", a_file)->required();
  equiv->add_option("--b", b_file)->required();
  equiv->add_option("--vocab", vocab_file, "vocabulary; defaults to the union of both inputs");
  equiv->add_option("--max-size", max_size)->required()->check(CLI::PositiveNumber);
  equiv->add_option("--samples", samples, "random structures per size; 0 enumerates all");
  equiv->add_option("--seed", seed);
  equiv->add_option("--budget", budget, "second-order assignment budget");
  equiv->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      const std::string vocab = vocab_file.empty() ? "" : slurp(vocab_file);
      int s = hornlab_cmd_equiv(slurp(a_file).c_str(), slurp(b_file).c_str(), vocab.c_str(), max_size, samples, seed,
                                budget, &r);
      return emit(s, r, o, false);
    };
  });

  auto* closure = app.add_subcommand("closure", "test preservation under substructures or extensions");
  std::string direction;
  std::size_t trials = 200;
  int closure_size = 4;
  closure->add_option("--in", in_file)->required();
  closure->add_option("--direction", direction)->required()->check(CLI::IsMember({"sub", "ext"}));
  closure->add_option("--trials", trials);
  closure->add_option("--seed", seed);
  closure->add_option("--max-size", closure_size)->check(CLI::PositiveNumber);
  closure->add_option("--budget", budget, "second-order assignment budget");
  closure->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_closure(slurp(in_file).c_str(), direction.c_str(), trials, seed, closure_size, budget, &r);
      return emit(s, r, o, false);
    };
  });

  auto* cnf = app.add_subcommand("cnf-encode", "encode a DIMACS CNF as a structure");
  std::string dimacs_file;
  cnf->add_option("--dimacs", dimacs_file)->required();
  cnf->add_option("--out", o.out_path);
  cnf->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_cnf_encode(slurp(dimacs_file).c_str(), &r);
      return emit(s, r, o, true);
    };
  });

  auto* corpus = app.add_subcommand("corpus", "list or emit the built-in examples");
  bool list = false;
  std::string name;
  auto* list_opt = corpus->add_flag("--list", list);
  corpus->add_option("--emit", name)->excludes(list_opt);
  corpus->add_option("--out", o.out_path);
  corpus->callback([&] {
    action = [&] {
      hornlab_result* r = nullptr;
      int s = hornlab_cmd_corpus(name.empty() ? nullptr : name.c_str(), &r);
      return emit(s, r, o, !name.empty());
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
