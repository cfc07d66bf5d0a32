#include "hornlab/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "hornlab/error.hpp"

namespace hornlab {

Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  long declared_clauses = -1;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      long v = -1;
      if (!(ls >> fmt >> v >> declared_clauses) || fmt != "cnf" || v < 0 || declared_clauses < 0)
        throw ParseError("malformed DIMACS header, expected 'p cnf V C'", line_no, 1);
      if (header) throw ParseError("duplicate DIMACS header", line_no, 1);
      header = true;
      cnf.variables = static_cast<int>(v);
      continue;
    }
    if (!header) throw ParseError("clause before the 'p cnf' header", line_no, 1);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      char* end = nullptr;
      long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw ParseError("invalid literal '" + tok + "'", line_no, 1);
      if (lit == 0) {
        cnf.clauses.push_back(current);
        current.clear();
        continue;
      }
      long var = lit < 0 ? -lit : lit;
      if (var > cnf.variables) throw ParseError("literal " + tok + " exceeds the declared variable count", line_no, 1);
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!header) throw ParseError("missing 'p cnf' header", line_no, 1);
  if (!current.empty()) cnf.clauses.push_back(current);
  if (declared_clauses >= 0 && static_cast<long>(cnf.clauses.size()) != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(cnf.clauses.size()),
                     line_no, 1);
  return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

std::shared_ptr<const Vocabulary> cnf_vocabulary() {
  static const auto vocab = std::make_shared<const Vocabulary>(
      std::vector<RelationSymbol>{{"Cla", 1}, {"Var", 1}, {"P", 2}, {"N", 2}}, std::vector<std::string>{});
  return vocab;
}

Structure cnf_to_structure(const Cnf& cnf) {
  if (cnf.clauses.empty()) fail(ErrorKind::Invalid, "CNF has no clauses");
  int v = cnf.variables;
  for (const auto& clause : cnf.clauses)
    for (int lit : clause) v = std::max(v, lit < 0 ? -lit : lit);
  const int c = static_cast<int>(cnf.clauses.size());
  const int n = std::max(c, std::max(v, 1));
  Structure s(cnf_vocabulary(), n);
  for (int i = 0; i < c; ++i) s.relation("Cla").insert(Tuple{i});
  for (int j = 0; j < v; ++j) s.relation("Var").insert(Tuple{j});
  for (int i = 0; i < c; ++i) {
    for (int lit : cnf.clauses[static_cast<std::size_t>(i)]) {
      Tuple t{i, (lit < 0 ? -lit : lit) - 1};
      s.relation(lit > 0 ? "P" : "N").insert(t);
    }
  }
  return s;
}

bool brute_force_sat(const Cnf& cnf) {
  int v = cnf.variables;
  for (const auto& clause : cnf.clauses)
    for (int lit : clause) v = std::max(v, lit < 0 ? -lit : lit);
  if (v > 30) fail(ErrorKind::Budget, "too many variables for exhaustive satisfiability");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
    bool all = true;
    for (const auto& clause : cnf.clauses) {
      bool sat = false;
      for (int lit : clause) {
        int var = (lit < 0 ? -lit : lit) - 1;
        bool value = (mask >> var) & 1U;
        if (value == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace hornlab
