#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hornlab/structure.hpp"

namespace hornlab {

/// Propositional CNF; literal k > 0 is variable k, -k its negation.
struct Cnf {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
};

/// DIMACS reader: `c` comment lines, a `p cnf V C` header, 0-terminated clauses.
Cnf parse_dimacs(const std::string& text);

std::string to_dimacs(const Cnf& cnf);

/// Vocabulary {Cla/1, Var/1, P/2, N/2} used by the clause encoding.
std::shared_ptr<const Vocabulary> cnf_vocabulary();

/// Clause i and variable j become elements i-1 and j-1 of a domain of size max(c, v);
/// P(i,j) when j occurs positively in clause i, N(i,j) when negatively.
Structure cnf_to_structure(const Cnf& cnf);

/// Exhaustive satisfiability over all 2^v assignments.
bool brute_force_sat(const Cnf& cnf);

}  // namespace hornlab
