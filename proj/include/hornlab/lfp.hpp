#pragma once

#include <string>
#include <vector>

#include "hornlab/eval.hpp"
#include "hornlab/formula.hpp"
#include "hornlab/structure.hpp"

namespace hornlab {

/// A fixed-point relation variable occurring under an odd number of negations
/// (implication antecedents count as one) inside its defining system.
struct PositivityViolation {
  std::string relation;
  Formula occurrence;  // the negative atom
};

std::vector<PositivityViolation> check_positivity(const Formula& phi);

/// Least-fixed-point semantics; throws Invalid when positivity fails.
bool eval_lfp(const Formula& phi, const Structure& a, const Assignment& env);

}  // namespace hornlab
