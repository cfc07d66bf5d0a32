#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hornlab/formula.hpp"
#include "hornlab/normal_form.hpp"

namespace hornlab {

struct SoPrefixEntry {
  Quantifier quantifier;
  std::string relation;
  int arity = 0;
  bool operator==(const SoPrefixEntry&) const = default;
};

/// A formula split into its leading second-order quantifier block and the rest.
struct SoFormula {
  std::vector<SoPrefixEntry> prefix;
  Formula body;
  Formula to_formula() const;
  std::set<std::string> symbols() const;
  std::set<std::string> existential_symbols() const;
  bool existential() const;
};

SoFormula split_so_prefix(const Formula& f);

/// α₁ ∧ … ∧ α_l ∧ β₁ ∧ … ∧ β_q → H. Alphas are atoms or ∀-atoms over basis
/// symbols; betas avoid basis symbols; the head is a basis atom or ⊥.
struct HornClause {
  std::vector<Formula> alphas;
  std::vector<Formula> betas;
  std::optional<Formula> head;  // nullopt is ⊥
  /// Body elements in their original order (alphas and betas interleaved).
  std::vector<Formula> body;
  Formula to_formula() const;
};

/// ∀x̄ (C₁ ∧ … ∧ C_n).
struct ClausalCore {
  std::vector<std::string> vars;
  std::vector<HornClause> clauses;
  Formula to_formula() const;
};

/// A ∀-atom ∀ȳ R(t̄): every bound variable occurs exactly once among the arguments.
struct UniversalAtom {
  std::vector<std::string> bound;
  std::string relation;
  std::vector<Term> args;
};
std::optional<UniversalAtom> as_universal_atom(const Formula& f);
Formula universal_atom(const std::vector<std::string>& bound, const std::string& relation, std::vector<Term> args);

/// Literal reading of `body` as ∀x̄ ⋀ clauses with respect to `basis`; no rewriting.
std::optional<ClausalCore> read_clausal(const Formula& body, const std::set<std::string>& basis);

/// Rewrites every conjunct into Horn shape by contraposition against the prefix
/// symbols (or, failing that, the existential ones). Output shape:
/// prefix ∀x̄ ⋀ (body → head | false). Throws Shape when a conjunct has two
/// positive quantified-relation disjuncts or uses a quantified relation inside
/// a non-decomposable subformula.
Formula normalize_clauses(const Formula& phi);

enum class Fragment : std::uint8_t {
  SoHorn,
  SoHornStar,
  SoHornR,
  SoHornStarR,
  SoEHorn,
  SoEHornR,
  SoHornS,
  Sigma11Normal,
  Pi11Normal,
  GeneralSo,
};

struct FragmentTag {
  Fragment fragment;
  int depth = 0;  // stratification depth for SoHornS
  auto operator<=>(const FragmentTag&) const = default;
};

std::string to_string(const FragmentTag& tag);

/// Every fragment whose syntactic conditions phi meets, read literally.
std::set<FragmentTag> classify_fragment(const Formula& phi);

bool has_tag(const std::set<FragmentTag>& tags, Fragment f);

/// Least s with phi in SO-HORN_s, or 0 when phi is not stratified Horn.
int horn_depth(const Formula& phi);

bool is_sigma11_normal(const Formula& phi);
bool is_pi11_normal(const Formula& phi);

}  // namespace hornlab
