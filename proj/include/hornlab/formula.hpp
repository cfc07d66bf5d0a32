#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hornlab {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;

  static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  bool is_var() const { return kind == Kind::Variable; }
  auto operator<=>(const Term&) const = default;
};

std::vector<Term> vars(std::initializer_list<const char*> names);
std::vector<Term> vars(const std::vector<std::string>& names);

enum class NodeKind : std::uint8_t {
  True,
  False,
  Atom,      // R(t1..tk); R is a vocabulary symbol or a bound relation variable
  Equal,     // t1 = t2
  Not,
  And,
  Or,
  Implies,
  Forall,    // first-order
  Exists,
  SoForall,  // second-order, binds a relation variable of fixed arity
  SoExists,
  Lfp,       // [LFP_{x̄,Z} φ](t̄)
  Slfp,      // simultaneous system, one designated component queried at t̄
};

struct FormulaNode;
struct FixpointComponent;

/// Immutable formula AST with value semantics (shared subtrees).
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string relation, std::vector<Term> args = {});
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula f);
  /// Zero children give ⊤ (resp. ⊥) and one child is returned as is.
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula forall(const std::vector<std::string>& vars, Formula body);
  static Formula exists(const std::vector<std::string>& vars, Formula body);
  static Formula so_forall(std::string relation, int arity, Formula body);
  static Formula so_exists(std::string relation, int arity, Formula body);
  static Formula lfp(FixpointComponent component, std::vector<Term> args);
  static Formula slfp(std::vector<FixpointComponent> components, std::size_t designated, std::vector<Term> args);

  static Formula all_of(std::vector<Formula> fs);
  static Formula any_of(std::vector<Formula> fs);

  NodeKind kind() const;
  /// Relation name (Atom, So*), variable name (Forall/Exists).
  const std::string& symbol() const;
  /// Arity of the relation variable bound by So* nodes.
  int arity() const;
  /// Arguments of Atom/Lfp/Slfp; the two sides of Equal.
  const std::vector<Term>& terms() const;
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i = 0) const { return children()[i]; }
  const std::vector<FixpointComponent>& components() const;
  std::size_t designated() const;

  bool is_quantifier() const { return kind() == NodeKind::Forall || kind() == NodeKind::Exists; }
  bool is_so_quantifier() const { return kind() == NodeKind::SoForall || kind() == NodeKind::SoExists; }
  bool is_fixpoint() const { return kind() == NodeKind::Lfp || kind() == NodeKind::Slfp; }
  bool is_literal() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  friend struct FormulaFactory;
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FixpointComponent {
  std::string relation;
  std::vector<std::string> vars;
  Formula body;
  bool operator==(const FixpointComponent&) const = default;
};

struct FormulaNode {
  NodeKind kind;
  std::string symbol;
  int arity = 0;
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::vector<FixpointComponent> components;
  std::size_t designated = 0;
};

// ---------------------------------------------------------------------------
// Syntactic queries and rewrites.

/// Free first-order variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

/// Relation symbols occurring free (not bound by an SO quantifier or fixpoint), with arity.
std::map<std::string, int> free_relations(const Formula& f);

/// True if any free occurrence of a relation in `symbols` appears in f.
bool mentions_any(const Formula& f, const std::set<std::string>& symbols);

/// Every identifier used anywhere (variables, relations, constants); feeds fresh-name generation.
std::set<std::string> all_names(const Formula& f);

int quantifier_rank(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool contains_so_quantifier(const Formula& f);
bool contains_fixpoint(const Formula& f);

/// Capture-avoiding substitution of terms for free variables.
Formula substitute(const Formula& f, const std::map<std::string, Term>& subst);

/// Rename variable binders whose names occur in `avoid` to fresh names.
Formula rename_bound_apart(const Formula& f, const std::set<std::string>& avoid);

/// Replace every free occurrence of relation atom `relation(t̄)` by `fn(t̄)`.
/// Binders of variables in `introduced` are renamed first, so variables that
/// `fn` introduces cannot be captured.
Formula replace_atoms(const Formula& f, const std::string& relation,
                      const std::function<Formula(const std::vector<Term>&)>& fn,
                      const std::set<std::string>& introduced = {});

/// Rename a free relation symbol.
Formula rename_relation(const Formula& f, const std::string& from, const std::string& to);

/// Negation normal form: implications removed, negations pushed onto atoms.
Formula to_nnf(const Formula& f);

/// Simplify ¬¬φ and ¬⊤/¬⊥ at the root only.
Formula negate(const Formula& f);

/// Component-wise tuple equality/inequality.
Formula tuple_equal(const std::vector<Term>& a, const std::vector<Term>& b);
Formula tuple_not_equal(const std::vector<Term>& a, const std::vector<Term>& b);

}  // namespace hornlab
