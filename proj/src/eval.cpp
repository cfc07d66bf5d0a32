#include "hornlab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hornlab/error.hpp"

namespace hornlab {

namespace {

struct TermRef {
  bool is_var = true;
  int index = 0;  // variable slot or constant index
};

struct CompiledComponent {
  int rel_slot = 0;
  int arity = 0;
  std::vector<int> var_slots;
  int body = 0;
};

struct Node {
  NodeKind kind = NodeKind::True;
  int slot = 0;             // bound variable slot, or bound relation slot for SO nodes
  int arity = 0;            // relation arity for SO nodes and atoms
  bool rel_is_slot = false; // atom refers to a bound relation variable
  int rel = 0;              // structure relation index or relation slot
  std::vector<TermRef> terms;
  std::vector<int> kids;
  std::vector<CompiledComponent> comps;
  int designated = 0;
  int cache = -1;
  std::vector<int> free_var_slots;
  std::vector<int> free_rel_slots;
};

}  // namespace

struct CompiledProgram {
  std::vector<Node> nodes;
  int root = 0;
  int var_slots = 0;
  std::vector<int> rel_arity;  // per relation slot
  std::vector<int> so_arities; // every SO quantifier, for budget accounting
  int caches = 0;
};

namespace {

struct FreeSets {
  std::set<int> vars;
  std::set<int> rels;
};

class Compiler {
 public:
  Compiler(CompiledProgram& prog, const Vocabulary& vocab) : prog_(prog), vocab_(vocab) {}

  void bind_param(const std::string& name) { vars_.emplace_back(name, prog_.var_slots++); }

  int compile(const Formula& f, FreeSets& fs) {
    Node node;
    node.kind = f.kind();
    switch (f.kind()) {
      case NodeKind::True:
      case NodeKind::False:
        break;
      case NodeKind::Atom: {
        const std::string& name = f.symbol();
        int arity = static_cast<int>(f.terms().size());
        auto it = std::find_if(rels_.rbegin(), rels_.rend(), [&](const auto& r) { return r.name == name; });
        if (it != rels_.rend()) {
          if (it->arity != arity) arity_error(name, it->arity, arity);
          node.rel_is_slot = true;
          node.rel = it->slot;
          fs.rels.insert(it->slot);
        } else if (auto idx = vocab_.relation_index(name)) {
          int declared = vocab_.relations()[*idx].arity;
          if (declared != arity) arity_error(name, declared, arity);
          node.rel = static_cast<int>(*idx);
        } else {
          fail(ErrorKind::Invalid, "unknown relation symbol '" + name + "'");
        }
        node.arity = arity;
        for (const auto& t : f.terms()) node.terms.push_back(term(t, fs));
        break;
      }
      case NodeKind::Equal:
        for (const auto& t : f.terms()) node.terms.push_back(term(t, fs));
        break;
      case NodeKind::Not:
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Implies:
        for (const auto& c : f.children()) node.kids.push_back(compile(c, fs));
        break;
      case NodeKind::Forall:
      case NodeKind::Exists: {
        node.slot = prog_.var_slots++;
        vars_.emplace_back(f.symbol(), node.slot);
        FreeSets inner;
        node.kids.push_back(compile(f.child(), inner));
        vars_.pop_back();
        inner.vars.erase(node.slot);
        merge(fs, inner);
        break;
      }
      case NodeKind::SoForall:
      case NodeKind::SoExists: {
        node.slot = new_rel_slot(f.arity());
        node.arity = f.arity();
        prog_.so_arities.push_back(f.arity());
        rels_.push_back({f.symbol(), node.slot, f.arity()});
        FreeSets inner;
        node.kids.push_back(compile(f.child(), inner));
        rels_.pop_back();
        inner.rels.erase(node.slot);
        merge(fs, inner);
        break;
      }
      case NodeKind::Lfp:
      case NodeKind::Slfp: {
        const auto& comps = f.components();
        for (const auto& c : comps) {
          CompiledComponent cc;
          cc.arity = static_cast<int>(c.vars.size());
          cc.rel_slot = new_rel_slot(cc.arity);
          node.comps.push_back(cc);
        }
        for (std::size_t i = 0; i < comps.size(); ++i)
          rels_.push_back({comps[i].relation, node.comps[i].rel_slot, node.comps[i].arity});
        FreeSets inner;
        for (std::size_t i = 0; i < comps.size(); ++i) {
          auto& cc = node.comps[i];
          for (const auto& v : comps[i].vars) {
            cc.var_slots.push_back(prog_.var_slots++);
            vars_.emplace_back(v, cc.var_slots.back());
          }
          FreeSets body_fs;
          cc.body = compile(comps[i].body, body_fs);
          vars_.resize(vars_.size() - comps[i].vars.size());
          for (int s : cc.var_slots) body_fs.vars.erase(s);
          merge(inner, body_fs);
        }
        rels_.resize(rels_.size() - comps.size());
        for (const auto& cc : node.comps) inner.rels.erase(cc.rel_slot);
        node.designated = static_cast<int>(f.designated());
        int arity = node.comps[node.designated].arity;
        if (static_cast<int>(f.terms().size()) != arity)
          fail(ErrorKind::Invalid, "fixed-point argument tuple has wrong length");
        node.free_var_slots.assign(inner.vars.begin(), inner.vars.end());
        node.free_rel_slots.assign(inner.rels.begin(), inner.rels.end());
        node.cache = prog_.caches++;
        merge(fs, inner);
        for (const auto& t : f.terms()) node.terms.push_back(term(t, fs));
        break;
      }
    }
    prog_.nodes.push_back(std::move(node));
    return static_cast<int>(prog_.nodes.size()) - 1;
  }

 private:
  struct BoundRel {
    std::string name;
    int slot;
    int arity;
  };

  static void merge(FreeSets& into, const FreeSets& from) {
    into.vars.insert(from.vars.begin(), from.vars.end());
    into.rels.insert(from.rels.begin(), from.rels.end());
  }

  [[noreturn]] static void arity_error(const std::string& name, int expected, int got) {
    std::ostringstream os;
    os << "relation '" << name << "' has arity " << expected << " but is applied to " << got << " arguments";
    fail(ErrorKind::Invalid, os.str());
  }

  int new_rel_slot(int arity) {
    prog_.rel_arity.push_back(arity);
    return static_cast<int>(prog_.rel_arity.size()) - 1;
  }

  TermRef term(const Term& t, FreeSets& fs) {
    if (t.is_var()) {
      auto it = std::find_if(vars_.rbegin(), vars_.rend(), [&](const auto& v) { return v.first == t.name; });
      if (it != vars_.rend()) {
        fs.vars.insert(it->second);
        return {true, it->second};
      }
    }
    if (auto c = vocab_.constant_index(t.name)) return {false, static_cast<int>(*c)};
    if (t.is_var()) fail(ErrorKind::Invalid, "unbound free variable '" + t.name + "'");
    fail(ErrorKind::Invalid, "unknown constant symbol '" + t.name + "'");
  }

  CompiledProgram& prog_;
  const Vocabulary& vocab_;
  std::vector<std::pair<std::string, int>> vars_;
  std::vector<BoundRel> rels_;
};

class Evaluator {
 public:
  Evaluator(const CompiledProgram& prog, const Structure& a)
      : prog_(prog), a_(a), n_(a.domain_size()), vars_(prog.var_slots, 0), versions_(prog.rel_arity.size(), 0),
        caches_(prog.caches) {
    rels_.reserve(prog.rel_arity.size());
    for (int arity : prog.rel_arity) rels_.emplace_back(arity, n_);
  }

  std::vector<Element>& vars() { return vars_; }

  bool eval(int id) {
    const Node& node = prog_.nodes[id];
    switch (node.kind) {
      case NodeKind::True:
        return true;
      case NodeKind::False:
        return false;
      case NodeKind::Atom: {
        const Relation& r = node.rel_is_slot ? rels_[node.rel] : a_.relation(static_cast<std::size_t>(node.rel));
        std::size_t index = 0;
        for (const auto& t : node.terms) index = index * static_cast<std::size_t>(n_) + value(t);
        return r.test(index);
      }
      case NodeKind::Equal:
        return value(node.terms[0]) == value(node.terms[1]);
      case NodeKind::Not:
        return !eval(node.kids[0]);
      case NodeKind::And:
        for (int k : node.kids)
          if (!eval(k)) return false;
        return true;
      case NodeKind::Or:
        for (int k : node.kids)
          if (eval(k)) return true;
        return false;
      case NodeKind::Implies:
        return !eval(node.kids[0]) || eval(node.kids[1]);
      case NodeKind::Forall:
        for (Element e = 0; e < n_; ++e) {
          vars_[node.slot] = e;
          if (!eval(node.kids[0])) return false;
        }
        return true;
      case NodeKind::Exists:
        for (Element e = 0; e < n_; ++e) {
          vars_[node.slot] = e;
          if (eval(node.kids[0])) return true;
        }
        return false;
      case NodeKind::SoForall:
      case NodeKind::SoExists:
        return eval_so(node);
      case NodeKind::Lfp:
      case NodeKind::Slfp:
        return eval_fixpoint(node);
    }
    return false;
  }

 private:
  Element value(const TermRef& t) const { return t.is_var ? vars_[t.index] : a_.constant(static_cast<std::size_t>(t.index)); }

  void assign(int slot, const Relation& r) {
    rels_[slot] = r;
    versions_[slot] = ++clock_;
  }

  bool eval_so(const Node& node) {
    const bool universal = node.kind == NodeKind::SoForall;
    Relation& r = rels_[node.slot];
    const std::size_t cap = r.capacity();
    if (cap >= 63) throw BudgetExceeded("relation space too large to enumerate", std::pow(2.0L, cap));
    const std::uint64_t total = std::uint64_t{1} << cap;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      r.words()[0] = mask;
      versions_[node.slot] = ++clock_;
      bool v = eval(node.kids[0]);
      if (universal && !v) return false;
      if (!universal && v) return true;
    }
    return universal;
  }

  bool eval_fixpoint(const Node& node) {
    std::vector<std::uint64_t> key;
    key.reserve(node.free_var_slots.size() + node.free_rel_slots.size());
    for (int s : node.free_var_slots) key.push_back(static_cast<std::uint64_t>(vars_[s]));
    for (int s : node.free_rel_slots) key.push_back(versions_[s]);
    auto& cache = caches_[node.cache];
    auto it = cache.find(key);
    if (it == cache.end()) {
      if (cache.size() > 4096) cache.clear();
      it = cache.emplace(std::move(key), iterate(node)).first;
    }
    const Relation& result = it->second[node.designated];
    std::size_t index = 0;
    for (const auto& t : node.terms) index = index * static_cast<std::size_t>(n_) + value(t);
    return result.test(index);
  }

  // Jacobi iteration from the empty relations; every component reads the previous iterate.
  std::vector<Relation> iterate(const Node& node) {
    std::vector<Relation> current;
    for (const auto& c : node.comps) current.emplace_back(c.arity, n_);
    std::vector<Relation> saved;
    for (const auto& c : node.comps) saved.push_back(rels_[c.rel_slot]);
    std::vector<Element> saved_vars = vars_;
    for (;;) {
      for (std::size_t i = 0; i < node.comps.size(); ++i) assign(node.comps[i].rel_slot, current[i]);
      std::vector<Relation> next;
      bool changed = false;
      for (std::size_t i = 0; i < node.comps.size(); ++i) {
        const auto& c = node.comps[i];
        Relation r(c.arity, n_);
        for (std::size_t t = 0; t < r.capacity(); ++t) {
          std::size_t rest = t;
          for (int k = c.arity - 1; k >= 0; --k) {
            vars_[c.var_slots[k]] = static_cast<Element>(rest % static_cast<std::size_t>(n_));
            rest /= static_cast<std::size_t>(n_);
          }
          if (eval(c.body)) r.set(t);
        }
        if (!(r == current[i])) changed = true;
        next.push_back(std::move(r));
      }
      if (!changed) break;
      current = std::move(next);
    }
    for (std::size_t i = 0; i < node.comps.size(); ++i) assign(node.comps[i].rel_slot, saved[i]);
    vars_ = std::move(saved_vars);
    return current;
  }

  const CompiledProgram& prog_;
  const Structure& a_;
  int n_;
  std::vector<Element> vars_;
  std::vector<Relation> rels_;
  std::vector<std::uint64_t> versions_;
  std::uint64_t clock_ = 0;
  std::vector<std::map<std::vector<std::uint64_t>, std::vector<Relation>>> caches_;
};

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, std::shared_ptr<const Vocabulary> vocab,
                                 std::vector<std::string> params)
    : vocab_(std::move(vocab)), params_(std::move(params)), program_(std::make_unique<CompiledProgram>()) {
  std::set<std::string> seen;
  for (const auto& p : params_)
    if (!seen.insert(p).second) fail(ErrorKind::Invalid, "duplicate parameter '" + p + "'");
  Compiler compiler(*program_, *vocab_);
  for (const auto& p : params_) compiler.bind_param(p);
  FreeSets fs;
  program_->root = compiler.compile(f, fs);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

long double CompiledFormula::so_assignments(int n) const {
  long double total = 1.0L;
  for (int arity : program_->so_arities) total *= std::pow(2.0L, std::pow(static_cast<long double>(n), arity));
  return total;
}

void CompiledFormula::check(const Structure& a, long double budget) const {
  if (!(a.vocabulary() == *vocab_)) fail(ErrorKind::Invalid, "structure does not match the formula's vocabulary");
  if (program_->so_arities.empty()) return;
  long double required = so_assignments(a.domain_size());
  if (required > budget) {
    std::ostringstream os;
    os << "second-order evaluation needs " << required << " relation assignments, budget is " << budget;
    throw BudgetExceeded(os.str(), required);
  }
}

bool CompiledFormula::eval(const Structure& a, std::span<const Element> args, long double budget) const {
  check(a, budget);
  if (args.size() != params_.size()) fail(ErrorKind::Invalid, "wrong number of arguments");
  Evaluator ev(*program_, a);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] < 0 || args[i] >= a.domain_size()) fail(ErrorKind::Invalid, "argument outside the domain");
    ev.vars()[i] = args[i];
  }
  return ev.eval(program_->root);
}

Relation CompiledFormula::answers(const Structure& a, long double budget) const {
  check(a, budget);
  const int n = a.domain_size();
  const int k = static_cast<int>(params_.size());
  Relation out(k, n);
  Evaluator ev(*program_, a);
  for (std::size_t t = 0; t < out.capacity(); ++t) {
    std::size_t rest = t;
    for (int i = k - 1; i >= 0; --i) {
      ev.vars()[i] = static_cast<Element>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    if (ev.eval(program_->root)) out.set(t);
  }
  return out;
}

namespace {

bool eval_with_env(const Formula& phi, const Structure& a, const Assignment& env, long double budget) {
  std::vector<std::string> params;
  std::vector<Element> args;
  for (const auto& v : free_variables(phi)) {
    auto it = env.find(v);
    if (it == env.end()) {
      if (a.vocabulary().has_constant(v)) continue;
      fail(ErrorKind::Invalid, "unbound free variable '" + v + "'");
    }
    params.push_back(v);
    args.push_back(it->second);
  }
  CompiledFormula cf(phi, a.vocabulary_ptr(), params);
  return cf.eval(a, args, budget);
}

}  // namespace

bool eval_fo(const Formula& phi, const Structure& a, const Assignment& env) {
  if (contains_so_quantifier(phi) || contains_fixpoint(phi))
    fail(ErrorKind::Invalid, "formula is not first-order");
  return eval_with_env(phi, a, env, kDefaultSoBudget);
}

bool eval_so_bruteforce(const Formula& phi, const Structure& a, const Assignment& env, long double budget) {
  return eval_with_env(phi, a, env, budget);
}

}  // namespace hornlab
