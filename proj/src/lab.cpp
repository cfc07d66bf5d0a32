#include "hornlab/lab.hpp"

#include <mutex>
#include <random>

#include "hornlab/error.hpp"
#include "hornlab/text.hpp"

namespace hornlab {

struct Evaluable::State {
  std::optional<FormulaQuery> formula;
  std::optional<DatalogFormula> datalog;
  std::size_t arity = 0;
  std::shared_ptr<const Vocabulary> vocab;

  std::mutex mutex;
  std::vector<std::pair<std::shared_ptr<const Vocabulary>, std::shared_ptr<const CompiledFormula>>> compiled;

  std::shared_ptr<const CompiledFormula> compiled_for(const std::shared_ptr<const Vocabulary>& v) {
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto& [key, cf] : compiled)
      if (key == v || *key == *v) return cf;
    auto cf = std::make_shared<const CompiledFormula>(formula->formula, v, formula->query);
    compiled.emplace_back(v, cf);
    return cf;
  }
};

Evaluable Evaluable::formula(FormulaQuery q) {
  Evaluable e;
  e.state_ = std::make_shared<State>();
  e.state_->arity = q.query.size();
  e.state_->vocab = q.vocab;
  e.state_->formula = std::move(q);
  return e;
}

Evaluable Evaluable::datalog(DatalogFormula d) {
  Evaluable e;
  e.state_ = std::make_shared<State>();
  std::optional<std::size_t> arity;
  for (const auto& s : d.program.intentional())
    if (s.name == d.goal) arity = static_cast<std::size_t>(s.arity);
  if (!arity) fail(ErrorKind::Invalid, "goal " + d.goal + " is not an intentional symbol");
  e.state_->arity = *arity;
  e.state_->vocab = d.program.vocab;
  e.state_->datalog = std::move(d);
  return e;
}

Evaluable Evaluable::negated() const {
  Evaluable e = *this;
  e.negated_ = !negated_;
  return e;
}

std::size_t Evaluable::arity() const { return state_->arity; }

const std::shared_ptr<const Vocabulary>& Evaluable::vocabulary() const { return state_->vocab; }

std::string Evaluable::describe() const {
  std::string body = state_->formula ? print_formula(state_->formula->formula)
                                     : "(" + std::to_string(state_->datalog->program.strata.size()) +
                                           "-stratum program, goal " + state_->datalog->goal + ")";
  return negated_ ? "not " + body : body;
}

Relation Evaluable::answers(const Structure& a, long double budget) const {
  Relation r = state_->formula ? state_->compiled_for(a.vocabulary_ptr())->answers(a, budget)
                               : eval_query(*state_->datalog, a);
  return negated_ ? r.complement() : r;
}

bool Evaluable::holds(const Structure& a, const Tuple& tuple, long double budget) const {
  return answers(a, budget).contains(tuple);
}

std::string to_string(VerdictStatus s) {
  return s == VerdictStatus::Equivalent ? "equivalent-up-to-budget" : "counterexample";
}

std::uint64_t EquivVerdict::checked() const {
  std::uint64_t total = 0;
  for (const auto& s : sizes) total += s.checked;
  return total;
}

std::uint64_t EquivVerdict::skipped() const {
  std::uint64_t total = 0;
  for (const auto& s : sizes) total += s.skipped;
  return total;
}

namespace {

void require_covers(const Vocabulary& outer, const std::shared_ptr<const Vocabulary>& inner) {
  if (!inner) return;
  for (const auto& r : inner->relations())
    if (!outer.has_relation(r.name) || outer.arity(r.name) != r.arity)
      fail(ErrorKind::Invalid, "vocabulary lacks " + r.name + "/" + std::to_string(r.arity));
  for (const auto& c : inner->constants())
    if (!outer.has_constant(c)) fail(ErrorKind::Invalid, "vocabulary lacks constant " + c);
}

std::optional<std::size_t> first_difference(const Relation& a, const Relation& b) {
  for (std::size_t i = 0; i < a.capacity(); ++i)
    if (a.test(i) != b.test(i)) return i;
  return std::nullopt;
}

}  // namespace

EquivVerdict check_equiv(const Evaluable& a, const Evaluable& b, std::shared_ptr<const Vocabulary> vocab,
                         const CheckOptions& options) {
  if (a.arity() != b.arity()) fail(ErrorKind::Invalid, "query arities differ");
  require_covers(*vocab, a.vocabulary());
  require_covers(*vocab, b.vocabulary());
  EquivVerdict verdict;
  for (int n = std::max(1, options.min_n); n <= options.max_n && !verdict.witness; ++n) {
    SizeStats stats{n, 0, 0};
    auto visit = [&](const Structure& s) {
      Relation ra, rb;
      try {
        ra = a.answers(s, options.so_budget);
        rb = b.answers(s, options.so_budget);
      } catch (const BudgetExceeded&) {
        ++stats.skipped;
        return true;
      }
      ++stats.checked;
      if (auto i = first_difference(ra, rb)) {
        verdict.status = VerdictStatus::Counterexample;
        verdict.witness = Witness{s, ra.tuple_at(*i), ra.test(*i), rb.test(*i)};
        return false;
      }
      return true;
    };
    if (options.mode == CheckMode::Exhaustive) {
      StructureSpace(vocab, n).for_each(visit, options.enumeration_budget);
    } else {
      for (const auto& s : sample_structures(vocab, n, options.samples, options.seed * 1000003ULL + n))
        if (!visit(s)) break;
    }
    verdict.sizes.push_back(stats);
  }
  return verdict;
}

EquivVerdict check_duality(const FormulaQuery& phi, const DatalogFormula& d, std::shared_ptr<const Vocabulary> vocab,
                           const CheckOptions& options) {
  return check_equiv(Evaluable::formula(phi), Evaluable::datalog(d).negated(), std::move(vocab), options);
}

ClosureVerdict check_closure(const Evaluable& x, const ClosureOptions& options) {
  const auto& vocab = x.vocabulary();
  if (options.direction == ClosureDirection::Extension && options.max_n < 2)
    fail(ErrorKind::Invalid, "extension pairs need a larger structure of size at least 2");
  std::mt19937_64 rng(options.seed);
  ClosureVerdict verdict;
  const int lo = std::max(1, options.min_n);
  for (std::size_t t = 0; t < options.trials && !verdict.violation; ++t) {
    std::optional<Structure> larger, smaller;
    std::vector<Element> embedding;
    if (options.direction == ClosureDirection::Substructure) {
      const int n = std::uniform_int_distribution<int>(lo, std::max(lo, options.max_n))(rng);
      larger = random_structure(vocab, n, rng);
      std::vector<bool> keep(static_cast<std::size_t>(n), false);
      for (std::size_t c = 0; c < vocab->constants().size(); ++c)
        keep[static_cast<std::size_t>(larger->constant(c))] = true;
      for (auto&& k : keep) k = k || (rng() & 1U);
      std::vector<Element> subset;
      for (int e = 0; e < n; ++e)
        if (keep[static_cast<std::size_t>(e)]) subset.push_back(e);
      if (subset.empty()) subset.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
      auto sub = induced_substructure(*larger, subset);
      smaller = std::move(sub.structure);
      embedding = std::move(sub.index_map);
    } else {
      const int small = std::uniform_int_distribution<int>(lo, std::max(lo, options.max_n - 1))(rng);
      const int extra = std::uniform_int_distribution<int>(1, std::max(1, options.max_n - small))(rng);
      smaller = random_structure(vocab, small, rng);
      larger = extend_structure(*smaller, extra, rng());
      for (int e = 0; e < small; ++e) embedding.push_back(e);
    }
    Relation big, little;
    try {
      big = x.answers(*larger, options.so_budget);
      little = x.answers(*smaller, options.so_budget);
    } catch (const BudgetExceeded&) {
      ++verdict.skipped;
      continue;
    }
    ++verdict.trials;
    for (std::size_t i = 0; i < little.capacity(); ++i) {
      Tuple small_tuple = little.tuple_at(i);
      Tuple big_tuple;
      for (Element e : small_tuple) big_tuple.push_back(embedding[static_cast<std::size_t>(e)]);
      const bool in_big = big.contains(big_tuple);
      const bool in_small = little.test(i);
      const bool bad = options.direction == ClosureDirection::Substructure ? (in_big && !in_small)
                                                                            : (in_small && !in_big);
      if (bad) {
        verdict.violation = ClosureWitness{*larger, *smaller, embedding, small_tuple, in_big, in_small};
        break;
      }
    }
  }
  return verdict;
}

}  // namespace hornlab
