#include "hornlab/structure.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "hornlab/error.hpp"

namespace hornlab {

Vocabulary::Vocabulary(std::vector<RelationSymbol> relations, std::vector<std::string> constants) {
  for (auto& r : relations) add_relation(r.name, r.arity);
  for (auto& c : constants) add_constant(c);
}

void Vocabulary::add_relation(const std::string& name, int arity) {
  if (arity < 0) fail(ErrorKind::Invalid, "negative arity for relation symbol '" + name + "'");
  if (contains(name)) fail(ErrorKind::Invalid, "duplicate symbol '" + name + "' in vocabulary");
  relations_.push_back({name, arity});
}

void Vocabulary::add_constant(const std::string& name) {
  if (contains(name)) fail(ErrorKind::Invalid, "duplicate symbol '" + name + "' in vocabulary");
  constants_.push_back(name);
}

std::optional<std::size_t> Vocabulary::relation_index(const std::string& name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::constant_index(const std::string& name) const {
  for (std::size_t i = 0; i < constants_.size(); ++i)
    if (constants_[i] == name) return i;
  return std::nullopt;
}

int Vocabulary::arity(const std::string& name) const {
  auto i = relation_index(name);
  if (!i) fail(ErrorKind::Invalid, "unknown relation symbol '" + name + "'");
  return relations_[*i].arity;
}

// ---------------------------------------------------------------------------

Relation::Relation(int arity, int domain_size) : arity_(arity), n_(domain_size) {
  if (arity < 0) fail(ErrorKind::Invalid, "negative arity");
  if (domain_size < 1) fail(ErrorKind::Invalid, "empty domain");
  capacity_ = 1;
  for (int i = 0; i < arity; ++i) {
    capacity_ *= static_cast<std::size_t>(domain_size);
    if (capacity_ > (std::size_t{1} << 34)) fail(ErrorKind::Budget, "relation too large to materialize");
  }
  words_.assign((capacity_ + 63) / 64, 0);
}

std::size_t Relation::index_of(std::span<const Element> tuple) const {
  std::size_t idx = 0;
  for (Element e : tuple) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e);
  return idx;
}

Tuple Relation::tuple_at(std::size_t index) const {
  Tuple t(static_cast<std::size_t>(arity_));
  for (int i = arity_ - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Element>(index % static_cast<std::size_t>(n_));
    index /= static_cast<std::size_t>(n_);
  }
  return t;
}

void Relation::clear() { std::fill(words_.begin(), words_.end(), 0); }

void Relation::fill() {
  std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
  if (capacity_ % 64) words_.back() = (std::uint64_t{1} << (capacity_ % 64)) - 1;
}

bool Relation::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t Relation::size() const {
  std::size_t s = 0;
  for (auto w : words_) s += static_cast<std::size_t>(std::popcount(w));
  return s;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < capacity_; ++i)
    if (test(i)) out.push_back(tuple_at(i));
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

Relation Relation::complement() const {
  Relation r = *this;
  for (auto& w : r.words_) w = ~w;
  if (capacity_ % 64) r.words_.back() &= (std::uint64_t{1} << (capacity_ % 64)) - 1;
  return r;
}

bool Relation::merge(const Relation& other) {
  bool changed = false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i] | other.words_[i];
    changed |= (w != words_[i]);
    words_[i] = w;
  }
  return changed;
}

// ---------------------------------------------------------------------------

Structure::Structure(std::shared_ptr<const Vocabulary> vocab, int domain_size)
    : vocab_(std::move(vocab)), n_(domain_size) {
  if (!vocab_) vocab_ = std::make_shared<const Vocabulary>();
  if (n_ < 1) fail(ErrorKind::Invalid, "domain size must be at least 1");
  for (const auto& r : vocab_->relations()) relations_.emplace_back(r.arity, n_);
  constants_.assign(vocab_->constants().size(), 0);
}

const Relation& Structure::relation(const std::string& name) const {
  auto i = vocab_->relation_index(name);
  if (!i) fail(ErrorKind::Invalid, "structure does not interpret relation '" + name + "'");
  return relations_[*i];
}

Relation& Structure::relation(const std::string& name) {
  auto i = vocab_->relation_index(name);
  if (!i) fail(ErrorKind::Invalid, "structure does not interpret relation '" + name + "'");
  return relations_[*i];
}

Element Structure::constant(const std::string& name) const {
  auto i = vocab_->constant_index(name);
  if (!i) fail(ErrorKind::Invalid, "structure does not interpret constant '" + name + "'");
  return constants_[*i];
}

void Structure::set_constant(std::size_t index, Element value) {
  if (value < 0 || value >= n_) fail(ErrorKind::Invalid, "constant value outside the domain");
  constants_[index] = value;
}

void Structure::set_constant(const std::string& name, Element value) {
  auto i = vocab_->constant_index(name);
  if (!i) fail(ErrorKind::Invalid, "structure does not interpret constant '" + name + "'");
  set_constant(*i, value);
}

Structure Structure::expand(std::span<const RelationSymbol> symbols, std::span<const Relation> interpretations) const {
  auto v = std::make_shared<Vocabulary>(*vocab_);
  for (const auto& s : symbols) v->add_relation(s.name, s.arity);
  Structure out(std::move(v), n_);
  for (std::size_t i = 0; i < relations_.size(); ++i) out.relations_[i] = relations_[i];
  for (std::size_t i = 0; i < interpretations.size(); ++i) out.relations_[relations_.size() + i] = interpretations[i];
  out.constants_ = constants_;
  return out;
}

bool Structure::operator==(const Structure& other) const {
  return n_ == other.n_ && *vocab_ == *other.vocab_ && relations_ == other.relations_ &&
         constants_ == other.constants_;
}

// ---------------------------------------------------------------------------

Substructure induced_substructure(const Structure& a, const std::vector<Element>& subset) {
  std::set<Element> uniq(subset.begin(), subset.end());
  if (uniq.empty()) fail(ErrorKind::Invalid, "induced substructure of an empty subset");
  for (Element e : uniq)
    if (e < 0 || e >= a.domain_size()) fail(ErrorKind::Invalid, "subset element outside the domain");
  std::vector<Element> index_map(uniq.begin(), uniq.end());
  std::vector<int> inverse(static_cast<std::size_t>(a.domain_size()), -1);
  for (std::size_t i = 0; i < index_map.size(); ++i) inverse[static_cast<std::size_t>(index_map[i])] = static_cast<int>(i);

  const auto& vocab = a.vocabulary();
  Structure b(a.vocabulary_ptr(), static_cast<int>(index_map.size()));
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    int mapped = inverse[static_cast<std::size_t>(a.constant(c))];
    if (mapped < 0)
      fail(ErrorKind::Invalid, "subset omits the interpretation of constant '" + vocab.constants()[c] + "'");
    b.set_constant(c, mapped);
  }
  for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
    const Relation& src = a.relation(r);
    Relation& dst = b.relation(r);
    Tuple mapped(static_cast<std::size_t>(src.arity()));
    for (std::size_t i = 0; i < dst.capacity(); ++i) {
      Tuple t = dst.tuple_at(i);
      for (std::size_t k = 0; k < t.size(); ++k) mapped[k] = index_map[static_cast<std::size_t>(t[k])];
      if (src.contains(mapped)) dst.set(i);
    }
  }
  return {std::move(b), std::move(index_map)};
}

Structure extend_structure(const Structure& a, int extra, std::uint64_t seed) {
  if (extra < 0) fail(ErrorKind::Invalid, "negative extension size");
  if (extra == 0) return a;
  const int n = a.domain_size();
  Structure b(a.vocabulary_ptr(), n + extra);
  std::mt19937_64 rng(seed);
  const auto& vocab = a.vocabulary();
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) b.set_constant(c, a.constant(c));
  for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
    const Relation& src = a.relation(r);
    Relation& dst = b.relation(r);
    for (std::size_t i = 0; i < dst.capacity(); ++i) {
      Tuple t = dst.tuple_at(i);
      bool old = std::all_of(t.begin(), t.end(), [n](Element e) { return e < n; });
      if (old) {
        if (src.contains(t)) dst.set(i);
      } else if (rng() & 1U) {
        dst.set(i);
      }
    }
  }
  return b;
}

}  // namespace hornlab
