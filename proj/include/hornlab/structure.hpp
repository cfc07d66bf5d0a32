#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hornlab {

/// Domain elements are the integers 0..n-1.
using Element = int;
using Tuple = std::vector<Element>;

struct RelationSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const RelationSymbol&) const = default;
};

/// Relation symbols with arities plus constant symbols. Names are unique across both kinds.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<RelationSymbol> relations, std::vector<std::string> constants);

  void add_relation(const std::string& name, int arity);
  void add_constant(const std::string& name);

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<std::string>& constants() const { return constants_; }

  std::optional<std::size_t> relation_index(const std::string& name) const;
  std::optional<std::size_t> constant_index(const std::string& name) const;
  bool has_relation(const std::string& name) const { return relation_index(name).has_value(); }
  bool has_constant(const std::string& name) const { return constant_index(name).has_value(); }
  bool contains(const std::string& name) const { return has_relation(name) || has_constant(name); }
  int arity(const std::string& name) const;

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

/// A k-ary relation over a domain of size n, stored as a bitset over the n^k tuples
/// in lexicographic order. Arity 0 is a Boolean (the single empty tuple).
class Relation {
 public:
  Relation() = default;
  Relation(int arity, int domain_size);

  int arity() const { return arity_; }
  int domain_size() const { return n_; }
  /// Number of possible tuples, n^arity.
  std::size_t capacity() const { return capacity_; }

  std::size_t index_of(std::span<const Element> tuple) const;
  Tuple tuple_at(std::size_t index) const;

  bool contains(std::span<const Element> tuple) const { return test(index_of(tuple)); }
  bool test(std::size_t index) const { return (words_[index >> 6] >> (index & 63)) & 1U; }
  void insert(std::span<const Element> tuple) { set(index_of(tuple)); }
  void set(std::size_t index) { words_[index >> 6] |= std::uint64_t{1} << (index & 63); }
  void reset(std::size_t index) { words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63)); }
  void clear();
  void fill();

  bool empty() const;
  std::size_t size() const;
  std::vector<Tuple> tuples() const;

  bool subset_of(const Relation& other) const;
  Relation complement() const;
  /// Union in place; returns true if anything was added.
  bool merge(const Relation& other);

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const Relation& other) const {
    return arity_ == other.arity_ && n_ == other.n_ && words_ == other.words_;
  }

 private:
  int arity_ = 0;
  int n_ = 1;
  std::size_t capacity_ = 1;
  std::vector<std::uint64_t> words_{0};
};

/// A finite structure: domain {0..n-1}, one relation per relation symbol, one element per constant.
class Structure {
 public:
  Structure(std::shared_ptr<const Vocabulary> vocab, int domain_size);

  const Vocabulary& vocabulary() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& vocabulary_ptr() const { return vocab_; }
  int domain_size() const { return n_; }

  const Relation& relation(std::size_t index) const { return relations_[index]; }
  Relation& relation(std::size_t index) { return relations_[index]; }
  const Relation& relation(const std::string& name) const;
  Relation& relation(const std::string& name);

  Element constant(std::size_t index) const { return constants_[index]; }
  Element constant(const std::string& name) const;
  void set_constant(std::size_t index, Element value);
  void set_constant(const std::string& name, Element value);

  /// Copy of this structure over a larger vocabulary with the given relations appended.
  Structure expand(std::span<const RelationSymbol> symbols, std::span<const Relation> interpretations) const;

  bool operator==(const Structure& other) const;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  int n_;
  std::vector<Relation> relations_;
  std::vector<Element> constants_;
};

/// Result of restricting a structure to a subset of its domain.
struct Substructure {
  Structure structure;
  /// new element i corresponds to old element index_map[i]
  std::vector<Element> index_map;
};

Substructure induced_substructure(const Structure& a, const std::vector<Element>& subset);

/// Extension B ⊇ A by `extra` fresh elements; A stays an induced substructure of B.
/// Tuples involving new elements are drawn from the seeded generator.
Structure extend_structure(const Structure& a, int extra, std::uint64_t seed);

}  // namespace hornlab
