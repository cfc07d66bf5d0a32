#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "hornlab/structure.hpp"

namespace hornlab {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// All structures over a vocabulary with a fixed domain size, addressable by index.
/// Index digits: constants first (base n), then relation bits in declaration order.
class StructureSpace {
 public:
  StructureSpace(std::shared_ptr<const Vocabulary> vocab, int n);

  /// Exact count as a floating value; may exceed 2^64.
  long double size() const { return size_; }
  /// Count as an integer; throws BudgetExceeded when above `budget`.
  std::uint64_t count(std::uint64_t budget = kDefaultEnumerationBudget) const;

  Structure at(std::uint64_t index) const;

  /// Visit every structure in index order; stops early when fn returns false.
  void for_each(const std::function<bool(const Structure&)>& fn,
                std::uint64_t budget = kDefaultEnumerationBudget) const;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  int n_;
  long double size_;
};

/// Each tuple present with probability 1/2, each constant uniform.
Structure random_structure(std::shared_ptr<const Vocabulary> vocab, int n, std::mt19937_64& rng);

/// `count` structures drawn deterministically from `seed`.
std::vector<Structure> sample_structures(std::shared_ptr<const Vocabulary> vocab, int n, std::size_t count,
                                         std::uint64_t seed);

}  // namespace hornlab
