#include "hornlab/enumerate.hpp"

#include <cmath>
#include <sstream>

#include "hornlab/error.hpp"

namespace hornlab {

StructureSpace::StructureSpace(std::shared_ptr<const Vocabulary> vocab, int n)
    : vocab_(std::move(vocab)), n_(n), size_(1.0L) {
  if (n < 1) fail(ErrorKind::Invalid, "domain size must be at least 1");
  for (const auto& r : vocab_->relations()) size_ *= std::pow(2.0L, std::pow(static_cast<long double>(n), r.arity));
  for (std::size_t i = 0; i < vocab_->constants().size(); ++i) size_ *= n;
}

std::uint64_t StructureSpace::count(std::uint64_t budget) const {
  if (size_ > static_cast<long double>(budget)) {
    std::ostringstream os;
    os << "enumeration of " << size_ << " structures of size " << n_ << " exceeds budget " << budget;
    throw BudgetExceeded(os.str(), size_);
  }
  return static_cast<std::uint64_t>(size_);
}

Structure StructureSpace::at(std::uint64_t index) const {
  Structure s(vocab_, n_);
  for (std::size_t c = 0; c < vocab_->constants().size(); ++c) {
    s.set_constant(c, static_cast<Element>(index % static_cast<std::uint64_t>(n_)));
    index /= static_cast<std::uint64_t>(n_);
  }
  for (std::size_t r = 0; r < vocab_->relations().size(); ++r) {
    Relation& rel = s.relation(r);
    for (std::size_t t = 0; t < rel.capacity(); ++t) {
      if (index & 1U) rel.set(t);
      index >>= 1U;
    }
  }
  return s;
}

void StructureSpace::for_each(const std::function<bool(const Structure&)>& fn, std::uint64_t budget) const {
  const std::uint64_t total = count(budget);
  for (std::uint64_t i = 0; i < total; ++i)
    if (!fn(at(i))) return;
}

Structure random_structure(std::shared_ptr<const Vocabulary> vocab, int n, std::mt19937_64& rng) {
  Structure s(vocab, n);
  std::uniform_int_distribution<Element> pick(0, n - 1);
  for (std::size_t c = 0; c < vocab->constants().size(); ++c) s.set_constant(c, pick(rng));
  for (std::size_t r = 0; r < vocab->relations().size(); ++r) {
    Relation& rel = s.relation(r);
    std::uint64_t bits = 0;
    for (std::size_t t = 0; t < rel.capacity(); ++t) {
      if ((t & 63) == 0) bits = rng();
      if ((bits >> (t & 63)) & 1U) rel.set(t);
    }
  }
  return s;
}

std::vector<Structure> sample_structures(std::shared_ptr<const Vocabulary> vocab, int n, std::size_t count,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Structure> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_structure(vocab, n, rng));
  return out;
}

}  // namespace hornlab
