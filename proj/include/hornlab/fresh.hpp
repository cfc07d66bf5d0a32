#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

namespace hornlab {

/// Generates names with the reserved '_' prefix and a monotone counter, skipping
/// anything already in use. One generator per transform invocation.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }

  std::string next(const std::string& hint) {
    std::string stem = hint.substr(std::min(hint.find_first_not_of('_'), hint.size()));
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    std::string base = "_" + (stem.empty() ? std::string("v") : stem);
    for (;;) {
      std::string candidate = base + std::to_string(++counter_);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> used_;
  unsigned long counter_ = 0;
};

}  // namespace hornlab
