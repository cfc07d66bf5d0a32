#include "hornlab/lfp.hpp"

#include <map>

#include "hornlab/error.hpp"

namespace hornlab {

namespace {

// bound maps each fixed-point relation in scope to its current polarity (true = negative).
void walk(const Formula& f, std::map<std::string, bool> bound, bool negative,
          std::vector<PositivityViolation>& out) {
  auto flip = [&](std::map<std::string, bool> m) {
    for (auto& [k, v] : m) v = !v;
    return m;
  };
  switch (f.kind()) {
    case NodeKind::Atom: {
      auto it = bound.find(f.symbol());
      if (it != bound.end() && it->second) out.push_back({f.symbol(), f});
      return;
    }
    case NodeKind::Not:
      walk(f.child(), flip(bound), !negative, out);
      return;
    case NodeKind::Implies:
      walk(f.child(0), flip(bound), !negative, out);
      walk(f.child(1), bound, negative, out);
      return;
    case NodeKind::SoForall:
    case NodeKind::SoExists:
      bound.erase(f.symbol());
      walk(f.child(), bound, negative, out);
      return;
    case NodeKind::Lfp:
    case NodeKind::Slfp:
      for (const auto& c : f.components()) bound[c.relation] = false;
      for (const auto& c : f.components()) walk(c.body, bound, false, out);
      return;
    default:
      for (const auto& c : f.children()) walk(c, bound, negative, out);
  }
}

}  // namespace

std::vector<PositivityViolation> check_positivity(const Formula& phi) {
  std::vector<PositivityViolation> out;
  walk(phi, {}, false, out);
  return out;
}

bool eval_lfp(const Formula& phi, const Structure& a, const Assignment& env) {
  auto violations = check_positivity(phi);
  if (!violations.empty())
    fail(ErrorKind::Invalid, "fixed-point variable '" + violations.front().relation + "' occurs negatively");
  return eval_so_bruteforce(phi, a, env);
}

}  // namespace hornlab
