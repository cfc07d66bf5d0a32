#include "hornlab/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hornlab/error.hpp"

namespace hornlab {

namespace {

// --- lexer -----------------------------------------------------------------

struct Token {
  enum class Kind : std::uint8_t { Ident, Number, Sym, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int l = line;
    int cl = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Token::Kind::Ident, text.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, text.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    std::string two = text.substr(i, 2);
    if (two == "->" || two == "!=" || two == ":-") {
      out.push_back({Token::Kind::Sym, two, l, cl});
      advance(2);
      continue;
    }
    if (std::string("()[]{},;:/@!&|=.").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

// --- parser ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool is_word(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }
  bool accept(const std::string& s) {
    if (!is_sym(s)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) error("expected '" + s + "'");
  }
  std::string ident() {
    if (peek().kind != Token::Kind::Ident) error("expected an identifier");
    return tokens_[pos_++].text;
  }
  int number() {
    if (peek().kind != Token::Kind::Number) error("expected a number");
    return std::stoi(tokens_[pos_++].text);
  }
  [[noreturn]] void error(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.line, t.col);
  }

  void set_vocabulary(const Vocabulary* v) { vocab_ = v; }

  std::shared_ptr<Vocabulary> vocabulary_block() {
    auto v = std::make_shared<Vocabulary>();
    if (!is_word("vocab")) error("expected 'vocab'");
    ++pos_;
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      std::string kind = ident();
      std::string name = ident();
      try {
        if (kind == "rel") {
          expect("/");
          v->add_relation(name, number());
        } else if (kind == "const") {
          v->add_constant(name);
        } else {
          throw ParseError("expected 'rel' or 'const'", t.line, t.col);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), t.line, t.col);
      }
      expect(";");
    }
    return v;
  }

  Term term() {
    std::string name = ident();
    if (vocab_ && vocab_->has_constant(name)) return Term::constant(name);
    return Term::var(name);
  }

  std::vector<Term> term_list(const std::string& close) {
    std::vector<Term> out;
    if (accept(close)) return out;
    do {
      out.push_back(term());
    } while (accept(","));
    expect(close);
    return out;
  }

  std::vector<std::string> var_list() {
    std::vector<std::string> out;
    if (peek().kind != Token::Kind::Ident) return out;
    do {
      out.push_back(bound_var());
    } while (accept(","));
    return out;
  }

  std::string bound_var() {
    const Token& t = peek();
    std::string name = ident();
    if (vocab_ && vocab_->has_constant(name)) throw ParseError("cannot bind constant '" + name + "'", t.line, t.col);
    return name;
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implies(lhs, formula());
    return lhs;
  }

 private:
  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept("|")) parts.push_back(conjunction());
    return parts.size() == 1 ? parts[0] : Formula::disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept("&")) parts.push_back(unary());
    return parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    if (is_word("forall") || is_word("exists")) {
      bool universal = peek().text == "forall";
      ++pos_;
      struct Item {
        std::string name;
        int arity;  // -1 for first-order variables
      };
      std::vector<Item> items;
      do {
        std::string name = ident();
        int arity = -1;
        if (accept("/")) {
          arity = number();
        } else if (vocab_ && vocab_->has_constant(name)) {
          error("cannot bind constant '" + name + "'");
        }
        items.push_back({name, arity});
      } while (accept(","));
      Formula body = unary();
      for (auto it = items.rbegin(); it != items.rend(); ++it) {
        if (it->arity < 0) {
          body = universal ? Formula::forall(it->name, body) : Formula::exists(it->name, body);
        } else {
          body = universal ? Formula::so_forall(it->name, it->arity, body)
                           : Formula::so_exists(it->name, it->arity, body);
        }
      }
      return body;
    }
    return primary();
  }

  Formula primary() {
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    if (is_word("true")) {
      ++pos_;
      return Formula::truth();
    }
    if (is_word("false")) {
      ++pos_;
      return Formula::falsity();
    }
    if (is_word("lfp") && is_sym("[", 1)) return lfp();
    if (is_word("slfp") && is_sym("[", 1)) return slfp();
    if (peek().kind != Token::Kind::Ident) error("expected a formula");
    if (is_sym("=", 1) || is_sym("!=", 1)) {
      Term a = term();
      bool eq = accept("=");
      if (!eq) expect("!=");
      Term b = term();
      Formula f = Formula::equal(a, b);
      return eq ? f : Formula::negation(f);
    }
    std::string name = ident();
    if (accept("(")) return Formula::atom(name, term_list(")"));
    return Formula::atom(name);
  }

  FixpointComponent component_header() {
    std::string rel = ident();
    expect("/");
    int arity = number();
    expect(";");
    auto vars = var_list();
    if (static_cast<int>(vars.size()) != arity) error("fixed-point variable list does not match the arity");
    return {rel, vars, Formula::truth()};
  }

  Formula lfp() {
    ++pos_;
    expect("[");
    FixpointComponent c = component_header();
    expect("]");
    expect("{");
    c.body = formula();
    expect("}");
    expect("(");
    auto args = term_list(")");
    return Formula::lfp(std::move(c), std::move(args));
  }

  Formula slfp() {
    ++pos_;
    expect("[");
    std::vector<FixpointComponent> comps;
    for (;;) {
      FixpointComponent c = component_header();
      expect(":");
      c.body = formula();
      comps.push_back(std::move(c));
      if (accept("@")) break;
      expect(";");
    }
    std::string designated = ident();
    expect("]");
    auto it = std::find_if(comps.begin(), comps.end(), [&](const auto& c) { return c.relation == designated; });
    if (it == comps.end()) error("designated component '" + designated + "' is not defined");
    expect("(");
    auto args = term_list(")");
    return Formula::slfp(std::move(comps), static_cast<std::size_t>(it - comps.begin()), std::move(args));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Vocabulary* vocab_ = nullptr;
};

std::shared_ptr<const Vocabulary> infer_vocabulary(const Formula& f) {
  auto v = std::make_shared<Vocabulary>();
  for (const auto& [name, arity] : free_relations(f)) v->add_relation(name, arity);
  return v;
}

std::string strip_comments(const std::string& text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') comment = false;
    if (c == '#' || c == '%') comment = true;
    if (!comment) out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<std::string> FormulaDocument::query_vars() const {
  if (query) return *query;
  std::vector<std::string> out;
  for (const auto& v : free_variables(formula))
    if (!vocab || !vocab->has_constant(v)) out.push_back(v);
  return out;
}

ArtifactKind detect_kind(const std::string& text) {
  std::string body = strip_comments(text);
  std::istringstream in(body);
  std::string word;
  while (in >> word)
    if (word == "domain") return ArtifactKind::Structure;
  if (body.find(":-") != std::string::npos || body.find('.') != std::string::npos) return ArtifactKind::Datalog;
  return ArtifactKind::Formula;
}

namespace {

void check_free_relations(const Formula& f, const Vocabulary& vocab) {
  for (const auto& [name, arity] : free_relations(f)) {
    auto idx = vocab.relation_index(name);
    if (!idx) fail(ErrorKind::Invalid, "relation '" + name + "' is not in the vocabulary");
    if (vocab.relations()[*idx].arity != arity)
      fail(ErrorKind::Invalid, "relation '" + name + "' is used with arity " + std::to_string(arity) +
                                   " but declared with arity " + std::to_string(vocab.relations()[*idx].arity));
  }
}

}  // namespace

FormulaDocument parse_formula_document(const std::string& text, std::shared_ptr<const Vocabulary> external) {
  Parser p(text);
  FormulaDocument doc{nullptr, false, std::nullopt, Formula::truth()};
  if (p.is_word("vocab") && p.is_sym("{", 1)) {
    doc.vocab = p.vocabulary_block();
    doc.explicit_vocab = true;
  } else if (external) {
    doc.vocab = external;
  }
  p.set_vocabulary(doc.vocab.get());
  if (p.is_word("query") && (p.is_sym(";", 1) || p.peek(1).kind == Token::Kind::Ident)) {
    p.ident();
    std::vector<std::string> q;
    if (!p.accept(";")) {
      q = p.var_list();
      p.accept(";");
    }
    doc.query = q;
  }
  doc.formula = p.formula();
  if (!p.at_end()) p.error("unexpected input after the formula");
  if (!doc.vocab) doc.vocab = infer_vocabulary(doc.formula);
  check_free_relations(doc.formula, *doc.vocab);
  if (doc.query) {
    auto fv = free_variables(doc.formula);
    for (const auto& v : fv)
      if (!doc.vocab->has_constant(v) && std::find(doc.query->begin(), doc.query->end(), v) == doc.query->end())
        fail(ErrorKind::Invalid, "free variable '" + v + "' is missing from the query list");
  }
  return doc;
}

Formula parse_formula(const std::string& text, const Vocabulary* vocab) {
  Parser p(text);
  p.set_vocabulary(vocab);
  Formula f = p.formula();
  if (!p.at_end()) p.error("unexpected input after the formula");
  if (vocab) check_free_relations(f, *vocab);
  return f;
}

namespace {

BodyElement body_element(Parser& p) {
  if (p.is_word("all") && p.peek(1).kind == Token::Kind::Ident) {
    p.ident();
    std::vector<std::string> bound;
    while (!p.accept(":")) {
      bound.push_back(p.bound_var());
      p.accept(",");
    }
    if (bound.empty()) p.error("universal atom needs at least one variable");
    std::string rel = p.ident();
    std::vector<Term> args;
    if (p.accept("(")) args = p.term_list(")");
    for (auto& t : args)
      if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) t = Term::var(t.name);
    return BodyElement::universal(bound, rel, args);
  }
  if (p.accept("!")) {
    std::string rel = p.ident();
    std::vector<Term> args;
    if (p.accept("(")) args = p.term_list(")");
    return BodyElement::negated(rel, args);
  }
  if (p.accept("{")) {
    Formula f = p.formula();
    p.expect("}");
    return BodyElement::formula(f);
  }
  if (p.peek().kind == Token::Kind::Ident && (p.is_sym("=", 1) || p.is_sym("!=", 1))) {
    Term a = p.term();
    bool eq = p.accept("=");
    if (!eq) p.expect("!=");
    Term b = p.term();
    return eq ? BodyElement::equal(a, b) : BodyElement::not_equal(a, b);
  }
  std::string rel = p.ident();
  std::vector<Term> args;
  if (p.accept("(")) args = p.term_list(")");
  return BodyElement::atom(rel, args);
}

std::shared_ptr<const Vocabulary> infer_program_vocabulary(const std::vector<std::vector<Rule>>& strata) {
  std::set<std::string> heads;
  for (const auto& s : strata)
    for (const auto& r : s) heads.insert(r.head);
  auto v = std::make_shared<Vocabulary>();
  auto note = [&](const std::string& name, int arity) {
    if (heads.count(name) || v->has_relation(name)) return;
    v->add_relation(name, arity);
  };
  for (const auto& s : strata)
    for (const auto& r : s)
      for (const auto& e : r.body) {
        if (e.kind == BodyKind::Condition) {
          for (const auto& [name, arity] : free_relations(*e.condition)) note(name, arity);
        } else if (!e.relation.empty()) {
          note(e.relation, static_cast<int>(e.args.size()));
        }
      }
  return v;
}

}  // namespace

DatalogDocument parse_datalog(const std::string& text, std::shared_ptr<const Vocabulary> external) {
  Parser p(text);
  DatalogDocument doc;
  std::shared_ptr<const Vocabulary> vocab;
  for (;;) {
    if (p.is_word("vocab") && p.is_sym("{", 1)) {
      if (vocab) p.error("duplicate vocabulary block");
      vocab = p.vocabulary_block();
      doc.explicit_vocab = true;
    } else if (p.is_word("goal") && p.peek(1).kind == Token::Kind::Ident && !p.is_sym("(", 2) &&
               !p.is_sym(":-", 2) && !p.is_sym(".", 2)) {
      p.ident();
      doc.goal = p.ident();
      p.accept(";");
    } else {
      break;
    }
  }
  if (!vocab) vocab = external;
  p.set_vocabulary(vocab.get());
  std::vector<std::vector<Rule>> strata(1);
  while (!p.at_end()) {
    if (p.is_word("stratum") && !p.is_sym("(", 1) && !p.is_sym(":-", 1) && !p.is_sym(".", 1)) {
      p.ident();
      if (!strata.back().empty()) strata.emplace_back();
      continue;
    }
    Rule r;
    r.head = p.ident();
    if (p.accept("(")) r.head_args = p.term_list(")");
    if (p.accept(":-")) {
      do {
        r.body.push_back(body_element(p));
      } while (p.accept(","));
    }
    p.expect(".");
    strata.back().push_back(std::move(r));
  }
  if (strata.size() > 1 && strata.back().empty()) strata.pop_back();
  if (!vocab) vocab = infer_program_vocabulary(strata);
  doc.program = StratifiedProgram(vocab, std::move(strata));
  if (doc.goal) {
    auto ints = doc.program.intentional();
    if (std::none_of(ints.begin(), ints.end(), [&](const auto& s) { return s.name == *doc.goal; }))
      fail(ErrorKind::Invalid, "goal '" + *doc.goal + "' is not an intentional symbol");
  }
  return doc;
}

std::shared_ptr<const Vocabulary> parse_vocabulary(const std::string& text) {
  Parser p(text);
  return p.vocabulary_block();
}

Structure parse_structure(const std::string& text) {
  Parser p(text);
  std::shared_ptr<const Vocabulary> vocab = p.vocabulary_block();
  if (!p.is_word("domain")) p.error("expected 'domain'");
  p.ident();
  const Token& nt = p.peek();
  int n = p.number();
  if (n < 1) throw ParseError("domain size must be at least 1", nt.line, nt.col);
  Structure s(vocab, n);
  std::set<std::string> seen;
  while (!p.at_end()) {
    const Token& t = p.peek();
    std::string name = p.ident();
    if (!seen.insert(name).second) throw ParseError("symbol '" + name + "' interpreted twice", t.line, t.col);
    p.expect("=");
    if (auto c = vocab->constant_index(name)) {
      const Token& vt = p.peek();
      int value = p.number();
      if (value >= n) throw ParseError("constant value outside the domain", vt.line, vt.col);
      s.set_constant(*c, value);
      continue;
    }
    auto r = vocab->relation_index(name);
    if (!r) throw ParseError("symbol '" + name + "' is not in the vocabulary", t.line, t.col);
    Relation& rel = s.relation(*r);
    const int arity = rel.arity();
    if (arity == 0) {
      if (p.is_word("true")) {
        p.ident();
        rel.fill();
      } else if (p.is_word("false")) {
        p.ident();
      } else {
        p.error("expected 'true' or 'false'");
      }
      continue;
    }
    p.expect("{");
    while (!p.accept("}")) {
      const Token& tt = p.peek();
      p.expect("(");
      Tuple tuple;
      do {
        const Token& et = p.peek();
        int e = p.number();
        if (e >= n) throw ParseError("element outside the domain", et.line, et.col);
        tuple.push_back(e);
      } while (p.accept(","));
      p.expect(")");
      if (static_cast<int>(tuple.size()) != arity)
        throw ParseError("tuple length does not match the arity of '" + name + "'", tt.line, tt.col);
      rel.insert(tuple);
    }
  }
  for (const auto& c : vocab->constants())
    if (!seen.count(c)) fail(ErrorKind::Parse, "constant '" + c + "' is not interpreted");
  return s;
}

// --- printing --------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string terms_text(const std::vector<Term>& ts) {
  std::vector<std::string> parts;
  for (const auto& t : ts) parts.push_back(t.name);
  return join(parts, ",");
}

std::string atom_text(const std::string& rel, const std::vector<Term>& args) {
  if (args.empty()) return rel;
  return rel + "(" + terms_text(args) + ")";
}

// Precedence levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary.
std::string print(const Formula& f, int level);

std::string component_text(const FixpointComponent& c) {
  return c.relation + "/" + std::to_string(c.vars.size()) + "; " + join(c.vars, ",");
}

std::string print(const Formula& f, int level) {
  auto wrap = [&](const std::string& s, int own) { return level > own ? "(" + s + ")" : s; };
  switch (f.kind()) {
    case NodeKind::True:
      return "true";
    case NodeKind::False:
      return "false";
    case NodeKind::Atom:
      return atom_text(f.symbol(), f.terms());
    case NodeKind::Equal:
      return f.terms()[0].name + " = " + f.terms()[1].name;
    case NodeKind::Not:
      if (f.child().kind() == NodeKind::Equal)
        return f.child().terms()[0].name + " != " + f.child().terms()[1].name;
      return "!" + print(f.child(), 3);
    case NodeKind::And: {
      std::vector<std::string> parts;
      for (const auto& c : f.children()) parts.push_back(print(c, 3));
      return wrap(join(parts, " & "), 2);
    }
    case NodeKind::Or: {
      std::vector<std::string> parts;
      for (const auto& c : f.children()) parts.push_back(print(c, 2));
      return wrap(join(parts, " | "), 1);
    }
    case NodeKind::Implies:
      return wrap(print(f.child(0), 1) + " -> " + print(f.child(1), 0), 0);
    case NodeKind::Forall:
    case NodeKind::Exists:
    case NodeKind::SoForall:
    case NodeKind::SoExists: {
      bool universal = f.kind() == NodeKind::Forall || f.kind() == NodeKind::SoForall;
      std::vector<std::string> items;
      Formula g = f;
      while (true) {
        bool u = g.kind() == NodeKind::Forall || g.kind() == NodeKind::SoForall;
        if (!(g.is_quantifier() || g.is_so_quantifier()) || u != universal) break;
        items.push_back(g.is_so_quantifier() ? g.symbol() + "/" + std::to_string(g.arity()) : g.symbol());
        g = g.child();
      }
      return std::string(universal ? "forall " : "exists ") + join(items, ",") + " " + print(g, 3);
    }
    case NodeKind::Lfp: {
      const auto& c = f.components()[0];
      return "lfp[" + component_text(c) + "]{ " + print(c.body, 0) + " }(" + terms_text(f.terms()) + ")";
    }
    case NodeKind::Slfp: {
      std::vector<std::string> parts;
      for (const auto& c : f.components()) parts.push_back(component_text(c) + " : " + print(c.body, 0));
      return "slfp[" + join(parts, " ; ") + " @ " + f.components()[f.designated()].relation + "](" +
             terms_text(f.terms()) + ")";
    }
  }
  return "";
}

}  // namespace

std::string print_formula(const Formula& f) { return print(f, 0); }

std::string print_term(const Term& t) { return t.name; }

std::string print_vocabulary(const Vocabulary& v) {
  std::string out = "vocab {";
  for (const auto& r : v.relations()) out += " rel " + r.name + "/" + std::to_string(r.arity) + ";";
  for (const auto& c : v.constants()) out += " const " + c + ";";
  return out + " }";
}

std::string print_formula_document(const FormulaDocument& doc) {
  std::string out;
  if (doc.vocab && doc.explicit_vocab) out += print_vocabulary(*doc.vocab) + "\n";
  if (doc.query) out += "query" + (doc.query->empty() ? std::string() : " " + join(*doc.query, ",")) + ";\n";
  return out + print_formula(doc.formula) + "\n";
}

std::string print_body_element(const BodyElement& e) {
  switch (e.kind) {
    case BodyKind::Atom:
      return atom_text(e.relation, e.args);
    case BodyKind::Universal:
      return "all " + join(e.bound, " ") + " : " + atom_text(e.relation, e.args);
    case BodyKind::Negated:
      return "!" + atom_text(e.relation, e.args);
    case BodyKind::Equal:
      return e.args[0].name + " = " + e.args[1].name;
    case BodyKind::NotEqual:
      return e.args[0].name + " != " + e.args[1].name;
    case BodyKind::Condition:
      return "{ " + print_formula(*e.condition) + " }";
  }
  return "";
}

std::string print_rule(const Rule& r) {
  std::string out = atom_text(r.head, r.head_args);
  if (!r.body.empty()) {
    std::vector<std::string> parts;
    for (const auto& e : r.body) parts.push_back(print_body_element(e));
    out += " :- " + join(parts, ", ");
  }
  return out + ".";
}

std::string print_datalog(const StratifiedProgram& sigma, const std::optional<std::string>& goal, bool with_vocab) {
  std::string out;
  if (with_vocab && sigma.vocab) out += print_vocabulary(*sigma.vocab) + "\n";
  if (goal) out += "goal " + *goal + "\n";
  for (std::size_t m = 0; m < sigma.strata.size(); ++m) {
    if (m) out += "stratum\n";
    for (const auto& r : sigma.strata[m]) out += print_rule(r) + "\n";
  }
  return out;
}

std::string print_relation(const Relation& r) {
  if (r.arity() == 0) return r.test(0) ? "true" : "false";
  std::string out = "{";
  for (const auto& t : r.tuples()) {
    out += " (";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(t[i]);
    }
    out += ")";
  }
  return out + " }";
}

std::string print_structure(const Structure& s) {
  const Vocabulary& v = s.vocabulary();
  std::string out = print_vocabulary(v) + "\n";
  out += "domain " + std::to_string(s.domain_size()) + "\n";
  for (std::size_t i = 0; i < v.relations().size(); ++i)
    out += v.relations()[i].name + " = " + print_relation(s.relation(i)) + "\n";
  for (std::size_t i = 0; i < v.constants().size(); ++i)
    out += v.constants()[i] + " = " + std::to_string(s.constant(i)) + "\n";
  return out;
}

}  // namespace hornlab
