// Recursive-descent parser for the formula DSL.
//
//   implication := difference ("=>" implication)?
//   difference  := join ("\" join)*
//   join        := meet ("\/" meet)*
//   meet        := unary ("/\" unary)*
//   unary       := "~" unary | flow "[" NAME "]" unary | primary
//   primary     := NAME | "top@" NAME | "bot@" NAME | "(" implication ")"

#include <cctype>

#include "fole/formula.hpp"

namespace fole {

namespace {

enum class Tok {
  Name, TopAt, BotAt, Exists, Forall, Subst, LParen, RParen,
  And, Or, Not, Implies, Minus, Arrow, Colon, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

[[noreturn]] void parse_error(std::size_t offset, const std::string& msg) {
  throw Error("ParseError", "offset " + std::to_string(offset) + ": " + msg);
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto read_name = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && name_char(s[j])) ++j;
    return j;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (s.compare(i, 2, "/\\") == 0) {
      out.push_back({Tok::And, "/\\", at});
      i += 2;
    } else if (s.compare(i, 2, "\\/") == 0) {
      out.push_back({Tok::Or, "\\/", at});
      i += 2;
    } else if (c == '\\') {
      out.push_back({Tok::Minus, "\\", at});
      ++i;
    } else if (s.compare(i, 2, "=>") == 0) {
      out.push_back({Tok::Implies, "=>", at});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Not, "~", at});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", at});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", at});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", at});
      ++i;
    } else if (s.compare(i, 2, "-[") == 0) {
      std::size_t j = read_name(i + 2);
      if (j == i + 2) parse_error(i + 2, "expected morphism name after '-['");
      if (s.compare(j, 3, "]->") != 0) parse_error(j, "expected ']->'");
      out.push_back({Tok::Arrow, s.substr(i + 2, j - i - 2), at});
      i = j + 3;
    } else if (name_char(c)) {
      std::size_t j = read_name(i);
      std::string word = s.substr(i, j - i);
      if ((word == "top" || word == "bot") && j < s.size() && s[j] == '@') {
        std::size_t k = read_name(j + 1);
        if (k == j + 1) parse_error(j + 1, "expected signature name after '@'");
        out.push_back({word == "top" ? Tok::TopAt : Tok::BotAt, s.substr(j + 1, k - j - 1), at});
        i = k;
      } else if ((word == "exists" || word == "forall" || word == "subst") && j < s.size() &&
                 s[j] == '[') {
        std::size_t k = read_name(j + 1);
        if (k == j + 1) parse_error(j + 1, "expected morphism name after '['");
        if (k >= s.size() || s[k] != ']') parse_error(k, "expected ']'");
        Tok kind = word == "exists" ? Tok::Exists : word == "forall" ? Tok::Forall : Tok::Subst;
        out.push_back({kind, s.substr(j + 1, k - j - 1), at});
        i = k + 1;
      } else {
        out.push_back({Tok::Name, word, at});
        i = j;
      }
    } else {
      parse_error(at, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Schema& schema, const FormulaEnv& env)
      : toks_(std::move(toks)), schema_(schema), env_(env) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) parse_error(peek().offset, std::string("expected ") + what);
    ++pos_;
  }

  Formula implication() {
    Formula lhs = difference();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implication(lhs, implication());
    }
    return lhs;
  }

  Formula difference() {
    Formula f = join();
    while (peek().kind == Tok::Minus) {
      next();
      f = Formula::difference(f, join());
    }
    return f;
  }

  Formula join() {
    Formula f = meet();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::join(f, meet());
    }
    return f;
  }

  Formula meet() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::meet(f, unary());
    }
    return f;
  }

  Formula unary() {
    Token t = peek();
    switch (t.kind) {
      case Tok::Not: next(); return Formula::negation(unary());
      case Tok::Exists:
      case Tok::Forall:
      case Tok::Subst: {
        next();
        auto it = env_.morphisms.find(t.text);
        if (it == env_.morphisms.end()) throw Error("UnknownMorphism", t.text);
        Formula body = unary();
        if (t.kind == Tok::Exists) return Formula::exists(t.text, it->second, body);
        if (t.kind == Tok::Forall) return Formula::forall(t.text, it->second, body);
        return Formula::subst(t.text, it->second, body);
      }
      default: return primary();
    }
  }

  Formula primary() {
    Token t = next();
    switch (t.kind) {
      case Tok::Name:
        if (!schema_.has(t.text)) throw Error("UnknownPredicate", t.text);
        return Formula::atom(t.text);
      case Tok::TopAt: return Formula::top(t.text, resolve_signature(t.text));
      case Tok::BotAt: return Formula::bottom(t.text, resolve_signature(t.text));
      case Tok::LParen: {
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::End: parse_error(t.offset, "unexpected end of formula");
      default: parse_error(t.offset, "unexpected '" + t.text + "'");
    }
  }

  // Declared signatures take precedence over predicate signatures.
  Signature resolve_signature(const std::string& name) const {
    if (auto it = env_.signatures.find(name); it != env_.signatures.end()) return it->second;
    if (schema_.has(name)) return schema_.signature(name);
    throw Error("UnknownSignature", name);
  }

  std::string name(const char* what) {
    if (peek().kind != Tok::Name) parse_error(peek().offset, std::string("expected ") + what);
    return next().text;
  }

  bool at_end() const { return peek().kind == Tok::End; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Schema& schema_;
  const FormulaEnv& env_;
};

}  // namespace

Formula parse_formula(const std::string& text, const Schema& schema, const FormulaEnv& env) {
  Parser p(lex(text), schema, env);
  Formula f = p.implication();
  if (!p.at_end()) parse_error(p.peek().offset, "trailing input '" + p.peek().text + "'");
  return f;
}

Constraint parse_constraint(const std::string& text, const Schema& schema,
                            const FormulaEnv& env) {
  Parser p(lex(text), schema, env);
  if (p.peek().kind != Tok::Name || p.peek().text != "constraint")
    parse_error(p.peek().offset, "expected 'constraint'");
  p.next();
  std::string name = p.name("constraint name");
  p.expect(Tok::Colon, "':'");
  Formula source = p.implication();
  if (p.peek().kind != Tok::Arrow) parse_error(p.peek().offset, "expected '-[NAME]->'");
  std::string h_name = p.next().text;
  auto it = env.morphisms.find(h_name);
  if (it == env.morphisms.end()) throw Error("UnknownMorphism", h_name);
  Formula target = p.implication();
  if (!p.at_end()) parse_error(p.peek().offset, "trailing input '" + p.peek().text + "'");
  return Constraint{std::move(name), std::move(source), std::move(target), std::move(h_name),
                    it->second};
}

}  // namespace fole
