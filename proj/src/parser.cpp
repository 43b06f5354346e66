#include "teamlogic/parser.hpp"

#include <cctype>
#include "json.hpp"
#include <vector>

namespace teamlogic {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Dot,
  Comma,
  Eq,
  Bang,
  Arrow,     // ->
  MatArrow,  // ~>
  Lolli,     // -o
  Tilde,
  Amp,
  AmpAmp,
  Bar,
  BarBar,
  Star,
  Bicond,    // <~>
  End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const std::set<std::string>& reserved() {
  static const std::set<std::string> r = {"T",   "F",      "FF",     "NE",     "E",     "box",
                                          "delta", "dia", "forall", "shriek", "exists"};
  return r;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, s.substr(i, len), line, col});
    i += len;
    col += static_cast<int>(len);
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    auto next = [&](std::size_t k) { return i + k < s.size() ? s[i + k] : '\0'; };
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '=': push(Tok::Eq, 1); continue;
      case '!': push(Tok::Bang, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '&':
        if (next(1) == '&') push(Tok::AmpAmp, 2);
        else push(Tok::Amp, 1);
        continue;
      case '|':
        if (next(1) == '|') push(Tok::BarBar, 2);
        else push(Tok::Bar, 1);
        continue;
      case '~':
        if (next(1) == '>') push(Tok::MatArrow, 2);
        else push(Tok::Tilde, 1);
        continue;
      case '-':
        if (next(1) == '>') { push(Tok::Arrow, 2); continue; }
        if (next(1) == 'o') { push(Tok::Lolli, 2); continue; }
        break;
      case '<':
        if (next(1) == '~' && next(2) == '>') { push(Tok::Bicond, 3); continue; }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig, const MetaDecls& metas)
      : toks_(lex(text)), sig_(sig), metas_(metas) {}

  Formula run() {
    Formula f = bicond();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return f;
  }

  Term run_term() {
    Term t = term();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  const MetaDecls& metas_;
  std::map<std::string, int> open_rel_;
  std::map<std::string, int> open_fun_;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  template <class F>
  Formula guarded(F&& build) {
    try {
      return build();
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Formula bicond() {
    Formula a = impl();
    while (peek().kind == Tok::Bicond) {
      take();
      Formula b = impl();
      a = sbicond(a, b);
    }
    return a;
  }

  Formula impl() {
    Formula a = disj_level();
    Tok k = peek().kind;
    if (k == Tok::Arrow || k == Tok::MatArrow || k == Tok::Lolli) {
      take();
      Formula b = impl();
      if (k == Tok::Arrow) return guarded([&] { return implies(a, b); });
      if (k == Tok::MatArrow) return mimp(a, b);
      return limp(a, b);
    }
    return a;
  }

  Formula disj_level() {
    Formula a = conj_level();
    for (;;) {
      Tok k = peek().kind;
      if (k != Tok::Bar && k != Tok::BarBar && k != Tok::Star) return a;
      take();
      Formula b = conj_level();
      if (k == Tok::Bar) a = guarded([&] { return disj(a, b); });
      else if (k == Tok::BarBar) a = sor(a, b);
      else a = tensor(a, b);
    }
  }

  Formula conj_level() {
    Formula a = prefix();
    for (;;) {
      Tok k = peek().kind;
      if (k != Tok::Amp && k != Tok::AmpAmp) return a;
      take();
      Formula b = prefix();
      if (k == Tok::Amp) a = guarded([&] { return conj(a, b); });
      else a = sand(a, b);
    }
  }

  std::string bound_var() {
    if (peek().kind != Tok::Ident || reserved().count(peek().text))
      fail("expected variable name");
    std::string x = take().text;
    expect(Tok::Dot, "'.' after quantified variable");
    return x;
  }

  Formula prefix() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      take();
      Formula a = prefix();
      return guarded([&] { return neg(a); });
    }
    if (t.kind == Tok::Tilde) {
      take();
      return sneg(prefix());
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "box") { take(); return box(prefix()); }
      if (t.text == "delta") { take(); return delta(prefix()); }
      if (t.text == "dia") { take(); return dia(prefix()); }
      if (t.text == "forall" || t.text == "shriek" || t.text == "exists") {
        std::string q = take().text;
        std::string x = bound_var();
        Formula body = prefix();
        if (q == "forall") return forall(x, body);
        if (q == "shriek") return shriek(x, body);
        return exists(x, body);
      }
    }
    return atom();
  }

  Formula atom() {
    const Token t = peek();
    if (t.kind == Tok::LParen) {
      take();
      Formula f = bicond();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail("expected formula");
    if (t.text == "T") { take(); return top(); }
    if (t.text == "F") { take(); return bot(); }
    if (t.text == "FF") { take(); return sfalsum(); }
    if (t.text == "NE") { take(); return nonempty(); }
    if (t.text == "E") {
      take();
      expect(Tok::LParen, "'(' after E");
      Formula a = bicond();
      expect(Tok::RParen, "')'");
      return guarded([&] {
        if (!a.classical()) throw std::invalid_argument("E applied to a team-logical formula");
        return E(a);
      });
    }
    if (reserved().count(t.text)) fail("misplaced keyword '" + t.text + "'");

    auto mit = metas_.formulas.find(t.text);
    if (mit != metas_.formulas.end() && peek(1).kind != Tok::Eq) {
      take();
      return meta(t.text, mit->second);
    }

    // Term-level lookahead decides between equality, predicate and atom.
    std::size_t save = pos_;
    if (starts_equality()) {
      Term a = term();
      expect(Tok::Eq, "'='");
      Term b = term();
      return equals(a, b);
    }
    pos_ = save;
    take();
    if (peek().kind == Tok::LParen) {
      take();
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          take();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
      check_relation(t, static_cast<int>(args.size()));
      return pred(t.text, args);
    }
    if (!sig_.open && sig_.relations.count(t.text)) {
      check_relation(t, 0);
      return pred(t.text, {});
    }
    return prop(t.text);
  }

  // True if an identifier-headed term is followed by '='.
  bool starts_equality() {
    std::size_t i = pos_;
    if (toks_[i].kind != Tok::Ident) return false;
    ++i;
    if (toks_[i].kind == Tok::LParen) {
      int depth = 0;
      for (; i < toks_.size(); ++i) {
        if (toks_[i].kind == Tok::LParen) ++depth;
        else if (toks_[i].kind == Tok::RParen && --depth == 0) break;
        else if (toks_[i].kind == Tok::End) return false;
      }
      ++i;
    }
    return i < toks_.size() && toks_[i].kind == Tok::Eq;
  }

  void check_relation(const Token& t, int arity) {
    if (sig_.open) {
      auto [it, fresh] = open_rel_.emplace(t.text, arity);
      if (!fresh && it->second != arity)
        throw ParseError("arity mismatch for relation " + t.text, t.line, t.col);
      return;
    }
    auto it = sig_.relations.find(t.text);
    if (it == sig_.relations.end())
      throw ParseError("unknown relation symbol " + t.text, t.line, t.col);
    if (it->second != arity)
      throw ParseError("arity mismatch for relation " + t.text + ": expected " +
                           std::to_string(it->second) + ", got " + std::to_string(arity),
                       t.line, t.col);
  }

  void check_function(const Token& t, int arity) {
    if (sig_.open) {
      auto [it, fresh] = open_fun_.emplace(t.text, arity);
      if (!fresh && it->second != arity)
        throw ParseError("arity mismatch for function " + t.text, t.line, t.col);
      return;
    }
    auto it = sig_.functions.find(t.text);
    if (it == sig_.functions.end())
      throw ParseError("unknown function symbol " + t.text, t.line, t.col);
    if (it->second != arity)
      throw ParseError("arity mismatch for function " + t.text, t.line, t.col);
  }

  Term term() {
    if (peek().kind != Tok::Ident) fail("expected term");
    Token t = take();
    if (reserved().count(t.text)) throw ParseError("keyword used as term", t.line, t.col);
    if (metas_.terms.count(t.text)) return Term::meta(t.text);
    if (peek().kind == Tok::LParen) {
      take();
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          take();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
      check_function(t, static_cast<int>(args.size()));
      return Term::function(t.text, args);
    }
    if (sig_.constants.count(t.text)) return Term::constant(t.text);
    if (!sig_.open && sig_.functions.count(t.text))
      throw ParseError("function " + t.text + " needs arguments", t.line, t.col);
    return Term::variable(t.text);
  }
};

// ---- rendering ----

constexpr int kBicond = 0, kImpl = 1, kDisj = 2, kConj = 3, kPrefix = 4;

struct Out {
  std::string text;
  int level;
};

std::string wrap(const Out& o, bool paren) { return paren ? "(" + o.text + ")" : o.text; }

Out render_rec(const Formula& f);

Out binary(const Formula& a, const Formula& b, const char* op, int level, bool right_assoc) {
  Out l = render_rec(a), r = render_rec(b);
  bool pl = right_assoc ? l.level <= level : l.level < level;
  bool pr = right_assoc ? r.level < level : r.level <= level;
  return {wrap(l, pl) + " " + op + " " + wrap(r, pr), level};
}

Out unary(const char* op, const Formula& a) {
  Out o = render_rec(a);
  return {std::string(op) + wrap(o, o.level < kPrefix), kPrefix};
}

// True when the negation would be printed with its own operator; such a
// left operand reads better as an implication than as a disjunction.
bool sugared_not(const Formula& f) {
  Formula a, b;
  return f.body() == top() || match_conj(f, a, b);
}

bool sugared_sneg(const Formula& f) {
  Formula a, b;
  std::string x;
  return f == sfalsum() || f == nonempty() || match_sbicond(f, a, b) || match_tensor(f, a, b) ||
         match_sand(f, a, b) || match_dia(f, a) || match_exists(f, x, a) || match_E(f, a);
}

Out render_rec(const Formula& f) {
  Formula a, b;
  std::string x;
  if (is_top(f)) return {"T", kPrefix};
  switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Meta:
      return {f.name(), kPrefix};
    case Kind::FoPredicate: {
      std::string s = f.name();
      if (!f.terms().empty()) {
        s += "(";
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) s += ", ";
          s += render(f.terms()[i]);
        }
        s += ")";
      }
      return {s, kPrefix};
    }
    case Kind::FoEquality:
      return {render(f.terms()[0]) + " = " + render(f.terms()[1]), kPrefix};
    case Kind::Not:
      if (f.body() == top()) return {"F", kPrefix};
      if (match_conj(f, a, b)) return binary(a, b, "&", kConj, false);
      return unary("!", f.body());
    case Kind::Implies:
      if (match_disj(f, a, b) && !sugared_not(f.lhs())) return binary(a, b, "|", kDisj, false);
      return binary(f.lhs(), f.rhs(), "->", kImpl, true);
    case Kind::StrongNeg:
      if (f == sfalsum()) return {"FF", kPrefix};
      if (f == nonempty()) return {"NE", kPrefix};
      if (match_sbicond(f, a, b)) return binary(a, b, "<~>", kBicond, false);
      if (match_tensor(f, a, b)) return binary(a, b, "*", kDisj, false);
      if (match_sand(f, a, b)) return binary(a, b, "&&", kConj, false);
      if (match_dia(f, a)) return unary("dia ", a);
      if (match_exists(f, x, a)) return unary(("exists " + x + ". ").c_str(), a);
      if (match_E(f, a)) return {"E(" + render_rec(a).text + ")", kPrefix};
      return unary("~", f.body());
    case Kind::MatImpl:
      if (match_sor(f, a, b) && !sugared_sneg(f.lhs())) return binary(a, b, "||", kDisj, false);
      return binary(f.lhs(), f.rhs(), "~>", kImpl, true);
    case Kind::LinImpl:
      return binary(f.lhs(), f.rhs(), "-o", kImpl, true);
    case Kind::Box:
      return unary("box ", f.body());
    case Kind::Delta:
      return unary("delta ", f.body());
    case Kind::ForAll:
      return unary(("forall " + f.name() + ". ").c_str(), f.body());
    case Kind::Shriek:
      return unary(("shriek " + f.name() + ". ").c_str(), f.body());
  }
  return {"?", kPrefix};
}

}  // namespace

Formula parse(const std::string& text, const Signature& sig, const MetaDecls& metas) {
  Parser p(text, sig, metas);
  return p.run();
}

Term parse_term(const std::string& text, const Signature& sig, const MetaDecls& metas) {
  Parser p(text, sig, metas);
  return p.run_term();
}

std::string render(const Formula& f) { return render_rec(f).text; }

std::string render(const Term& t) {
  if (t.kind() != TermKind::Function) return t.name();
  std::string s = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ", ";
    s += render(t.args()[i]);
  }
  return s + ")";
}

Signature parse_signature_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Signature s;
  if (j.contains("relations"))
    for (auto& [k, v] : j["relations"].items()) s.relations[k] = v.get<int>();
  if (j.contains("functions"))
    for (auto& [k, v] : j["functions"].items()) s.functions[k] = v.get<int>();
  if (j.contains("constants"))
    for (auto& c : j["constants"]) s.constants.insert(c.get<std::string>());
  s.validate();
  return s;
}

}  // namespace teamlogic
