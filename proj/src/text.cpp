#include "lps/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lps {

namespace {

struct Token {
  enum Kind { Ident, Var, Punct, End } kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '%') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump(c);
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_ws();
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur = {Token::End, "", line, col};
      return;
    }
    char c = src[pos];
    if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      bool digits = std::isdigit(static_cast<unsigned char>(c)) != 0;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        if (digits && !std::isdigit(static_cast<unsigned char>(src[pos]))) break;
        t += src[pos];
        bump(src[pos]);
      }
      cur = {Token::Ident, t, cur.line, cur.col};
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::string t;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        t += src[pos];
        bump(src[pos]);
      }
      cur = {Token::Var, t, cur.line, cur.col};
      return;
    }
    if (c == ':' && pos + 1 < src.size() && src[pos + 1] == '-') {
      bump(':');
      bump('-');
      cur = {Token::Punct, ":-", cur.line, cur.col};
      return;
    }
    if (c == '\\' && pos + 1 < src.size() && src[pos + 1] == '=') {
      bump('\\');
      bump('=');
      cur = {Token::Punct, "\\=", cur.line, cur.col};
      return;
    }
    static const std::string singles = "()[],|.=+?^!";
    if (singles.find(c) != std::string::npos) {
      bump(c);
      cur = {Token::Punct, std::string(1, c), cur.line, cur.col};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& s) : lex(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex.cur.line, lex.cur.col); }

  bool at_punct(const std::string& p) {
    return lex.cur.kind == Token::Punct && lex.cur.text == p;
  }

  void expect_punct(const std::string& p) {
    if (!at_punct(p)) fail("expected '" + p + "'");
    lex.advance();
  }

  Term term() {
    if (lex.cur.kind == Token::Var) {
      Sym name = lex.cur.text;
      lex.advance();
      return mk_var(name);
    }
    if (lex.cur.kind == Token::Ident) {
      Sym f = lex.cur.text;
      lex.advance();
      if (at_punct("(")) {
        lex.advance();
        std::vector<Term> args{term()};
        while (at_punct(",")) {
          lex.advance();
          args.push_back(term());
        }
        expect_punct(")");
        return mk_fun(f, std::move(args));
      }
      return mk_const(f);
    }
    if (at_punct("[")) {
      lex.advance();
      if (at_punct("]")) {
        lex.advance();
        return mk_const("[]");
      }
      std::vector<Term> elems;
      auto element = [&]() {
        Term t = term();
        long reps = 1;
        if (at_punct("^")) {  // [a^3, b] repetition, used by bench templates
          lex.advance();
          if (lex.cur.kind != Token::Ident) fail("expected repetition count");
          reps = std::stol(lex.cur.text);
          lex.advance();
        }
        for (long i = 0; i < reps; ++i) elems.push_back(t);
      };
      element();
      while (at_punct(",")) {
        lex.advance();
        element();
      }
      Term tail = mk_const("[]");
      if (at_punct("|")) {
        lex.advance();
        tail = term();
      }
      expect_punct("]");
      for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        tail = mk_fun(".", {*it, tail});
      return tail;
    }
    fail("expected a term");
  }

  Atom atom() {
    if (lex.cur.kind == Token::Ident && lex.cur.text == "true") {
      // 'true' not followed by '(' is the basic atom.
      std::size_t sp = lex.pos;
      int sl = lex.line, sc = lex.col;
      Token st = lex.cur;
      lex.advance();
      if (!at_punct("(")) return mk_true();
      lex.pos = sp;
      lex.line = sl;
      lex.col = sc;
      lex.cur = st;
    }
    Term t = term();
    if (!t->var && t->head == "true" && !t->args.empty()) fail("'true' is not a predicate");
    if (at_punct("=")) {
      lex.advance();
      return mk_eq(t, term());
    }
    if (at_punct("\\=")) {
      lex.advance();
      return mk_diseq(t, term());
    }
    if (t->var) fail("a variable is not an atom");
    return mk_pred(t->head, t->args);
  }

  Goal body() {
    Goal g{atom()};
    while (at_punct(",")) {
      lex.advance();
      g.push_back(atom());
    }
    return g;
  }

  Mode modespec() {
    if (lex.cur.kind != Token::Ident) fail("expected predicate name in mode");
    Mode m;
    m.pred = lex.cur.text;
    lex.advance();
    if (at_punct("(")) {
      lex.advance();
      while (true) {
        if (at_punct("+")) {
          m.input.push_back(true);
        } else if (at_punct("?")) {
          m.input.push_back(false);
        } else {
          fail("expected '+' or '?'");
        }
        lex.advance();
        if (at_punct(",")) {
          lex.advance();
          continue;
        }
        break;
      }
      expect_punct(")");
    }
    return m;
  }

  SourceUnit unit() {
    SourceUnit u;
    while (lex.cur.kind != Token::End) {
      if (at_punct(":-")) {
        lex.advance();
        if (lex.cur.kind != Token::Ident) fail("expected directive name");
        std::string d = lex.cur.text;
        if (d == "mode") {
          lex.advance();
          u.modes.declare(modespec());
        } else if (d == "entry") {
          lex.advance();
          Atom a = atom();
          if (a.kind != AtomKind::Pred) fail("entry must be a non-basic atom");
          u.entry = a;
        } else if (d == "specialized") {
          lex.advance();
          expect_punct("(");
          Atom e = atom();
          expect_punct(",");
          Atom s = atom();
          expect_punct(")");
          u.entry = e;
          u.source_goal = s;
        } else if (d == "cap") {
          lex.advance();
          if (lex.cur.kind != Token::Ident) fail("expected cap name");
          std::string name = lex.cur.text;
          lex.advance();
          if (lex.cur.kind != Token::Ident) fail("expected cap value");
          u.caps[name] = std::stol(lex.cur.text);
          lex.advance();
        } else {
          fail("unknown directive '" + d + "'");
        }
        expect_punct(".");
        continue;
      }
      Atom h = atom();
      if (h.kind != AtomKind::Pred) fail("clause head must be a non-basic atom");
      Clause c;
      c.head = h;
      if (at_punct(":-")) {
        lex.advance();
        c.body = body();
      }
      expect_punct(".");
      u.program.add(std::move(c));
    }
    return u;
  }
};

}  // namespace

SourceUnit parse_program(const std::string& text) {
  Parser p(text);
  return p.unit();
}

SourceUnit parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

Goal parse_goal(const std::string& text) {
  Parser p(text);
  Goal g = p.body();
  if (p.at_punct(".")) p.lex.advance();
  if (p.lex.cur.kind != Token::End) p.fail("trailing input after goal");
  return g;
}

Term parse_term(const std::string& text) {
  Parser p(text);
  Term t = p.term();
  if (p.lex.cur.kind != Token::End) p.fail("trailing input after term");
  return t;
}

// --- printing ----------------------------------------------------------------

static void term_out(const Term& t, std::string& s) {
  if (t->var) {
    s += t->head;
    return;
  }
  if (t->head == "[]" && t->args.empty()) {
    s += "[]";
    return;
  }
  if (t->head == "." && t->args.size() == 2) {
    s += "[";
    term_out(t->args[0], s);
    Term tail = t->args[1];
    while (!tail->var && tail->head == "." && tail->args.size() == 2) {
      s += ",";
      term_out(tail->args[0], s);
      tail = tail->args[1];
    }
    if (!(tail->var == false && tail->head == "[]" && tail->args.empty())) {
      s += "|";
      term_out(tail, s);
    }
    s += "]";
    return;
  }
  s += t->head;
  if (!t->args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) s += ",";
      term_out(t->args[i], s);
    }
    s += ")";
  }
}

std::string term_text(const Term& t) {
  std::string s;
  term_out(t, s);
  return s;
}

std::string atom_text(const Atom& a) {
  switch (a.kind) {
    case AtomKind::True:
      return "true";
    case AtomKind::Eq:
      return term_text(a.args[0]) + " = " + term_text(a.args[1]);
    case AtomKind::Diseq:
      return term_text(a.args[0]) + " \\= " + term_text(a.args[1]);
    case AtomKind::Pred: {
      std::string s = a.pred;
      if (!a.args.empty()) {
        s += "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          if (i) s += ",";
          s += term_text(a.args[i]);
        }
        s += ")";
      }
      return s;
    }
  }
  return "";
}

std::string clause_text(const Clause& c, bool canonical) {
  Clause cc = canonical ? canon_clause(c) : c;
  std::string s = atom_text(cc.head);
  if (!cc.body.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < cc.body.size(); ++i) {
      if (i) s += ", ";
      s += atom_text(cc.body[i]);
    }
  }
  s += ".";
  return s;
}

std::string program_text(const Program& p) {
  std::string s;
  for (const auto& c : p.clauses) s += clause_text(c) + "\n";
  return s;
}

std::string source_text(const SourceUnit& u) {
  std::string s;
  for (const auto& [pred, m] : u.modes.modes) {
    s += ":- mode " + pred;
    if (!m.input.empty()) {
      s += "(";
      for (std::size_t i = 0; i < m.input.size(); ++i) {
        if (i) s += ",";
        s += m.input[i] ? "+" : "?";
      }
      s += ")";
    }
    s += ".\n";
  }
  if (u.entry && u.source_goal)
    s += ":- specialized(" + atom_text(*u.entry) + ", " + atom_text(*u.source_goal) + ").\n";
  else if (u.entry)
    s += ":- entry " + atom_text(*u.entry) + ".\n";
  s += program_text(u.program);
  return s;
}

}  // namespace lps
