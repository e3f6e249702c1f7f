#include "lps/term.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace lps {

Term mk_var(Sym name) {
  auto n = std::make_shared<TermNode>();
  n->var = true;
  n->head = std::move(name);
  n->ground = false;
  return n;
}

Term mk_fun(Sym functor, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->var = false;
  n->head = std::move(functor);
  n->ground = true;
  for (const auto& a : args) n->ground = n->ground && a->ground;
  n->args = std::move(args);
  return n;
}

bool term_eq(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->var != b->var || a->head != b->head) return false;
  if (a->var) return true;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_eq(a->args[i], b->args[i])) return false;
  return true;
}

int term_depth(const Term& t) {
  int d = 0;
  for (const auto& a : t->args) d = std::max(d, term_depth(a));
  return d + 1;
}

std::size_t term_size(const Term& t) {
  std::size_t s = 1;
  for (const auto& a : t->args) s += term_size(a);
  return s;
}

bool occurs(const Sym& v, const Term& t) {
  if (t->ground) return false;
  if (t->var) return t->head == v;
  for (const auto& a : t->args)
    if (occurs(v, a)) return true;
  return false;
}

void collect_vars(const Term& t, std::vector<Sym>& order, std::set<Sym>& seen) {
  if (t->ground) return;
  if (t->var) {
    if (seen.insert(t->head).second) order.push_back(t->head);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, order, seen);
}

void collect_vars(const Atom& a, std::vector<Sym>& order, std::set<Sym>& seen) {
  for (const auto& t : a.args) collect_vars(t, order, seen);
}

void collect_vars(const Goal& g, std::vector<Sym>& order, std::set<Sym>& seen) {
  for (const auto& a : g) collect_vars(a, order, seen);
}

void collect_vars(const Clause& c, std::vector<Sym>& order, std::set<Sym>& seen) {
  collect_vars(c.head, order, seen);
  collect_vars(c.body, order, seen);
}

template <typename T>
static std::set<Sym> vars_set(const T& x) {
  std::vector<Sym> order;
  std::set<Sym> seen;
  collect_vars(x, order, seen);
  return seen;
}

std::set<Sym> vars_of(const Clause& c) { return vars_set(c); }
std::set<Sym> vars_of(const Term& t) { return vars_set(t); }
std::set<Sym> vars_of(const Goal& g) { return vars_set(g); }
std::set<Sym> vars_of(const Atom& a) { return vars_set(a); }

bool atom_eq(const Atom& a, const Atom& b) {
  if (a.kind != b.kind || a.pred != b.pred) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!term_eq(a.args[i], b.args[i])) return false;
  return true;
}

bool clause_eq(const Clause& a, const Clause& b) {
  if (!atom_eq(a.head, b.head) || a.body.size() != b.body.size()) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!atom_eq(a.body[i], b.body[i])) return false;
  return true;
}

void Program::add(Clause c) {
  Clause cc = canon_clause(c);
  for (const auto& existing : clauses)
    if (clause_eq(canon_clause(existing), cc)) return;
  clauses.push_back(std::move(c));
}

std::vector<const Clause*> Program::clauses_for(const Sym& pred) const {
  std::vector<const Clause*> out;
  for (const auto& c : clauses)
    if (c.head.pred == pred) out.push_back(&c);
  return out;
}

std::set<Sym> Program::preds() const {
  std::set<Sym> out;
  for (const auto& c : clauses) out.insert(c.head.pred);
  return out;
}

std::set<Sym> Program::body_preds() const {
  std::set<Sym> out;
  for (const auto& c : clauses)
    for (const auto& a : c.body)
      if (a.kind == AtomKind::Pred) out.insert(a.pred);
  return out;
}

static void fun_syms(const Term& t, std::set<std::pair<Sym, int>>& out) {
  if (t->var) return;
  out.insert({t->head, static_cast<int>(t->args.size())});
  for (const auto& a : t->args) fun_syms(a, out);
}

std::set<std::pair<Sym, int>> Program::function_symbols() const {
  std::set<std::pair<Sym, int>> out;
  auto scan_atom = [&](const Atom& a) {
    for (const auto& t : a.args) fun_syms(t, out);
  };
  for (const auto& c : clauses) {
    scan_atom(c.head);
    for (const auto& a : c.body) scan_atom(a);
  }
  return out;
}

std::vector<Clause> depends_on(const Sym& p, const Program& prog) {
  std::set<Sym> reach;  // predicates q with delta+(p,q)
  std::deque<Sym> work{p};
  std::set<Sym> expanded;
  while (!work.empty()) {
    Sym q = work.front();
    work.pop_front();
    if (!expanded.insert(q).second) continue;
    for (const auto& c : prog.clauses) {
      if (c.head.pred != q) continue;
      for (const auto& a : c.body)
        if (a.kind == AtomKind::Pred && reach.insert(a.pred).second) work.push_back(a.pred);
    }
  }
  std::vector<Clause> out;
  for (const auto& c : prog.clauses)
    if (c.head.pred == p || reach.count(c.head.pred)) out.push_back(c);
  return out;
}

const Term* Subst::find(const Sym& v) const {
  for (const auto& [x, t] : items)
    if (x == v) return &t;
  return nullptr;
}

Term apply(const Subst& s, const Term& t) {
  if (t->ground || s.empty()) return t;
  if (t->var) {
    const Term* b = s.find(t->head);
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    Term na = apply(s, a);
    changed = changed || na.get() != a.get();
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return mk_fun(t->head, std::move(args));
}

Atom apply(const Subst& s, const Atom& a) {
  Atom out = a;
  for (auto& t : out.args) t = apply(s, t);
  return out;
}

Goal apply(const Subst& s, const Goal& g) {
  Goal out;
  out.reserve(g.size());
  for (const auto& a : g) out.push_back(apply(s, a));
  return out;
}

Clause apply(const Subst& s, const Clause& c) {
  Clause out;
  out.id = c.id;
  out.head = apply(s, c.head);
  out.body = apply(s, c.body);
  return out;
}

void Subst::bind(const Sym& v, Term t) {
  Subst one;
  one.items.push_back({v, t});
  for (auto& [x, u] : items) u = apply(one, u);
  items.push_back({v, std::move(t)});
}

Subst compose(const Subst& a, const Subst& b) {
  Subst out;
  for (const auto& [x, t] : a.items) out.items.push_back({x, apply(b, t)});
  for (const auto& [y, t] : b.items)
    if (!a.find(y)) out.items.push_back({y, t});
  return out;
}

Subst restrict_to(const Subst& s, const std::set<Sym>& vars) {
  Subst out;
  for (const auto& [x, t] : s.items)
    if (vars.count(x)) out.items.push_back({x, t});
  return out;
}

static bool mgu_work(std::deque<std::pair<Term, Term>>& work, Subst& s) {
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    a = apply(s, a);
    b = apply(s, b);
    if (a->var && b->var && a->head == b->head) continue;
    if (a->var) {
      if (occurs(a->head, b)) return false;
      s.bind(a->head, b);
      continue;
    }
    if (b->var) {
      if (occurs(b->head, a)) return false;
      s.bind(b->head, a);
      continue;
    }
    if (a->head != b->head || a->args.size() != b->args.size()) return false;
    for (std::size_t i = a->args.size(); i > 0; --i)
      work.push_front({a->args[i - 1], b->args[i - 1]});
  }
  return true;
}

std::optional<Subst> mgu(const Term& a, const Term& b) {
  std::deque<std::pair<Term, Term>> work{{a, b}};
  Subst s;
  if (!mgu_work(work, s)) return std::nullopt;
  return s;
}

std::optional<Subst> mgu_tuple(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::deque<std::pair<Term, Term>> work;
  for (std::size_t i = 0; i < a.size(); ++i) work.push_back({a[i], b[i]});
  Subst s;
  if (!mgu_work(work, s)) return std::nullopt;
  return s;
}

std::optional<Subst> mgu_atom(const Atom& a, const Atom& b) {
  if (a.kind != AtomKind::Pred || b.kind != AtomKind::Pred) return std::nullopt;
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  return mgu_tuple(a.args, b.args);
}

bool match_term(const Term& pattern, const Term& subject, Subst& out) {
  if (pattern->var) {
    if (const Term* bound = out.find(pattern->head)) return term_eq(*bound, subject);
    out.items.push_back({pattern->head, subject});
    return true;
  }
  if (subject->var) return false;
  if (pattern->head != subject->head || pattern->args.size() != subject->args.size()) return false;
  for (std::size_t i = 0; i < pattern->args.size(); ++i)
    if (!match_term(pattern->args[i], subject->args[i], out)) return false;
  return true;
}

bool match_atom(const Atom& pattern, const Atom& subject, Subst& out) {
  if (pattern.kind != subject.kind || pattern.pred != subject.pred) return false;
  if (pattern.args.size() != subject.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], subject.args[i], out)) return false;
  return true;
}

// Variant check: one-pass bijective variable alignment.
static bool variant_walk(const Term& a, const Term& b, Subst& a2b, std::set<Sym>& used_b) {
  if (a->var != b->var) return false;
  if (a->var) {
    if (const Term* bound = a2b.find(a->head)) return term_eq(*bound, b);
    if (used_b.count(b->head)) return false;
    a2b.items.push_back({a->head, b});
    used_b.insert(b->head);
    return true;
  }
  if (a->head != b->head || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!variant_walk(a->args[i], b->args[i], a2b, used_b)) return false;
  return true;
}

bool is_variant(const Term& a, const Term& b) {
  Subst m;
  std::set<Sym> used;
  return variant_walk(a, b, m, used);
}

bool is_variant_tuple(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  Subst m;
  std::set<Sym> used;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!variant_walk(a[i], b[i], m, used)) return false;
  return true;
}

static bool variant_atom_walk(const Atom& a, const Atom& b, Subst& m, std::set<Sym>& used) {
  if (a.kind != b.kind || a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!variant_walk(a.args[i], b.args[i], m, used)) return false;
  return true;
}

std::optional<Subst> variant_clause(const Clause& a, const Clause& b) {
  if (a.body.size() != b.body.size()) return std::nullopt;
  Subst m;
  std::set<Sym> used;
  if (!variant_atom_walk(a.head, b.head, m, used)) return std::nullopt;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!variant_atom_walk(a.body[i], b.body[i], m, used)) return std::nullopt;
  return m;
}

Clause rename_apart(const Clause& c, FreshVars& fresh) {
  std::set<Sym> none;
  return rename_apart(c, none, fresh);
}

Clause rename_apart(const Clause& c, const std::set<Sym>& forbidden, FreshVars& fresh) {
  std::vector<Sym> order;
  std::set<Sym> seen;
  collect_vars(c, order, seen);
  Subst ren;
  for (const auto& v : order) {
    Sym nv = fresh.next();
    while (forbidden.count(nv)) nv = fresh.next();
    ren.items.push_back({v, mk_var(nv)});
  }
  return apply(ren, c);
}

// --- anti-unification -------------------------------------------------------

namespace {

std::string tuple_key(const std::vector<Term>& ts);

std::string term_key(const Term& t) {
  std::string s = t->var ? "$" + t->head : t->head;
  if (!t->args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) s += ",";
      s += term_key(t->args[i]);
    }
    s += ")";
  }
  return s;
}

std::string tuple_key(const std::vector<Term>& ts) {
  std::string s;
  for (const auto& t : ts) s += term_key(t) + ";";
  return s;
}

struct MsgBuilder {
  FreshVars& fresh;
  std::map<std::string, std::pair<Sym, std::vector<Term>>> table;

  Term gen(const std::vector<Term>& ts) {
    bool all_eq = true;
    for (std::size_t i = 1; i < ts.size(); ++i) all_eq = all_eq && term_eq(ts[0], ts[i]);
    if (all_eq) return ts[0];
    bool same_fun = !ts[0]->var;
    for (std::size_t i = 1; same_fun && i < ts.size(); ++i)
      same_fun = !ts[i]->var && ts[i]->head == ts[0]->head &&
                 ts[i]->args.size() == ts[0]->args.size();
    if (same_fun) {
      std::vector<Term> args;
      for (std::size_t j = 0; j < ts[0]->args.size(); ++j) {
        std::vector<Term> sub;
        sub.reserve(ts.size());
        for (const auto& t : ts) sub.push_back(t->args[j]);
        args.push_back(gen(sub));
      }
      return mk_fun(ts[0]->head, std::move(args));
    }
    std::string key = tuple_key(ts);
    auto it = table.find(key);
    if (it == table.end()) it = table.emplace(key, std::make_pair(fresh.next(), ts)).first;
    return mk_var(it->second.first);
  }
};

}  // namespace

MsgResult msg_tuple(const std::vector<std::vector<Term>>& tuples, FreshVars& fresh) {
  if (tuples.empty()) throw std::invalid_argument("msg_tuple: empty input");
  std::size_t arity = tuples[0].size();
  for (const auto& t : tuples)
    if (t.size() != arity) throw std::invalid_argument("msg_tuple: unequal arity");
  MsgBuilder b{fresh, {}};
  MsgResult out;
  for (std::size_t j = 0; j < arity; ++j) {
    std::vector<Term> col;
    col.reserve(tuples.size());
    for (const auto& t : tuples) col.push_back(t[j]);
    out.general.push_back(b.gen(col));
  }
  out.insts.resize(tuples.size());
  for (const auto& [key, entry] : b.table) {
    (void)key;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      out.insts[i].items.push_back({entry.first, entry.second[i]});
  }
  return out;
}

Sym canon_name(int i) {
  Sym base(1, static_cast<char>('A' + i % 26));
  if (i >= 26) base += std::to_string(i / 26);
  return base;
}

Clause canon_clause(const Clause& c) {
  std::vector<Sym> order;
  std::set<Sym> seen;
  collect_vars(c, order, seen);
  Subst ren;
  for (std::size_t i = 0; i < order.size(); ++i)
    ren.items.push_back({order[i], mk_var(canon_name(static_cast<int>(i)))});
  return apply(ren, c);
}

}  // namespace lps
