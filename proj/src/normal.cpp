#include "lps/normal.hpp"

#include <algorithm>
#include <map>

namespace lps {

namespace {

// All disequations rewritten to the atomic shape X≠t with t unifiable with X.
// Case 2 splits a clause into one clause per argument pair; case 3 and
// non-unifiable equalities remove clauses/atoms.
void atomize(const Clause& c, std::vector<Clause>& out) {
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    const Atom& a = c.body[i];
    if (a.kind != AtomKind::Diseq) continue;
    const Term& l = a.args[0];
    const Term& r = a.args[1];
    if (l->var && r->var && l->head == r->head) return;  // X≠X: clause removed
    if (!unifiable(l, r)) {  // always holds operationally: drop the atom
      Clause d = c;
      d.body.erase(d.body.begin() + static_cast<long>(i));
      atomize(d, out);
      return;
    }
    if (l->var) continue;
    if (r->var) {  // t≠X becomes X≠t
      Clause d = c;
      d.body[i] = mk_diseq(r, l);
      atomize(d, out);
      return;
    }
    // f(t1..tm) ≠ f(u1..um), unifiable, so same functor and arity.
    for (std::size_t j = 0; j < l->args.size(); ++j) {
      Clause d = c;
      d.body[i] = mk_diseq(l->args[j], r->args[j]);
      atomize(d, out);
    }
    return;
  }
  out.push_back(c);
}

// First-occurrence position of each variable in the head (depth-first).
std::map<Sym, int> head_positions(const Clause& c) {
  std::vector<Sym> order;
  std::set<Sym> seen;
  collect_vars(c.head, order, seen);
  std::map<Sym, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return pos;
}

void orient(Clause& c, const ModeTable& m) {
  std::set<Sym> inputs = input_vars(c.head, m);
  std::map<Sym, int> pos = head_positions(c);
  for (auto& a : c.body) {
    if (a.kind != AtomKind::Diseq) continue;
    const Term& x = a.args[0];
    const Term& y = a.args[1];
    if (!x->var || !y->var) continue;
    bool xi = inputs.count(x->head), yi = inputs.count(y->head);
    bool flip = (!xi && yi) || (xi && yi && pos[y->head] < pos[x->head]);
    if (flip) a = mk_diseq(y, x);
  }
}

// d1ρ == d2 for some bijection ρ between the locals of d1 and of d2; shared
// (non-local) variables must coincide.
bool dup_walk(const Term& a, const Term& b, const std::set<Sym>& la, const std::set<Sym>& lb,
              Subst& map, std::set<Sym>& used) {
  if (a->var != b->var) return false;
  if (a->var) {
    bool a_local = la.count(a->head) != 0;
    bool b_local = lb.count(b->head) != 0;
    if (a_local != b_local) return false;
    if (!a_local) return a->head == b->head;
    if (const Term* bound = map.find(a->head)) return term_eq(*bound, b);
    if (used.count(b->head)) return false;
    map.items.push_back({a->head, b});
    used.insert(b->head);
    return true;
  }
  if (a->head != b->head || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!dup_walk(a->args[i], b->args[i], la, lb, map, used)) return false;
  return true;
}

bool dup_diseq(const Clause& c, std::size_t i, std::size_t j) {
  std::set<Sym> li = local_vars(c, i), lj = local_vars(c, j);
  if (li.size() != lj.size()) return false;
  Subst map;
  std::set<Sym> used;
  return dup_walk(c.body[i].args[0], c.body[j].args[0], li, lj, map, used) &&
         dup_walk(c.body[i].args[1], c.body[j].args[1], li, lj, map, used);
}

void dedup(Clause& c) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < c.body.size() && !again; ++i) {
      if (c.body[i].kind != AtomKind::Diseq) continue;
      for (std::size_t j = i + 1; j < c.body.size() && !again; ++j) {
        if (c.body[j].kind != AtomKind::Diseq) continue;
        if (dup_diseq(c, i, j)) {
          c.body.erase(c.body.begin() + static_cast<long>(j));
          again = true;
        }
      }
    }
  }
}

void promote(Clause& c) {
  Goal diseqs, rest;
  for (auto& a : c.body)
    (a.kind == AtomKind::Diseq ? diseqs : rest).push_back(a);
  diseqs.insert(diseqs.end(), rest.begin(), rest.end());
  c.body = std::move(diseqs);
}

}  // namespace

std::vector<Clause> normalize_clauses(const Clause& c, const ModeTable& m) {
  if (!clause_is_safe(c, m))
    throw NormalizeError("normalize: clause for " + c.head.pred + " is not safe");
  std::vector<Clause> atomized;
  atomize(c, atomized);
  for (auto& d : atomized) {
    orient(d, m);
    dedup(d);
    promote(d);
  }
  return atomized;
}

Clause normalize_clause(const Clause& c, const ModeTable& m) {
  auto out = normalize_clauses(c, m);
  if (out.size() != 1)
    throw NormalizeError("normalize: clause for " + c.head.pred + " does not normalize to a single clause");
  return out[0];
}

bool is_normal_form(const Clause& c, const ModeTable& m) {
  if (!clause_is_safe(c, m)) return false;
  std::set<Sym> inputs = input_vars(c.head, m);
  auto pos = head_positions(c);
  bool seen_nondiseq = false;
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    const Atom& a = c.body[i];
    if (a.kind != AtomKind::Diseq) {
      seen_nondiseq = true;
      continue;
    }
    if (seen_nondiseq) return false;  // N2
    const Term& x = a.args[0];
    const Term& t = a.args[1];
    if (!x->var) return false;                                    // N1
    if (t->var && t->head == x->head) return false;               // N1
    if (!unifiable(x, t)) return false;                           // N1
    if (t->var) {
      bool xi = inputs.count(x->head), ti = inputs.count(t->head);
      if (ti && !xi) return false;                                // N4
      if (xi && ti && pos[t->head] < pos[x->head]) return false;  // N3
    }
    for (std::size_t j = i + 1; j < c.body.size(); ++j)
      if (c.body[j].kind == AtomKind::Diseq && dup_diseq(c, i, j)) return false;  // N5
  }
  return true;
}

Goal guard(const Clause& c) {
  Goal g;
  for (const auto& a : c.body) {
    if (a.kind != AtomKind::Diseq) break;
    g.push_back(a);
  }
  return g;
}

std::pair<Goal, Goal> split_guard(const Clause& c) {
  Goal g = guard(c);
  Goal rest(c.body.begin() + static_cast<long>(g.size()), c.body.end());
  return {g, rest};
}

}  // namespace lps
