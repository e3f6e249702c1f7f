#include "lps/interp.hpp"

#include <deque>
#include <map>

namespace lps {

// --- step (pure, one-step relation) ----------------------------------------

std::vector<std::pair<Goal, Subst>> step(const Goal& g, const Program& p, FreshVars& fresh) {
  std::vector<std::pair<Goal, Subst>> out;
  if (g.empty()) return out;
  const Atom& a = g[0];
  Goal rest(g.begin() + 1, g.end());
  switch (a.kind) {
    case AtomKind::True:
      out.push_back({rest, Subst{}});
      break;
    case AtomKind::Eq: {
      auto th = mgu(a.args[0], a.args[1]);
      if (th) out.push_back({apply(*th, rest), *th});
      break;
    }
    case AtomKind::Diseq:
      if (!unifiable(a.args[0], a.args[1])) out.push_back({rest, Subst{}});
      break;
    case AtomKind::Pred: {
      std::set<Sym> forbidden = vars_of(g);
      for (const auto& c : p.clauses) {
        if (c.head.pred != a.pred || c.head.args.size() != a.args.size()) continue;
        Clause rc = rename_apart(c, forbidden, fresh);
        auto th = mgu_atom(a, rc.head);
        if (!th) continue;
        Goal next = rc.body;
        next.insert(next.end(), rest.begin(), rest.end());
        out.push_back({apply(*th, next), *th});
      }
      break;
    }
  }
  return out;
}

// --- solve (trail-based DFS engine) -----------------------------------------

namespace {

constexpr const char* kRtPrefix = "_R";

bool is_rt_var(const Term& t) {
  return t->var && t->head.size() > 2 && t->head[0] == '_' && t->head[1] == 'R';
}

std::size_t rt_id(const Term& t) { return std::stoul(t->head.substr(2)); }

struct GoalNode {
  Atom atom;
  std::shared_ptr<const GoalNode> next;
};
using GoalList = std::shared_ptr<const GoalNode>;

GoalList cons(Atom a, GoalList tail) {
  auto n = std::make_shared<GoalNode>();
  n->atom = std::move(a);
  n->next = std::move(tail);
  return n;
}

struct Engine {
  const Program& prog;
  const ModeTable* monitor;
  Limits lim;
  std::vector<Term> cells;
  std::vector<std::size_t> trail;
  SolveResult res;
  bool stop = false;

  Term fresh_var() {
    cells.push_back(nullptr);
    return mk_var(kRtPrefix + std::to_string(cells.size() - 1));
  }

  Term deref(Term t) const {
    while (is_rt_var(t)) {
      const Term& b = cells[rt_id(t)];
      if (!b) break;
      t = b;
    }
    return t;
  }

  bool occurs_rt(std::size_t v, const Term& t0) const {
    Term t = deref(t0);
    if (t->ground) return false;
    if (t->var) return is_rt_var(t) && rt_id(t) == v;
    for (const auto& a : t->args)
      if (occurs_rt(v, a)) return true;
    return false;
  }

  void bind(std::size_t v, Term t) {
    cells[v] = std::move(t);
    trail.push_back(v);
  }

  bool unify(const Term& a0, const Term& b0) {
    Term a = deref(a0), b = deref(b0);
    if (a->var && b->var && a->head == b->head) return true;
    if (is_rt_var(a)) {
      if (occurs_rt(rt_id(a), b)) return false;
      bind(rt_id(a), b);
      return true;
    }
    if (is_rt_var(b)) {
      if (occurs_rt(rt_id(b), a)) return false;
      bind(rt_id(b), a);
      return true;
    }
    if (a->var || b->var) return a->var && b->var && a->head == b->head;
    if (a->head != b->head || a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!unify(a->args[i], b->args[i])) return false;
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      cells[trail.back()] = nullptr;
      trail.pop_back();
    }
  }

  Term reify(const Term& t0) const {
    Term t = deref(t0);
    if (t->ground || t->var) return t;
    std::vector<Term> args;
    args.reserve(t->args.size());
    bool changed = false;
    for (const auto& a : t->args) {
      Term r = reify(a);
      changed = changed || r.get() != a.get();
      args.push_back(std::move(r));
    }
    return changed ? mk_fun(t->head, std::move(args)) : t;
  }

  Atom reify(const Atom& a) const {
    Atom out = a;
    for (auto& t : out.args) t = reify(t);
    return out;
  }

  bool ground_rt(const Term& t0) const {
    Term t = deref(t0);
    if (t->ground) return true;
    if (t->var) return false;
    for (const auto& a : t->args)
      if (!ground_rt(a)) return false;
    return true;
  }

  Term instantiate(const Term& t, std::map<Sym, Term>& env) {
    if (t->ground) return t;
    if (t->var) {
      auto it = env.find(t->head);
      if (it == env.end()) it = env.emplace(t->head, fresh_var()).first;
      return it->second;
    }
    std::vector<Term> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) args.push_back(instantiate(a, env));
    return mk_fun(t->head, std::move(args));
  }

  Atom instantiate(const Atom& a, std::map<Sym, Term>& env) {
    Atom out = a;
    for (auto& t : out.args) t = instantiate(t, env);
    return out;
  }

  Goal reify_goal(GoalList g) const {
    Goal out;
    for (; g; g = g->next) out.push_back(reify(g->atom));
    return out;
  }

  std::vector<std::pair<Sym, Term>> query;  // original name -> runtime var

  void record_answer() {
    Subst ans;
    std::map<Sym, Sym> anon;
    for (const auto& [name, rtv] : query) {
      Term t = reify(rtv);
      // Leftover runtime variables are anonymized per answer.
      t = anonymize(t, anon);
      if (!(t->var && t->head == name)) ans.items.push_back({name, t});
    }
    res.answers.push_back(std::move(ans));
    if (res.answers.size() >= lim.max_answers) {
      stop = true;
      res.exhausted = false;
    }
  }

  Term anonymize(const Term& t, std::map<Sym, Sym>& anon) {
    if (t->ground) return t;
    if (t->var) {
      if (!is_rt_var(t)) return t;
      auto it = anon.find(t->head);
      if (it == anon.end())
        it = anon.emplace(t->head, "_" + std::to_string(anon.size())).first;
      return mk_var(it->second);
    }
    std::vector<Term> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) args.push_back(anonymize(a, anon));
    return mk_fun(t->head, std::move(args));
  }

  void run(const GoalList& g, std::size_t depth) {
    if (stop) return;
    if (++res.nodes_explored > lim.max_nodes) {
      stop = true;
      res.exhausted = false;
      return;
    }
    if (!g) {
      record_answer();
      return;
    }
    if (depth >= lim.max_depth) {
      res.exhausted = false;
      return;
    }
    const Atom& a = g->atom;
    switch (a.kind) {
      case AtomKind::True:
        run(g->next, depth + 1);
        return;
      case AtomKind::Eq: {
        std::size_t mark = trail.size();
        if (unify(a.args[0], a.args[1])) run(g->next, depth + 1);
        undo(mark);
        return;
      }
      case AtomKind::Diseq: {
        std::size_t mark = trail.size();
        bool u = unify(a.args[0], a.args[1]);
        undo(mark);
        if (!u) run(g->next, depth + 1);
        return;
      }
      case AtomKind::Pred: {
        if (monitor) {
          bool ok = monitor->has(a.pred) &&
                    monitor->modes.at(a.pred).input.size() == a.args.size();
          if (ok) {
            const Mode& mode = monitor->modes.at(a.pred);
            for (std::size_t i = 0; ok && i < a.args.size(); ++i)
              if (mode.input[i] && !ground_rt(a.args[i])) ok = false;
          }
          if (!ok) res.mode_violations.push_back({reify_goal(g), reify(a)});
        }
        for (const auto& c : prog.clauses) {
          if (stop) return;
          if (c.head.pred != a.pred || c.head.args.size() != a.args.size()) continue;
          std::size_t mark = trail.size();
          std::map<Sym, Term> env;
          Atom head = instantiate(c.head, env);
          if (unify_atom(a, head)) {
            GoalList next = g->next;
            for (auto it = c.body.rbegin(); it != c.body.rend(); ++it)
              next = cons(instantiate(*it, env), next);
            run(next, depth + 1);
          }
          undo(mark);
        }
        return;
      }
    }
  }

  bool unify_atom(const Atom& a, const Atom& b) {
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!unify(a.args[i], b.args[i])) return false;
    return true;
  }
};

}  // namespace

SolveResult solve(const Goal& g, const Program& p, const ModeTable* monitor, const Limits& lim) {
  Engine e{p, monitor, lim, {}, {}, {}, false};
  std::map<Sym, Term> env;
  GoalList gl;
  Goal rg;
  for (const auto& a : g) rg.push_back(e.instantiate(a, env));
  for (auto it = rg.rbegin(); it != rg.rend(); ++it) gl = cons(*it, gl);
  std::vector<Sym> order;
  std::set<Sym> seen;
  collect_vars(g, order, seen);
  for (const auto& v : order) e.query.push_back({v, env.at(v)});
  e.run(gl, 0);
  return std::move(e.res);
}

// --- big-step ----------------------------------------------------------------

std::vector<std::pair<long, Goal>> big_step(const Goal& g, const Program& p, FreshVars& fresh,
                                            std::size_t max_basic) {
  if (g.empty() || is_basic(g[0]))
    throw std::invalid_argument("big_step: leftmost atom must be non-basic");
  std::vector<std::pair<long, Goal>> out;
  const Atom& a = g[0];
  Goal rest(g.begin() + 1, g.end());
  std::set<Sym> forbidden = vars_of(g);
  for (std::size_t ci = 0; ci < p.clauses.size(); ++ci) {
    const Clause& c = p.clauses[ci];
    if (c.head.pred != a.pred || c.head.args.size() != a.args.size()) continue;
    Clause rc = rename_apart(c, forbidden, fresh);
    auto th = mgu_atom(a, rc.head);
    if (!th) continue;
    Goal goal = rc.body;
    goal.insert(goal.end(), rest.begin(), rest.end());
    goal = apply(*th, goal);
    bool ok = true;
    std::size_t steps = 0;
    while (!goal.empty() && is_basic(goal[0]) && steps++ < max_basic) {
      Atom b = goal[0];
      Goal tail(goal.begin() + 1, goal.end());
      if (b.kind == AtomKind::True) {
        goal = std::move(tail);
      } else if (b.kind == AtomKind::Eq) {
        auto th2 = mgu(b.args[0], b.args[1]);
        if (!th2) {
          ok = false;
          break;
        }
        goal = apply(*th2, tail);
      } else {
        if (unifiable(b.args[0], b.args[1])) {
          ok = false;
          break;
        }
        goal = std::move(tail);
      }
    }
    if (!ok) continue;
    if (goal.empty() || !is_basic(goal[0])) out.push_back({static_cast<long>(ci), goal});
  }
  return out;
}

static std::string goal_key(const Goal& g) {
  Clause c{mk_pred("$goal", {}), g};
  Clause cc = canon_clause(c);
  std::string s;
  for (const auto& a : cc.body) s += atom_text(a) + ",";
  return s;
}

DetVerdict dynamic_determinism_check(const Atom& a, const Program& p, const ModeTable& m,
                                     std::size_t bound) {
  if (!atom_satisfies_mode(a, m))
    throw ModeError("dynamic_determinism_check: atom does not satisfy the mode");
  FreshVars fresh;
  fresh.n = 1000000;  // clear of fixture variable names
  bool deterministic = true;
  std::deque<Goal> work{{Goal{a}}};
  std::set<std::string> explored;
  while (!work.empty()) {
    if (explored.size() >= bound) return DetVerdict::Inconclusive;
    Goal g = work.front();
    work.pop_front();
    if (!explored.insert(goal_key(g)).second) continue;
    auto succs = big_step(g, p, fresh);
    if (succs.size() > 1) deterministic = false;
    std::size_t non_true = 0;
    for (const auto& [ci, g2] : succs) {
      (void)ci;
      if (!g2.empty()) {
        ++non_true;
        work.push_back(g2);
      }
    }
    if (non_true > 1) return DetVerdict::Neither;
  }
  return deterministic ? DetVerdict::Deterministic : DetVerdict::Semideterministic;
}

// --- disequation satisfiability (Def 5.6) ------------------------------------

static bool diseq_sat1(const Term& l, const Term& r, const std::set<Sym>& v) {
  if (l->var) {
    if (r->var) {
      if (l->head == r->head) return false;
      return v.count(l->head) && v.count(r->head);
    }
    return v.count(l->head) != 0;
  }
  if (r->var) return diseq_sat1(r, l, v);
  if (l->head != r->head || l->args.size() != r->args.size()) return true;
  for (std::size_t i = 0; i < l->args.size(); ++i)
    if (diseq_sat1(l->args[i], r->args[i], v)) return true;
  return false;
}

bool diseq_satisfiable(const Goal& diseqs, const std::set<Sym>& v) {
  for (const auto& a : diseqs) {
    if (a.kind == AtomKind::True) continue;
    if (a.kind != AtomKind::Diseq)
      throw std::invalid_argument("diseq_satisfiable: non-disequation atom");
    if (!diseq_sat1(a.args[0], a.args[1], v)) return false;
  }
  return true;
}

// --- mutual exclusion (Def 5.9) ----------------------------------------------

bool mutually_exclusive(const Clause& c1, const Clause& c2, const ModeTable& m) {
  if (c1.head.pred != c2.head.pred || c1.head.args.size() != c2.head.args.size()) return true;
  FreshVars fresh;
  fresh.n = 2000000;
  Clause r1 = rename_apart(c1, fresh);
  Clause r2 = rename_apart(c2, vars_of(r1), fresh);
  std::vector<Term> t1 = input_args(r1.head, m);
  std::vector<Term> t2 = input_args(r2.head, m);
  auto th = mgu_tuple(t1, t2);
  if (!th) return true;
  Goal conj = guard(r1);
  Goal g2 = guard(r2);
  conj.insert(conj.end(), g2.begin(), g2.end());
  conj = apply(*th, conj);
  std::set<Sym> v;
  for (const auto& t : t1) {
    auto vs = vars_of(apply(*th, t));
    v.insert(vs.begin(), vs.end());
  }
  for (const auto& t : t2) {
    auto vs = vars_of(apply(*th, t));
    v.insert(vs.begin(), vs.end());
  }
  return !diseq_satisfiable(conj, v);
}

// --- Prop 5.10 sufficient condition ------------------------------------------

static bool is_unit(const Clause& c) {
  for (const auto& a : c.body)
    if (!is_basic(a)) return false;
  return true;
}

SemidetReport semidet_static_check(const Program& p, const ModeTable& m) {
  SemidetReport rep;
  for (const auto& c : p.clauses) {
    std::size_t nb = 0;
    for (const auto& a : c.body)
      if (a.kind == AtomKind::Pred) ++nb;
    if (nb > 1) {
      rep.linear = false;
      rep.details.push_back("not linear: clause for " + c.head.pred);
    }
    if (!clause_is_safe(c, m)) {
      rep.safe = false;
      rep.details.push_back("not safe: clause for " + c.head.pred);
    }
  }
  auto wm = check_well_moded(p, m);
  if (!wm.ok) {
    rep.well_moded = false;
    for (const auto& v : wm.violations) rep.details.push_back("well-modedness: " + v);
  }
  std::vector<const Clause*> nonunit;
  for (const auto& c : p.clauses)
    if (!is_unit(c)) nonunit.push_back(&c);
  for (std::size_t i = 0; i < nonunit.size(); ++i)
    for (std::size_t j = i + 1; j < nonunit.size(); ++j)
      if (!mutually_exclusive(*nonunit[i], *nonunit[j], m)) {
        rep.pairwise_me = false;
        rep.details.push_back("not mutually exclusive: clauses for " + nonunit[i]->head.pred);
      }
  return rep;
}

// --- bounded least model -------------------------------------------------------

namespace {

struct Universe {
  std::vector<Term> terms;
  std::set<std::string> keys;

  bool contains(const Term& t) const { return keys.count(atom_text(mk_pred("$t", {t}))); }
  void add(const Term& t) {
    std::string k = atom_text(mk_pred("$t", {t}));
    if (keys.insert(k).second) terms.push_back(t);
  }
};

void ground_subterms(const Term& t, Universe& u) {
  if (!t->ground) {
    for (const auto& a : t->args) ground_subterms(a, u);
    return;
  }
  u.add(t);
  for (const auto& a : t->args) ground_subterms(a, u);
}

struct LmEval {
  const Program& prog;
  const Universe& uni;
  std::map<Sym, std::vector<std::vector<Term>>>& facts;
  std::set<std::string>& fact_keys;
  std::size_t budget;
  bool changed = false;

  void spend(std::size_t n = 1) {
    if (n >= budget) throw LeastModelError("least_model_bounded: instance cap exceeded");
    budget -= n;
  }

  void emit(const Atom& head_inst) {
    for (const auto& t : head_inst.args)
      if (!uni.contains(t)) return;
    std::string k = atom_text(head_inst);
    if (fact_keys.insert(k).second) {
      facts[head_inst.pred].push_back(head_inst.args);
      changed = true;
    }
  }

  // Enumerate leftover variables of the head and deferred disequations over
  // the universe, then check the disequations as ground non-identity.
  void finish(const Atom& head, const Goal& deferred, const Subst& env) {
    Atom h = apply(env, head);
    Goal ds = apply(env, deferred);
    std::vector<Sym> order;
    std::set<Sym> seen;
    collect_vars(h, order, seen);
    collect_vars(ds, order, seen);
    enumerate(h, ds, order, 0, Subst{});
  }

  void enumerate(const Atom& h, const Goal& ds, const std::vector<Sym>& vars, std::size_t i,
                 Subst env) {
    if (i == vars.size()) {
      spend();
      for (const auto& d : apply(env, ds))
        if (term_eq(d.args[0], d.args[1])) return;
      emit(apply(env, h));
      return;
    }
    for (const auto& t : uni.terms) {
      Subst e = env;
      e.items.push_back({vars[i], t});
      enumerate(h, ds, vars, i + 1, std::move(e));
    }
  }

  void body(const Clause& c, std::size_t i, Subst env, Goal deferred) {
    if (i == c.body.size()) {
      finish(c.head, deferred, env);
      return;
    }
    Atom a = apply(env, c.body[i]);
    switch (a.kind) {
      case AtomKind::True:
        body(c, i + 1, std::move(env), std::move(deferred));
        return;
      case AtomKind::Eq: {
        auto th = mgu(a.args[0], a.args[1]);
        if (th) body(c, i + 1, compose(env, *th), apply(*th, deferred));
        return;
      }
      case AtomKind::Diseq:
        if (a.args[0]->ground && a.args[1]->ground) {
          if (!term_eq(a.args[0], a.args[1])) body(c, i + 1, std::move(env), std::move(deferred));
        } else {
          deferred.push_back(a);
          body(c, i + 1, std::move(env), std::move(deferred));
        }
        return;
      case AtomKind::Pred: {
        auto it = facts.find(a.pred);
        if (it == facts.end()) return;
        // Iterate over a stable snapshot; new facts are picked up next round.
        std::size_t n = it->second.size();
        for (std::size_t fi = 0; fi < n; ++fi) {
          spend();
          Subst match;
          bool ok = a.args.size() == it->second[fi].size();
          for (std::size_t k = 0; ok && k < a.args.size(); ++k)
            ok = match_term(a.args[k], it->second[fi][k], match);
          if (ok) body(c, i + 1, compose(env, match), apply(match, deferred));
        }
        return;
      }
    }
  }
};

}  // namespace

std::set<std::string> least_model_bounded(const Program& p, int depth, std::size_t instance_cap) {
  if (depth < 1) throw std::invalid_argument("least_model_bounded: depth must be >= 1");
  auto sig = p.function_symbols();
  Universe uni;
  if (sig.empty()) sig.insert({"c0", 0});
  // Depth-bounded closure over the signature.
  std::vector<std::vector<Term>> by_depth(static_cast<std::size_t>(depth) + 1);
  for (const auto& [f, ar] : sig)
    if (ar == 0) by_depth[1].push_back(mk_const(f));
  for (int d = 2; d <= depth; ++d) {
    std::vector<Term> shallower;
    for (int k = 1; k < d; ++k)
      shallower.insert(shallower.end(), by_depth[k].begin(), by_depth[k].end());
    for (const auto& [f, ar] : sig) {
      if (ar == 0) continue;
      // All argument tuples from strictly shallower terms, at least one of
      // depth d-1 so the new term has depth exactly d.
      std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
      while (true) {
        int maxd = 0;
        std::vector<Term> args;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          args.push_back(shallower[idx[i]]);
          maxd = std::max(maxd, term_depth(shallower[idx[i]]));
        }
        if (maxd == d - 1) by_depth[d].push_back(mk_fun(f, args));
        if (by_depth[d].size() > instance_cap / 1000)
          throw LeastModelError("least_model_bounded: universe too large");
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < shallower.size()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) break;
      }
    }
  }
  for (int d = 1; d <= depth; ++d)
    for (const auto& t : by_depth[d]) uni.add(t);
  // Subterm closure of ground terms occurring in the program.
  for (const auto& c : p.clauses) {
    for (const auto& t : c.head.args) ground_subterms(t, uni);
    for (const auto& a : c.body)
      for (const auto& t : a.args) ground_subterms(t, uni);
  }

  std::map<Sym, std::vector<std::vector<Term>>> facts;
  std::set<std::string> fact_keys;
  std::size_t budget = instance_cap;
  bool changed = true;
  while (changed) {
    LmEval ev{p, uni, facts, fact_keys, budget, false};
    for (const auto& c : p.clauses) ev.body(c, 0, Subst{}, Goal{});
    budget = ev.budget;
    changed = ev.changed;
  }
  return fact_keys;
}

}  // namespace lps
