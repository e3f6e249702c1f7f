// Object language: terms, atoms, goals, clauses, programs, substitutions,
// unification, renaming and anti-unification.
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lps {

using Sym = std::string;

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Immutable. A constant is a 0-ary compound. `ground` is precomputed so that
// substitution application and occurs checks can skip ground subtrees.
struct TermNode {
  bool var;
  Sym head;  // variable name, or functor
  std::vector<Term> args;
  bool ground;
};

Term mk_var(Sym name);
Term mk_fun(Sym functor, std::vector<Term> args = {});
inline Term mk_const(Sym name) { return mk_fun(std::move(name)); }

inline bool is_var(const Term& t) { return t->var; }
bool term_eq(const Term& a, const Term& b);
int term_depth(const Term& t);
std::size_t term_size(const Term& t);
bool occurs(const Sym& v, const Term& t);

// First-occurrence (left-to-right, depth-first) variable order.
void collect_vars(const Term& t, std::vector<Sym>& order, std::set<Sym>& seen);

enum class AtomKind { True, Eq, Diseq, Pred };

struct Atom {
  AtomKind kind = AtomKind::True;
  Sym pred;  // predicate symbol; empty for True/Eq/Diseq
  std::vector<Term> args;
};

inline Atom mk_true() { return Atom{}; }
inline Atom mk_eq(Term l, Term r) { return Atom{AtomKind::Eq, "", {std::move(l), std::move(r)}}; }
inline Atom mk_diseq(Term l, Term r) {
  return Atom{AtomKind::Diseq, "", {std::move(l), std::move(r)}};
}
inline Atom mk_pred(Sym p, std::vector<Term> args = {}) {
  return Atom{AtomKind::Pred, std::move(p), std::move(args)};
}
inline bool is_basic(const Atom& a) { return a.kind != AtomKind::Pred; }
bool atom_eq(const Atom& a, const Atom& b);
void collect_vars(const Atom& a, std::vector<Sym>& order, std::set<Sym>& seen);

using Goal = std::vector<Atom>;
void collect_vars(const Goal& g, std::vector<Sym>& order, std::set<Sym>& seen);

struct Clause {
  Atom head;  // always a Pred atom
  Goal body;
  long id = -1;  // stable identity inside a TransformState; -1 outside
};
bool clause_eq(const Clause& a, const Clause& b);  // literal, ignoring id
void collect_vars(const Clause& c, std::vector<Sym>& order, std::set<Sym>& seen);
std::set<Sym> vars_of(const Clause& c);
std::set<Sym> vars_of(const Term& t);
std::set<Sym> vars_of(const Goal& g);
std::set<Sym> vars_of(const Atom& a);

// Clause order is kept for reproducible output; set-based definitions ignore it.
struct Program {
  std::vector<Clause> clauses;

  // Skips clauses literally identical to a stored one after canonical renaming.
  void add(Clause c);
  std::vector<const Clause*> clauses_for(const Sym& pred) const;
  std::set<Sym> preds() const;       // head predicates
  std::set<Sym> body_preds() const;  // non-basic predicates in bodies
  std::set<std::pair<Sym, int>> function_symbols() const;
};

// {p's own clauses} ∪ {clauses for q | p depends on q} (transitive closure of
// the head-to-body predicate relation).
std::vector<Clause> depends_on(const Sym& p, const Program& prog);

// Idempotent, relevant when produced by mgu. Insertion order preserved.
struct Subst {
  std::vector<std::pair<Sym, Term>> items;

  const Term* find(const Sym& v) const;
  bool empty() const { return items.empty(); }
  void bind(const Sym& v, Term t);  // composes: applies {v/t} to the range first
};

Term apply(const Subst& s, const Term& t);
Atom apply(const Subst& s, const Atom& a);
Goal apply(const Subst& s, const Goal& g);
Clause apply(const Subst& s, const Clause& c);
Subst compose(const Subst& a, const Subst& b);  // apply a, then b
Subst restrict_to(const Subst& s, const std::set<Sym>& vars);

// Most general unifier, occurs-check on. Deterministic: pairs decomposed
// left to right, the left-hand variable is eliminated first.
std::optional<Subst> mgu(const Term& a, const Term& b);
std::optional<Subst> mgu_tuple(const std::vector<Term>& a, const std::vector<Term>& b);
// Pred atoms only; same predicate and arity required for success.
std::optional<Subst> mgu_atom(const Atom& a, const Atom& b);
inline bool unifiable(const Term& a, const Term& b) { return mgu(a, b).has_value(); }

// One-way matching: pattern variables bind, subject is fixed.
bool match_term(const Term& pattern, const Term& subject, Subst& out);
bool match_atom(const Atom& pattern, const Atom& subject, Subst& out);

bool is_variant(const Term& a, const Term& b);
bool is_variant_tuple(const std::vector<Term>& a, const std::vector<Term>& b);
// Variable bijection making the clauses equal, if any (body compared position-wise).
std::optional<Subst> variant_clause(const Clause& a, const Clause& b);

struct FreshVars {
  long n = 0;
  Sym next() { return "V" + std::to_string(n++); }
};

Clause rename_apart(const Clause& c, FreshVars& fresh);
// Renames away from `forbidden` (and canonically, via the counter).
Clause rename_apart(const Clause& c, const std::set<Sym>& forbidden, FreshVars& fresh);

// Plotkin least general generalization of m equal-arity tuples.
// apply(insts[i], general) == tuples[i]; equal subterm tuples share one variable.
struct MsgResult {
  std::vector<Term> general;
  std::vector<Subst> insts;
};
MsgResult msg_tuple(const std::vector<std::vector<Term>>& tuples, FreshVars& fresh);

// Canonical per-clause renaming (A, B, C, ... in first-occurrence order).
Clause canon_clause(const Clause& c);
Sym canon_name(int i);

}  // namespace lps
