// Operational semantics: one-step derivation, depth-first resolution with
// answer collection and search statistics, the big-step relation used by the
// determinism definitions, disequation satisfiability, mutual exclusion, and
// a bounded least-model oracle for the declarative semantics.
#pragma once

#include <cstdint>
#include <optional>

#include "lps/modes.hpp"
#include "lps/normal.hpp"
#include "lps/term.hpp"

namespace lps {

struct Limits {
  std::size_t max_depth = 1u << 20;
  std::size_t max_nodes = 50'000'000;
  std::size_t max_answers = SIZE_MAX;
};

struct SolveResult {
  std::vector<Subst> answers;  // restricted to the initial goal's variables
  bool exhausted = true;       // search completed within the limits
  std::size_t nodes_explored = 0;
  std::vector<std::pair<Goal, Atom>> mode_violations;
};

// One-step successors of a goal: equations by unification, disequations by
// non-unifiability, non-basic atoms one successor per unifying clause in
// program order, a leading 'true' dropped.
std::vector<std::pair<Goal, Subst>> step(const Goal& g, const Program& p, FreshVars& fresh);

SolveResult solve(const Goal& g, const Program& p, const ModeTable* monitor, const Limits& lim);
inline SolveResult solve(const Goal& g, const Program& p, const Limits& lim) {
  return solve(g, p, nullptr, lim);
}

// Big-step successors: for each clause whose head unifies with the leftmost
// (non-basic) atom, the unique continuation after deterministically
// evaluating the basic prefix; goals whose basic prefix fails are absent.
// The empty goal stands for true.
std::vector<std::pair<long, Goal>> big_step(const Goal& g, const Program& p, FreshVars& fresh,
                                            std::size_t max_basic = 1u << 20);

enum class DetVerdict { Deterministic, Semideterministic, Neither, Inconclusive };

DetVerdict dynamic_determinism_check(const Atom& a, const Program& p, const ModeTable& m,
                                     std::size_t bound);

// Def 5.6 satisfiability of a conjunction of disequations w.r.t. a variable set.
bool diseq_satisfiable(const Goal& diseqs, const std::set<Sym>& v);

// Def 5.9. Clauses are renamed apart internally; different head predicates
// are trivially exclusive.
bool mutually_exclusive(const Clause& c1, const Clause& c2, const ModeTable& m);

struct SemidetReport {
  bool linear = true;
  bool safe = true;
  bool well_moded = true;
  bool pairwise_me = true;
  std::vector<std::string> details;
  bool verdict() const { return linear && safe && well_moded && pairwise_me; }
};

// Prop 5.10 sufficient condition: linear + safe + well-moded (sufficient
// check) + pairwise mutual exclusion of non-unit clauses.
SemidetReport semidet_static_check(const Program& p, const ModeTable& m);

struct LeastModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixpoint of the immediate-consequence operator over the ground
// instantiation restricted to terms of depth <= depth built from the
// program's function symbols (plus the subterm closure of ground terms
// occurring in the program, plus one fresh constant if there are none).
// Disequations read declaratively (ground non-identity). Facts are returned
// as canonically printed ground atoms.
std::set<std::string> least_model_bounded(const Program& p, int depth,
                                          std::size_t instance_cap = 50'000'000);

std::string atom_text(const Atom& a);  // defined in text.cpp

}  // namespace lps
