// Normal form of safe clauses: atomic oriented disequations (N1), promoted to
// the front (N2), oriented by head occurrence and input status (N3/N4), no
// duplicates up to local renaming (N5).
#pragma once

#include "lps/modes.hpp"
#include "lps/term.hpp"

namespace lps {

struct NormalizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive disequation replacement plus disequation promotion. Replacement
// case 2 multiplies clauses and case 3 / unsatisfied equalities delete them,
// so the general result is a clause list (possibly empty).
std::vector<Clause> normalize_clauses(const Clause& c, const ModeTable& m);

// Spec surface: the unique normalized clause. Reports a non-safe input and a
// normalization that does not yield exactly one clause.
Clause normalize_clause(const Clause& c, const ModeTable& m);

bool is_normal_form(const Clause& c, const ModeTable& m);

// Maximal disequation prefix of the body (the guard; for a normal-form clause
// this is all of its disequations).
Goal guard(const Clause& c);

// Body split of a normal-form clause: (guard, rest).
std::pair<Goal, Goal> split_guard(const Clause& c);

}  // namespace lps
