// Mode declarations and the static checks the strategy relies on.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lps/term.hpp"

namespace lps {

struct Mode {
  Sym pred;
  std::vector<bool> input;  // true at '+' positions, false at '?'
};

struct ModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModeTable {
  std::map<Sym, Mode> modes;

  bool has(const Sym& pred) const { return modes.count(pred) != 0; }
  const Mode& get(const Sym& pred) const;  // throws ModeError if absent
  void declare(Mode m);                    // throws ModeError on duplicate
  void declare_or_replace(Mode m) { modes[m.pred] = std::move(m); }
};

// Union of the variables of arguments at '+' positions. Throws if no mode.
std::set<Sym> input_vars(const Atom& a, const ModeTable& m);
// Input argument tuple (terms at '+' positions) followed by the rest.
std::vector<Term> input_args(const Atom& a, const ModeTable& m);
std::vector<Term> noninput_args(const Atom& a, const ModeTable& m);

// Def 4.2: a mode for the predicate exists and every input argument is ground.
// A missing mode yields false, not an error.
bool atom_satisfies_mode(const Atom& a, const ModeTable& m);

// Variables occurring in body position `i` of `c` and nowhere else in the clause.
std::set<Sym> local_vars(const Clause& c, std::size_t body_index);

// Def 4.4: every variable of every disequation in the body is an input
// variable of the head or a local variable of that disequation.
bool clause_is_safe(const Clause& c, const ModeTable& m);
bool program_is_safe(const Program& p, const ModeTable& m);

struct WellModedReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Sufficient data-flow check: scanning each body left to right, every
// non-basic atom's input variables must be covered by the head's input
// variables plus variables produced earlier (non-input positions of earlier
// non-basic atoms; both sides of an equation once one side is covered).
// ok=true guarantees the program satisfies the mode; ok=false only warns.
WellModedReport check_well_moded(const Program& p, const ModeTable& m);

}  // namespace lps
