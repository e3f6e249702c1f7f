// The transformation rules: definition introduction/elimination, unfolding,
// folding, subsumption, head generalization, case split, equation
// elimination, disequation replacement, disequation promotion — with the
// safe-variant side conditions. Every application is validated and journaled.
#pragma once

#include "lps/normal.hpp"

namespace lps {

enum class RuleErrorKind { Precondition, Safety, FoldMismatch, MissingMode };

struct RuleError : std::runtime_error {
  RuleErrorKind kind;
  RuleError(RuleErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct JournalEntry {
  std::string op;
  std::vector<long> in_ids;
  std::vector<long> out_ids;
  std::string params;  // JSON object text with op-specific fields
};
std::string journal_line(const JournalEntry& e);
JournalEntry parse_journal_line(const std::string& line);

struct TransformState {
  Program program;  // current P_k
  Program defs;     // all definition clauses ever introduced
  ModeTable modes;
  std::set<Sym> used_preds;  // predicate names occurring in P_0..P_k
  std::set<Sym> p0_preds;    // non-basic predicates of the initial program
  long next_id = 0;
  FreshVars fresh;
  std::vector<JournalEntry> history;

  const Clause& clause(long id) const;      // throws RuleError if absent
  std::size_t clause_index(long id) const;  // position in program
  bool has_clause(long id) const;
};

TransformState init_state(const Program& p0, const ModeTable& m);

// Rule 3.1. All clauses share one fresh head predicate with identical
// distinct head variables; every head variable occurs in some body; body
// predicates occur in P_0; every body has a non-basic atom.
TransformState define_introduce(const TransformState& st, const std::vector<Clause>& clauses,
                                const Mode& mode);

// Rule 3.2: keep exactly the clauses p depends on.
TransformState define_eliminate(const TransformState& st, const Sym& p);

// Rule 3.3 / Def 5.2. Unfolds the clause w.r.t. its body atom at atom_index
// against the whole current program; zero unifying clauses deletes it.
TransformState unfold(const TransformState& st, long id, std::size_t atom_index,
                      bool enforce_safe);

// Rule 3.4 / Def 5.3 (Property Σ). The targets are paired with the
// definition clauses of newp in order; `start` is the common G1 length.
TransformState fold(const TransformState& st, const std::vector<long>& target_ids,
                    std::size_t start, const Sym& newp, const Subst& theta, bool enforce_safe);

// Rule 3.5, prefix-instance matching, no body permutation.
TransformState subsume_delete(const TransformState& st, long subsumed_id, long subsumer_id);

// Rule 3.6 / Def 5.4. `paths` address equal head subterms (argument index,
// then nested argument indices); all replaced by the fresh variable.
TransformState head_generalize(const TransformState& st, long id,
                               const std::vector<std::vector<int>>& paths, const Sym& fresh_var,
                               bool enforce_safe);

// Rule 3.7 / Def 5.5.
TransformState case_split(const TransformState& st, long id, const Sym& var, const Term& t,
                          bool enforce_safe);

// Rule 3.8.
TransformState eq_eliminate(const TransformState& st, long id, std::size_t atom_index);

// Rule 3.9, cases 1-5. For case 5 atom_index names the rightmost duplicate.
TransformState diseq_replace(const TransformState& st, long id, std::size_t atom_index,
                             int case_no);

// Disequation promotion (move left only).
TransformState diseq_promote(const TransformState& st, long id, std::size_t from_index,
                             std::size_t to_index);

// Composite: exhaustive disequation replacement + promotion to normal form,
// journaled as one entry.
TransformState normalize_step(const TransformState& st, long id);

// Journaled bookkeeping renaming (semantically the identity).
TransformState rename_clause(const TransformState& st, long id, const Subst& mapping);

// Re-applies a journal entry (used by replay).
TransformState apply_entry(const TransformState& st, const JournalEntry& e);

}  // namespace lps
