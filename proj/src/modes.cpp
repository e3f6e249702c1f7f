#include "lps/modes.hpp"

namespace lps {

const Mode& ModeTable::get(const Sym& pred) const {
  auto it = modes.find(pred);
  if (it == modes.end()) throw ModeError("no mode declared for predicate " + pred);
  return it->second;
}

void ModeTable::declare(Mode m) {
  if (modes.count(m.pred)) throw ModeError("duplicate mode declaration for " + m.pred);
  modes[m.pred] = std::move(m);
}

std::set<Sym> input_vars(const Atom& a, const ModeTable& m) {
  const Mode& mode = m.get(a.pred);
  if (mode.input.size() != a.args.size())
    throw ModeError("mode arity mismatch for " + a.pred);
  std::set<Sym> out;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (mode.input[i]) {
      auto vs = vars_of(a.args[i]);
      out.insert(vs.begin(), vs.end());
    }
  return out;
}

std::vector<Term> input_args(const Atom& a, const ModeTable& m) {
  const Mode& mode = m.get(a.pred);
  std::vector<Term> out;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (mode.input[i]) out.push_back(a.args[i]);
  return out;
}

std::vector<Term> noninput_args(const Atom& a, const ModeTable& m) {
  const Mode& mode = m.get(a.pred);
  std::vector<Term> out;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!mode.input[i]) out.push_back(a.args[i]);
  return out;
}

bool atom_satisfies_mode(const Atom& a, const ModeTable& m) {
  if (a.kind != AtomKind::Pred || !m.has(a.pred)) return false;
  const Mode& mode = m.modes.at(a.pred);
  if (mode.input.size() != a.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (mode.input[i] && !a.args[i]->ground) return false;
  return true;
}

std::set<Sym> local_vars(const Clause& c, std::size_t body_index) {
  std::set<Sym> in_atom = vars_of(c.body[body_index]);
  std::set<Sym> elsewhere = vars_of(c.head);
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    if (i == body_index) continue;
    auto vs = vars_of(c.body[i]);
    elsewhere.insert(vs.begin(), vs.end());
  }
  std::set<Sym> out;
  for (const auto& v : in_atom)
    if (!elsewhere.count(v)) out.insert(v);
  return out;
}

bool clause_is_safe(const Clause& c, const ModeTable& m) {
  std::set<Sym> head_inputs = input_vars(c.head, m);
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    if (c.body[i].kind != AtomKind::Diseq) continue;
    std::set<Sym> locals = local_vars(c, i);
    for (const auto& v : vars_of(c.body[i]))
      if (!head_inputs.count(v) && !locals.count(v)) return false;
  }
  return true;
}

bool program_is_safe(const Program& p, const ModeTable& m) {
  for (const auto& c : p.clauses)
    if (!clause_is_safe(c, m)) return false;
  return true;
}

WellModedReport check_well_moded(const Program& p, const ModeTable& m) {
  WellModedReport rep;
  for (const auto& c : p.clauses) {
    std::set<Sym> known = input_vars(c.head, m);
    for (const auto& a : c.body) {
      switch (a.kind) {
        case AtomKind::True:
          break;
        case AtomKind::Eq: {
          // Once one side is fully known, the other side becomes known.
          auto lv = vars_of(a.args[0]);
          auto rv = vars_of(a.args[1]);
          auto covered = [&](const std::set<Sym>& vs) {
            for (const auto& v : vs)
              if (!known.count(v)) return false;
            return true;
          };
          if (covered(lv)) known.insert(rv.begin(), rv.end());
          if (covered(rv)) known.insert(lv.begin(), lv.end());
          break;
        }
        case AtomKind::Diseq:
          // Disequations consume nothing; their locals are safety's business.
          break;
        case AtomKind::Pred: {
          for (const auto& v : input_vars(a, m)) {
            if (!known.count(v)) {
              rep.ok = false;
              rep.violations.push_back("clause for " + c.head.pred + ": input variable " + v +
                                       " of " + a.pred + " not produced");
            }
          }
          // Under the mode discipline a succeeding call grounds its
          // non-input positions.
          for (const auto& t : noninput_args(a, m)) {
            auto vs = vars_of(t);
            known.insert(vs.begin(), vs.end());
          }
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace lps
