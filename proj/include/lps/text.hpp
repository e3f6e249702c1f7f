// Concrete syntax: ':- mode p(+,?).' declarations, 'head.' / 'head :- body.'
// clauses, '='/'\=' infix, '[a,b|T]' lists, '%' comments. Also the canonical
// printer used for golden comparisons and journals.
#pragma once

#include <map>
#include <optional>

#include "lps/modes.hpp"
#include "lps/term.hpp"

namespace lps {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

struct SourceUnit {
  Program program;
  ModeTable modes;
  std::optional<Atom> entry;        // ':- entry p(...).'
  std::optional<Atom> source_goal;  // ':- specialized(entry, source_goal).'
  std::map<std::string, long> caps;
};

SourceUnit parse_program(const std::string& text);
SourceUnit parse_file(const std::string& path);
Goal parse_goal(const std::string& text);
Term parse_term(const std::string& text);

std::string term_text(const Term& t);
std::string atom_text(const Atom& a);
// Canonical per-clause variable renaming (A, B, C, ...).
std::string clause_text(const Clause& c, bool canonical = true);
std::string program_text(const Program& p);
std::string source_text(const SourceUnit& u);

}  // namespace lps
