#pragma once

#include <stdexcept>
#include <string>

#include "mspec/formula.hpp"

namespace mspec {

enum class Logic { Ltl, Ctl };

// Maps "ltl" / "ctl"; throws formula_error otherwise.
Logic parse_logic(const std::string& name);

struct parse_error : std::runtime_error {
  int line;
  int column;
  parse_error(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                           std::to_string(column_)),
        line(line_),
        column(column_) {}
};

// Parses the plain emit() syntax back into a formula.
//
// Precedence, tightest first:  unary (!, X, F, G, <>, [], AX/AF/AG/EX/EF/EG,
// A [ . U/W . ], E [ . U/W . ])  >  U, W (right assoc)  >  &  >  |  >
// -> (right assoc)  >  <-> (left assoc).
//
// In Ltl mode any path-quantifier token is a parse_error; in Ctl mode the
// result must additionally be a well-formed CTL state formula.
Formula parse_formula(const std::string& text, Logic logic = Logic::Ltl);

}  // namespace mspec
