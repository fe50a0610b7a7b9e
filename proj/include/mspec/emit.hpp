#pragma once

#include <string>

#include "mspec/formula.hpp"

namespace mspec {

// Output syntaxes. The plain format is also what parse() reads back.
enum class Format {
  Plain,    // native syntax, supports full LTL + CTL including W
  SmvLtl,   // NuSMV LTLSPEC body; W is rewritten, CTL is rejected
  SmvCtl,   // NuSMV CTLSPEC body; W is rejected, bare LTL is rejected
  SpinLtl,  // Spin never-claim syntax ([] <> && ||); W is rewritten, CTL is rejected
};

// Maps "plain" / "smv-ltl" / "smv-ctl" / "spin-ltl"; throws formula_error otherwise.
Format parse_format(const std::string& name);
std::string format_name(Format fmt);

// Renders f deterministically.  Throws formula_error when the formula uses an
// operator the target syntax cannot express ("unsupported operator for target").
std::string emit(const Formula& f, Format fmt);

}  // namespace mspec
