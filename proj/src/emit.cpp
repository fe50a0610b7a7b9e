#include "mspec/emit.hpp"

namespace mspec {

Format parse_format(const std::string& name) {
  if (name == "plain") return Format::Plain;
  if (name == "smv-ltl") return Format::SmvLtl;
  if (name == "smv-ctl") return Format::SmvCtl;
  if (name == "spin-ltl") return Format::SpinLtl;
  throw formula_error("unknown output format: " + name);
}

std::string format_name(Format fmt) {
  switch (fmt) {
    case Format::Plain: return "plain";
    case Format::SmvLtl: return "smv-ltl";
    case Format::SmvCtl: return "smv-ctl";
    case Format::SpinLtl: return "spin-ltl";
  }
  return "?";
}

namespace {

std::string paren(const std::string& s) { return "(" + s + ")"; }

[[noreturn]] void unsupported(const std::string& what, Format fmt) {
  throw formula_error("unsupported operator for target " + format_name(fmt) + ": " + what);
}

std::string render(const Formula& f, Format fmt);

std::string render_nary(const std::vector<Formula>& kids, const char* sep, Format fmt) {
  std::string out;
  for (size_t i = 0; i < kids.size(); ++i) {
    if (i) out += sep;
    out += paren(render(kids[i], fmt));
  }
  return out;
}

std::string render_quantified(const Formula& f, Format fmt) {
  const char* q = f.op == Op::ForAll ? "A" : "E";
  const Formula& t = f.kids[0];
  switch (t.op) {
    case Op::Next:
      return std::string(q) + "X " + paren(render(t.kids[0], fmt));
    case Op::Finally:
      return std::string(q) + "F " + paren(render(t.kids[0], fmt));
    case Op::Globally:
      return std::string(q) + "G " + paren(render(t.kids[0], fmt));
    case Op::Until:
      return std::string(q) + " [ " + paren(render(t.kids[0], fmt)) + " U " +
             paren(render(t.kids[1], fmt)) + " ]";
    case Op::WeakUntil:
      if (fmt == Format::SmvCtl) unsupported("W", fmt);
      return std::string(q) + " [ " + paren(render(t.kids[0], fmt)) + " W " +
             paren(render(t.kids[1], fmt)) + " ]";
    default:
      throw formula_error("path quantifier must wrap a temporal operator");
  }
}

std::string render(const Formula& f, Format fmt) {
  const bool smv = fmt == Format::SmvLtl || fmt == Format::SmvCtl;
  const bool spin = fmt == Format::SpinLtl;
  switch (f.op) {
    case Op::True: return smv ? "TRUE" : "true";
    case Op::False: return smv ? "FALSE" : "false";
    case Op::Atom: return f.prop.str();
    case Op::Not: {
      const Formula& k = f.kids[0];
      if (k.op == Op::Atom || k.op == Op::True || k.op == Op::False)
        return "!" + render(k, fmt);
      return "! " + paren(render(k, fmt));
    }
    case Op::And: return render_nary(f.kids, spin ? " && " : " & ", fmt);
    case Op::Or: return render_nary(f.kids, spin ? " || " : " | ", fmt);
    case Op::Implies:
      return paren(render(f.kids[0], fmt)) + " -> " + paren(render(f.kids[1], fmt));
    case Op::Iff:
      return paren(render(f.kids[0], fmt)) + " <-> " + paren(render(f.kids[1], fmt));
    case Op::Next:
      if (fmt == Format::SmvCtl) unsupported("X outside a path quantifier", fmt);
      return "X " + paren(render(f.kids[0], fmt));
    case Op::Until:
      if (fmt == Format::SmvCtl) unsupported("U outside a path quantifier", fmt);
      return paren(render(f.kids[0], fmt)) + " U " + paren(render(f.kids[1], fmt));
    case Op::WeakUntil:
      if (fmt == Format::SmvCtl) unsupported("W outside a path quantifier", fmt);
      if (fmt == Format::SmvLtl || fmt == Format::SpinLtl)
        // target has no weak until: p W q == (p U q) | G p
        return render(f_or(f_until(f.kids[0], f.kids[1]), f_globally(f.kids[0])), fmt);
      return paren(render(f.kids[0], fmt)) + " W " + paren(render(f.kids[1], fmt));
    case Op::Finally:
      if (fmt == Format::SmvCtl) unsupported("F outside a path quantifier", fmt);
      return (spin ? "<> " : "F ") + paren(render(f.kids[0], fmt));
    case Op::Globally:
      if (fmt == Format::SmvCtl) unsupported("G outside a path quantifier", fmt);
      return (spin ? "[] " : "G ") + paren(render(f.kids[0], fmt));
    case Op::ForAll:
    case Op::Exists:
      if (fmt == Format::SmvLtl || fmt == Format::SpinLtl)
        unsupported("path quantifier", fmt);
      return render_quantified(f, fmt);
  }
  throw formula_error("emit: unknown operator");
}

}  // namespace

std::string emit(const Formula& f, Format fmt) { return render(f, fmt); }

}  // namespace mspec
