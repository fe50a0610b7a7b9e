#include "mspec/trace.hpp"

#include <cctype>
#include <stdexcept>

namespace mspec {

namespace {

using Vals = std::vector<char>;

// One backward sweep of val[i] = base[i] OP (step[i] AND val[succ(i)]) over the
// loop segment, in place.
void sweep_loop(const LassoTrace& t, Vals& val, const Vals& hold, const Vals& target) {
  for (size_t i = t.size(); i-- > t.loop_start();)
    val[i] = target[i] || (hold[i] && val[t.succ(i)]);
}

// Fixpoint of the until-style recurrence val[i] = target[i] | (hold[i] & val[succ(i)]).
// `seed` is false for least fixpoints (U, F) and true for greatest (W, G).
// Two sweeps over the loop suffice: the first makes the loop-head value exact
// (its witness window fits in one cycle), the second propagates it backwards.
Vals fix_backward(const LassoTrace& t, const Vals& hold, const Vals& target, bool seed) {
  Vals val(t.size(), seed);
  sweep_loop(t, val, hold, target);
  sweep_loop(t, val, hold, target);
  for (size_t i = t.loop_start(); i-- > 0;)
    val[i] = target[i] || (hold[i] && val[i + 1]);
  return val;
}

Vals eval_all(const Formula& f, const LassoTrace& t) {
  const size_t n = t.size();
  switch (f.op) {
    case Op::True: return Vals(n, 1);
    case Op::False: return Vals(n, 0);
    case Op::Atom: {
      Vals v(n, 0);
      for (size_t i = 0; i < n; ++i) v[i] = t.at(i).count(f.prop) ? 1 : 0;
      return v;
    }
    case Op::Not: {
      Vals v = eval_all(f.kids[0], t);
      for (auto& x : v) x = !x;
      return v;
    }
    case Op::And: {
      Vals v(n, 1);
      for (const auto& k : f.kids) {
        Vals kv = eval_all(k, t);
        for (size_t i = 0; i < n; ++i) v[i] = v[i] && kv[i];
      }
      return v;
    }
    case Op::Or: {
      Vals v(n, 0);
      for (const auto& k : f.kids) {
        Vals kv = eval_all(k, t);
        for (size_t i = 0; i < n; ++i) v[i] = v[i] || kv[i];
      }
      return v;
    }
    case Op::Implies: {
      Vals a = eval_all(f.kids[0], t), b = eval_all(f.kids[1], t);
      for (size_t i = 0; i < n; ++i) a[i] = !a[i] || b[i];
      return a;
    }
    case Op::Iff: {
      Vals a = eval_all(f.kids[0], t), b = eval_all(f.kids[1], t);
      for (size_t i = 0; i < n; ++i) a[i] = a[i] == b[i];
      return a;
    }
    case Op::Next: {
      Vals kv = eval_all(f.kids[0], t);
      Vals v(n, 0);
      for (size_t i = 0; i < n; ++i) v[i] = kv[t.succ(i)];
      return v;
    }
    case Op::Until:
      return fix_backward(t, eval_all(f.kids[0], t), eval_all(f.kids[1], t), false);
    case Op::WeakUntil:
      return fix_backward(t, eval_all(f.kids[0], t), eval_all(f.kids[1], t), true);
    case Op::Finally:
      return fix_backward(t, Vals(n, 1), eval_all(f.kids[0], t), false);
    case Op::Globally: {
      // G p == p W false
      Vals hold = eval_all(f.kids[0], t);
      return fix_backward(t, hold, Vals(n, 0), true);
    }
    case Op::ForAll:
    case Op::Exists:
      throw formula_error("eval_lasso: path quantifiers are not LTL");
  }
  throw formula_error("eval_lasso: unknown operator");
}

}  // namespace

bool eval_lasso(const Formula& f, const LassoTrace& trace) {
  if (trace.loop.empty()) throw std::invalid_argument("lasso trace needs a non-empty loop");
  return eval_all(f, trace)[0] != 0;
}

namespace {

PropSet parse_position(const std::string& text) {
  PropSet out;
  std::string word;
  auto flush = [&] {
    if (!word.empty() && word != "_") out.insert(make_prop(word));
    word.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' || c == '{' || c == '}')
      flush();
    else
      word += c;
  }
  flush();
  return out;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::vector<PropSet> parse_segment(const std::string& text) {
  if (is_blank(text)) return {};
  std::vector<std::string> cells;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';') {
      cells.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (cells.size() > 1 && is_blank(cells.back())) cells.pop_back();  // trailing ';'
  std::vector<PropSet> out;
  for (const auto& cell : cells) out.push_back(parse_position(cell));
  return out;
}

}  // namespace

LassoTrace parse_lasso(const std::string& text) {
  // Keyword form: "stem: l1 ; l2 loop: l3" reads the same as "l1 ; l2 | l3".
  // The stem may be empty ("stem: loop: l3"); a dividing ';' before 'loop:'
  // ("stem:; loop: l3") is tolerated and does not count as a position.
  const size_t stem_kw = text.find("stem:");
  const size_t loop_kw = text.find("loop:");
  if (stem_kw != std::string::npos || loop_kw != std::string::npos) {
    if (stem_kw == std::string::npos || loop_kw == std::string::npos ||
        loop_kw < stem_kw)
      throw std::invalid_argument("keyword lasso needs 'stem:' followed by 'loop:'");
    std::string stem_text = text.substr(stem_kw + 5, loop_kw - (stem_kw + 5));
    while (!stem_text.empty() &&
           std::isspace(static_cast<unsigned char>(stem_text.back())))
      stem_text.pop_back();
    if (!stem_text.empty() && stem_text.back() == ';') stem_text.pop_back();
    LassoTrace t;
    t.stem = parse_segment(stem_text);
    t.loop = parse_segment(text.substr(loop_kw + 5));
    if (t.loop.empty())
      throw std::invalid_argument("lasso trace needs a non-empty loop");
    return t;
  }

  size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw std::invalid_argument("lasso trace needs a '|' before the loop segment");
  LassoTrace t;
  t.stem = parse_segment(text.substr(0, bar));
  t.loop = parse_segment(text.substr(bar + 1));
  if (t.loop.empty()) throw std::invalid_argument("lasso trace needs a non-empty loop");
  return t;
}

std::string to_string(const LassoTrace& trace) {
  auto render = [](const std::vector<PropSet>& seg) {
    std::string out;
    for (size_t i = 0; i < seg.size(); ++i) {
      if (i) out += " ; ";
      if (seg[i].empty()) {
        out += "_";
        continue;
      }
      bool first = true;
      for (const auto& p : seg[i]) {
        if (!first) out += " ";
        out += p.str();
        first = false;
      }
    }
    return out;
  };
  std::string out = render(trace.stem);
  if (!trace.stem.empty()) out += " ";
  out += "| " + render(trace.loop);
  return out;
}

}  // namespace mspec
