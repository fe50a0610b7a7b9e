#include "mspec/mission.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace mspec {

namespace {

struct Token {
  enum class Kind { Word, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long value = 0;
  int line = 1;
  int column = 1;
};

class MissionLexer {
 public:
  explicit MissionLexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= text_.size()) return;

    const char c = text_[pos_];
    if (c == ',' || c == ':' || c == '(' || c == ')') {
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Token::Kind::Number;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok_.text += text_[pos_++];
        ++col_;
      }
      tok_.value = std::stol(tok_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Kind::Word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        tok_.text += text_[pos_++];
        ++col_;
      }
      return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

const char* const kReserved[] = {
    "declarations", "mission", "robots",  "robot",     "locations", "location",
    "conditions",   "condition", "actions", "action",  "shall",     "visit",
    "sequenced",    "ordered", "strict",  "fair",      "patrol",    "patrolling",
    "of",           "avoid",   "globally", "before",   "after",     "at",
    "most",         "least",   "exactly", "times",     "time",      "when",
    "instantly",    "eventually", "promptly", "do",    "stay",      "in",
    "until",        "and",     "or",
};

bool is_reserved(const std::string& w) {
  return std::find(std::begin(kReserved), std::end(kReserved), w) !=
         std::end(kReserved);
}

class MissionParser {
 public:
  explicit MissionParser(const std::string& text) : lex_(text) {}

  Mission parse() {
    expect_word("declarations");
    expect_punct(":");
    parse_declarations();
    expect_word("mission");
    expect_punct(":");
    Mission m;
    m.decls = decls_;
    m.root = parse_or();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End)
      throw parse_error("trailing input after mission '" + t.text + "'", t.line,
                        t.column);
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw parse_error(msg, t.line, t.column);
  }

  bool peek_word(const std::string& w) const {
    return lex_.peek().kind == Token::Kind::Word && lex_.peek().text == w;
  }

  bool accept_word(const std::string& w) {
    if (!peek_word(w)) return false;
    lex_.take();
    return true;
  }

  Token expect_word(const std::string& w) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Word || t.text != w)
      fail("expected '" + w + "', got '" + (t.text.empty() ? "end of file" : t.text) +
               "'",
           t);
    return t;
  }

  void expect_punct(const std::string& p) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p)
      fail("expected '" + p + "', got '" + (t.text.empty() ? "end of file" : t.text) +
               "'",
           t);
  }

  Token expect_name() {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Word)
      fail("expected a name, got '" + (t.text.empty() ? "end of file" : t.text) + "'",
           t);
    if (is_reserved(t.text)) fail("'" + t.text + "' is a reserved word", t);
    return t;
  }

  long expect_number() {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Number) fail("expected a number", t);
    return t.value;
  }

  // --- declarations ---------------------------------------------------------

  void parse_declarations() {
    while (lex_.peek().kind == Token::Kind::Word && !peek_word("mission")) {
      const Token key = lex_.take();
      std::vector<std::string>* list = nullptr;
      if (key.text == "robots" || key.text == "robot")
        list = &decls_.robots;
      else if (key.text == "locations" || key.text == "location")
        list = &decls_.locations;
      else if (key.text == "conditions" || key.text == "condition")
        list = &decls_.conditions;
      else if (key.text == "actions" || key.text == "action")
        list = &decls_.actions;
      else
        fail("unknown declaration '" + key.text + "'", key);
      expect_punct(":");
      do {
        const Token name = expect_name();
        for (const auto& l : {&decls_.robots, &decls_.locations, &decls_.conditions,
                              &decls_.actions})
          if (std::find(l->begin(), l->end(), name.text) != l->end())
            fail("'" + name.text + "' is declared twice", name);
        list->push_back(name.text);
      } while (accept_punct(","));
    }
  }

  bool accept_punct(const std::string& p) {
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p) {
      lex_.take();
      return true;
    }
    return false;
  }

  // --- mission tree ---------------------------------------------------------

  MissionNode parse_or() {
    MissionNode left = parse_and();
    if (!peek_word("or")) return left;
    MissionNode node;
    node.kind = MissionNode::Kind::Or;
    node.line = left.line;
    node.column = left.column;
    node.kids.push_back(std::move(left));
    while (accept_word("or")) node.kids.push_back(parse_and());
    return node;
  }

  MissionNode parse_and() {
    MissionNode left = parse_factor();
    if (!peek_word("and")) return left;
    MissionNode node;
    node.kind = MissionNode::Kind::And;
    node.line = left.line;
    node.column = left.column;
    node.kids.push_back(std::move(left));
    while (accept_word("and")) node.kids.push_back(parse_factor());
    return node;
  }

  MissionNode parse_factor() {
    if (accept_punct("(")) {
      MissionNode node = parse_or();
      expect_punct(")");
      return node;
    }
    return parse_clause();
  }

  MissionNode parse_clause() {
    const Token start = lex_.peek();
    std::string robot;
    if (accept_word("robot")) {
      const Token name = expect_name();
      if (std::find(decls_.robots.begin(), decls_.robots.end(), name.text) ==
          decls_.robots.end())
        fail("robot '" + name.text + "' is not declared", name);
      robot = name.text;
      expect_word("shall");
    } else if (decls_.robots.size() > 1) {
      fail("missions with several robots must open each clause with "
           "'robot <name> shall'",
           start);
    }
    // A single declared robot keeps unqualified propositions.
    const std::string qualifier = decls_.robots.size() > 1 ? robot : "";

    MissionNode node;
    node.kind = MissionNode::Kind::Leaf;
    node.robot = robot;
    node.line = start.line;
    node.column = start.column;

    auto loc = [&](const Token& t) {
      require_declared(t, decls_.locations, "location");
      return make_prop(PropKind::Location, qualifier, t.text);
    };
    auto cond = [&]() {
      const Token t = expect_name();
      require_declared(t, decls_.conditions, "condition");
      return make_prop(PropKind::Condition, "", t.text);
    };
    auto action = [&]() {
      const Token t = expect_name();
      require_declared(t, decls_.actions, "action");
      return make_prop(PropKind::Action, qualifier, t.text);
    };
    auto loc_list = [&]() {
      std::vector<Prop> out;
      do {
        const Token t = expect_name();
        Prop p = loc(t);
        if (std::find(out.begin(), out.end(), p) != out.end())
          fail("duplicate location '" + t.text + "'", t);
        out.push_back(std::move(p));
      } while (accept_punct(","));
      return out;
    };
    auto movement = [&](PatternId id, bool with_of) {
      if (with_of) expect_word("of");
      node.pattern = id;
      node.params = params_locations(loc_list());
    };

    if (accept_word("visit")) {
      movement(PatternId::Visit, false);
    } else if (accept_word("patrol")) {
      movement(PatternId::Patrolling, false);
    } else if (accept_word("patrolling")) {
      movement(PatternId::Patrolling, true);
    } else if (accept_word("sequenced")) {
      if (accept_word("visit"))
        movement(PatternId::SequencedVisit, true);
      else if (accept_word("patrolling"))
        movement(PatternId::SequencedPatrolling, true);
      else
        fail("expected 'visit' or 'patrolling' after 'sequenced'", lex_.peek());
    } else if (accept_word("ordered")) {
      if (accept_word("visit"))
        movement(PatternId::OrderedVisit, true);
      else if (accept_word("patrolling"))
        movement(PatternId::OrderedPatrolling, true);
      else
        fail("expected 'visit' or 'patrolling' after 'ordered'", lex_.peek());
    } else if (accept_word("strict")) {
      expect_word("ordered");
      if (accept_word("visit"))
        movement(PatternId::StrictOrderedVisit, true);
      else if (accept_word("patrolling"))
        movement(PatternId::StrictOrderedPatrolling, true);
      else
        fail("expected 'visit' or 'patrolling' after 'strict ordered'", lex_.peek());
    } else if (accept_word("fair")) {
      if (accept_word("visit"))
        movement(PatternId::FairVisit, true);
      else if (accept_word("patrolling"))
        movement(PatternId::FairPatrolling, true);
      else
        fail("expected 'visit' or 'patrolling' after 'fair'", lex_.peek());
    } else if (accept_word("avoid")) {
      const Prop place = loc(expect_name());
      if (accept_word("globally")) {
        node.pattern = PatternId::GlobalAvoidance;
        node.params = params_locations({place});
      } else if (accept_word("before")) {
        node.pattern = PatternId::PastAvoidance;
        node.params = params_trigger(place, cond());
      } else if (accept_word("after")) {
        node.pattern = PatternId::FutureAvoidance;
        node.params = params_trigger(place, cond());
      } else {
        if (accept_word("at")) {
          if (accept_word("most"))
            node.pattern = PatternId::UpperRestrictedAvoidance;
          else if (accept_word("least"))
            node.pattern = PatternId::LowerRestrictedAvoidance;
          else
            fail("expected 'most' or 'least' after 'at'", lex_.peek());
        } else if (accept_word("exactly")) {
          node.pattern = PatternId::ExactRestrictedAvoidance;
        } else {
          fail("expected 'globally', 'before', 'after', 'at most', 'at least' "
               "or 'exactly' after the avoided location",
               lex_.peek());
        }
        const long k = expect_number();
        if (!accept_word("times") && !accept_word("time"))
          fail("expected 'times' after the count", lex_.peek());
        node.params = params_counted(place, static_cast<int>(k));
      }
    } else if (accept_word("when")) {
      const Prop trigger = cond();
      if (accept_word("instantly"))
        node.pattern = PatternId::InstantaneousReaction;
      else if (accept_word("eventually"))
        node.pattern = PatternId::DelayedReaction;
      else if (accept_word("promptly"))
        node.pattern = PatternId::PromptReaction;
      else
        fail("expected 'instantly', 'eventually' or 'promptly'", lex_.peek());
      expect_word("do");
      node.params = params_reaction(trigger, action());
    } else if (accept_word("do")) {
      const Prop response = action();
      expect_word("exactly");
      if (accept_word("when"))
        node.pattern = PatternId::BoundReaction;
      else if (accept_word("after"))
        node.pattern = PatternId::BoundDelay;
      else
        fail("expected 'when' or 'after' after 'exactly'", lex_.peek());
      node.params = params_reaction(cond(), response);
    } else if (accept_word("stay")) {
      expect_word("in");
      const Prop place = loc(expect_name());
      expect_word("until");
      node.pattern = PatternId::Wait;
      node.params = params_trigger(place, cond());
    } else {
      fail("expected a mission phrase, got '" +
               (start.text.empty() ? "end of file" : start.text) + "'",
           start);
    }
    return node;
  }

  void require_declared(const Token& t, const std::vector<std::string>& list,
                        const char* what) {
    if (std::find(list.begin(), list.end(), t.text) == list.end())
      fail(std::string(what) + " '" + t.text + "' is not declared", t);
  }

  MissionLexer lex_;
  Declarations decls_;
};

}  // namespace

Mission parse_mission(const std::string& text) { return MissionParser(text).parse(); }

namespace {

Formula compile_node(const MissionNode& n, bool ctl) {
  if (n.kind == MissionNode::Kind::Leaf)
    return ctl ? instantiate_ctl(n.pattern, n.params)
               : instantiate_ltl(n.pattern, n.params);
  std::vector<Formula> kids;
  for (const auto& k : n.kids) kids.push_back(compile_node(k, ctl));
  return n.kind == MissionNode::Kind::And ? f_and(std::move(kids))
                                          : f_or(std::move(kids));
}

void print_list(std::ostream& out, const std::vector<Prop>& props) {
  for (size_t i = 0; i < props.size(); ++i)
    out << (i ? ", " : "") << props[i].name;
}

void print_clause(std::ostream& out, const MissionNode& n) {
  if (!n.robot.empty()) out << "robot " << n.robot << " shall ";
  const PatternParams& p = n.params;
  switch (n.pattern) {
    case PatternId::Visit: out << "visit "; print_list(out, p.locations); break;
    case PatternId::SequencedVisit:
      out << "sequenced visit of ";
      print_list(out, p.locations);
      break;
    case PatternId::OrderedVisit:
      out << "ordered visit of ";
      print_list(out, p.locations);
      break;
    case PatternId::StrictOrderedVisit:
      out << "strict ordered visit of ";
      print_list(out, p.locations);
      break;
    case PatternId::FairVisit:
      out << "fair visit of ";
      print_list(out, p.locations);
      break;
    case PatternId::Patrolling: out << "patrol "; print_list(out, p.locations); break;
    case PatternId::SequencedPatrolling:
      out << "sequenced patrolling of ";
      print_list(out, p.locations);
      break;
    case PatternId::OrderedPatrolling:
      out << "ordered patrolling of ";
      print_list(out, p.locations);
      break;
    case PatternId::StrictOrderedPatrolling:
      out << "strict ordered patrolling of ";
      print_list(out, p.locations);
      break;
    case PatternId::FairPatrolling:
      out << "fair patrolling of ";
      print_list(out, p.locations);
      break;
    case PatternId::GlobalAvoidance:
      out << "avoid " << p.locations[0].name << " globally";
      break;
    case PatternId::PastAvoidance:
      out << "avoid " << p.locations[0].name << " before " << p.trigger->name;
      break;
    case PatternId::FutureAvoidance:
      out << "avoid " << p.locations[0].name << " after " << p.trigger->name;
      break;
    case PatternId::UpperRestrictedAvoidance:
      out << "avoid " << p.locations[0].name << " at most " << p.count << " times";
      break;
    case PatternId::LowerRestrictedAvoidance:
      out << "avoid " << p.locations[0].name << " at least " << p.count << " times";
      break;
    case PatternId::ExactRestrictedAvoidance:
      out << "avoid " << p.locations[0].name << " exactly " << p.count << " times";
      break;
    case PatternId::InstantaneousReaction:
      out << "when " << p.trigger->name << " instantly do " << p.reaction->name;
      break;
    case PatternId::DelayedReaction:
      out << "when " << p.trigger->name << " eventually do " << p.reaction->name;
      break;
    case PatternId::PromptReaction:
      out << "when " << p.trigger->name << " promptly do " << p.reaction->name;
      break;
    case PatternId::BoundReaction:
      out << "do " << p.reaction->name << " exactly when " << p.trigger->name;
      break;
    case PatternId::BoundDelay:
      out << "do " << p.reaction->name << " exactly after " << p.trigger->name;
      break;
    case PatternId::Wait:
      out << "stay in " << p.locations[0].name << " until " << p.trigger->name;
      break;
  }
}

void print_node(std::ostream& out, const MissionNode& n, bool parenthesize) {
  if (n.kind == MissionNode::Kind::Leaf) {
    print_clause(out, n);
    return;
  }
  const bool is_or = n.kind == MissionNode::Kind::Or;
  if (is_or && parenthesize) out << "( ";
  for (size_t i = 0; i < n.kids.size(); ++i) {
    if (i) out << (is_or ? "\n  or " : "\n  and ");
    // AND binds tighter, so OR children of an AND need parentheses; leaves and
    // nested ANDs under OR do not.
    print_node(out, n.kids[i], !is_or);
  }
  if (is_or && parenthesize) out << " )";
}

void print_decl(std::ostream& out, const char* key,
                const std::vector<std::string>& names) {
  if (names.empty()) return;
  out << "  " << key << ":";
  for (size_t i = 0; i < names.size(); ++i) out << (i ? ", " : " ") << names[i];
  out << "\n";
}

}  // namespace

Formula compile_ltl(const Mission& m) { return compile_node(m.root, false); }
Formula compile_ctl(const Mission& m) { return compile_node(m.root, true); }

std::string pretty_print(const Mission& m) {
  std::ostringstream out;
  out << "declarations:\n";
  print_decl(out, "robots", m.decls.robots);
  print_decl(out, "locations", m.decls.locations);
  print_decl(out, "conditions", m.decls.conditions);
  print_decl(out, "actions", m.decls.actions);
  out << "\nmission:\n  ";
  print_node(out, m.root, false);
  out << "\n";
  return out.str();
}

namespace {

void collect_patterns(const MissionNode& n, std::set<PatternId>& out) {
  if (n.kind == MissionNode::Kind::Leaf) {
    out.insert(n.pattern);
    return;
  }
  for (const auto& k : n.kids) collect_patterns(k, out);
}

}  // namespace

std::vector<PatternId> pattern_set(const Mission& m) {
  std::set<PatternId> seen;
  collect_patterns(m.root, seen);
  return {seen.begin(), seen.end()};
}

}  // namespace mspec
