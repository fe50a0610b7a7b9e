#include "mspec/parse.hpp"

#include <cctype>
#include <vector>

namespace mspec {

Logic parse_logic(const std::string& name) {
  if (name == "ltl") return Logic::Ltl;
  if (name == "ctl") return Logic::Ctl;
  throw formula_error("unknown logic: " + name);
}

namespace {

enum class Tok {
  End, LParen, RParen, LBracket, RBracket,
  Not, And, Or, Implies, Iff,
  True, False, Ident,
  Next, Finally, Globally, Until, WeakUntil,
  ForAll, Exists, AX, AF, AG, EX, EF, EG,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          word += advance();
        out.push_back({keyword(word), word, line, col});
        continue;
      }
      switch (c) {
        case '(': advance(); out.push_back({Tok::LParen, "(", line, col}); break;
        case ')': advance(); out.push_back({Tok::RParen, ")", line, col}); break;
        case ']': advance(); out.push_back({Tok::RBracket, "]", line, col}); break;
        case '!': advance(); out.push_back({Tok::Not, "!", line, col}); break;
        case '[':
          advance();
          if (peek() == ']') {
            advance();
            out.push_back({Tok::Globally, "[]", line, col});
          } else {
            out.push_back({Tok::LBracket, "[", line, col});
          }
          break;
        case '&':
          advance();
          if (peek() == '&') advance();
          out.push_back({Tok::And, "&", line, col});
          break;
        case '|':
          advance();
          if (peek() == '|') advance();
          out.push_back({Tok::Or, "|", line, col});
          break;
        case '-':
          advance();
          if (peek() != '>') throw parse_error("expected '>' after '-'", line_, col_);
          advance();
          out.push_back({Tok::Implies, "->", line, col});
          break;
        case '<':
          advance();
          if (peek() == '>') {
            advance();
            out.push_back({Tok::Finally, "<>", line, col});
          } else if (peek() == '-') {
            advance();
            if (peek() != '>') throw parse_error("expected '>' after '<-'", line_, col_);
            advance();
            out.push_back({Tok::Iff, "<->", line, col});
          } else {
            throw parse_error("expected '<>' or '<->'", line, col);
          }
          break;
        default:
          throw parse_error(std::string("unexpected character '") + c + "'", line, col);
      }
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "true" || w == "TRUE") return Tok::True;
    if (w == "false" || w == "FALSE") return Tok::False;
    if (w == "U") return Tok::Until;
    if (w == "W") return Tok::WeakUntil;
    if (w == "X") return Tok::Next;
    if (w == "F") return Tok::Finally;
    if (w == "G") return Tok::Globally;
    if (w == "A") return Tok::ForAll;
    if (w == "E") return Tok::Exists;
    if (w == "AX") return Tok::AX;
    if (w == "AF") return Tok::AF;
    if (w == "AG") return Tok::AG;
    if (w == "EX") return Tok::EX;
    if (w == "EF") return Tok::EF;
    if (w == "EG") return Tok::EG;
    return Tok::Ident;
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Logic logic) : toks_(std::move(toks)), logic_(logic) {}

  Formula run() {
    Formula f = parse_iff();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Token& cur() const { return toks_[i_]; }

  Token take() { return toks_[i_++]; }

  void expect(Tok kind, const char* what) {
    if (cur().kind != kind)
      throw parse_error(std::string("expected ") + what, cur().line, cur().column);
    take();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(msg, cur().line, cur().column);
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (cur().kind == Tok::Iff) {
      take();
      lhs = f_iff(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (cur().kind == Tok::Implies) {
      take();
      return f_implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> kids{parse_and()};
    while (cur().kind == Tok::Or) {
      take();
      kids.push_back(parse_and());
    }
    return kids.size() == 1 ? std::move(kids[0]) : f_or(std::move(kids));
  }

  Formula parse_and() {
    std::vector<Formula> kids{parse_until()};
    while (cur().kind == Tok::And) {
      take();
      kids.push_back(parse_until());
    }
    return kids.size() == 1 ? std::move(kids[0]) : f_and(std::move(kids));
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (cur().kind == Tok::Until) {
      take();
      return f_until(std::move(lhs), parse_until());
    }
    if (cur().kind == Tok::WeakUntil) {
      take();
      return f_wuntil(std::move(lhs), parse_until());
    }
    return lhs;
  }

  void require_ctl(const Token& t) {
    if (logic_ == Logic::Ltl)
      throw parse_error("path quantifier '" + t.text + "' not allowed in ltl mode", t.line,
                        t.column);
  }

  Formula parse_unary() {
    const Token t = cur();
    switch (t.kind) {
      case Tok::Not: take(); return f_not(parse_unary());
      case Tok::Next: take(); return f_next(parse_unary());
      case Tok::Finally: take(); return f_finally(parse_unary());
      case Tok::Globally: take(); return f_globally(parse_unary());
      case Tok::AX: require_ctl(t); take(); return f_forall(f_next(parse_unary()));
      case Tok::AF: require_ctl(t); take(); return f_forall(f_finally(parse_unary()));
      case Tok::AG: require_ctl(t); take(); return f_forall(f_globally(parse_unary()));
      case Tok::EX: require_ctl(t); take(); return f_exists(f_next(parse_unary()));
      case Tok::EF: require_ctl(t); take(); return f_exists(f_finally(parse_unary()));
      case Tok::EG: require_ctl(t); take(); return f_exists(f_globally(parse_unary()));
      case Tok::ForAll:
      case Tok::Exists: {
        require_ctl(t);
        take();
        expect(Tok::LBracket, "'[' after path quantifier");
        // The left operand stops before the separating U/W; compound
        // operands therefore need parentheses, matching the emitter.
        Formula lhs = parse_unary();
        Formula body;
        if (cur().kind == Tok::Until) {
          take();
          body = f_until(std::move(lhs), parse_iff());
        } else if (cur().kind == Tok::WeakUntil) {
          take();
          body = f_wuntil(std::move(lhs), parse_iff());
        } else {
          fail("expected 'U' or 'W' inside quantified bracket");
        }
        expect(Tok::RBracket, "']'");
        return t.kind == Tok::ForAll ? f_forall(std::move(body)) : f_exists(std::move(body));
      }
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    const Token t = cur();
    switch (t.kind) {
      case Tok::True: take(); return f_true();
      case Tok::False: take(); return f_false();
      case Tok::Ident: take(); return f_atom(t.text);
      case Tok::LParen: {
        take();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      default: fail("expected a formula");
    }
  }

  std::vector<Token> toks_;
  Logic logic_;
  size_t i_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text, Logic logic) {
  Parser parser(Lexer(text).run(), logic);
  Formula f = parser.run();
  if (logic == Logic::Ctl) validate_ctl(f);
  return f;
}

}  // namespace mspec
