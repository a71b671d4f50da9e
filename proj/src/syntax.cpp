#include "fmcorr/syntax.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace fmcorr {

namespace {

enum class Tok { Ident, Nominal, Bot, Top, Box, Diamond, And, Or, Implies, LParen, RParen, Leq, Entails, Empty, End };

const char* spelling(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Nominal: return "nominal";
    case Tok::Bot: return "bot";
    case Tok::Top: return "top";
    case Tok::Box: return "[]";
    case Tok::Diamond: return "<*>";
    case Tok::And: return "&";
    case Tok::Or: return "|";
    case Tok::Implies: return "->";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Leq: return "<=";
    case Tok::Entails: return "=>";
    case Tok::Empty: return "{}";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok k = word == "bot" ? Tok::Bot : word == "top" ? Tok::Top : Tok::Ident;
      out.push_back({k, word, start});
    } else if (c == '@') {
      ++i;
      if (i >= s.size() || !ident_start(s[i])) {
        throw ParseError(i, {"identifier"}, i < s.size() ? std::string(1, s[i]) : "end of input");
      }
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Nominal, std::string(s.substr(start + 1, i - start - 1)), start});
    } else if (starts("[]")) {
      i += 2;
      out.push_back({Tok::Box, "[]", start});
    } else if (starts("<*>")) {
      i += 3;
      out.push_back({Tok::Diamond, "<*>", start});
    } else if (starts("<=")) {
      i += 2;
      out.push_back({Tok::Leq, "<=", start});
    } else if (starts("->")) {
      i += 2;
      out.push_back({Tok::Implies, "->", start});
    } else if (starts("=>")) {
      i += 2;
      out.push_back({Tok::Entails, "=>", start});
    } else if (starts("{}")) {
      i += 2;
      out.push_back({Tok::Empty, "{}", start});
    } else if (starts("\xE2\x88\x85")) {  // U+2205 EMPTY SET
      i += 3;
      out.push_back({Tok::Empty, "{}", start});
    } else if (c == '&') {
      ++i;
      out.push_back({Tok::And, "&", start});
    } else if (c == '|') {
      ++i;
      out.push_back({Tok::Or, "|", start});
    } else if (c == '(') {
      ++i;
      out.push_back({Tok::LParen, "(", start});
    } else if (c == ')') {
      ++i;
      out.push_back({Tok::RParen, ")", start});
    } else {
      throw ParseError(start, {"formula"}, std::string(1, c));
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// Recursive descent over tokens[pos, stop); tokens[stop] acts as the end marker.
class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t begin, std::size_t stop)
      : toks_(toks), pos_(begin), stop_(stop) {}

  Formula formula() { return implication(); }

  Inequality inequality() {
    Formula lhs = formula();
    expect(Tok::Leq, {"<=", "&", "|", "->"});
    Formula rhs = formula();
    return {lhs, rhs};
  }

  void finish(std::set<std::string> expected) {
    if (peek() != Tok::End) fail(std::move(expected));
  }

 private:
  Tok peek() const { return pos_ >= stop_ ? Tok::End : toks_[pos_].kind; }
  const Token& current() const { return toks_[pos_ >= stop_ ? stop_ : pos_]; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = current();
    std::string found = pos_ >= stop_ ? std::string(spelling(toks_[stop_].kind)) : t.text;
    if (found.empty()) found = spelling(t.kind);
    throw ParseError(t.offset, std::move(expected), found);
  }

  void expect(Tok k, std::set<std::string> expected) {
    if (peek() != k) fail(std::move(expected));
    ++pos_;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek() == Tok::Implies) {
      ++pos_;
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek() == Tok::Or) {
      ++pos_;
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = prefix();
    while (peek() == Tok::And) {
      ++pos_;
      f = Formula::conj(f, prefix());
    }
    return f;
  }

  Formula prefix() {
    switch (peek()) {
      case Tok::Box:
        ++pos_;
        return Formula::box(prefix());
      case Tok::Diamond:
        ++pos_;
        return Formula::black_diamond(prefix());
      default:
        return atom();
    }
  }

  Formula atom() {
    const Token& t = current();
    switch (peek()) {
      case Tok::Ident:
        ++pos_;
        return Formula::var(t.text);
      case Tok::Nominal:
        ++pos_;
        return Formula::nominal(t.text);
      case Tok::Bot:
        ++pos_;
        return Formula::bot();
      case Tok::Top:
        ++pos_;
        return Formula::top();
      case Tok::LParen: {
        ++pos_;
        Formula f = formula();
        expect(Tok::RParen, {")", "&", "|", "->"});
        return f;
      }
      default:
        fail({"identifier", "nominal", "bot", "top", "[]", "<*>", "("});
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t stop_;
};

std::string join_expected(const std::set<std::string>& e) {
  std::string s;
  for (const auto& x : e) {
    if (!s.empty()) s += ", ";
    s += "'" + x + "'";
  }
  return s;
}

// Depth-0 positions of tokens of kind `k` in [b, e).
std::vector<std::size_t> top_level(const std::vector<Token>& toks, std::size_t b, std::size_t e, Tok k) {
  std::vector<std::size_t> out;
  int d = 0;
  for (std::size_t i = b; i < e; ++i) {
    if (toks[i].kind == Tok::LParen) ++d;
    else if (toks[i].kind == Tok::RParen) --d;
    else if (d == 0 && toks[i].kind == k) out.push_back(i);
  }
  return out;
}

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Box:
    case Kind::BlackDiamond: return 4;
    default: return 5;
  }
}

void print_into(std::ostringstream& os, const Formula& f, int ctx) {
  const int prec = precedence(f);
  const bool wrap = prec < ctx;
  if (wrap) os << '(';
  switch (f.kind()) {
    case Kind::Var: os << f.name(); break;
    case Kind::Nominal: os << '@' << f.name(); break;
    case Kind::Bot: os << "bot"; break;
    case Kind::Top: os << "top"; break;
    case Kind::Box:
      os << "[]";
      print_into(os, f.child(), 4);
      break;
    case Kind::BlackDiamond:
      os << "<*>";
      print_into(os, f.child(), 4);
      break;
    case Kind::And:
      print_into(os, f.left(), 3);
      os << " & ";
      print_into(os, f.right(), 4);
      break;
    case Kind::Or:
      print_into(os, f.left(), 2);
      os << " | ";
      print_into(os, f.right(), 3);
      break;
    case Kind::Implies:
      print_into(os, f.left(), 2);
      os << " -> ";
      print_into(os, f.right(), 1);
      break;
  }
  if (wrap) os << ')';
}

std::string print_side(const Formula& f, bool guard) {
  std::ostringstream os;
  // Inside a meta-conjunction a top-level '&' would be ambiguous.
  print_into(os, f, guard ? 4 : 0);
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": expected one of " +
                         join_expected(expected) + ", found '" + found + "'"),
      offset_(offset),
      expected_(std::move(expected)) {}

Formula parse_formula(std::string_view text) {
  auto toks = tokenize(text);
  Parser p(toks, 0, toks.size() - 1);
  Formula f = p.formula();
  p.finish({"&", "|", "->", "end of input"});
  return f;
}

Inequality parse_inequality(std::string_view text) {
  auto toks = tokenize(text);
  Parser p(toks, 0, toks.size() - 1);
  Inequality i = p.inequality();
  p.finish({"&", "|", "->", "end of input"});
  return i;
}

QuasiInequality parse_quasi(std::string_view text) {
  auto toks = tokenize(text);
  const std::size_t end = toks.size() - 1;
  auto arrows = top_level(toks, 0, end, Tok::Entails);
  if (arrows.empty()) {
    // A bare inequality is a quasi-inequality with no antecedents.
    return QuasiInequality{{}, parse_inequality(text)};
  }
  if (arrows.size() > 1) throw ParseError(toks[arrows[1]].offset, {"<=", "&"}, "=>");
  const std::size_t arrow = arrows.front();

  Parser cp(toks, arrow + 1, end);
  QuasiInequality q{{}, cp.inequality()};
  cp.finish({"&", "|", "->", "end of input"});

  std::size_t begin = 0;
  if (arrow == 1 && toks[0].kind == Tok::Empty) begin = 1;
  if (begin == arrow) return q;

  // Split at depth-0 '&' and glue chunks that carry no '<=' onto a neighbour.
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  std::size_t s = begin;
  for (std::size_t a : top_level(toks, begin, arrow, Tok::And)) {
    chunks.emplace_back(s, a);
    s = a + 1;
  }
  chunks.emplace_back(s, arrow);

  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::optional<std::size_t> pending_start;
  bool seen_ineq = false;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    auto [b, e] = chunks[c];
    const bool has_leq = !top_level(toks, b, e, Tok::Leq).empty();
    if (has_leq) {
      if (seen_ineq && pending_start) {
        throw ParseError(toks[*pending_start].offset, {"<="},
                         "ambiguous '&' between inequalities; parenthesize the operand");
      }
      groups.emplace_back(pending_start.value_or(b), e);
      pending_start.reset();
      seen_ineq = true;
    } else if (!pending_start) {
      pending_start = b;
    }
  }
  if (pending_start) {
    if (groups.empty()) throw ParseError(toks[arrow].offset, {"<="}, "=>");
    groups.back().second = chunks.back().second;
  }

  for (auto [b, e] : groups) {
    Parser p(toks, b, e);
    q.antecedents.push_back(p.inequality());
    p.finish({"&", "|", "->", "<="});
  }
  return q;
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_into(os, f, 0);
  return os.str();
}

std::string print_inequality(const Inequality& i) {
  return print_formula(i.lhs) + " <= " + print_formula(i.rhs);
}

std::string print_quasi(const QuasiInequality& q) {
  std::string out;
  if (q.antecedents.empty()) out = "\xE2\x88\x85";
  const bool guard = q.antecedents.size() > 1;
  for (std::size_t k = 0; k < q.antecedents.size(); ++k) {
    if (k) out += " & ";
    out += print_side(q.antecedents[k].lhs, guard) + " <= " + print_side(q.antecedents[k].rhs, guard);
  }
  return out + " => " + print_inequality(q.consequent);
}

std::string ast_string(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var: return f.name();
    case Kind::Nominal: return "@" + f.name();
    case Kind::Bot: return "Bot";
    case Kind::Top: return "Top";
    case Kind::Box: return "Box(" + ast_string(f.child()) + ")";
    case Kind::BlackDiamond: return "BlackDiamond(" + ast_string(f.child()) + ")";
    case Kind::And: return "And(" + ast_string(f.left()) + ", " + ast_string(f.right()) + ")";
    case Kind::Or: return "Or(" + ast_string(f.left()) + ", " + ast_string(f.right()) + ")";
    case Kind::Implies: return "Implies(" + ast_string(f.left()) + ", " + ast_string(f.right()) + ")";
  }
  return "?";
}

}  // namespace fmcorr
