#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alcn/axioms.hpp"
#include "alcn/concepts.hpp"

namespace alcn {

struct SourceLocation {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
};

struct ParseError {
  SourceLocation location;
  std::string message;
  std::vector<std::string> expected;
};

template <class T>
struct ParseResult {
  std::optional<T> value;
  std::optional<ParseError> error;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

namespace detail {

enum class TokenKind {
  Ident,
  Integer,
  SubsumedBy,   // <=
  Defeasibly,   // <~
  LParen,
  RParen,
  LBracket,
  RBracket,
  Colon,
  Comma,
  Dot,
  EndOfLine,
};

struct Token {
  TokenKind kind;
  std::string text;
  long long number = 0;
  SourceLocation loc;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokenizes one physical line ('#' starts a comment). Returns false and fills
// `err` on a bad character or numeric overflow.
inline bool tokenize_line(std::string_view text, int line_no, std::vector<Token>& out,
                          ParseError& err) {
  std::size_t i = 0;
  const auto loc = [&](std::size_t col) { return SourceLocation{line_no, static_cast<int>(col) + 1}; };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({TokenKind::Ident, std::string(text.substr(i, j - i)), 0, loc(i)});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      long long value = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        value = value * 10 + (text[j] - '0');
        if (value > 1000000000) {
          err = {loc(i), "rank literal too large", {}};
          return false;
        }
        ++j;
      }
      out.push_back({TokenKind::Integer, std::string(text.substr(i, j - i)), value, loc(i)});
      i = j;
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({TokenKind::SubsumedBy, "<=", 0, loc(i)});
      i += 2;
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '~') {
      out.push_back({TokenKind::Defeasibly, "<~", 0, loc(i)});
      i += 2;
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case '[': kind = TokenKind::LBracket; break;
      case ']': kind = TokenKind::RBracket; break;
      case ':': kind = TokenKind::Colon; break;
      case ',': kind = TokenKind::Comma; break;
      case '.': kind = TokenKind::Dot; break;
      default:
        err = {loc(i), std::string("unexpected character '") + c + "'", {}};
        return false;
    }
    out.push_back({kind, std::string(1, c), 0, loc(i)});
    ++i;
  }
  out.push_back({TokenKind::EndOfLine, "", 0, loc(text.size())});
  return true;
}

inline bool is_keyword(const std::string& s) {
  return s == "Top" || s == "Bot" || s == "not" || s == "and" || s == "or" || s == "some" ||
         s == "only" || s == "N";
}

enum class NameKind { Concept, Role, Individual };

inline const char* name_kind_label(NameKind k) {
  switch (k) {
    case NameKind::Concept: return "concept name";
    case NameKind::Role: return "role name";
    case NameKind::Individual: return "individual name";
  }
  return "";
}

// Parses one statement from a token line. Name namespaces are enforced across
// the whole parse via the shared `names` table (first use fixes the kind).
class StatementParser {
 public:
  StatementParser(const std::vector<Token>& tokens,
                  std::map<std::string, NameKind>& names)
      : tokens_(tokens), names_(names) {}

  std::optional<Axiom> parse_axiom(bool allow_defeasible, ParseError& err) {
    // Role assertion: '(' IDENT ',' ...
    if (peek().kind == TokenKind::LParen && peek(1).kind == TokenKind::Ident &&
        peek(2).kind == TokenKind::Comma) {
      return parse_role_assertion(err);
    }
    // Concept assertion: IDENT ':' ...
    if (peek().kind == TokenKind::Ident && !is_keyword(peek().text) &&
        peek(1).kind == TokenKind::Colon) {
      return parse_concept_assertion(err);
    }
    auto lhs = parse_concept(err);
    if (!lhs) return std::nullopt;
    if (peek().kind == TokenKind::SubsumedBy) {
      advance();
      auto rhs = parse_concept(err);
      if (!rhs) return std::nullopt;
      if (!expect_end(err)) return std::nullopt;
      return Axiom(StrictCi{*lhs, *rhs});
    }
    if (peek().kind == TokenKind::Defeasibly) {
      const Token di_tok = peek();
      advance();
      if (!allow_defeasible) {
        err = {di_tok.loc, "defeasible inclusions are not allowed in queries", {"'<='"}};
        return std::nullopt;
      }
      std::optional<int> rank;
      if (peek().kind == TokenKind::LBracket) {
        advance();
        if (peek().kind != TokenKind::Integer) {
          err = {peek().loc, "expected a non-negative rank", {"integer"}};
          return std::nullopt;
        }
        rank = static_cast<int>(peek().number);
        advance();
        if (!consume(TokenKind::RBracket, "']'", err)) return std::nullopt;
      }
      auto rhs = parse_concept(err);
      if (!rhs) return std::nullopt;
      if (!expect_end(err)) return std::nullopt;
      return Axiom(DefeasibleCi{*lhs, *rhs, rank});
    }
    err = {peek().loc, "expected an axiom connective", {"'<='", "'<~'", "':'"}};
    return std::nullopt;
  }

 private:
  std::optional<Axiom> parse_role_assertion(ParseError& err) {
    advance();  // '('
    auto subject = parse_name(NameKind::Individual, err);
    if (!subject) return std::nullopt;
    if (!consume(TokenKind::Comma, "','", err)) return std::nullopt;
    auto object = parse_name(NameKind::Individual, err);
    if (!object) return std::nullopt;
    if (!consume(TokenKind::RParen, "')'", err)) return std::nullopt;
    if (!consume(TokenKind::Colon, "':'", err)) return std::nullopt;
    auto role = parse_name(NameKind::Role, err);
    if (!role) return std::nullopt;
    if (!expect_end(err)) return std::nullopt;
    return Axiom(RoleAssertion{IndividualName(*subject), RoleName(*role), IndividualName(*object)});
  }

  std::optional<Axiom> parse_concept_assertion(ParseError& err) {
    auto individual = parse_name(NameKind::Individual, err);
    if (!individual) return std::nullopt;
    advance();  // ':'
    auto expr = parse_concept(err);
    if (!expr) return std::nullopt;
    if (!expect_end(err)) return std::nullopt;
    return Axiom(ConceptAssertion{IndividualName(*individual), *expr});
  }

  // concept := or-level; 'or' binds loosest, then 'and', then prefixes.
  std::optional<Concept> parse_concept(ParseError& err) { return parse_or(err, 0); }

  std::optional<Concept> parse_or(ParseError& err, int depth) {
    if (!check_depth(depth, err)) return std::nullopt;
    auto lhs = parse_and(err, depth + 1);
    if (!lhs) return std::nullopt;
    while (peek().kind == TokenKind::Ident && peek().text == "or") {
      advance();
      auto rhs = parse_and(err, depth + 1);
      if (!rhs) return std::nullopt;
      lhs = Concept::disjunction(*lhs, *rhs);
    }
    return lhs;
  }

  std::optional<Concept> parse_and(ParseError& err, int depth) {
    if (!check_depth(depth, err)) return std::nullopt;
    auto lhs = parse_unary(err, depth + 1);
    if (!lhs) return std::nullopt;
    while (peek().kind == TokenKind::Ident && peek().text == "and") {
      advance();
      auto rhs = parse_unary(err, depth + 1);
      if (!rhs) return std::nullopt;
      lhs = Concept::conjunction(*lhs, *rhs);
    }
    return lhs;
  }

  std::optional<Concept> parse_unary(ParseError& err, int depth) {
    if (!check_depth(depth, err)) return std::nullopt;
    const Token& t = peek();
    if (t.kind == TokenKind::Ident) {
      if (t.text == "Top") {
        advance();
        return Concept::top();
      }
      if (t.text == "Bot") {
        advance();
        return Concept::bottom();
      }
      if (t.text == "not") {
        advance();
        auto c = parse_unary(err, depth + 1);
        if (!c) return std::nullopt;
        return Concept::negation(*c);
      }
      if (t.text == "some" || t.text == "only") {
        const bool existential = t.text == "some";
        advance();
        auto role = parse_name(NameKind::Role, err);
        if (!role) return std::nullopt;
        if (!consume(TokenKind::Dot, "'.'", err)) return std::nullopt;
        auto filler = parse_unary(err, depth + 1);
        if (!filler) return std::nullopt;
        return existential ? Concept::exists(RoleName(*role), *filler)
                           : Concept::forall(RoleName(*role), *filler);
      }
      if (t.text == "N") {
        advance();
        if (!consume(TokenKind::LParen, "'('", err)) return std::nullopt;
        auto c = parse_or(err, depth + 1);
        if (!c) return std::nullopt;
        if (!consume(TokenKind::RParen, "')'", err)) return std::nullopt;
        return Concept::normal(*c);
      }
      auto name = parse_name(NameKind::Concept, err);
      if (!name) return std::nullopt;
      return Concept::atomic(ConceptName(*name));
    }
    if (t.kind == TokenKind::LParen) {
      advance();
      auto c = parse_or(err, depth + 1);
      if (!c) return std::nullopt;
      if (!consume(TokenKind::RParen, "')'", err)) return std::nullopt;
      return c;
    }
    err = {t.loc, "expected a concept", {"identifier", "'Top'", "'Bot'", "'not'", "'some'", "'only'", "'N'", "'('"}};
    return std::nullopt;
  }

  std::optional<std::string> parse_name(NameKind kind, ParseError& err) {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident) {
      err = {t.loc, std::string("expected a ") + name_kind_label(kind), {"identifier"}};
      return std::nullopt;
    }
    if (is_keyword(t.text)) {
      err = {t.loc, "keyword '" + t.text + "' cannot be used as a name", {"identifier"}};
      return std::nullopt;
    }
    auto [it, inserted] = names_.emplace(t.text, kind);
    if (!inserted && it->second != kind) {
      err = {t.loc,
             "'" + t.text + "' is already used as a " + name_kind_label(it->second) +
                 " and cannot also be a " + name_kind_label(kind),
             {}};
      return std::nullopt;
    }
    advance();
    return t.text;
  }

  bool expect_end(ParseError& err) {
    if (peek().kind != TokenKind::EndOfLine) {
      err = {peek().loc, "unexpected trailing input after axiom", {"end of line"}};
      return false;
    }
    return true;
  }

  bool consume(TokenKind kind, const char* what, ParseError& err) {
    if (peek().kind != kind) {
      err = {peek().loc, std::string("expected ") + what, {what}};
      return false;
    }
    advance();
    return true;
  }

  bool check_depth(int depth, ParseError& err) {
    if (depth > kMaxDepth) {
      err = {peek().loc, "concept expression nested too deeply", {}};
      return false;
    }
    return true;
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  void advance() { ++pos_; }

  static constexpr int kMaxDepth = 512;

  const std::vector<Token>& tokens_;
  std::map<std::string, NameKind>& names_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string_view> split_lines(std::string_view source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= source.size(); ++i) {
    if (i == source.size() || source[i] == '\n') {
      lines.push_back(source.substr(start, i - start));
      start = i + 1;
    }
  }
  return lines;
}

}  // namespace detail

// Parses a whole KB file: one axiom per line, '#' comments, blank lines
// ignored. Stops at the first syntax error.
inline ParseResult<KnowledgeBase> parse_kb(std::string_view source) {
  KnowledgeBase kb;
  std::map<std::string, detail::NameKind> names;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(source)) {
    ++line_no;
    std::vector<detail::Token> tokens;
    ParseError err;
    if (!detail::tokenize_line(line, line_no, tokens, err)) return {std::nullopt, err};
    if (tokens.size() == 1) continue;  // blank or comment-only line
    detail::StatementParser parser(tokens, names);
    auto axiom = parser.parse_axiom(/*allow_defeasible=*/true, err);
    if (!axiom) return {std::nullopt, err};
    kb.add(*axiom);
  }
  return {kb, std::nullopt};
}

// Parses a single query: a strict CI or an assertion. Defeasible inclusions
// are rejected.
inline ParseResult<Axiom> parse_query(std::string_view source) {
  std::map<std::string, detail::NameKind> names;
  std::optional<Axiom> query;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(source)) {
    ++line_no;
    std::vector<detail::Token> tokens;
    ParseError err;
    if (!detail::tokenize_line(line, line_no, tokens, err)) return {std::nullopt, err};
    if (tokens.size() == 1) continue;
    if (query) {
      return {std::nullopt, ParseError{tokens.front().loc, "expected a single query", {}}};
    }
    detail::StatementParser parser(tokens, names);
    auto axiom = parser.parse_axiom(/*allow_defeasible=*/false, err);
    if (!axiom) return {std::nullopt, err};
    query = *axiom;
  }
  if (!query) {
    return {std::nullopt, ParseError{{line_no, 1}, "empty query", {}}};
  }
  return {query, std::nullopt};
}

}  // namespace alcn
